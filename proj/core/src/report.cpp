#include "dpf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef DPF_DATA_DIR
#define DPF_DATA_DIR "data"
#endif

namespace dpf {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kTypeNames = {"alpha1", "alpha2", "alpha3", "beta1", "beta2",
                                             "gamma",  "delta1", "delta2", "epsilon"};

int type_rank(const std::string& t)
{
    auto it = std::find(kTypeNames.begin(), kTypeNames.end(), t);
    return it == kTypeNames.end() ? (int)kTypeNames.size() : (int)(it - kTypeNames.begin());
}

std::string numbered(const std::string& letter, int k)
{
    if (k == 1)
        return letter;
    std::string s;
    for (int i = 1; i <= k; ++i)
        s += letter + std::to_string(i);
    return s;
}

std::string tuple_key(std::vector<std::string> types)
{
    std::sort(types.begin(), types.end(), [](auto& a, auto& b) { return type_rank(a) < type_rank(b); });
    std::string s;
    for (auto& t : types)
        s += (s.empty() ? "" : ",") + t;
    return s;
}

std::string cyclic_key(i64 f)
{
    std::string s = f % 9 == 0 ? "9" : "";
    int l = 0;
    for (i64 p : prime_divisors(f))
        if (p != 3)
            ++l;
    if (l)
        s += numbered("l", l);
    return s + "|" + (f % 9 == 0 ? "d=1" : "");
}

constexpr i64 kSafeInt = (i64)1 << 53;

void put_int(ojson& j, const char* key, i64 v)
{
    if (v > kSafeInt || v < -kSafeInt)
        j[key] = std::to_string(v);
    else
        j[key] = v;
}

i64 get_int(const json& j)
{
    if (j.is_string())
        return std::stoll(j.get<std::string>());
    return j.get<i64>();
}

int get_dim(const json& j)
{
    return j.is_null() ? -1 : (int)j.get<i64>();
}

bool is_s3(const FieldRecord& r)
{
    return r.galois == Galois::s3;
}

}  // namespace

std::string conductor_shape(const Conductor& f)
{
    if (f.f == 1)
        return "1";
    std::string s = f.e == 1 ? "3" : f.e >= 2 ? "9" : "";
    int q = 0, l = 0;
    for (i64 p : f.noncritical)
        (p % 3 == 1 ? l : q)++;
    if (q)
        s += numbered("q", q);
    if (l)
        s += numbered("l", l);
    return s;
}

std::string conductor_condition(const Conductor& f, i64 d)
{
    if (f.e == 1)
        return "d=" + std::to_string(mod(d, 9)) + "(9)";
    if (f.e >= 2)
        return mod(d, 9) == 6 ? "d=6(9)" : "d=" + std::to_string(mod(d, 3)) + "(3)";
    return "";
}

std::string row_key(int rho, const Conductor& f, i64 d)
{
    return std::to_string(rho) + "|" + conductor_shape(f) + "|" + conductor_condition(f, d);
}

std::string multiplet_name(int m)
{
    switch (m) {
    case 0: return "nilets";
    case 1: return "singlets";
    case 2: return "doublets";
    case 3: return "triplets";
    case 4: return "quartets";
    case 6: return "sextets";
    case 9: return "nonets";
    }
    return std::to_string(m) + "-plets";
}

i64 RangeReport::total_fields() const
{
    return (i64)records.size();
}

i64 RangeReport::s3_fields() const
{
    return std::count_if(records.begin(), records.end(), is_s3);
}

// ---------------------------------------------------------------------------

RunResult classify_range(i64 lo, i64 hi, const RunOptions& opts)
{
    RunResult out;
    auto fields = enumerate_fields(lo, hi);
    auto groups = group_multiplets(fields);
    std::map<i64, std::unique_ptr<SelmerContext>> contexts;
    std::vector<FieldRecord> records;
    i64 done = 0, total = (i64)fields.size();
    for (const Multiplet& M : groups) {
        std::string tag = "d_L=" + std::to_string(M.dl) + ": ";
        if (M.d == 1) {
            for (int k = 0; k < M.m(); ++k) {
                FieldRecord r;
                r.dl = M.dl;
                r.d = 1;
                r.f = M.f;
                r.form = M.members[k].form;
                r.galois = Galois::cyclic;
                r.m_index = k + 1;
                r.multiplicity = M.m();
                r.type = "zeta";
                r.status = "verified";
                records.push_back(r);
            }
        } else {
            auto& ctx = contexts[M.d];
            if (!ctx)
                ctx = std::make_unique<SelmerContext>(quadratic_field(M.d));
            Conductor cond = make_conductor(M.f, M.d);
            i64 predicted = ctx->multiplicity(cond).m;
            if (predicted != M.m())
                out.alarms.push_back(tag + "ring space predicts multiplicity " + std::to_string(predicted) +
                                     " but " + std::to_string(M.m()) + " fields were enumerated");
            std::vector<std::string> types;
            for (int k = 0; k < M.m(); ++k) {
                FieldRecord r;
                r.dl = M.dl;
                r.d = M.d;
                r.f = M.f;
                r.form = M.members[k].form;
                r.galois = Galois::s3;
                r.m_index = k + 1;
                r.multiplicity = M.m();
                if (opts.predict_only) {
                    r.status = "skipped";
                } else {
                    DpfClassification c = classify(r.form, *ctx, cond, opts.depth, opts.budget);
                    r.status = status_name(c.status);
                    if (c.type && c.status != ClassStatus::undetermined)
                        r.type = type_name(*c.type);
                    r.U = c.U;
                    r.A = c.A;
                    r.R = c.R;
                    r.C = c.C;
                    r.E = c.E;
                    for (auto& v : c.violations)
                        out.alarms.push_back(tag + v);
                    types.push_back(r.type);
                }
                records.push_back(r);
            }
            if (M.m() == 1 && !types.empty() && !types[0].empty()) {
                static const std::set<std::string> ramified{"alpha3", "beta2", "gamma", "delta2", "epsilon"};
                bool ok = M.f == 1 ? types[0] == "delta1" : ramified.count(types[0]) > 0;
                if (!ok)
                    out.alarms.push_back(tag + "singlet of type " + types[0] + " is not allowed");
            }
        }
        done += M.m();
        if (opts.progress)
            opts.progress(done, total);
    }
    out.report = build_report(lo, hi, std::move(records));
    for (auto& v : report_invariants(out.report))
        out.alarms.push_back(v);
    return out;
}

RangeReport build_report(i64 lo, i64 hi, std::vector<FieldRecord> records)
{
    RangeReport r;
    r.lo = lo;
    r.hi = hi;
    std::sort(records.begin(), records.end(), [](const FieldRecord& a, const FieldRecord& b) {
        return std::tie(a.dl, a.m_index, a.form) < std::tie(b.dl, b.m_index, b.form);
    });
    r.classified = std::none_of(records.begin(), records.end(),
                                [](const FieldRecord& x) { return is_s3(x) && x.status == "skipped"; });

    std::map<i64, int> rho_memo;
    auto rho_of = [&](i64 d) {
        auto it = rho_memo.find(d);
        if (it == rho_memo.end())
            it = rho_memo.emplace(d, rank3(d)).first;
        return it->second;
    };

    std::set<i64> realized;
    for (size_t i = 0; i < records.size();) {
        size_t j = i;
        while (j < records.size() && records[j].dl == records[i].dl)
            ++j;
        const FieldRecord& head = records[i];
        int m = (int)(j - i);
        if (!is_s3(head)) {
            CyclicRow& row = r.cyclic[cyclic_key(head.f)];
            row.multiplets[m]++;
            row.fields += m;
            if (row.min_dl == 0 || head.dl < row.min_dl) {
                row.min_dl = head.dl;
                row.min_f = head.f;
            }
            r.type_counts["zeta"] += m;
        } else {
            realized.insert(head.dl);
            Conductor cond = make_conductor(head.f, head.d);
            ReportRow& row = r.rows[row_key(rho_of(head.d), cond, head.d)];
            row.multiplets[m]++;
            row.fields += m;
            r.histogram[m]++;
            std::vector<std::string> types;
            int nu = 0;
            for (size_t k = i; k < j; ++k) {
                const FieldRecord& x = records[k];
                if (x.status == "undetermined") {
                    row.undetermined++;
                    r.type_counts["undetermined"]++;
                } else if (!x.type.empty()) {
                    row.types[x.type]++;
                    r.type_counts[x.type]++;
                    types.push_back(x.type);
                }
                if (x.C == 2)
                    ++nu;
            }
            if ((int)types.size() == m) {
                if (m == 1) {
                    auto& mn = r.singlet_minima[types[0]];
                    if (mn == 0 || head.dl < mn)
                        mn = head.dl;
                } else {
                    std::string key = tuple_key(types);
                    std::string name = multiplet_name(m);
                    r.multiplet_types[name][key]++;
                    auto& first = r.multiplet_first_dl[name + ":" + key];
                    if (first == 0 || head.dl < first)
                        first = head.dl;
                    if (m == 4 && head.f == 1) {
                        auto it = r.capitulation_numbers.find(key);
                        if (it == r.capitulation_numbers.end())
                            r.capitulation_numbers[key] = nu;
                        else if (it->second != nu)
                            it->second = -1;
                    }
                }
            }
        }
        i = j;
    }

    // nilets: admissible (d, f) inside the range without any field
    for (i64 d = 5; d <= hi; ++d) {
        if (!is_fundamental_discriminant(d))
            continue;
        for (const Conductor& c : admissible_conductors(d, hi)) {
            i64 dl = c.f * c.f * d;
            if (dl < lo || realized.count(dl))
                continue;
            r.rows[row_key(rho_of(d), c, d)].multiplets[0]++;
        }
    }
    r.records = std::move(records);
    return r;
}

RangeReport merge(const RangeReport& a, const RangeReport& b)
{
    std::vector<FieldRecord> all = a.records;
    all.insert(all.end(), b.records.begin(), b.records.end());
    return build_report(std::min(a.lo, b.lo), std::max(a.hi, b.hi), std::move(all));
}

std::vector<std::string> report_invariants(const RangeReport& r)
{
    std::vector<std::string> out;
    i64 weighted = 0;
    for (auto& [m, n] : r.histogram)
        weighted += m * n;
    if (weighted != r.s3_fields())
        out.push_back("weighted multiplicity sum " + std::to_string(weighted) + " differs from the field count " +
                      std::to_string(r.s3_fields()));
    i64 row_fields = 0;
    for (auto& [key, row] : r.rows) {
        i64 w = 0, t = row.undetermined;
        for (auto& [m, n] : row.multiplets)
            w += m * n;
        for (auto& [ty, n] : row.types)
            t += n;
        row_fields += row.fields;
        if (w != row.fields)
            out.push_back("row " + key + ": weighted multiplicities do not add up");
        if (r.classified && t != row.fields)
            out.push_back("row " + key + ": type columns do not add up");
    }
    if (row_fields != r.s3_fields())
        out.push_back("row totals differ from the field count");
    if (r.classified) {
        i64 t = 0;
        for (auto& [ty, n] : r.type_counts)
            if (ty != "zeta")
                t += n;
        if (t != weighted)
            out.push_back("type column sum " + std::to_string(t) + " differs from the weighted multiplicity sum " +
                          std::to_string(weighted));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_jsonl(const FieldRecord& r)
{
    ojson j;
    put_int(j, "dl", r.dl);
    put_int(j, "d", r.d);
    put_int(j, "f", r.f);
    j["form"] = ojson::array();
    for (i64 c : r.form.coeffs()) {
        if (c > kSafeInt || c < -kSafeInt)
            j["form"].push_back(std::to_string(c));
        else
            j["form"].push_back(c);
    }
    j["galois"] = r.galois == Galois::cyclic ? "cyclic" : "S3";
    j["m_index"] = r.m_index;
    j["multiplicity"] = r.multiplicity;
    if (r.type.empty())
        j["type"] = nullptr;
    else
        j["type"] = r.type;
    j["status"] = r.status;
    auto dim = [&](const char* key, int v) {
        if (v < 0)
            j[key] = nullptr;
        else
            j[key] = v;
    };
    dim("U", r.U);
    dim("A", r.A);
    dim("R", r.R);
    dim("C", r.C);
    dim("E", r.E);
    return j.dump();
}

FieldRecord from_jsonl(const std::string& line)
{
    json j = json::parse(line);
    FieldRecord r;
    r.dl = get_int(j.at("dl"));
    r.d = get_int(j.at("d"));
    r.f = get_int(j.at("f"));
    const json& form = j.at("form");
    if (!form.is_array() || form.size() != 4)
        throw std::invalid_argument("form must have four coefficients");
    r.form = CubicForm{get_int(form[0]), get_int(form[1]), get_int(form[2]), get_int(form[3])};
    std::string g = j.at("galois").get<std::string>();
    if (g != "cyclic" && g != "S3")
        throw std::invalid_argument("unknown galois group " + g);
    r.galois = g == "cyclic" ? Galois::cyclic : Galois::s3;
    r.m_index = (int)get_int(j.at("m_index"));
    r.multiplicity = (int)get_int(j.at("multiplicity"));
    r.type = j.at("type").is_null() ? "" : j.at("type").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.U = get_dim(j.at("U"));
    r.A = get_dim(j.at("A"));
    r.R = get_dim(j.at("R"));
    r.C = get_dim(j.at("C"));
    r.E = get_dim(j.at("E"));
    return r;
}

void write_jsonl(std::ostream& out, const RangeReport& r)
{
    for (auto& x : r.records)
        out << to_jsonl(x) << '\n';
}

std::vector<FieldRecord> read_jsonl(std::istream& in)
{
    std::vector<FieldRecord> out;
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            out.push_back(from_jsonl(line));
    return out;
}

void write_csv(std::ostream& out, const RangeReport& r)
{
    out << "dl,d,f,a,b,c,dd,galois,m_index,multiplicity,type,status,U,A,R,C,E\n";
    auto dim = [](int v) { return v < 0 ? std::string() : std::to_string(v); };
    for (auto& x : r.records) {
        out << x.dl << ',' << x.d << ',' << x.f << ',' << x.form.a << ',' << x.form.b << ',' << x.form.c << ','
            << x.form.d << ',' << (x.galois == Galois::cyclic ? "cyclic" : "S3") << ',' << x.m_index << ','
            << x.multiplicity << ',' << x.type << ',' << x.status << ',' << dim(x.U) << ',' << dim(x.A) << ','
            << dim(x.R) << ',' << dim(x.C) << ',' << dim(x.E) << '\n';
    }
}

namespace {

std::string cell(i64 v)
{
    return v ? std::to_string(v) : "";
}

std::string row_label(const std::string& key)
{
    auto a = key.find('|'), b = key.rfind('|');
    std::string rho = key.substr(0, a), shape = key.substr(a + 1, b - a - 1), cond = key.substr(b + 1);
    std::string s = shape;
    if (shape == "1")
        s += "  rho=" + rho;
    else if (!cond.empty())
        s += "  " + cond;
    return s;
}

}  // namespace

void write_table(std::ostream& out, const RangeReport& r)
{
    out << "Totally real cubic fields with " << r.lo << " <= d_L <= " << r.hi << "\n\n";
    const int w = 8;
    std::vector<std::pair<std::string, const ReportRow*>> rows;
    for (auto& [k, v] : r.rows)
        rows.push_back({k, &v});
    // order: rho, then number of prime parts, then shape
    auto parts = [](const std::string& key) {
        auto a = key.find('|'), b = key.rfind('|');
        std::string shape = key.substr(a + 1, b - a - 1);
        int n = 0;
        for (char c : shape)
            if (c == 'q' || c == 'l' || c == '3' || c == '9')
                ++n;
        return std::make_tuple(std::stoi(key.substr(0, a)), shape == "1" ? 0 : n, key);
    };
    std::sort(rows.begin(), rows.end(), [&](auto& x, auto& y) { return parts(x.first) < parts(y.first); });

    out << std::left << std::setw(18) << "f  condition";
    for (int m = 0; m <= 4; ++m)
        out << std::right << std::setw(w) << ("m=" + std::to_string(m));
    for (auto& t : kTypeNames)
        out << std::setw(w) << t;
    out << std::setw(w) << "undet" << std::setw(w) << "total" << '\n';
    std::map<int, i64> msum;
    std::map<std::string, i64> tsum;
    i64 usum = 0, fsum = 0;
    for (auto& [key, row] : rows) {
        out << std::left << std::setw(18) << row_label(key);
        for (int m = 0; m <= 4; ++m) {
            i64 v = row->multiplets.count(m) ? row->multiplets.at(m) : 0;
            msum[m] += m ? v : 0;
            out << std::right << std::setw(w) << cell(v);
        }
        for (auto& t : kTypeNames) {
            i64 v = row->types.count(t) ? row->types.at(t) : 0;
            tsum[t] += v;
            out << std::setw(w) << cell(v);
        }
        usum += row->undetermined;
        fsum += row->fields;
        out << std::setw(w) << cell(row->undetermined) << std::setw(w) << row->fields << '\n';
    }
    out << std::left << std::setw(18) << "summary";
    for (int m = 0; m <= 4; ++m)
        out << std::right << std::setw(w) << cell(msum[m]);
    for (auto& t : kTypeNames)
        out << std::setw(w) << cell(tsum[t]);
    out << std::setw(w) << cell(usum) << std::setw(w) << fsum << "\n\n";

    out << "Cyclic fields\n";
    out << std::left << std::setw(18) << "f  condition" << std::right << std::setw(w) << "m=1" << std::setw(w)
        << "m=2" << std::setw(w) << "fields" << std::setw(w) << "min f" << std::setw(w) << "min d_L" << '\n';
    i64 c1 = 0, c2 = 0, cf = 0;
    for (auto& [key, row] : r.cyclic) {
        std::string label = key.substr(0, key.find('|'));
        std::string cond = key.substr(key.find('|') + 1);
        if (!cond.empty())
            label += "  " + cond;
        i64 a = row.multiplets.count(1) ? row.multiplets.at(1) : 0;
        i64 b = row.multiplets.count(2) ? row.multiplets.at(2) : 0;
        c1 += a;
        c2 += b;
        cf += row.fields;
        out << std::left << std::setw(18) << label << std::right << std::setw(w) << cell(a) << std::setw(w)
            << cell(b) << std::setw(w) << row.fields << std::setw(w) << row.min_f << std::setw(w) << row.min_dl
            << '\n';
    }
    out << std::left << std::setw(18) << "summary" << std::right << std::setw(w) << cell(c1) << std::setw(w)
        << cell(c2) << std::setw(w) << cf << "\n\n";

    if (!r.multiplet_types.empty()) {
        out << "Types of multiplets\n";
        for (auto& [name, tuples] : r.multiplet_types)
            for (auto& [key, n] : tuples) {
                out << "  " << std::left << std::setw(10) << name << std::setw(40) << ("(" + key + ")")
                    << std::right << std::setw(6) << n << "   first d_L " << r.multiplet_first_dl.at(name + ":" + key);
                auto it = r.capitulation_numbers.find(key);
                if (name == "quartets" && it != r.capitulation_numbers.end())
                    out << "   capitulation number " << it->second;
                out << '\n';
            }
        out << '\n';
    }
    if (!r.singlet_minima.empty()) {
        out << "Smallest singlets\n";
        std::vector<std::pair<i64, std::string>> v;
        for (auto& [t, dl] : r.singlet_minima)
            v.push_back({dl, t});
        std::sort(v.begin(), v.end());
        for (auto& [dl, t] : v)
            out << "  " << std::left << std::setw(10) << t << std::right << std::setw(10) << dl << '\n';
        out << '\n';
    }
}

// ---------------------------------------------------------------------------

Statistics frequencies(const RangeReport& r)
{
    Statistics s;
    i64 total = r.total_fields();
    if (total == 0)
        return s;
    std::vector<std::string> names = kTypeNames;
    names.push_back("zeta");
    if (r.type_counts.count("undetermined"))
        names.push_back("undetermined");
    for (auto& t : names) {
        TypeShare ts;
        ts.type = t;
        ts.count = r.type_counts.count(t) ? r.type_counts.at(t) : 0;
        ts.percent = 100.0 * ts.count / total;
        s.types.push_back(ts);
    }
    std::map<std::string, ShapeShare> shapes;
    for (auto& [key, row] : r.rows) {
        auto a = key.find('|'), b = key.rfind('|');
        std::string shape = key.substr(a + 1, b - a - 1);
        ShapeShare& sh = shapes[shape];
        sh.shape = shape;
        for (auto& [m, n] : row.multiplets)
            sh.multiplets[m] += n;
    }
    for (auto& [name, sh] : shapes) {
        i64 n = 0;
        for (auto& [m, c] : sh.multiplets)
            n += c;
        for (auto& [m, c] : sh.multiplets)
            sh.percent[m] = n ? 100.0 * c / n : 0;
        s.shapes.push_back(sh);
    }
    return s;
}

void write_statistics(std::ostream& out, const Statistics& s)
{
    out << "DPF type shares among all fields\n";
    for (auto& t : s.types)
        out << "  " << std::left << std::setw(14) << t.type << std::right << std::setw(10) << t.count
            << std::setw(9) << std::fixed << std::setprecision(2) << t.percent << "%\n";
    out << "\nMultiplet shares per conductor shape\n";
    for (auto& sh : s.shapes) {
        out << "  " << std::left << std::setw(10) << sh.shape << std::right;
        for (auto& [m, p] : sh.percent)
            out << "  " << multiplet_name(m) << ' ' << sh.multiplets.at(m) << " (" << std::fixed
                << std::setprecision(1) << p << "%)";
        out << '\n';
    }
    out << std::defaultfloat;
}

// ---------------------------------------------------------------------------

ExpectedDataset ExpectedDataset::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    ExpectedDataset d;
    d.text = ss.str();
    if (!json::accept(d.text))
        throw std::runtime_error(path + " is not valid JSON");
    return d;
}

std::string ExpectedDataset::default_path()
{
    if (const char* p = std::getenv("DPF_EXPECTED"))
        return p;
    return std::string(DPF_DATA_DIR) + "/expected.json";
}

VerifyResult verify_tables(const RangeReport& r, const ExpectedDataset& data)
{
    VerifyResult res;
    json j = json::parse(data.text);
    std::string B;
    for (i64 cand : {r.hi + 1, r.hi})
        for (const char* sec : {"multiplicity", "cyclic", "type_totals", "counts"})
            if (B.empty() && j[sec].contains(std::to_string(cand)))
                B = std::to_string(cand);
    if (B.empty() || r.lo > 1) {
        res.skipped.push_back("no transcribed tables for the range " + std::to_string(r.lo) + ".." +
                              std::to_string(r.hi));
        return res;
    }
    res.bound = std::stoll(B);

    auto cmp = [&](const std::string& where, i64 expected, i64 got) {
        ++res.cells;
        if (expected != got)
            res.diffs.push_back(where + ": expected " + std::to_string(expected) + ", got " + std::to_string(got));
    };
    auto at = [](const auto& m, const auto& k) -> i64 {
        auto it = m.find(k);
        return it == m.end() ? 0 : it->second;
    };
    if (!r.classified)
        res.skipped.push_back("type columns (multiplicities only)");

    if (j["multiplicity"].contains(B)) {
        const json& t = j["multiplicity"][B];
        for (auto& [key, cols] : t["rows"].items()) {
            std::string where = "bound " + B + " row " + key;
            auto it = r.rows.find(key);
            ReportRow empty;
            const ReportRow& row = it == r.rows.end() ? empty : it->second;
            for (int m = 0; m <= 4; ++m)
                cmp(where + " m=" + std::to_string(m), cols.value("m" + std::to_string(m), 0),
                    at(row.multiplets, m));
            if (!r.classified)
                continue;
            for (auto& ty : kTypeNames) {
                i64 e = cols.value(ty, 0);
                cmp(where + " " + ty, e, at(row.types, ty));
            }
            cmp(where + " total", cols.value("total", 0), row.fields);
            if (row.undetermined)
                res.diffs.push_back(where + ": " + std::to_string(row.undetermined) + " undetermined fields");
        }
        for (auto& [key, row] : r.rows)
            if (!t["rows"].contains(key))
                res.diffs.push_back("bound " + B + " row " + key + ": not present in the expected table");
        const json& s = t["summary"];
        for (int m = 1; m <= 4; ++m)
            cmp("bound " + B + " summary m=" + std::to_string(m), s.value("m" + std::to_string(m), 0),
                at(r.histogram, m));
        cmp("bound " + B + " summary total", s.value("total", 0), r.s3_fields());
        if (r.classified)
            for (auto& ty : kTypeNames)
                cmp("bound " + B + " summary " + ty, s.value(ty, 0), at(r.type_counts, ty));
    }

    if (j["cyclic"].contains(B)) {
        const json& t = j["cyclic"][B];
        for (auto& [key, cols] : t["rows"].items()) {
            std::string where = "bound " + B + " cyclic row " + key;
            auto it = r.cyclic.find(key);
            CyclicRow empty;
            const CyclicRow& row = it == r.cyclic.end() ? empty : it->second;
            cmp(where + " m=1", cols.value("m1", 0), at(row.multiplets, 1));
            cmp(where + " m=2", cols.value("m2", 0), at(row.multiplets, 2));
            cmp(where + " fields", cols.value("fields", 0), row.fields);
        }
        for (auto& [key, row] : r.cyclic)
            if (!t["rows"].contains(key))
                res.diffs.push_back("bound " + B + " cyclic row " + key + ": not present in the expected table");
        if (t.contains("minima"))
            for (auto& [key, mn] : t["minima"].items()) {
                auto it = r.cyclic.find(key);
                cmp("bound " + B + " cyclic row " + key + " min d_L", mn.value("dl", 0),
                    it == r.cyclic.end() ? 0 : it->second.min_dl);
                cmp("bound " + B + " cyclic row " + key + " min f", mn.value("f", 0),
                    it == r.cyclic.end() ? 0 : it->second.min_f);
            }
        i64 m1 = 0, m2 = 0;
        for (auto& [key, row] : r.cyclic) {
            m1 += at(row.multiplets, 1);
            m2 += at(row.multiplets, 2);
        }
        cmp("bound " + B + " cyclic summary m=1", t["summary"].value("m1", 0), m1);
        cmp("bound " + B + " cyclic summary m=2", t["summary"].value("m2", 0), m2);
        cmp("bound " + B + " cyclic summary fields", t["summary"].value("fields", 0), at(r.type_counts, "zeta"));
    }

    if (j["counts"].contains(B)) {
        cmp("bound " + B + " S3 fields", j["counts"][B].value("s3", 0), r.s3_fields());
        cmp("bound " + B + " cyclic fields", j["counts"][B].value("cyclic", 0), at(r.type_counts, "zeta"));
    }

    if (j["type_totals"].contains(B)) {
        i64 total = r.total_fields();
        for (auto& [ty, v] : j["type_totals"][B].items()) {
            if (ty != "zeta" && !r.classified)
                continue;
            i64 got = at(r.type_counts, ty);
            cmp("bound " + B + " type " + ty + " count", v.value("count", 0), got);
            // percentages are printed rounded to 1%
            double pct = total ? 100.0 * got / total : 0;
            ++res.cells;
            if (std::fabs(pct - v.value("percent", 0)) >= 1.0) {
                std::ostringstream os;
                os << "bound " << B << " type " << ty << " share: expected about " << v.value("percent", 0)
                   << "%, got " << std::fixed << std::setprecision(2) << pct << "%";
                res.diffs.push_back(os.str());
            }
        }
        if (r.classified && at(r.type_counts, "undetermined"))
            res.diffs.push_back("bound " + B + ": " + std::to_string(at(r.type_counts, "undetermined")) +
                                " undetermined fields");
    }

    if (j["multiplets"].contains(B)) {
        if (!r.classified) {
            res.skipped.push_back("multiplet type tables");
        } else {
            for (auto& [name, list] : j["multiplets"][B].items()) {
                std::set<std::string> seen;
                auto it = r.multiplet_types.find(name);
                for (auto& e : list) {
                    std::string key = tuple_key(e["types"].get<std::vector<std::string>>());
                    seen.insert(key);
                    std::string where = "bound " + B + " " + name + " (" + key + ")";
                    cmp(where + " frequency", e.value("frequency", 0),
                        it == r.multiplet_types.end() ? 0 : at(it->second, key));
                    cmp(where + " first d_L", e.value("first_dl", 0), at(r.multiplet_first_dl, name + ":" + key));
                    if (e.contains("capitulation_number"))
                        cmp(where + " capitulation number", e.value("capitulation_number", 0),
                            at(r.capitulation_numbers, key));
                }
                if (it != r.multiplet_types.end())
                    for (auto& [key, n] : it->second)
                        if (!seen.count(key))
                            res.diffs.push_back("bound " + B + " " + name + " (" + key + "): " + std::to_string(n) +
                                                " occurrences not present in the expected table");
            }
        }
    }

    if (r.classified) {
        for (auto& [ty, e] : j["singlet_minima"].items()) {
            i64 dl = e.value("dl", 0);
            if (dl > r.hi)
                continue;
            cmp("smallest " + ty + " singlet", dl, at(r.singlet_minima, ty));
        }
        for (auto& w : j["witnesses"]) {
            i64 dl = w.value("dl", 0);
            if (dl < r.lo || dl > r.hi)
                continue;
            std::vector<const FieldRecord*> ms;
            for (auto& x : r.records)
                if (x.dl == dl)
                    ms.push_back(&x);
            std::vector<std::string> types;
            for (auto* x : ms)
                types.push_back(x->type);
            std::string want = tuple_key(w["types"].get<std::vector<std::string>>());
            std::string got = tuple_key(types);
            ++res.cells;
            if (want != got)
                res.diffs.push_back("d_L=" + std::to_string(dl) + ": expected (" + want + "), got (" + got + ")");
            if (w.contains("capitulation_number")) {
                i64 nu = std::count_if(ms.begin(), ms.end(), [](auto* x) { return x->C == 2; });
                cmp("d_L=" + std::to_string(dl) + " capitulation number", w.value("capitulation_number", 0), nu);
            }
            if (w.contains("E"))
                for (auto* x : ms)
                    if (x->type.rfind("alpha", 0) == 0)
                        cmp("d_L=" + std::to_string(dl) + " E of an alpha member", 0, x->E);
        }
    }
    return res;
}

}  // namespace dpf
