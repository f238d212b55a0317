// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dpf/report.hpp"

using namespace dpf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void line(int n, bool ok, const std::string& what, const std::string& detail)
{
    failures += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << n << "  " << what << "  [" << detail << "]" << std::endl;
}

template <class T>
void expect(std::ostringstream& os, bool& ok, const std::string& label, const T& got, const T& want)
{
    if (got != want) {
        ok = false;
        os << label << "=" << got << " (want " << want << ") ";
    }
}

i64 count(const std::map<std::string, i64>& m, const std::string& k)
{
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
}

std::vector<const FieldRecord*> members(const RangeReport& r, i64 dl)
{
    std::vector<const FieldRecord*> out;
    for (auto& x : r.records)
        if (x.dl == dl)
            out.push_back(&x);
    return out;
}

std::string sorted_types(const std::vector<const FieldRecord*>& ms)
{
    std::vector<std::string> t;
    for (auto* x : ms)
        t.push_back(x->type.empty() ? "?" : x->type);
    std::sort(t.begin(), t.end());
    std::string s;
    for (auto& x : t)
        s += (s.empty() ? "" : ",") + x;
    return s;
}

}  // namespace

int main()
{
    std::vector<std::string> alarms;
    auto collect = [&](const RunResult& r) { alarms.insert(alarms.end(), r.alarms.begin(), r.alarms.end()); };
    i64 classified = 0;
    auto tally = [&](const RangeReport& r) {
        for (auto& x : r.records)
            classified += x.galois == Galois::s3 && (x.status == "verified" || x.status == "forced");
    };

    // 1. fields below 1500
    {
        auto t0 = Clock::now();
        auto run = classify_range(1, 1499);
        double secs = seconds_since(t0);
        collect(run);
        tally(run.report);
        const auto& r = run.report;
        std::ostringstream os;
        bool ok = true;
        expect(os, ok, "fields", r.total_fields(), i64(44));
        expect(os, ok, "cyclic", count(r.type_counts, "zeta"), i64(6));
        expect(os, ok, "gamma", count(r.type_counts, "gamma"), i64(2));
        expect(os, ok, "delta1", count(r.type_counts, "delta1"), i64(26));
        expect(os, ok, "epsilon", count(r.type_counts, "epsilon"), i64(10));
        expect(os, ok, "undetermined", count(r.type_counts, "undetermined"), i64(0));
        for (i64 dl : {756, 1300}) {
            auto ms = members(r, dl);
            expect(os, ok, "type@" + std::to_string(dl), ms.size() == 1 ? ms[0]->type : std::string("-"),
                   std::string("gamma"));
        }
        ok = ok && secs < 300;
        os << std::fixed << std::setprecision(1) << secs << " s";
        line(1, ok, "fields below 1500: 44 = 6 cyclic + 2 gamma + 26 delta1 + 10 epsilon", os.str());
    }

    // 2. counts
    {
        auto t0 = Clock::now();
        std::ostringstream os;
        bool ok = true;
        struct Want {
            i64 B, s3, cyclic;
        };
        for (auto w : {Want{100000, 4753, 51}, Want{200000, 9945, 70}, Want{500000, 26330, 110}}) {
            i64 s3 = 0, cyc = 0;
            for (auto& f : enumerate(w.B))
                (f.galois == Galois::cyclic ? cyc : s3)++;
            expect(os, ok, "S3<" + std::to_string(w.B), s3, w.s3);
            expect(os, ok, "cyclic<" + std::to_string(w.B), cyc, w.cyclic);
        }
        double secs = seconds_since(t0);
        ok = ok && secs < 3600;
        os << std::fixed << std::setprecision(1) << secs << " s";
        line(2, ok, "counts 4753+51, 9945+70, 26330+110 below 1e5, 2e5, 5e5", os.str());
    }

    // one classification run to the alpha3 witness; the 1e5 report is its restriction
    auto t0 = Clock::now();
    auto big = classify_range(1, 146853);
    double big_secs = seconds_since(t0);
    collect(big);
    tally(big.report);
    std::vector<FieldRecord> below;
    for (auto& x : big.report.records)
        if (x.dl < 100000)
            below.push_back(x);
    RangeReport r5 = build_report(1, 99999, below);
    std::cout << "     classified 1.." << 146853 << " in " << std::fixed << std::setprecision(1) << big_secs << " s"
              << std::endl;

    // 3. ring space multiplicities against enumeration, histogram
    {
        const i64 B = 100000;
        std::map<i64, int> found;
        for (auto& M : group_multiplets(enumerate(B)))
            if (M.d != 1)
                found[M.dl] = M.m();
        i64 pairs = 0, bad = 0, matched = 0;
        for (i64 d = 5; d < B; ++d) {
            if (!is_fundamental_discriminant(d))
                continue;
            std::vector<Conductor> cs = admissible_conductors(d, B - 1);
            if (cs.empty())
                continue;
            SelmerContext ctx(quadratic_field(d));
            for (auto& c : cs) {
                i64 dl = c.f * c.f * d;
                auto it = found.find(dl);
                int m = it == found.end() ? 0 : it->second;
                if (m)
                    ++matched;
                ++pairs;
                bad += ctx.multiplicity(c).m != m;
            }
        }
        std::ostringstream os;
        bool ok = bad == 0 && matched == (i64)found.size();
        os << pairs << " pairs, " << bad << " disagree; ";
        auto h = [&](int m) { return r5.histogram.count(m) ? r5.histogram.at(m) : 0; };
        expect(os, ok, "singlets", h(1), i64(4652));
        expect(os, ok, "doublets", h(2), i64(9));
        expect(os, ok, "triplets", h(3), i64(21));
        expect(os, ok, "quartets", h(4), i64(5));
        os << "histogram " << h(1) << "/" << h(2) << "/" << h(3) << "/" << h(4);
        line(3, ok, "ring space multiplicity equals enumeration below 1e5; histogram 4652/9/21/5", os.str());
    }

    // 4. smallest singlets
    {
        std::ostringstream os;
        bool ok = true;
        std::map<std::string, i64> want{{"epsilon", 148}, {"delta1", 229}, {"gamma", 756},
                                        {"delta2", 2597}, {"beta2", 5684}, {"alpha3", 146853}};
        for (auto& [t, dl] : want) {
            i64 got = count(big.report.singlet_minima, t);
            expect(os, ok, t, got, dl);
            auto ms = members(big.report, got);
            if (ms.size() != 1 || ms[0]->status != "verified") {
                ok = false;
                os << t << " not verified ";
            }
        }
        auto a3 = members(big.report, 146853);
        expect(os, ok, "E@146853", a3.size() == 1 ? a3[0]->E : -1, 0);
        if (ok)
            os << "all verified, E=0 at 146853";
        line(4, ok, "smallest singlets 148, 229, 756, 2597, 5684, 146853 (alpha3 with E=0)", os.str());
    }

    // 5. unramified quartet
    {
        auto ms = members(big.report, 32009);
        std::ostringstream os;
        bool ok = true;
        expect(os, ok, "types", sorted_types(ms), std::string("alpha1,alpha1,alpha1,delta1"));
        int nu = 0, e0 = 0;
        for (auto* x : ms) {
            nu += x->C == 2;
            e0 += x->type == "alpha1" && x->E == 0;
            if (x->status != "verified")
                ok = false;
        }
        expect(os, ok, "capitulation", nu, 3);
        expect(os, ok, "alpha1 with E=0", e0, 3);
        if (ok)
            os << "(alpha1,alpha1,alpha1,delta1), nu=3";
        line(5, ok, "quartet at 32009 with capitulation number 3", os.str());
    }

    // 6. ramified triplet
    {
        auto t1 = Clock::now();
        auto run = classify_range(966397, 966397);
        collect(run);
        tally(run.report);
        auto ms = members(run.report, 966397);
        std::ostringstream os;
        bool ok = true;
        expect(os, ok, "types", sorted_types(ms), std::string("alpha2,alpha2,delta1"));
        for (auto* x : ms)
            ok = ok && x->status == "verified";
        os << sorted_types(ms) << ", " << std::fixed << std::setprecision(1) << seconds_since(t1) << " s";
        line(6, ok, "triplet at 966397 classifies as (alpha2,alpha2,delta1)", os.str());
    }

    // 7. property suite over every field classified above
    {
        std::ostringstream os;
        os << classified << " fields, " << alarms.size() << " violations";
        for (size_t i = 0; i < alarms.size() && i < 5; ++i)
            os << "; " << alarms[i];
        line(7, alarms.empty() && classified > 0, "property suite", os.str());
    }

    // 8. cyclic fields below 1e5
    {
        std::ostringstream os;
        bool ok = true;
        std::map<i64, i64> first;
        i64 n = 0;
        for (auto& x : r5.records)
            if (x.galois == Galois::cyclic) {
                ++n;
                if (!first.count(x.f))
                    first[x.f] = x.dl;
            }
        expect(os, ok, "count", n, i64(51));
        expect(os, ok, "f=7", first[7], i64(49));
        expect(os, ok, "f=9", first[9], i64(81));
        expect(os, ok, "f=63", first[63], i64(3969));
        expect(os, ok, "f=91", first[91], i64(8281));
        if (ok)
            os << "51 fields, minima 49/81/3969/8281";
        line(8, ok, "cyclic fields below 1e5", os.str());
    }

    // 9. type shares below 1e5
    {
        std::ostringstream os;
        bool ok = true;
        struct Want {
            const char* t;
            i64 n;
            int pct;
        };
        auto stats = frequencies(r5);
        std::map<std::string, double> pct;
        for (auto& s : stats.types)
            pct[s.type] = s.percent;
        for (auto w : {Want{"delta1", 3349, 70}, Want{"epsilon", 1117, 23}, Want{"gamma", 106, 2},
                       Want{"beta2", 76, 2}, Want{"delta2", 79, 2}, Want{"alpha1", 16, 0}, Want{"beta1", 10, 0},
                       Want{"zeta", 51, 1}}) {
            expect(os, ok, w.t, count(r5.type_counts, w.t), w.n);
            expect(os, ok, std::string(w.t) + "%", (int)std::lround(pct[w.t]), w.pct);
        }
        expect(os, ok, "undetermined", count(r5.type_counts, "undetermined"), i64(0));
        if (ok)
            os << "counts exact, rounded shares agree";
        line(9, ok, "type statistics below 1e5", os.str());
    }

    std::cout << (failures ? "FAILED " : "ALL PASSED ") << 9 - failures << "/9" << std::endl;
    return failures ? 1 : 0;
}
