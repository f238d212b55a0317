#include "doctest.h"

#include <sstream>

#include "dpf/report.hpp"

using namespace dpf;

namespace {

const RunResult& small_run()
{
    static RunResult r = classify_range(1, 1499);
    return r;
}

}  // namespace

TEST_CASE("conductor shapes and row keys")
{
    CHECK(conductor_shape(make_conductor(1, 229)) == "1");
    CHECK(conductor_shape(make_conductor(2, 37)) == "q");
    CHECK(conductor_shape(make_conductor(6, 21)) == "3q");
    CHECK(conductor_condition(make_conductor(6, 21), 21) == "d=3(9)");
    CHECK(conductor_shape(make_conductor(7, 53)) == "l");
    CHECK(conductor_shape(make_conductor(14, 29)) == "ql");
    CHECK(conductor_shape(make_conductor(10, 13)) == "q1q2");
    CHECK(conductor_shape(make_conductor(9, 5)).front() == '9');
    CHECK(conductor_condition(make_conductor(9, 5), 5) == "d=2(3)");
    CHECK(conductor_condition(make_conductor(9, 13), 13) == "d=1(3)");
    CHECK(conductor_condition(make_conductor(9, 33), 33) == "d=6(9)");
    CHECK(row_key(1, make_conductor(1, 229), 229) == "1|1|");
    CHECK(multiplet_name(4) == "quartets");
}

TEST_CASE("a small range classifies every field without alarms")
{
    const auto& run = small_run();
    CHECK(run.alarms.empty());
    const auto& r = run.report;
    CHECK(r.total_fields() == 44);
    CHECK(r.s3_fields() == 38);
    CHECK(r.type_counts.count("undetermined") == 0);
    CHECK(r.type_counts.at("zeta") == 6);
    CHECK(report_invariants(r).empty());
    for (auto& x : r.records)
        if (x.galois == Galois::s3) {
            CHECK(x.status != "undetermined");
            CHECK(x.E == x.A + 1 - x.U);
            CHECK(x.U + 1 == x.A + x.R + x.C);
        }
}

TEST_CASE("JSONL round trip is exact and deterministic")
{
    const auto& r = small_run().report;
    std::ostringstream a, b;
    write_jsonl(a, r);
    write_jsonl(b, classify_range(1, 1499).report);
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    auto recs = read_jsonl(in);
    CHECK(recs == r.records);
    CHECK(build_report(1, 1499, recs) == r);

    FieldRecord big;
    big.dl = (i64(1) << 53) + 1;
    big.d = 5;
    big.f = 3;
    big.form = CubicForm{1, 0, -3, 1};
    big.type = "gamma";
    big.status = "verified";
    std::string line = to_jsonl(big);
    CHECK(line.find("\"9007199254740993\"") != std::string::npos);
    CHECK(from_jsonl(line) == big);

    FieldRecord none = big;
    none.dl = 148;
    none.type.clear();
    none.status = "skipped";
    line = to_jsonl(none);
    CHECK(line.find("\"type\":null") != std::string::npos);
    CHECK(line.find("\"E\":null") != std::string::npos);
    CHECK(from_jsonl(line) == none);
}

TEST_CASE("merging adjacent ranges gives the report of the union")
{
    auto a = classify_range(1, 700).report;
    auto b = classify_range(701, 1499).report;
    CHECK(merge(a, b) == small_run().report);
    CHECK(merge(b, a) == merge(a, b));
}

TEST_CASE("the small range matches the transcribed tables")
{
    auto data = ExpectedDataset::load(ExpectedDataset::default_path());
    auto v = verify_tables(small_run().report, data);
    CHECK(v.diffs.empty());
    CHECK(v.cells > 10);

    auto recs = small_run().report.records;
    for (auto& x : recs)
        if (x.dl == 229) {
            x.type = "epsilon";
            break;
        }
    auto bad = verify_tables(build_report(1, 1499, recs), data);
    CHECK_FALSE(bad.diffs.empty());
}

TEST_CASE("prediction only skips the sextic step")
{
    RunOptions o;
    o.predict_only = true;
    auto run = classify_range(1, 1499, o);
    CHECK(run.alarms.empty());
    CHECK_FALSE(run.report.classified);
    CHECK(run.report.histogram == small_run().report.histogram);
    for (auto& x : run.report.records) {
        if (x.galois == Galois::s3) {
            CHECK(x.status == "skipped");
            CHECK(x.type.empty());
        }
    }
}

TEST_CASE("frequencies")
{
    auto s = frequencies(classify_range(10, 20).report);
    CHECK(s.types.empty());
    auto t = frequencies(small_run().report);
    double total = 0;
    for (auto& x : t.types)
        total += x.percent;
    CHECK(total == doctest::Approx(100.0));
}
