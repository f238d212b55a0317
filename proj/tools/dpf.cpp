#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "dpf/report.hpp"

using dpf::i64;

namespace {

constexpr int kAlarm = 2;
constexpr int kUsage = 64;
constexpr int kMismatch = 1;

std::ostream* open_output(const std::string& path, std::unique_ptr<std::ofstream>& file)
{
    if (path.empty() || path == "-")
        return &std::cout;
    file = std::make_unique<std::ofstream>(path);
    if (!*file)
        throw std::runtime_error("cannot write " + path);
    return file.get();
}

int report_verification(const dpf::RangeReport& r, const std::string& expected_path)
{
    auto data = dpf::ExpectedDataset::load(expected_path.empty() ? dpf::ExpectedDataset::default_path()
                                                                  : expected_path);
    auto v = dpf::verify_tables(r, data);
    for (auto& s : v.skipped)
        std::cerr << "not checked: " << s << '\n';
    for (auto& d : v.diffs)
        std::cerr << "mismatch: " << d << '\n';
    std::cerr << "compared " << v.cells << " cells against bound " << v.bound << ", " << v.diffs.size()
              << " mismatches\n";
    return v.diffs.empty() ? 0 : kMismatch;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Totally real cubic fields: enumeration, multiplicities and DPF types"};
    app.require_subcommand(1);

    i64 lo = 0, hi = 0;
    bool predict_only = false, stats = false, verify = false, quiet = false;
    std::string depth = "full", emit = "table", output, expected;
    double budget_seconds = -1;
    int budget_rounds = -1;
    long max_bits = -1;

    auto* classify = app.add_subcommand("classify", "classify every field with MIN <= d_L <= MAX");
    classify->add_option("min", lo, "smallest discriminant")->required()->check(CLI::PositiveNumber);
    classify->add_option("max", hi, "largest discriminant")->required()->check(CLI::PositiveNumber);
    classify->add_flag("--predict-only", predict_only, "skip the sextic work, compute multiplicities only");
    classify->add_option("--classify-depth", depth, "forced: use forcing theorems when they apply")
        ->check(CLI::IsMember({"forced", "full"}));
    classify->add_option("--budget", budget_seconds, "wall clock seconds per field (0 for none)")
        ->check(CLI::NonNegativeNumber);
    classify->add_option("--budget-rounds", budget_rounds, "batches of character primes per cube kernel")
        ->check(CLI::PositiveNumber);
    classify->add_option("--max-bits", max_bits, "precision ceiling for cube roots")->check(CLI::Range(256L, 1L << 24));
    classify->add_option("--emit", emit, "output format")->check(CLI::IsMember({"jsonl", "csv", "table"}));
    classify->add_option("-o,--output", output, "output file (default stdout)");
    classify->add_flag("--stats", stats, "append the frequency statistics to the table output");
    classify->add_flag("--verify", verify, "compare with the transcribed tables when the range has one");
    classify->add_option("--expected", expected, "path of the expected dataset");
    classify->add_flag("-q,--quiet", quiet, "no progress on stderr");

    std::string input;
    auto* check = app.add_subcommand("verify", "rebuild a report from a JSONL stream and compare with the tables");
    check->add_option("input", input, "JSONL file written by classify --emit jsonl")->required();
    check->add_option("min", lo, "smallest discriminant of the run")->required()->check(CLI::PositiveNumber);
    check->add_option("max", hi, "largest discriminant of the run")->required()->check(CLI::PositiveNumber);
    check->add_option("--expected", expected, "path of the expected dataset");
    check->add_option("--emit", emit, "print the rebuilt report")->check(CLI::IsMember({"none", "table", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (lo > hi) {
        std::cerr << "min must not exceed max\n";
        return kUsage;
    }

    try {
        if (check->parsed()) {
            std::ifstream in(input);
            if (!in) {
                std::cerr << "cannot read " << input << '\n';
                return kUsage;
            }
            auto report = dpf::build_report(lo, hi, dpf::read_jsonl(in));
            if (emit == "table")
                dpf::write_table(std::cout, report);
            else if (emit == "csv")
                dpf::write_csv(std::cout, report);
            auto inv = dpf::report_invariants(report);
            for (auto& s : inv)
                std::cerr << "alarm: " << s << '\n';
            int rc = report_verification(report, expected);
            return inv.empty() ? rc : kAlarm;
        }

        dpf::RunOptions opts;
        opts.predict_only = predict_only;
        opts.depth = depth == "forced" ? dpf::Depth::forced : dpf::Depth::full;
        opts.budget = dpf::Budget::from_env();
        if (budget_seconds >= 0)
            opts.budget.seconds = budget_seconds;
        if (budget_rounds > 0)
            opts.budget.rounds = budget_rounds;
        if (max_bits > 0)
            opts.budget.max_bits = max_bits;
        i64 step = 0;
        if (!quiet)
            opts.progress = [&](i64 done, i64 total) {
                if (done * 20 / std::max<i64>(total, 1) > step) {
                    step = done * 20 / std::max<i64>(total, 1);
                    std::cerr << "\r" << done << " / " << total << " fields" << std::flush;
                }
            };
        auto result = dpf::classify_range(lo, hi, opts);
        if (!quiet)
            std::cerr << '\n';

        std::unique_ptr<std::ofstream> file;
        std::ostream& out = *open_output(output, file);
        if (emit == "jsonl") {
            dpf::write_jsonl(out, result.report);
        } else if (emit == "csv") {
            dpf::write_csv(out, result.report);
        } else {
            dpf::write_table(out, result.report);
            if (stats)
                dpf::write_statistics(out, dpf::frequencies(result.report));
        }
        for (auto& a : result.alarms)
            std::cerr << "alarm: " << a << '\n';
        i64 undetermined = result.report.type_counts.count("undetermined")
                               ? result.report.type_counts.at("undetermined")
                               : 0;
        if (undetermined)
            std::cerr << undetermined << " fields undetermined\n";
        int rc = 0;
        if (verify)
            rc = report_verification(result.report, expected);
        return result.alarms.empty() ? rc : kAlarm;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kAlarm;
    }
}
