#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dpf/cubicenum.hpp"
#include "dpf/sextic.hpp"

namespace dpf {

// one line of the JSONL stream
struct FieldRecord {
    i64 dl = 0;
    i64 d = 1;                  // 1 for cyclic fields
    i64 f = 1;
    CubicForm form;
    Galois galois = Galois::s3;
    int m_index = 1;            // 1-based position inside the multiplet
    int multiplicity = 1;
    std::string type;           // type name, "zeta" for cyclic fields, empty when not classified
    std::string status;         // verified, forced, undetermined or skipped
    int U = -1, A = -1, R = -1, C = -1, E = -1;

    bool operator==(const FieldRecord&) const = default;
};

// conductor shape such as "1", "q", "9l" or "3q1q2", and the 3-adic condition on d
std::string conductor_shape(const Conductor& f);
std::string conductor_condition(const Conductor& f, i64 d);
// "rho|shape|condition"
std::string row_key(int rho, const Conductor& f, i64 d);

struct ReportRow {
    std::map<int, i64> multiplets;              // multiplicity -> count, 0 for nilets
    std::map<std::string, i64> types;           // type -> number of fields
    i64 fields = 0;
    i64 undetermined = 0;

    bool operator==(const ReportRow&) const = default;
};

struct CyclicRow {
    std::map<int, i64> multiplets;
    i64 fields = 0;
    i64 min_dl = 0;
    i64 min_f = 0;

    bool operator==(const CyclicRow&) const = default;
};

struct RangeReport {
    i64 lo = 1, hi = 0;
    bool classified = false;                     // false when only multiplicities were computed
    std::map<std::string, ReportRow> rows;
    std::map<std::string, CyclicRow> cyclic;
    std::map<int, i64> histogram;                // multiplicity -> non-cyclic multiplets
    std::map<std::string, i64> type_counts;      // includes "zeta" and "undetermined"
    // "doublets" / "triplets" / ... -> sorted type tuple -> count, and first discriminant
    std::map<std::string, std::map<std::string, i64>> multiplet_types;
    std::map<std::string, i64> multiplet_first_dl;
    std::map<std::string, i64> capitulation_numbers;   // quartet tuple -> number of members with C = 2
    std::map<std::string, i64> singlet_minima;          // type -> smallest singlet discriminant
    std::vector<FieldRecord> records;

    i64 total_fields() const;
    i64 s3_fields() const;
    bool operator==(const RangeReport&) const = default;
};

std::string multiplet_name(int m);

struct RunOptions {
    bool predict_only = false;
    Depth depth = Depth::full;
    Budget budget;
    // called after each multiplet with (fields done, fields total)
    std::function<void(i64, i64)> progress;
};

struct RunResult {
    RangeReport report;
    std::vector<std::string> alarms;   // consistency violations, each prefixed with its discriminant
};

// enumerate, group and classify every totally real cubic field with lo <= d_L <= hi
RunResult classify_range(i64 lo, i64 hi, const RunOptions& opts = {});

// aggregate records into a report; nilet counts are recomputed from the range
RangeReport build_report(i64 lo, i64 hi, std::vector<FieldRecord> records);
// merge of reports over adjacent ranges
RangeReport merge(const RangeReport& a, const RangeReport& b);

// internal identities: weighted multiplicities equal the type column sum, row sums match totals
std::vector<std::string> report_invariants(const RangeReport& r);

// serialization
std::string to_jsonl(const FieldRecord& r);
FieldRecord from_jsonl(const std::string& line);
void write_jsonl(std::ostream& out, const RangeReport& r);
void write_csv(std::ostream& out, const RangeReport& r);
void write_table(std::ostream& out, const RangeReport& r);
std::vector<FieldRecord> read_jsonl(std::istream& in);

// relative frequencies
struct TypeShare {
    std::string type;
    i64 count = 0;
    double percent = 0;
};
struct ShapeShare {
    std::string shape;
    std::map<int, i64> multiplets;
    std::map<int, double> percent;
};
struct Statistics {
    std::vector<TypeShare> types;     // shares among all fields, cyclic ones included
    std::vector<ShapeShare> shapes;   // nilet / singlet / ... shares per conductor shape
};
Statistics frequencies(const RangeReport& r);
void write_statistics(std::ostream& out, const Statistics& s);

// comparison against the transcribed dataset
struct ExpectedDataset {
    std::string text;   // raw JSON
    static ExpectedDataset load(const std::string& path);
    static std::string default_path();
};
struct VerifyResult {
    i64 bound = 0;
    std::vector<std::string> diffs;
    std::vector<std::string> skipped;   // sections that could not be checked from this report
    int cells = 0;                      // number of compared cells
};
VerifyResult verify_tables(const RangeReport& r, const ExpectedDataset& data);

}  // namespace dpf
