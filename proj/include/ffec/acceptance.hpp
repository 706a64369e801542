#ifndef FFEC_ACCEPTANCE_HPP
#define FFEC_ACCEPTANCE_HPP

// The verification battery. Twelve numbered criteria cover: the prime
// polynomial theorem, agreement of the two pair-sum paths, Weil bounds,
// numerical RH for the L-roots, the trace identity and its measured sign,
// class-counting inequalities, exact Markov exceptional sets, the
// trace-weighted sum bound, coverage scans, symmetric-function identities,
// closed-form constants, and byte-level determinism of the composite
// report. Each criterion yields one pass/fail record with a short detail
// line; full_suite_report builds the JSON whose stability criterion 12
// checks.

#include <cstdint>
#include <string>
#include <vector>

#include "ffec/report_json.hpp"

namespace ffec {

struct RunOptions {
    unsigned threads = 0;    // 0: FFEC_THREADS, else hardware count
    std::uint64_t seed = 0;  // field construction seed
    std::string cache_dir;   // irreducible-table cache ("" keeps tables in memory)
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

constexpr int kCriterionCount = 12;

// id in [1, kCriterionCount]; throws std::out_of_range otherwise.
CriterionResult run_criterion(int id, const RunOptions& opt);
std::vector<CriterionResult> run_all_criteria(const RunOptions& opt);

// Composite sweep report: identical bytes for a fixed seed apart from the
// top-level "timing" object.
Json full_suite_report(const RunOptions& opt);

}  // namespace ffec

#endif
