#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace steinerforge {

/// Outcome of one cross-check suite run. A timeout is reported separately
/// and never counted as a disagreement.
struct SuiteReport {
    std::string suite;
    int samples = 0;
    int agreements = 0;
    int disagreements = 0;
    int timeouts = 0;
    std::vector<std::string> lines;

    bool all_agree() const { return disagreements == 0; }
    std::string summary() const;
};

struct SuiteOptions {
    int samples = 100;
    std::uint64_t seed = 1;
    int max_n = 8;
    double solve_budget_secs = 60.0;  // 0 means unlimited
};

/// Known suites:
///   thmA-b  semicomplete fast path vs exact search
///   thmB    NAE oracle vs 0-perfect gadget decision
///   thmC    NAE oracle vs 1-perfect add-source gadget decision
///   thm1a   2-linkage oracle vs internal packing on the ring gadget
///   thm1d   arc packing on the split gadget vs internal packing unsplit
///   thm1c   structured symmetric decision vs brute-force packing
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_verify_suite(const std::string& name, const SuiteOptions& opt);

std::vector<std::string> verify_suite_names();

}  // namespace steinerforge
