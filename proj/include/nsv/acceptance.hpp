#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsv::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return true;
    }
};

struct Options {
    /// Negative control: relative perturbation injected into the computed
    /// constants before criterion 1 compares them against the pinned values.
    /// Zero in normal runs.
    double constant_fault = 0.0;
    /// Stream for the one-line-per-criterion PASS/FAIL log; null = silent.
    std::ostream* log = nullptr;
    /// Criterion ids to run; empty = all ten.
    std::vector<int> only;
};

/// Runs the full acceptance suite (criteria 1-10) and reports per-criterion
/// pass/fail with a one-line detail.
SuiteResult run_suite(const Options& options = {});

}  // namespace nsv::acceptance
