#pragma once

// Self-check suites run by `gkpsim validate`. Every check records the
// measured deviation next to its tolerance.

#include <string>
#include <vector>

#include <json.hpp>

namespace gkp::validation {

struct Check {
    std::string suite;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

struct Options {
    double max_j = 0.0;  ///< caps the largest J a suite visits; 0 = suite default
    unsigned seed = 20240611;
};

/// dmatrix, completeness, fourier, asymptotic, zeta, faraday, figures,
/// convergence, requirements, kernels.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
std::vector<Check> run_suite(const std::string& suite, const Options& options);

std::vector<Check> run_all(const Options& options);

bool all_passed(const std::vector<Check>& checks);

nlohmann::ordered_json report(const std::vector<Check>& checks);

}  // namespace gkp::validation
