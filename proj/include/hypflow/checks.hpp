#pragma once

// Static verification suites behind `hypflow check`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypflow/shapes.hpp"

namespace hypflow {

struct CheckOptions {
    std::string only;                            // empty: every suite
    std::optional<int> n;                        // restrict dimension-dependent suites
    std::optional<ShapeSpec::Kind> shape;        // shape family for the geometric suites
    std::uint64_t seed = 20240601;
};

struct SuiteResult {
    std::string suite;
    std::string result;          // the mathematical statement exercised
    bool ran = true;             // false when the options leave nothing to check
    bool passed = true;
    std::size_t cases = 0;
    double worst = 0.0;          // largest violation / error measured
    double threshold = 0.0;
    std::string detail;
};

struct CheckReport {
    std::vector<SuiteResult> suites;

    [[nodiscard]] bool all_pass() const noexcept;
    /// Coverage table, one row per suite.
    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string to_json() const;
};

/// trace-identities, newton-maclaurin, beckner, inequalities, gauss-bonnet.
[[nodiscard]] const std::vector<std::string>& suite_names();

/// Throws Domain for an unknown suite name or an n outside [3, 8].
[[nodiscard]] CheckReport run_checks(const CheckOptions& options);

}  // namespace hypflow
