#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hypflow/monitor.hpp"

namespace hypflow {

enum class Format { Csv, Json, Svg };

[[nodiscard]] Format format_from_string(std::string_view name);
[[nodiscard]] const char* extension(Format f) noexcept;

/// CSV: one header row (kMonitorColumns), values printed with 17 significant digits.
/// JSON: {"format": "hypflow.series", "version": 1, "metadata": {...},
///        "columns": [...], "samples": [{"t": ..., ...}, ...]}.
/// SVG: Q(t) with the sharp constant as a reference line, |Sigma_t| and
///      max |kappa_i - 1| on log scales.
/// Throws Domain for an empty series.
[[nodiscard]] std::string emit(const MonitorSeries& series, Format format);

/// Inverse of the JSON emitter (exact). Throws Parse.
[[nodiscard]] MonitorSeries series_from_json(std::string_view text);
/// Samples from CSV; metadata is left default. Throws Parse.
[[nodiscard]] MonitorSeries series_from_csv(std::string_view text);

struct Tolerances {
    double q_drift = 1e-8;          // allowed upward step of Q between samples
    double q_bound = 1e-6;          // Q >= sharp constant - q_bound
    double margin = 1e-6;           // inequality margins >= -margin
    double area_growth_rel = 1e-4;  // d|S|/dt >= |S| (1 - area_growth_rel)
    double limit_rel = 0.01;        // |Q(t_end) / sharp - 1| below this ...
    double limit_min_time = 10.0;   // ... checked only when the run reaches this time
    double gauss_bonnet = 1e-4;     // n = 3: |Q - 4 pi|
    double sphere_oracle = 1e-6;    // constant profiles: |r - r_oracle|
};

struct Verdict {
    enum class Status { Pass, Fail, Exempt };

    std::string claim;
    std::string statement;
    Status status = Status::Pass;
    double measured = 0.0;   // extremal violation or error, in the claim's own units
    double threshold = 0.0;
    std::string detail;
};

[[nodiscard]] const char* to_string(Verdict::Status s) noexcept;

struct VerdictReport {
    std::vector<Verdict> verdicts;

    /// True iff no verdict failed (exempt ones do not count).
    [[nodiscard]] bool all_pass() const noexcept;
    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] std::string to_text() const;
};

/// One verdict per claim. Geodesic-sphere runs (constant profile at the first
/// sample) get an extra check against the scalar radius oracle.
[[nodiscard]] VerdictReport verdicts(const MonitorSeries& series, const Tolerances& tol = {});

}  // namespace hypflow
