#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hypflow {

/// One time sample of the flow monitors. Column order here is the CSV order.
struct MonitorSample {
    double t = 0.0;
    double area = 0.0;                       // |Sigma_t|
    std::array<double, 3> int_sigma{};       // int sigma_1, sigma_2, sigma_3 d mu
    std::array<double, 4> int_f_sigma{};     // int F sigma_0 .. F sigma_3 d mu
    double q = 0.0;
    double umbilic_dev = 0.0;                // max_i |kappa_i - 1|
    double main_margin = 0.0;
    double aux_margin_weighted = 0.0;        // lambda'-weighted mean curvature inequality
    double aux_margin_area = 0.0;            // int lambda' H vs area inequality
    double r_min = 0.0;
    double r_max = 0.0;
};

inline constexpr std::size_t kCsvColumnCount = 16;

inline constexpr std::array<std::string_view, kCsvColumnCount> kMonitorColumns = {
    "t",            "area",         "int_sigma1",   "int_sigma2",   "int_sigma3",
    "int_F_sigma0", "int_F_sigma1", "int_F_sigma2", "int_F_sigma3", "Q",
    "umbilic_dev",  "main_margin",  "aux_margin_weighted", "aux_margin_area", "r_min",
    "r_max"};

/// Values of a sample in column order.
[[nodiscard]] std::array<double, kCsvColumnCount> sample_values(const MonitorSample& s);
[[nodiscard]] MonitorSample sample_from_values(const std::array<double, kCsvColumnCount>& v);

struct RunMetadata {
    std::string config_hash;
    int n = 0;
    int n_rho = 0;
    int n_phi = 1;
    std::string representation = "axisymmetric";
    std::string rng = "mt19937_64";
};

/// Time-indexed record of a run. Times strictly increase, values are finite.
struct MonitorSeries {
    RunMetadata meta;
    std::vector<MonitorSample> samples;

    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] const MonitorSample& back() const { return samples.back(); }

    /// Throws Domain on non-increasing times or non-finite values.
    void check_invariants() const;
};

}  // namespace hypflow
