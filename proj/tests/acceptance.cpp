// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hypflow/flow.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/report.hpp"
#include "hypflow/sobolev.hpp"
#include "hypflow/symfun.hpp"
#include "support/gen.hpp"

using namespace hypflow;
using std::numbers::pi;

namespace {

namespace tol {
constexpr double sphere_oracle = 1e-6;
constexpr double sphere_runtime_s = 30.0;
constexpr double q_drift = 1e-8;
constexpr double perturbed_runtime_s = 60.0;
constexpr double sharp_limit_rel = 0.01;
constexpr double sharp_bound = 1e-6;
constexpr double margin = 1e-6;
constexpr double gauss_bonnet = 1e-4;
constexpr double trace = 1e-10;
constexpr double equality = 1e-12;
constexpr double evolution_rel = 1e-3;
constexpr double decay_rel = 0.15;
constexpr double beckner = 1e-8;
constexpr double beckner_constant = 1e-10;
constexpr double slope = 0.1;
constexpr double expansion = 0.05;
}  // namespace tol

constexpr std::uint64_t kSeed = 0x5eed2024;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %-34s %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* spec, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, spec, a);
    return buf;
}

std::string fmt(const char* spec, double a, double b) {
    char buf[192];
    std::snprintf(buf, sizeof buf, spec, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RadialProfile zonal_profile(int n, int n_rho, const std::function<double(double)>& r) {
    auto grid = Grid::axisymmetric(n, n_rho);
    std::vector<double> v(grid->node_count());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = r(grid->rho()[j]);
    return RadialProfile(grid, std::move(v));
}

// Random two-convex zonal shapes for criteria 4 and 11.
std::vector<RadialProfile> random_two_convex_shapes(int count) {
    testgen::SplitMix g(kSeed);
    std::vector<RadialProfile> shapes;
    const int dims[] = {4, 5, 6};
    for (int i = 0; static_cast<int>(shapes.size()) < count; ++i) {
        const int n = dims[shapes.size() % 3];
        auto z = testgen::zonal_series(g, 1.0, g.pick(1, 5));
        // scale the perturbation to a random fraction of r0
        double total = 0.0;
        for (double a : z.a) total += std::abs(a);
        const double eps = g.uniform(0.01, 0.3) * z.r0;
        for (double& a : z.a) a *= eps / total;
        auto p = zonal_profile(n, 400, [&](double rho) { return z.r(rho); });
        if (two_convexity_violations(curvature_from_profile(p)).empty()) shapes.push_back(std::move(p));
    }
    return shapes;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    FlowConfig c;
    c.n = 4;
    c.n_rho = 200;
    c.t_max = 2.0;
    c.sample_interval = 0.01;
    c.shape = ShapeSpec::sphere(1.0);
    const auto series = run(c);
    double worst = 0.0;
    for (const auto& s : series.samples) {
        // sinh r(t) = sinh(1) e^{t/3}
        const double oracle = std::asinh(std::sinh(1.0) * std::exp(s.t / 3.0));
        worst = std::max({worst, std::abs(s.r_min - oracle), std::abs(s.r_max - oracle)});
    }
    const double secs = seconds_since(t0);
    report(1, "sphere ODE oracle", worst < tol::sphere_oracle && secs < tol::sphere_runtime_s,
           fmt("max |r - oracle| = %.3g (< 1e-6) over t in [0, 2]; runtime %.1f s (< 30 s)", worst, secs));
}

struct PerturbedRun {
    MonitorSeries series;
    std::optional<FlowState> at_t8;
    double seconds = 0.0;
};

FlowConfig criterion_2_config() {
    FlowConfig c;
    c.n = 5;
    c.n_rho = 400;
    c.t_max = 10.0;
    c.sample_interval = 1e-3;
    c.shape = ShapeSpec::cosine_bump(1.0, 0.1, 2);
    return c;
}

PerturbedRun perturbed_run() {
    PerturbedRun out;
    const auto t0 = std::chrono::steady_clock::now();
    out.series = run(criterion_2_config(), [&](const FlowState& s, const MonitorSample&) {
        if (std::abs(s.t - 8.0) < 1e-9) out.at_t8 = s;
    });
    out.seconds = seconds_since(t0);
    return out;
}

void criterion_2(const PerturbedRun& r) {
    const auto& s = r.series.samples;
    double drift = -INFINITY;
    for (std::size_t i = 1; i < s.size(); ++i) drift = std::max(drift, s[i].q - s[i - 1].q);
    const double decrease = s.front().q - s.back().q;
    report(2, "Q monotone (n=5 cosine bump)",
           drift <= tol::q_drift && decrease > 0.0 && r.seconds < tol::perturbed_runtime_s,
           fmt("max per-sample increase %.3g (<= 1e-8), total decrease %.6g (> 0)", drift, decrease) +
               fmt("; %g samples; runtime %.1f s (< 60 s)", static_cast<double>(s.size()), r.seconds));
}

void criterion_3(const PerturbedRun& r) {
    const double sharp = 6.0 * std::sqrt(8.0 * pi * pi / 3.0);
    double min_q = INFINITY;
    for (const auto& x : r.series.samples) min_q = std::min(min_q, x.q);
    const double q_end = r.series.back().q;
    const double rel = std::abs(q_end / sharp - 1.0);
    report(3, "sharp limit of Q",
           r.series.back().t == 10.0 && rel < tol::sharp_limit_rel && min_q >= sharp - tol::sharp_bound,
           fmt("Q(10) = %.10g vs 6 omega_4^{1/2} = %.10g", q_end, sharp) +
               fmt(" (rel gap %.3g < 0.01); min Q - sharp = %.3g (>= -1e-6)", rel, min_q - sharp));
}

void criteria_4_and_11() {
    const auto shapes = random_two_convex_shapes(50);
    double worst_main = INFINITY, worst_aux = INFINITY;
    std::size_t mean_convex = 0;
    for (const auto& p : shapes) {
        const auto cf = curvature_from_profile(p);
        worst_main = std::min(worst_main, main_inequality_margin(cf));
        bool h_positive = true;
        for (std::size_t j = 0; j < cf.node_count(); ++j) {
            double h = 0.0;
            for (double k : cf.kappa_at(j)) h += k;
            h_positive = h_positive && h > 0.0;
        }
        if (!h_positive) continue;
        ++mean_convex;
        const auto aux = auxiliary_inequality_margins(cf);
        worst_aux = std::min({worst_aux, aux.weighted_mean_curvature, aux.area_bound});
    }
    double sphere_main = 0.0, sphere_aux = 0.0;
    for (int n : {4, 5, 6}) {
        for (double r0 : {0.5, 1.0, 2.0}) {
            const auto cf = curvature_from_profile(zonal_profile(n, 400, [r0](double) { return r0; }));
            sphere_main = std::max(sphere_main, std::abs(main_inequality_margin(cf)));
            const auto aux = auxiliary_inequality_margins(cf);
            sphere_aux = std::max({sphere_aux, std::abs(aux.weighted_mean_curvature), std::abs(aux.area_bound)});
        }
    }
    report(4, "main inequality margins", worst_main >= -tol::margin && sphere_main < tol::margin,
           fmt("min margin over 50 two-convex shapes %.4g (>= -1e-6); max |margin| on spheres %.3g (< 1e-6)",
               worst_main, sphere_main));
    report(11, "auxiliary inequality margins",
           mean_convex > 0 && worst_aux >= -tol::margin && sphere_aux < tol::margin,
           fmt("min margin over %g mean-convex shapes", static_cast<double>(mean_convex)) +
               fmt(" %.4g (>= -1e-6); max |margin| on spheres %.3g (< 1e-6)", worst_aux, sphere_aux));
}

void criterion_5() {
    testgen::SplitMix g(kSeed + 5);
    double worst_zonal = 0.0, worst_full = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto z = testgen::zonal_series(g, 0.15, g.pick(1, 6));
        const auto zonal = zonal_profile(3, 400, [&](double rho) { return z.r(rho); });
        worst_zonal = std::max(worst_zonal, std::abs(total_sigma(zonal, 2) - area(zonal) - 4 * pi));

        // smooth non-axisymmetric shape: cubic polynomial in the ambient coordinates
        const double r0 = g.uniform(0.6, 2.0);
        double coeff[20];
        for (double& a : coeff) a = g.uniform(-1.0, 1.0);
        const double amp = g.uniform(0.05, 0.3) * r0 / 20.0;
        auto grid = Grid::full_sphere(200, 400);
        std::vector<double> r(grid->node_count());
        for (int a = 0; a < grid->n_rho(); ++a) {
            for (int b = 0; b < grid->n_phi(); ++b) {
                const double x = grid->sin_rho()[a] * std::cos(grid->phi(b));
                const double y = grid->sin_rho()[a] * std::sin(grid->phi(b));
                const double zc = grid->cos_rho()[a];
                const double mono[20] = {1,         x,         y,         zc,        x * x,     y * y,    zc * zc,
                                         x * y,     x * zc,    y * zc,    x * x * x, y * y * y, zc * zc * zc,
                                         x * x * y, x * x * zc, y * y * x, y * y * zc, zc * zc * x, zc * zc * y,
                                         x * y * zc};
                double p = 0.0;
                for (int k = 0; k < 20; ++k) p += coeff[k] * mono[k];
                r[static_cast<std::size_t>(a * grid->n_phi() + b)] = r0 + amp * p;
            }
        }
        const RadialProfile full(grid, std::move(r));
        worst_full = std::max(worst_full, std::abs(total_sigma(full, 2) - area(full) - 4 * pi));
    }
    report(5, "Gauss-Bonnet oracle (n=3)",
           worst_zonal < tol::gauss_bonnet && worst_full < tol::gauss_bonnet,
           fmt("max |int sigma_2 - |S| - 4 pi|: axisymmetric N=400 %.3g, S^2 200x400 %.3g (< 1e-4)", worst_zonal,
               worst_full));
}

void criterion_6() {
    testgen::SplitMix g(kSeed + 6);
    double worst_trace = 0.0, worst_ineq = -INFINITY;
    std::size_t false_equal = 0, missed_equal = 0, checks = 0;
    for (int n = 4; n <= 8; ++n) {
        for (int i = 0; i < 1000; ++i) {
            const auto t = CurvatureTuple::make(testgen::gamma2_tuple(g, n - 1));
            for (int m = 1; m <= n - 2; ++m) {
                worst_trace = std::max(worst_trace, verify_trace_identities(t, m, tol::trace).max());
                if (!in_garding_cone(t, m)) continue;
                const auto nm = newton_maclaurin_margins(t, m);
                worst_ineq = std::max({worst_ineq, (nm.ratio_upper - nm.bound_upper) / nm.bound_upper,
                                       (nm.bound_lower - nm.ratio_lower) / nm.bound_lower});
                if (nm.is_equality(tol::equality)) ++false_equal;
                ++checks;
            }
        }
        for (int i = 0; i < 20; ++i) {
            const auto t = CurvatureTuple::make(std::vector<double>(n - 1, g.uniform(0.05, 5.0)));
            for (int m = 1; m <= n - 2; ++m) {
                if (!newton_maclaurin_margins(t, m).is_equality(tol::equality)) ++missed_equal;
            }
        }
    }
    report(6, "Newton tensor identities and N-M",
           worst_trace < tol::trace && worst_ineq <= tol::equality && false_equal == 0 && missed_equal == 0,
           fmt("max trace residual %.3g (< 1e-10); max relative excess over the bounds %.3g", worst_trace,
               worst_ineq) +
               fmt(" (<= 1e-12, %g checks); equality flagged on %g non-constant", static_cast<double>(checks),
                   static_cast<double>(false_equal)) +
               fmt(" / missed on %g constant tuples", static_cast<double>(missed_equal)));
}

void criterion_7(const PerturbedRun& r) {
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& res : evolution_identity_residual(r.series, 2)) {
        worst = std::max(worst, res.relative);
        ++count;
    }
    report(7, "evolution identity, m=2", worst < tol::evolution_rel,
           fmt("max relative residual %.3g (< 1e-3) over %g interior samples at spacing 1e-3", worst,
               static_cast<double>(count)));
}

void criterion_8() {
    bool ok = true;
    std::string detail;
    for (int n : {4, 5}) {
        FlowConfig c;
        c.n = n;
        c.n_rho = 400;
        c.t_max = 10.0 * (n - 1);
        c.sample_interval = 0.05;
        c.shape = ShapeSpec::cosine_bump(1.0, 0.1, 2);
        const auto series = run(c);
        const auto fit = umbilic_decay_fit(series, 3.0 * (n - 1), 10.0 * (n - 1));
        const double expected = -1.0 / (n - 1);
        const double rel = std::abs(fit.slope / expected - 1.0);
        ok = ok && fit.reliable && rel <= tol::decay_rel;
        if (!detail.empty()) detail += "; ";
        detail += "n=" + std::to_string(n) + fmt(": slope %.5f vs %.5f", fit.slope, expected) +
                  fmt(" (rel %.3g, limit 0.15; ratio to -1/(n-1) is %.3f)", rel, fit.slope / expected);
    }
    report(8, "umbilic decay exponent", ok, detail);
}

void criterion_9() {
    testgen::SplitMix g(kSeed + 9);
    double worst = INFINITY, worst_const = 0.0;
    for (int n = 4; n <= 8; ++n) {
        for (int i = 0; i < 200; ++i) {
            const auto z = testgen::zonal_series(g, 0.5, g.pick(1, 6));
            const double scale = g.uniform(0.3, 3.0);
            const auto f = SphereFunction::sample(n, 400, [&](double rho) { return scale * std::exp(z.r(rho) - z.r0); });
            worst = std::min(worst, beckner_margin(f).margin);
        }
        for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const auto f = SphereFunction::sample(n, 400, [c](double) { return c; });
            worst_const = std::max(worst_const, std::abs(beckner_margin(f).margin));
        }
    }
    auto slope = [](int n, int mode) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (double e : {1e-1, 1e-2, 1e-3}) {
            const auto f = SphereFunction::sample(n, 400, [&](double rho) { return 1.0 + e * std::cos(mode * rho); });
            const double x = std::log(e), y = std::log(beckner_margin(f).margin);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        return (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    };
    double worst_slope = 0.0;
    for (int n = 4; n <= 8; ++n) worst_slope = std::max(worst_slope, std::abs(slope(n, 2) - 2.0));
    report(9, "Beckner inequality", worst >= -tol::beckner && worst_const < tol::beckner_constant &&
                                        worst_slope <= tol::slope,
           fmt("min margin on 1000 functions %.3g (>= -1e-8); max |margin| on constants %.3g (< 1e-10)", worst,
               worst_const) +
               fmt("; eps-slope for 1 + eps cos(2 rho): max |slope - 2| = %.3g (<= 0.1); cos(rho) gives %.3f",
                   worst_slope, slope(5, 1)));
}

void criterion_10(const PerturbedRun& r) {
    if (!r.at_t8) {
        report(10, "asymptotic expansion at t=8", false, "no state captured at t = 8");
        return;
    }
    const double ratio = asymptotic_limit_ratio(*r.at_t8);
    report(10, "asymptotic expansion at t=8", std::abs(ratio - 1.0) < tol::expansion,
           fmt("ratio %.6f, |ratio - 1| = %.3g (< 0.05)", ratio, std::abs(ratio - 1.0)));
}

void criterion_12(const PerturbedRun& first) {
    const auto second = run(criterion_2_config());
    const auto a = emit(first.series, Format::Csv);
    const auto b = emit(second, Format::Csv);
    report(12, "determinism", a == b,
           fmt("two runs of criterion 2: CSV %g bytes each, ", static_cast<double>(a.size())) +
               (a == b ? "byte-identical" : "DIFFERENT"));
}

}  // namespace

int main() {
    std::printf("acceptance suite (tolerances pinned in tests/acceptance.cpp)\n");
    criterion_1();
    const auto perturbed = perturbed_run();
    criterion_2(perturbed);
    criterion_3(perturbed);
    criteria_4_and_11();
    criterion_5();
    criterion_6();
    criterion_7(perturbed);
    criterion_8();
    criterion_9();
    criterion_10(perturbed);
    criterion_12(perturbed);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
