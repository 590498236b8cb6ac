#include "hypflow/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hypflow/errors.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/sobolev.hpp"
#include "hypflow/symfun.hpp"
#include "json_io.hpp"

namespace hypflow {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kEqualityTol = 1e-12;
constexpr double kMarginTol = 1e-6;
constexpr double kSphereTol = 1e-6;
constexpr double kBecknerTol = 1e-8;
constexpr double kConstantTol = 1e-10;
constexpr double kSlopeTol = 0.1;
constexpr double kGaussBonnetTol = 1e-4;
constexpr int kTuplesPerDim = 1000;
constexpr int kConstantTuplesPerDim = 50;
constexpr int kShapeCount = 50;
constexpr int kBecknerFunctions = 200;
constexpr int kGaussBonnetShapes = 20;
constexpr int kGrid = 400;

std::vector<int> dims(const CheckOptions& o, std::vector<int> fallback) {
    if (o.n) return {*o.n};
    return fallback;
}

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

CurvatureTuple random_gamma2_tuple(SeededRng& rng, int n) {
    for (;;) {
        const double scale = rng.uniform(0.2, 3.0);
        std::vector<double> k(static_cast<std::size_t>(n - 1));
        for (auto& x : k) x = scale * (1.0 + rng.uniform(-1.5, 1.5));
        auto t = CurvatureTuple::make(std::move(k));
        if (in_garding_cone(t, 2)) return t;
    }
}

SuiteResult trace_identities(const CheckOptions& o) {
    SuiteResult r{"trace-identities", "Newton tensor trace identities", true, true, 0, 0.0, kTraceTol, ""};
    SeededRng rng(o.seed);
    for (int n : dims(o, {4, 5, 6, 7, 8})) {
        for (int i = 0; i < kTuplesPerDim; ++i) {
            const auto t = random_gamma2_tuple(rng, n);
            for (int m = 1; m <= n - 2; ++m) {
                const auto res = verify_trace_identities(t, m, kTraceTol);
                r.worst = std::max(r.worst, res.max());
                r.passed = r.passed && res.passed;
                ++r.cases;
            }
        }
    }
    r.detail = "scaled residuals on random Gamma_2 tuples, every 1 <= m <= n-2";
    return r;
}

SuiteResult newton_maclaurin(const CheckOptions& o) {
    SuiteResult r{"newton-maclaurin", "Newton-MacLaurin inequalities", true, true, 0, 0.0, kEqualityTol, ""};
    SeededRng rng(o.seed + 1);
    std::size_t false_equal = 0, missed_equal = 0;
    auto excess = [](const NewtonMaclaurin& nm) {
        return std::max((nm.ratio_upper - nm.bound_upper) / nm.bound_upper,
                        (nm.bound_lower - nm.ratio_lower) / nm.bound_lower);
    };
    for (int n : dims(o, {4, 5, 6, 7, 8})) {
        const int top = std::min(2, n - 2);
        for (int i = 0; i < kTuplesPerDim; ++i) {
            const auto t = random_gamma2_tuple(rng, n);
            for (int m = 1; m <= top; ++m) {
                const auto nm = newton_maclaurin_margins(t, m);
                r.worst = std::max(r.worst, excess(nm));
                r.passed = r.passed && nm.holds(kEqualityTol);
                if (nm.is_equality(kEqualityTol)) ++false_equal;
                ++r.cases;
            }
        }
        for (int i = 0; i < kConstantTuplesPerDim; ++i) {
            const auto t = CurvatureTuple::make(std::vector<double>(n - 1, rng.uniform(0.1, 5.0)));
            for (int m = 1; m <= top; ++m) {
                const auto nm = newton_maclaurin_margins(t, m);
                r.worst = std::max(r.worst, excess(nm));
                if (!nm.is_equality(kEqualityTol)) ++missed_equal;
                ++r.cases;
            }
        }
    }
    r.passed = r.passed && false_equal == 0 && missed_equal == 0;
    r.detail = "equality flagged on " + std::to_string(false_equal) + " non-constant tuple(s), missed on " +
               std::to_string(missed_equal) + " constant tuple(s)";
    return r;
}

SuiteResult beckner(const CheckOptions& o) {
    SuiteResult r{"beckner", "Beckner sharp Sobolev inequality on S^{n-1}", true, true, 0, 0.0, kBecknerTol, ""};
    SeededRng rng(o.seed + 2);
    double worst_constant = 0.0, worst_slope = 0.0;
    for (int n : dims(o, {4, 5, 6, 7, 8})) {
        for (int i = 0; i < kBecknerFunctions; ++i) {
            const int modes = rng.uniform_int(1, 4);
            std::vector<double> a(static_cast<std::size_t>(modes) + 1, 0.0);
            for (int k = 1; k <= modes; ++k) a[k] = rng.uniform(-0.4, 0.4) / k;
            const double c = rng.uniform(0.5, 2.0);
            const auto f = SphereFunction::sample(n, kGrid, [&](double rho) {
                double s = 0.0;
                for (int k = 1; k <= modes; ++k) s += a[k] * std::cos(k * rho);
                return c * std::exp(s);
            });
            const auto m = beckner_margin(f);
            r.worst = std::max(r.worst, -m.margin);
            r.passed = r.passed && m.margin >= -kBecknerTol;
            ++r.cases;
        }
        for (double c : {0.3, 1.0, 4.0}) {
            const auto m = beckner_margin(SphereFunction::sample(n, kGrid, [c](double) { return c; }));
            worst_constant = std::max(worst_constant, std::abs(m.margin));
            r.passed = r.passed && std::abs(m.margin) < kConstantTol;
            ++r.cases;
        }
        if (n >= 4) {
            // ell = 1 modes are conformal directions; the quadratic term lives on ell >= 2
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double eps[] = {1e-1, 1e-2, 1e-3};
            for (double e : eps) {
                const auto m = beckner_margin(
                    SphereFunction::sample(n, kGrid, [e](double rho) { return 1.0 + e * std::cos(2.0 * rho); }));
                const double x = std::log(e), y = std::log(std::max(m.margin, 1e-300));
                sx += x, sy += y, sxx += x * x, sxy += x * y;
            }
            const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
            worst_slope = std::max(worst_slope, std::abs(slope - 2.0));
            r.passed = r.passed && std::abs(slope - 2.0) <= kSlopeTol;
            ++r.cases;
        }
    }
    r.detail = "max |margin| on constants " + fmt("%.2g", worst_constant) +
               ", max |slope - 2| for 1 + eps cos(2 rho) " + fmt("%.3g", worst_slope);
    return r;
}

ShapeSpec random_shape(SeededRng& rng, ShapeSpec::Kind kind, std::uint64_t seed) {
    const double r0 = rng.uniform(0.5, 2.0);
    switch (kind) {
        case ShapeSpec::Kind::Sphere: return ShapeSpec::sphere(r0);
        case ShapeSpec::Kind::CosineBump:
            return ShapeSpec::cosine_bump(r0, rng.uniform(0.01, 0.3) * r0, rng.uniform_int(1, 4));
        case ShapeSpec::Kind::RandomBandlimited: break;
    }
    return ShapeSpec::random_bandlimited(r0, rng.uniform(0.01, 0.3) * r0, rng.uniform_int(1, 5), seed);
}

SuiteResult inequalities(const CheckOptions& o) {
    SuiteResult r{"inequalities", "sigma_2 area inequality and lambda'-weighted mean curvature inequalities",
                  true, true, 0, 0.0, kMarginTol, ""};
    SeededRng rng(o.seed + 3);
    const auto kind = o.shape.value_or(ShapeSpec::Kind::RandomBandlimited);
    const auto ns = dims(o, {4, 5, 6});
    std::size_t accepted = 0, rejected = 0, mean_convex = 0;
    double worst_sphere = 0.0;
    for (int i = 0; accepted < static_cast<std::size_t>(kShapeCount); ++i) {
        const int n = ns[static_cast<std::size_t>(i) % ns.size()];
        const auto shape = random_shape(rng, kind, o.seed + static_cast<std::uint64_t>(i));
        const auto p = make_profile(shape, n, kGrid);
        const auto cf = curvature_from_profile(p);
        if (!two_convexity_violations(cf).empty()) {
            if (++rejected > 20 * static_cast<std::size_t>(kShapeCount)) {
                throw Error(ErrorCode::Precondition, "inequalities: could not draw two-convex shapes");
            }
            continue;
        }
        ++accepted;
        const double main = main_inequality_margin(cf);
        r.worst = std::max(r.worst, -main);
        r.passed = r.passed && main >= -kMarginTol;
        ++r.cases;
        // Gamma_2 already forces sigma_1 > 0
        ++mean_convex;
        const auto aux = auxiliary_inequality_margins(cf);
        const double lo = std::min(aux.weighted_mean_curvature, aux.area_bound);
        r.worst = std::max(r.worst, -lo);
        r.passed = r.passed && lo >= -kMarginTol;
        ++r.cases;
    }
    for (int n : ns) {
        for (double r0 : {0.5, 1.0, 2.0}) {
            const auto cf = curvature_from_profile(make_profile(ShapeSpec::sphere(r0), n, kGrid));
            const auto aux = auxiliary_inequality_margins(cf);
            for (double m : {main_inequality_margin(cf), aux.weighted_mean_curvature, aux.area_bound}) {
                worst_sphere = std::max(worst_sphere, std::abs(m));
                r.passed = r.passed && std::abs(m) < kSphereTol;
                ++r.cases;
            }
        }
    }
    r.detail = std::to_string(accepted) + " two-convex " + to_string(kind) + " shapes (" +
               std::to_string(rejected) + " rejected), " + std::to_string(mean_convex) +
               " mean-convex; max |margin| on geodesic spheres " + fmt("%.2g", worst_sphere);
    return r;
}

SuiteResult gauss_bonnet(const CheckOptions& o) {
    SuiteResult r{"gauss-bonnet", "Gauss-Bonnet (n=3): int sigma_2 - |Sigma| = 4 pi", true, true, 0, 0.0,
                  kGaussBonnetTol, ""};
    if (o.n && *o.n != 3) {
        r.ran = false;
        r.detail = "skipped: only defined for n = 3";
        return r;
    }
    SeededRng rng(o.seed + 4);
    const auto kind = o.shape.value_or(ShapeSpec::Kind::RandomBandlimited);
    double worst_zonal = 0.0, worst_full = 0.0;
    for (int i = 0; i < kGaussBonnetShapes; ++i) {
        // star-shaped is all that is needed here, so perturbations may be large
        const double r0 = rng.uniform(0.5, 2.0);
        const double eps = rng.uniform(0.05, 0.4) * r0;
        ShapeSpec shape = ShapeSpec::sphere(r0);
        if (kind == ShapeSpec::Kind::CosineBump) shape = ShapeSpec::cosine_bump(r0, eps, rng.uniform_int(1, 4));
        if (kind == ShapeSpec::Kind::RandomBandlimited) {
            shape = ShapeSpec::random_bandlimited(r0, eps, rng.uniform_int(1, 5), o.seed + static_cast<std::uint64_t>(i));
        }
        const auto zonal = make_profile(shape, 3, kGrid);
        const double dz = std::abs(total_sigma(zonal, 2) - area(zonal) - 4.0 * std::numbers::pi);
        const auto full = make_sphere_profile(shape, 200, 400);
        const double df = std::abs(total_sigma(full, 2) - area(full) - 4.0 * std::numbers::pi);
        worst_zonal = std::max(worst_zonal, dz);
        worst_full = std::max(worst_full, df);
        r.cases += 2;
    }
    r.worst = std::max(worst_zonal, worst_full);
    r.passed = r.worst < kGaussBonnetTol;
    r.detail = "max |int sigma_2 - |Sigma| - 4 pi|: axisymmetric N=400 " + fmt("%.3g", worst_zonal) +
               ", S^2 grid 200x400 " + fmt("%.3g", worst_full);
    return r;
}

}  // namespace

bool CheckReport::all_pass() const noexcept {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return !s.ran || s.passed; });
}

std::string CheckReport::to_text() const {
    std::ostringstream out;
    char line[320];
    std::snprintf(line, sizeof line, "%-17s %-6s %8s %11s %10s  %s\n", "suite", "status", "cases", "worst",
                  "threshold", "result");
    out << line;
    for (const auto& s : suites) {
        const char* status = !s.ran ? "skip" : (s.passed ? "pass" : "FAIL");
        std::snprintf(line, sizeof line, "%-17s %-6s %8zu %11.3g %10.2g  %s\n", s.suite.c_str(), status, s.cases,
                      s.worst, s.threshold, s.result.c_str());
        out << line;
        out << std::string(18, ' ') << s.detail << '\n';
    }
    out << (all_pass() ? "all suites pass\n" : "SOME SUITES FAIL\n");
    return out.str();
}

std::string CheckReport::to_json() const {
    detail::json j;
    j["all_pass"] = all_pass();
    j["suites"] = detail::json::array();
    for (const auto& s : suites) {
        j["suites"].push_back({{"suite", s.suite},
                               {"result", s.result},
                               {"ran", s.ran},
                               {"passed", s.passed},
                               {"cases", s.cases},
                               {"worst", s.worst},
                               {"threshold", s.threshold},
                               {"detail", s.detail}});
    }
    return j.dump(2);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"trace-identities", "newton-maclaurin", "beckner",
                                                   "inequalities", "gauss-bonnet"};
    return names;
}

CheckReport run_checks(const CheckOptions& options) {
    const auto& names = suite_names();
    if (!options.only.empty() && std::find(names.begin(), names.end(), options.only) == names.end()) {
        throw Error(ErrorCode::Domain, "unknown suite '" + options.only + "'");
    }
    if (options.n && (*options.n < 3 || *options.n > 8)) {
        throw Error(ErrorCode::Domain, "--n must lie in [3, 8]");
    }
    using Suite = SuiteResult (*)(const CheckOptions&);
    const Suite suites[] = {trace_identities, newton_maclaurin, beckner, inequalities, gauss_bonnet};
    CheckReport report;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (options.only.empty() || options.only == names[i]) report.suites.push_back(suites[i](options));
    }
    return report;
}

}  // namespace hypflow
