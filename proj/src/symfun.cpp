#include "hypflow/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypflow/errors.hpp"

namespace hypflow {

namespace {

void require_order(const CurvatureTuple& kappa, int m, int lo, int hi, const char* op) {
    if (m < lo || m > hi) {
        throw Error(ErrorCode::Domain, std::string(op) + ": order m=" + std::to_string(m) +
                                           " outside [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "] for n=" +
                                           std::to_string(kappa.ambient_dim()));
    }
}

std::vector<double> sigmas_of(const CurvatureTuple& kappa) {
    std::vector<double> s(kappa.size() + 1);
    elementary_symmetric_all(kappa.values(), s);
    return s;
}

// sigma_0..sigma_{len-1} of kappa with entry `skip` removed.
std::vector<double> sigmas_without(const CurvatureTuple& kappa, std::size_t skip) {
    std::vector<double> rest;
    rest.reserve(kappa.size() - 1);
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        if (i != skip) rest.push_back(kappa[i]);
    }
    std::vector<double> s(rest.size() + 1);
    elementary_symmetric_all(rest, s);
    return s;
}

double scaled_residual(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) / std::max(1.0, scale);
}

}  // namespace

CurvatureTuple CurvatureTuple::make(std::vector<double> kappa) {
    if (kappa.size() < 2) {
        throw Error(ErrorCode::Domain,
                    "curvature tuple needs n-1 >= 2 entries, got " + std::to_string(kappa.size()));
    }
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        if (!std::isfinite(kappa[i])) {
            throw Error(ErrorCode::Domain, "curvature tuple entry " + std::to_string(i) +
                                               " is not finite");
        }
    }
    return CurvatureTuple(std::move(kappa));
}

void elementary_symmetric_all(std::span<const double> kappa, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    const std::size_t top = out.size() - 1;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        // descending so each coefficient still holds the previous factor's value
        for (std::size_t j = std::min(i + 1, top); j >= 1; --j) {
            out[j] += kappa[i] * out[j - 1];
        }
    }
}

double elementary_symmetric(const CurvatureTuple& kappa, int m) {
    require_order(kappa, m, 0, static_cast<int>(kappa.size()), "elementary_symmetric");
    if (m == 0) return 1.0;
    std::vector<double> s(static_cast<std::size_t>(m) + 1);
    elementary_symmetric_all(kappa.values(), s);
    return s[static_cast<std::size_t>(m)];
}

std::vector<double> newton_tensor_diag(const CurvatureTuple& kappa, int m) {
    require_order(kappa, m, 1, static_cast<int>(kappa.size()), "newton_tensor_diag");
    std::vector<double> diag(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        diag[i] = sigmas_without(kappa, i)[static_cast<std::size_t>(m - 1)];
    }
    return diag;
}

double TraceResiduals::max() const noexcept {
    return std::max({contraction, trace, square});
}

TraceResiduals verify_trace_identities(const CurvatureTuple& kappa, int m, double tol) {
    const int n = kappa.ambient_dim();
    require_order(kappa, m, 1, n - 2, "verify_trace_identities");
    const auto s = sigmas_of(kappa);
    const auto t = newton_tensor_diag(kappa, m);
    const auto um = static_cast<std::size_t>(m);

    double tk = 0.0, tk_abs = 0.0, tsum = 0.0, tsum_abs = 0.0, tk2 = 0.0, tk2_abs = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = kappa[i];
        tk += t[i] * k;
        tk_abs += std::abs(t[i] * k);
        tsum += t[i];
        tsum_abs += std::abs(t[i]);
        tk2 += t[i] * k * k;
        tk2_abs += std::abs(t[i] * k * k);
    }

    TraceResiduals r;
    r.contraction = scaled_residual(tk, m * s[um], tk_abs);
    r.trace = scaled_residual(tsum, (n - m) * s[um - 1], tsum_abs);
    const double rhs = s[1] * s[um] - (m + 1) * s[um + 1];
    r.square = scaled_residual(
        tk2, rhs, std::max({tk2_abs, std::abs(s[1] * s[um]), std::abs((m + 1) * s[um + 1])}));
    r.passed = r.max() <= tol;
    return r;
}

bool in_garding_cone(const CurvatureTuple& kappa, int m) {
    if (m < 1 || m > static_cast<int>(kappa.size())) return false;
    const auto s = sigmas_of(kappa);
    for (int i = 1; i <= m; ++i) {
        if (!(s[static_cast<std::size_t>(i)] > 0.0)) return false;
    }
    return true;
}

bool NewtonMaclaurin::holds(double rel_tol) const noexcept {
    return ratio_upper <= bound_upper * (1.0 + rel_tol) &&
           ratio_lower >= bound_lower * (1.0 - rel_tol);
}

bool NewtonMaclaurin::is_equality(double rel_tol) const noexcept {
    return std::abs(ratio_upper - bound_upper) <= rel_tol * std::max(1.0, bound_upper) &&
           std::abs(ratio_lower - bound_lower) <= rel_tol * std::max(1.0, bound_lower);
}

NewtonMaclaurin newton_maclaurin_margins(const CurvatureTuple& kappa, int m) {
    const int n = kappa.ambient_dim();
    require_order(kappa, m, 1, n - 2, "newton_maclaurin_margins");
    const auto s = sigmas_of(kappa);
    const auto um = static_cast<std::size_t>(m);
    if (s[um] == 0.0) {
        throw Error(ErrorCode::Domain,
                    "newton_maclaurin_margins: sigma_" + std::to_string(m) + " is zero");
    }
    NewtonMaclaurin nm;
    nm.ratio_upper = s[um - 1] * s[um + 1] / (s[um] * s[um]);
    nm.bound_upper = static_cast<double>(m * (n - m - 1)) / static_cast<double>((m + 1) * (n - m));
    nm.ratio_lower = s[1] * s[um - 1] / s[um];
    nm.bound_lower = static_cast<double>(m * (n - 1)) / static_cast<double>(n - m);
    return nm;
}

double binomial(int n, int k) noexcept {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace hypflow
