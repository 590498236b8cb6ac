#pragma once

// Elementary symmetric functions of principal curvatures, the diagonal of the
// Newton tensors, Garding cone membership and the Newton-MacLaurin ratios.

#include <array>
#include <span>
#include <vector>

namespace hypflow {

/// Principal curvatures kappa_1..kappa_{n-1} of a hypersurface in H^n.
/// Constructed only through make(), which enforces n >= 3 and finite entries.
class CurvatureTuple {
public:
    static CurvatureTuple make(std::vector<double> kappa);

    [[nodiscard]] std::span<const double> values() const noexcept { return kappa_; }
    [[nodiscard]] std::size_t size() const noexcept { return kappa_.size(); }
    /// Ambient dimension n (the tuple holds n-1 curvatures).
    [[nodiscard]] int ambient_dim() const noexcept { return static_cast<int>(kappa_.size()) + 1; }
    [[nodiscard]] double operator[](std::size_t i) const { return kappa_[i]; }

private:
    explicit CurvatureTuple(std::vector<double> kappa) : kappa_(std::move(kappa)) {}
    std::vector<double> kappa_;
};

/// All sigma_0..sigma_{len} of a raw sequence via the incremental
/// polynomial-coefficient recurrence prod_i (1 + kappa_i x). O(len^2).
/// No range checks; used on hot paths.
void elementary_symmetric_all(std::span<const double> kappa, std::span<double> out);

/// sigma_m(kappa); sigma_0 = 1. Throws Domain unless 0 <= m <= n-1.
[[nodiscard]] double elementary_symmetric(const CurvatureTuple& kappa, int m);

/// Diagonal of T_{m-1} in the principal frame: T_i = sigma_{m-1}(kappa without entry i).
/// Throws Domain unless 1 <= m <= n-1.
[[nodiscard]] std::vector<double> newton_tensor_diag(const CurvatureTuple& kappa, int m);

struct TraceResiduals {
    // Each residual is |lhs - rhs| scaled by max(1, magnitude of the terms involved).
    double contraction = 0.0;  // sum T_i k_i   vs m sigma_m
    double trace = 0.0;        // sum T_i       vs (n-m) sigma_{m-1}
    double square = 0.0;       // sum T_i k_i^2 vs sigma_1 sigma_m - (m+1) sigma_{m+1}
    bool passed = false;

    [[nodiscard]] double max() const noexcept;
};

/// Checks the three Newton-tensor trace identities. Throws Domain unless 1 <= m <= n-2.
[[nodiscard]] TraceResiduals verify_trace_identities(const CurvatureTuple& kappa, int m,
                                                     double tol);

/// True iff sigma_i(kappa) > 0 for i = 1..m. Strict, no epsilon.
[[nodiscard]] bool in_garding_cone(const CurvatureTuple& kappa, int m);

struct NewtonMaclaurin {
    double ratio_upper = 0.0;  // sigma_{m-1} sigma_{m+1} / sigma_m^2
    double bound_upper = 0.0;  // m (n-m-1) / ((m+1)(n-m))
    double ratio_lower = 0.0;  // sigma_1 sigma_{m-1} / sigma_m
    double bound_lower = 0.0;  // m (n-1) / (n-m)

    [[nodiscard]] bool holds(double rel_tol = 1e-12) const noexcept;
    /// Both ratios sit on their bounds within rel_tol.
    [[nodiscard]] bool is_equality(double rel_tol = 1e-12) const noexcept;
};

/// Newton-MacLaurin ratios and their sharp bounds. Caller guarantees kappa in Gamma_m.
/// Throws Domain unless 1 <= m <= n-2, and Domain when sigma_m == 0.
[[nodiscard]] NewtonMaclaurin newton_maclaurin_margins(const CurvatureTuple& kappa, int m);

/// Binomial coefficient as a double (exact for the small arguments used here).
[[nodiscard]] double binomial(int n, int k) noexcept;

}  // namespace hypflow
