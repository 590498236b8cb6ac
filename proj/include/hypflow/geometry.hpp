#pragma once

// Curvature of radial graphs in H^n and the integral functionals built on it.
//
// For a graph r over S^{n-1} write lambda = sinh r, lambda' = cosh r and let
// phi be any function with d phi / dr = 1 / lambda. Only derivatives of phi
// are ever needed: grad phi = grad r / lambda. With v = sqrt(1 + |grad phi|^2)
//
//   g_ij = lambda^2 (sigma_ij + phi_i phi_j)
//   h_ij = lambda' / (v lambda) g_ij - (lambda / v) phi_ij
//
// and the area element is lambda^{n-1} v dvol_{S^{n-1}}.

#include <span>
#include <vector>

#include "hypflow/profile.hpp"

namespace hypflow {

class CurvatureField {
public:
    int n = 0;
    std::vector<double> lambda;        // sinh r
    std::vector<double> dlambda;       // cosh r
    std::vector<double> grad_phi;      // |grad phi| on the unit sphere
    std::vector<double> v;             // sqrt(1 + |grad phi|^2)
    std::vector<double> area_element;  // lambda^{n-1} v, per unit sphere measure
    std::vector<double> kappa;         // node-major, n-1 entries per node
    std::shared_ptr<const Grid> grid;

    [[nodiscard]] std::size_t node_count() const noexcept { return lambda.size(); }
    [[nodiscard]] std::span<const double> kappa_at(std::size_t node) const noexcept {
        const auto k = static_cast<std::size_t>(n - 1);
        return {kappa.data() + node * k, k};
    }
    /// Integral over the hypersurface of per-node values f (against d mu).
    [[nodiscard]] double integrate(std::span<const double> f) const;
};

/// Closed-form principal curvatures of a zonal graph at one point.
/// `radial` has multiplicity 1, `spherical` multiplicity n-2.
struct ZonalCurvatures {
    double radial = 0.0;
    double spherical = 0.0;
    double v = 1.0;
    double grad_phi = 0.0;
};
[[nodiscard]] ZonalCurvatures zonal_curvatures(double r, double dr, double d2r, double cot_rho);

/// Principal curvatures of a graph over S^2 at one point, from the partial
/// derivatives of r in (rho, phi).
struct SurfaceCurvatures {
    double k1 = 0.0;
    double k2 = 0.0;
    double v = 1.0;
    double grad_phi = 0.0;
};
struct SurfaceJet {
    double r, r_rho, r_phi, r_rho_rho, r_rho_phi, r_phi_phi;
};
[[nodiscard]] SurfaceCurvatures surface_curvatures(const SurfaceJet& jet, double sin_rho,
                                                   double cos_rho);

/// Throws Overflow naming the node if any computed quantity is not finite.
[[nodiscard]] CurvatureField curvature_from_profile(const RadialProfile& p);

/// Per-node sigma_0..sigma_max_m, node-major with stride max_m + 1.
[[nodiscard]] std::vector<double> sigma_table(const CurvatureField& cf, int max_m);

/// Nodes at which kappa is not in Gamma_2 (sigma_1 > 0 and sigma_2 > 0).
[[nodiscard]] std::vector<std::size_t> two_convexity_violations(const CurvatureField& cf);

/// omega_{n-1}, the area of the unit S^{n-1} in R^n. Throws Domain for n < 3.
[[nodiscard]] double sphere_area_constant(int n);

/// ((n-1)(n-2)/2) omega_{n-1}^{2/(n-1)}: the value of Q on every geodesic sphere.
[[nodiscard]] double sharp_q_constant(int n);

[[nodiscard]] double area(const RadialProfile& p);
[[nodiscard]] double area(const CurvatureField& cf);
[[nodiscard]] double total_sigma(const RadialProfile& p, int m);
[[nodiscard]] double total_sigma(const CurvatureField& cf, int m);

/// |S|^{-(n-3)/(n-1)} (int sigma_2 - ((n-1)(n-2)/2) |S|).
[[nodiscard]] double q_value(const RadialProfile& p);
[[nodiscard]] double q_value(const CurvatureField& cf);
[[nodiscard]] double q_from_integrals(int n, double area, double int_sigma2);

/// int sigma_2 - ((n-1)(n-2)/2)(omega^{2/(n-1)} |S|^{(n-3)/(n-1)} + |S|).
/// Throws Precondition listing the offending nodes if kappa leaves Gamma_2.
[[nodiscard]] double main_inequality_margin(const RadialProfile& p);
[[nodiscard]] double main_inequality_margin(const CurvatureField& cf);

struct AuxiliaryMargins {
    // int (lambda' sigma_1 - (n-1) lambda / v) - (n-1) omega^{1/(n-1)} |S|^{(n-2)/(n-1)}
    double weighted_mean_curvature = 0.0;
    // int lambda' sigma_1 - (n-1) omega ((|S|/omega)^{(n-2)/(n-1)} + (|S|/omega)^{n/(n-1)})
    double area_bound = 0.0;
};
/// Throws Precondition listing the offending nodes unless sigma_1 > 0 everywhere.
[[nodiscard]] AuxiliaryMargins auxiliary_inequality_margins(const RadialProfile& p);
[[nodiscard]] AuxiliaryMargins auxiliary_inequality_margins(const CurvatureField& cf);

}  // namespace hypflow
