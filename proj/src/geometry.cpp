#include "hypflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypflow/errors.hpp"
#include "hypflow/symfun.hpp"
#include "node_list.hpp"

namespace hypflow {

double CurvatureField::integrate(std::span<const double> f) const {
    const auto w = grid->weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) sum += w[j] * area_element[j] * f[j];
    return sum;
}

ZonalCurvatures zonal_curvatures(double r, double dr, double d2r, double cot_rho) {
    const double lam = std::sinh(r);
    const double dlam = std::cosh(r);
    const double dphi = dr / lam;
    const double d2phi = d2r / lam - dlam * dr * dr / (lam * lam);
    ZonalCurvatures z;
    z.grad_phi = std::abs(dphi);
    z.v = std::sqrt(1.0 + dphi * dphi);
    const double base = dlam / (lam * z.v);
    z.radial = base - d2phi / (lam * z.v * z.v * z.v);
    z.spherical = base - dphi * cot_rho / (lam * z.v);
    return z;
}

SurfaceCurvatures surface_curvatures(const SurfaceJet& jet, double sin_rho, double cos_rho) {
    const double lam = std::sinh(jet.r);
    const double dlam = std::cosh(jet.r);
    const double s2 = sin_rho * sin_rho;

    const double p_r = jet.r_rho / lam;
    const double p_f = jet.r_phi / lam;
    const double k = dlam / (lam * lam);
    const double p_rr = jet.r_rho_rho / lam - k * jet.r_rho * jet.r_rho;
    const double p_rf = jet.r_rho_phi / lam - k * jet.r_rho * jet.r_phi;
    const double p_ff = jet.r_phi_phi / lam - k * jet.r_phi * jet.r_phi;

    // covariant Hessian of phi on the round S^2 in (rho, phi)
    const double h_rr = p_rr;
    const double h_rf = p_rf - (cos_rho / sin_rho) * p_f;
    const double h_ff = p_ff + sin_rho * cos_rho * p_r;

    SurfaceCurvatures out;
    const double grad2 = p_r * p_r + p_f * p_f / s2;
    out.grad_phi = std::sqrt(grad2);
    out.v = std::sqrt(1.0 + grad2);

    // g / lambda^2 = sigma + dphi dphi ; M = (g/lambda^2)^{-1} H
    const double a = 1.0 + p_r * p_r;
    const double b = p_r * p_f;
    const double c = s2 + p_f * p_f;
    const double det_g = a * c - b * b;
    const double m11 = (c * h_rr - b * h_rf) / det_g;
    const double m12 = (c * h_rf - b * h_ff) / det_g;
    const double m21 = (a * h_rf - b * h_rr) / det_g;
    const double m22 = (a * h_ff - b * h_rf) / det_g;
    const double tr = m11 + m22;
    const double det = m11 * m22 - m12 * m21;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    const double mu_hi = 0.5 * tr + disc;
    const double mu_lo = 0.5 * tr - disc;

    // shape operator = lambda'/(v lambda) I - (lambda / v) g^{-1} H, and g^{-1} = M / lambda^2
    const double base = dlam / (out.v * lam);
    out.k1 = base - mu_hi / (lam * out.v);
    out.k2 = base - mu_lo / (lam * out.v);
    return out;
}

namespace {

void check_finite(const CurvatureField& cf, std::size_t node) {
    bool ok = std::isfinite(cf.lambda[node]) && std::isfinite(cf.dlambda[node]) &&
              std::isfinite(cf.v[node]) && std::isfinite(cf.area_element[node]);
    for (double k : cf.kappa_at(node)) ok = ok && std::isfinite(k);
    if (!ok) {
        throw Error(ErrorCode::Overflow,
                    "non-finite curvature data at node " + std::to_string(node));
    }
}

double c_n(int n) { return 0.5 * (n - 1) * (n - 2); }

}  // namespace

CurvatureField curvature_from_profile(const RadialProfile& p) {
    const Grid& grid = p.grid();
    const int n = grid.dim();
    const std::size_t nodes = p.node_count();
    const auto r = p.radii();
    const auto km = static_cast<std::size_t>(n - 1);

    CurvatureField cf;
    cf.n = n;
    cf.grid = p.grid_ptr();
    cf.lambda.resize(nodes);
    cf.dlambda.resize(nodes);
    cf.grad_phi.resize(nodes);
    cf.v.resize(nodes);
    cf.area_element.resize(nodes);
    cf.kappa.resize(nodes * km);

    if (grid.representation() == Representation::Axisymmetric) {
        std::vector<double> d1(nodes), d2(nodes);
        even_derivatives(r, grid.h_rho(), d1, d2);
        const auto cot = grid.cot_rho();
        for (std::size_t j = 0; j < nodes; ++j) {
            const auto z = zonal_curvatures(r[j], d1[j], d2[j], cot[j]);
            cf.lambda[j] = std::sinh(r[j]);
            cf.dlambda[j] = std::cosh(r[j]);
            cf.grad_phi[j] = z.grad_phi;
            cf.v[j] = z.v;
            cf.area_element[j] = std::pow(cf.lambda[j], n - 1) * z.v;
            double* k = cf.kappa.data() + j * km;
            k[0] = z.radial;
            for (std::size_t i = 1; i < km; ++i) k[i] = z.spherical;
            check_finite(cf, j);
        }
    } else {
        const auto d = sphere_derivatives(grid, r);
        const int np = grid.n_phi();
        const auto sn = grid.sin_rho();
        const auto cs = grid.cos_rho();
        for (std::size_t node = 0; node < nodes; ++node) {
            const auto row = node / static_cast<std::size_t>(np);
            const SurfaceJet jet{r[node],           d.d_rho[node],     d.d_phi[node],
                                 d.d_rho_rho[node], d.d_rho_phi[node], d.d_phi_phi[node]};
            const auto s = surface_curvatures(jet, sn[row], cs[row]);
            cf.lambda[node] = std::sinh(r[node]);
            cf.dlambda[node] = std::cosh(r[node]);
            cf.grad_phi[node] = s.grad_phi;
            cf.v[node] = s.v;
            cf.area_element[node] = cf.lambda[node] * cf.lambda[node] * s.v;
            cf.kappa[node * 2] = s.k1;
            cf.kappa[node * 2 + 1] = s.k2;
            check_finite(cf, node);
        }
    }
    return cf;
}

std::vector<double> sigma_table(const CurvatureField& cf, int max_m) {
    const auto stride = static_cast<std::size_t>(max_m + 1);
    const std::size_t nodes = cf.node_count();
    std::vector<double> table(nodes * stride);
    for (std::size_t j = 0; j < nodes; ++j) {
        elementary_symmetric_all(cf.kappa_at(j), std::span<double>(table.data() + j * stride, stride));
    }
    return table;
}

std::vector<std::size_t> two_convexity_violations(const CurvatureField& cf) {
    const auto s = sigma_table(cf, 2);
    std::vector<std::size_t> bad;
    for (std::size_t j = 0; j < cf.node_count(); ++j) {
        if (!(s[j * 3 + 1] > 0.0 && s[j * 3 + 2] > 0.0)) bad.push_back(j);
    }
    return bad;
}

double sphere_area_constant(int n) {
    if (n < 3) {
        throw Error(ErrorCode::Domain, "sphere_area_constant: n must be >= 3, got " + std::to_string(n));
    }
    return unit_sphere_area(n - 1);
}

double sharp_q_constant(int n) {
    return c_n(n) * std::pow(sphere_area_constant(n), 2.0 / (n - 1));
}

double area(const CurvatureField& cf) {
    const std::vector<double> ones(cf.node_count(), 1.0);
    return cf.integrate(ones);
}

double area(const RadialProfile& p) { return area(curvature_from_profile(p)); }

double total_sigma(const CurvatureField& cf, int m) {
    if (m < 0 || m > cf.n - 1) {
        throw Error(ErrorCode::Domain, "total_sigma: order m=" + std::to_string(m) +
                                           " outside [0, " + std::to_string(cf.n - 1) + "]");
    }
    const auto stride = static_cast<std::size_t>(m + 1);
    const auto table = sigma_table(cf, m);
    std::vector<double> f(cf.node_count());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = table[j * stride + static_cast<std::size_t>(m)];
    return cf.integrate(f);
}

double total_sigma(const RadialProfile& p, int m) {
    return total_sigma(curvature_from_profile(p), m);
}

double q_from_integrals(int n, double area, double int_sigma2) {
    return std::pow(area, -static_cast<double>(n - 3) / (n - 1)) * (int_sigma2 - c_n(n) * area);
}

double q_value(const CurvatureField& cf) {
    return q_from_integrals(cf.n, area(cf), total_sigma(cf, 2));
}

double q_value(const RadialProfile& p) { return q_value(curvature_from_profile(p)); }

double main_inequality_margin(const CurvatureField& cf) {
    const auto bad = two_convexity_violations(cf);
    if (!bad.empty()) {
        throw Error(ErrorCode::Precondition,
                    "main inequality needs a two-convex hypersurface; " + detail::describe_nodes(bad));
    }
    const int n = cf.n;
    const double a = area(cf);
    const double omega = sphere_area_constant(n);
    const double rhs = c_n(n) * (std::pow(omega, 2.0 / (n - 1)) *
                                     std::pow(a, static_cast<double>(n - 3) / (n - 1)) +
                                 a);
    return total_sigma(cf, 2) - rhs;
}

double main_inequality_margin(const RadialProfile& p) {
    return main_inequality_margin(curvature_from_profile(p));
}

AuxiliaryMargins auxiliary_inequality_margins(const CurvatureField& cf) {
    const int n = cf.n;
    const std::size_t nodes = cf.node_count();
    const auto s = sigma_table(cf, 1);
    std::vector<std::size_t> bad;
    std::vector<double> f13(nodes), f14(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        const double sigma1 = s[j * 2 + 1];
        if (!(sigma1 > 0.0)) bad.push_back(j);
        // <grad lambda', nu> = lambda <d_r, nu> = lambda / v
        f13[j] = cf.dlambda[j] * sigma1 - (n - 1) * cf.lambda[j] / cf.v[j];
        f14[j] = cf.dlambda[j] * sigma1;
    }
    if (!bad.empty()) {
        throw Error(ErrorCode::Precondition,
                    "auxiliary inequalities need a mean-convex hypersurface; " +
                        detail::describe_nodes(bad));
    }
    const double a = area(cf);
    const double omega = sphere_area_constant(n);
    const double x = a / omega;
    AuxiliaryMargins m;
    m.weighted_mean_curvature =
        cf.integrate(f13) -
        (n - 1) * std::pow(omega, 1.0 / (n - 1)) * std::pow(a, static_cast<double>(n - 2) / (n - 1));
    m.area_bound = cf.integrate(f14) -
                   (n - 1) * omega *
                       (std::pow(x, static_cast<double>(n - 2) / (n - 1)) +
                        std::pow(x, static_cast<double>(n) / (n - 1)));
    return m;
}

AuxiliaryMargins auxiliary_inequality_margins(const RadialProfile& p) {
    return auxiliary_inequality_margins(curvature_from_profile(p));
}

}  // namespace hypflow
