#include "hypflow/sobolev.hpp"

#include <cmath>
#include <string>

#include "hypflow/errors.hpp"
#include "hypflow/geometry.hpp"

namespace hypflow {

namespace {

double integrate(const Grid& g, std::span<const double> f) {
    const auto w = g.weights();
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) s += w[j] * f[j];
    return s;
}

}  // namespace

SphereFunction::SphereFunction(std::shared_ptr<const Grid> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_ || grid_->representation() != Representation::Axisymmetric) {
        throw Error(ErrorCode::Domain, "sphere function needs a zonal grid");
    }
    if (values_.size() != grid_->node_count()) {
        throw Error(ErrorCode::Domain, "sphere function size does not match its grid");
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!(values_[j] > 0.0) || !std::isfinite(values_[j])) {
            throw Error(ErrorCode::Domain,
                        "sphere function must be positive; node " + std::to_string(j) + " is not");
        }
    }
}

std::vector<double> SphereFunction::gradient_squared() const {
    std::vector<double> d1(values_.size()), d2(values_.size());
    even_derivatives(values_, grid_->h_rho(), d1, d2);
    for (auto& d : d1) d = d * d;
    return d1;
}

SphereFunction SphereFunction::conformal_power() const {
    const double p = 0.5 * (dim() - 3);
    std::vector<double> w(values_.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::pow(values_[j], p);
    return SphereFunction(grid_, std::move(w));
}

SobolevMargin beckner_margin(const SphereFunction& f) {
    const int n = f.dim();
    const auto v = f.values();
    const auto grad2 = f.gradient_squared();
    std::vector<double> a(v.size()), b(v.size()), c(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        a[j] = std::pow(v[j], n - 3);
        b[j] = std::pow(v[j], n - 5) * grad2[j];
        c[j] = std::pow(v[j], n - 1);
    }
    const double omega = sphere_area_constant(n);
    SobolevMargin m;
    m.lhs = integrate(f.grid(), a) + static_cast<double>(n - 3) / (n - 1) * integrate(f.grid(), b);
    m.rhs = std::pow(omega, 2.0 / (n - 1)) *
            std::pow(integrate(f.grid(), c), static_cast<double>(n - 3) / (n - 1));
    m.margin = m.lhs - m.rhs;
    return m;
}

SobolevMargin beckner_w_margin(const SphereFunction& f) {
    const int n = f.dim();
    if (n < 4) throw Error(ErrorCode::Domain, "beckner_w_margin: needs n >= 4");
    const auto w = f.conformal_power();
    const auto v = w.values();
    const auto grad2 = w.gradient_squared();
    const double p = 2.0 * (n - 1) / (n - 3);
    std::vector<double> sq(v.size()), crit(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        sq[j] = v[j] * v[j];
        crit[j] = std::pow(v[j], p);
    }
    const double omega = sphere_area_constant(n);
    SobolevMargin m;
    m.lhs = 4.0 / ((n - 1.0) * (n - 3.0)) * integrate(w.grid(), grad2) + integrate(w.grid(), sq);
    m.rhs = std::pow(omega, 2.0 / (n - 1)) *
            std::pow(integrate(w.grid(), crit), static_cast<double>(n - 3) / (n - 1));
    m.margin = m.lhs - m.rhs;
    return m;
}

double asymptotic_limit_ratio(const FlowState& s) {
    const RadialProfile& p = s.profile;
    if (p.representation() != Representation::Axisymmetric) {
        throw Error(ErrorCode::Domain, "asymptotic_limit_ratio: zonal profiles only");
    }
    const int n = p.dim();
    const double cn = 0.5 * (n - 1) * (n - 2);
    const auto cf = curvature_from_profile(p);
    const double exact = total_sigma(cf, 2) - cn * area(cf);

    // leading term is cn times the f-form left side at f = lambda
    const SphereFunction lambda(p.grid_ptr(), cf.lambda);
    const auto vals = lambda.values();
    const auto grad2 = lambda.gradient_squared();
    std::vector<double> a(vals.size()), b(vals.size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        a[j] = std::pow(vals[j], n - 3);
        b[j] = std::pow(vals[j], n - 5) * grad2[j];
    }
    const double leading =
        cn * (integrate(p.grid(), a) + static_cast<double>(n - 3) / (n - 1) * integrate(p.grid(), b));
    return exact / leading;
}

}  // namespace hypflow
