#pragma once

// Sharp Sobolev inequality on S^{n-1} for zonal functions, in the f-form
//
//   int f^{n-3} + (n-3)/(n-1) int f^{n-5} |grad f|^2
//       >= omega^{2/(n-1)} (int f^{n-1})^{(n-3)/(n-1)}
//
// and the equivalent conformal form in w = f^{(n-3)/2}.

#include <memory>
#include <vector>

#include "hypflow/flow.hpp"
#include "hypflow/grid.hpp"

namespace hypflow {

/// Positive zonal function on the staggered grid of S^{n-1}.
class SphereFunction {
public:
    /// Throws Domain unless every value is positive and finite.
    SphereFunction(std::shared_ptr<const Grid> grid, std::vector<double> values);
    /// Samples f(rho) on a fresh zonal grid.
    template <typename F>
    static SphereFunction sample(int n, int n_rho, F&& f) {
        auto grid = Grid::axisymmetric(n, n_rho);
        std::vector<double> v(grid->rho().size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->rho()[j]);
        return SphereFunction(std::move(grid), std::move(v));
    }

    [[nodiscard]] int dim() const noexcept { return grid_->dim(); }
    [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    /// |grad f|^2 on the unit sphere, by the same stencils as the geometry.
    [[nodiscard]] std::vector<double> gradient_squared() const;
    /// w = f^{(n-3)/2} on the same grid.
    [[nodiscard]] SphereFunction conformal_power() const;

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> values_;
};

struct SobolevMargin {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // lhs - rhs
};

/// f-form. At n = 3 both sides equal omega_2 for every f.
[[nodiscard]] SobolevMargin beckner_margin(const SphereFunction& f);

/// w-form evaluated on w = f^{(n-3)/2} (gradient of w taken numerically).
/// Throws Domain for n < 4.
[[nodiscard]] SobolevMargin beckner_w_margin(const SphereFunction& f);

/// (int sigma_2 d mu - ((n-1)(n-2)/2)|S|) divided by its leading-order
/// expansion ((n-1)(n-2)/2) int (lambda^{n-3} + (n-3)/(n-1) lambda^{n-5} |grad lambda|^2).
/// Tends to 1 along the flow. Zonal states only; throws Domain otherwise.
[[nodiscard]] double asymptotic_limit_ratio(const FlowState& s);

}  // namespace hypflow
