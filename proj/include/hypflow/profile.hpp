#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypflow/grid.hpp"

namespace hypflow {

/// Radii beyond this make sinh^{n-1} r overflow-prone at n = 8.
inline constexpr double kMaxRadius = 25.0;

/// A star-shaped hypersurface of H^n written as a radial graph r over S^{n-1},
/// sampled on a staggered Grid. Immutable; grids are shared between profiles
/// derived from one another.
class RadialProfile {
public:
    /// Throws Domain for r <= 0 or non-finite radii, Overflow for r >= kMaxRadius.
    RadialProfile(std::shared_ptr<const Grid> grid, std::vector<double> r);

    static RadialProfile axisymmetric(int n, std::vector<double> r);
    static RadialProfile full_sphere(int n_rho, int n_phi, std::vector<double> r);

    /// Same grid, new radii.
    [[nodiscard]] RadialProfile with_radii(std::vector<double> r) const;

    [[nodiscard]] int dim() const noexcept { return grid_->dim(); }
    [[nodiscard]] Representation representation() const noexcept {
        return grid_->representation();
    }
    [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
    [[nodiscard]] const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> radii() const noexcept { return r_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return r_.size(); }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> r_;
};

/// Profile document:
///   {"format": "hypflow.profile", "version": 1, "n": 5,
///    "representation": "axisymmetric" | "full_sphere",
///    "n_rho": 400, "n_phi": 1, "r": [...]}
/// r is rho-major (index i * n_phi + j). Doubles are written round-trip exact.
[[nodiscard]] std::string profile_to_json(const RadialProfile& p);
[[nodiscard]] RadialProfile profile_from_json(std::string_view text);

}  // namespace hypflow
