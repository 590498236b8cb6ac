#pragma once

// Staggered latitude(-longitude) grids on S^{n-1}. No node sits on a pole;
// derivatives use fourth-order central stencils with even-reflection ghosts,
// and integrals use node weights that are spectrally accurate for smooth
// functions on the sphere.

#include <memory>
#include <span>
#include <vector>

namespace hypflow {

enum class Representation { Axisymmetric, FullSphere };

const char* to_string(Representation rep) noexcept;

class Grid {
public:
    /// Zonal grid for any 3 <= n <= 8: rho_j = (j + 1/2) pi / n_rho.
    static std::shared_ptr<const Grid> axisymmetric(int n, int n_rho);
    /// Latitude-longitude grid on S^2 (n = 3 only); n_phi must be even.
    static std::shared_ptr<const Grid> full_sphere(int n_rho, int n_phi);

    [[nodiscard]] int dim() const noexcept { return n_; }
    [[nodiscard]] Representation representation() const noexcept { return rep_; }
    [[nodiscard]] int n_rho() const noexcept { return n_rho_; }
    /// 1 for the zonal grid.
    [[nodiscard]] int n_phi() const noexcept { return n_phi_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return weights_.size(); }
    [[nodiscard]] double h_rho() const noexcept { return h_rho_; }
    [[nodiscard]] double h_phi() const noexcept { return h_phi_; }

    [[nodiscard]] std::span<const double> rho() const noexcept { return rho_; }
    [[nodiscard]] std::span<const double> sin_rho() const noexcept { return sin_; }
    [[nodiscard]] std::span<const double> cos_rho() const noexcept { return cos_; }
    [[nodiscard]] std::span<const double> cot_rho() const noexcept { return cot_; }
    [[nodiscard]] double phi(int j) const noexcept { return (j + 0.5) * h_phi_; }

    /// Node weights for integrals over the unit S^{n-1}; they sum to omega_{n-1}.
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

    /// Smallest physical node spacing, used for the parabolic step bound.
    [[nodiscard]] double min_spacing() const noexcept;

    [[nodiscard]] bool same_layout(const Grid& other) const noexcept {
        return n_ == other.n_ && rep_ == other.rep_ && n_rho_ == other.n_rho_ &&
               n_phi_ == other.n_phi_;
    }

private:
    Grid() = default;
    void fill_rows();

    int n_ = 0;
    Representation rep_ = Representation::Axisymmetric;
    int n_rho_ = 0;
    int n_phi_ = 1;
    double h_rho_ = 0.0;
    double h_phi_ = 0.0;
    std::vector<double> rho_, sin_, cos_, cot_, weights_;
};

/// omega_k, the area of the unit S^k in R^{k+1} (omega_0 = 2, omega_1 = 2 pi).
[[nodiscard]] double unit_sphere_area(int k);

/// Weights of Fejer's first rule on the staggered nodes: sum_j w_j g(rho_j)
/// approximates the integral of g(rho) sin(rho) over [0, pi].
[[nodiscard]] std::vector<double> fejer_sine_weights(int n_rho);

/// First and second derivatives of a function that is even about both ends of
/// the staggered grid (the zonal case). Fourth-order central differences.
void even_derivatives(std::span<const double> f, double h, std::span<double> d1,
                      std::span<double> d2);

/// Derivatives on the latitude-longitude grid. Values are stored rho-major
/// (index i * n_phi + j); the ghost row across a pole is the same row shifted
/// by pi in longitude.
struct SphereDerivatives {
    std::vector<double> d_rho, d_phi, d_rho_rho, d_rho_phi, d_phi_phi;
};
[[nodiscard]] SphereDerivatives sphere_derivatives(const Grid& grid, std::span<const double> f);

}  // namespace hypflow
