#include "hypflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hypflow/errors.hpp"

namespace hypflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Fourth-order central stencils.
// symmetric grouping: exact zero on constant data
inline double first(double m2, double m1, double p1, double p2, double h) {
    return ((m2 - p2) + 8.0 * (p1 - m1)) / (12.0 * h);
}
inline double second(double m2, double m1, double c, double p1, double p2, double h) {
    return (16.0 * (m1 + p1) - (m2 + p2) - 30.0 * c) / (12.0 * h * h);
}

// Reflection of a staggered index about either end: -1 -> 0, -2 -> 1, N -> N-1, N+1 -> N-2.
inline int reflect(int i, int n) {
    if (i < 0) return -i - 1;
    if (i >= n) return 2 * n - i - 1;
    return i;
}

}  // namespace

const char* to_string(Representation rep) noexcept {
    return rep == Representation::Axisymmetric ? "axisymmetric" : "full_sphere";
}

double unit_sphere_area(int k) {
    if (k < 0) throw Error(ErrorCode::Domain, "unit_sphere_area: negative dimension");
    // omega_k = 2 pi / (k - 1) * omega_{k-2}
    double w = (k % 2 == 0) ? 2.0 : 2.0 * kPi;
    for (int d = (k % 2 == 0) ? 2 : 3; d <= k; d += 2) w *= 2.0 * kPi / (d - 1);
    return w;
}

std::vector<double> fejer_sine_weights(int n_rho) {
    std::vector<double> w(static_cast<std::size_t>(n_rho));
    const double h = kPi / n_rho;
    for (int j = 0; j < n_rho; ++j) {
        const double theta = (j + 0.5) * h;
        double s = 0.0;
        for (int k = 1; k <= n_rho / 2; ++k) {
            s += std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        }
        w[static_cast<std::size_t>(j)] = (2.0 / n_rho) * (1.0 - 2.0 * s);
    }
    return w;
}

void Grid::fill_rows() {
    h_rho_ = kPi / n_rho_;
    rho_.resize(static_cast<std::size_t>(n_rho_));
    sin_.resize(rho_.size());
    cos_.resize(rho_.size());
    cot_.resize(rho_.size());
    for (int i = 0; i < n_rho_; ++i) {
        const auto u = static_cast<std::size_t>(i);
        rho_[u] = (i + 0.5) * h_rho_;
        sin_[u] = std::sin(rho_[u]);
        cos_[u] = std::cos(rho_[u]);
        cot_[u] = cos_[u] / sin_[u];
    }
}

std::shared_ptr<const Grid> Grid::axisymmetric(int n, int n_rho) {
    if (n < 3 || n > 8) {
        throw Error(ErrorCode::Domain, "ambient dimension n=" + std::to_string(n) +
                                           " outside supported range [3, 8]");
    }
    if (n_rho < 8) {
        throw Error(ErrorCode::Domain, "axisymmetric grid needs at least 8 nodes, got " +
                                           std::to_string(n_rho));
    }
    auto g = std::shared_ptr<Grid>(new Grid());
    g->n_ = n;
    g->rep_ = Representation::Axisymmetric;
    g->n_rho_ = n_rho;
    g->n_phi_ = 1;
    g->fill_rows();

    // measure on S^{n-1} for zonal functions: omega_{n-2} sin^{n-2}(rho) d rho
    const double omega = unit_sphere_area(n - 2);
    const int power = n - 2;
    g->weights_.resize(static_cast<std::size_t>(n_rho));
    if (power % 2 == 0) {
        // smooth even periodic integrand: the midpoint rule is spectrally accurate
        for (std::size_t j = 0; j < g->weights_.size(); ++j) {
            g->weights_[j] = omega * g->h_rho_ * std::pow(g->sin_[j], power);
        }
    } else {
        const auto fejer = fejer_sine_weights(n_rho);
        for (std::size_t j = 0; j < g->weights_.size(); ++j) {
            g->weights_[j] = omega * fejer[j] * std::pow(g->sin_[j], power - 1);
        }
    }
    return g;
}

std::shared_ptr<const Grid> Grid::full_sphere(int n_rho, int n_phi) {
    if (n_rho < 8 || n_phi < 8 || n_phi % 2 != 0) {
        throw Error(ErrorCode::Domain, "full-sphere grid needs n_rho >= 8 and even n_phi >= 8, got " +
                                           std::to_string(n_rho) + "x" + std::to_string(n_phi));
    }
    auto g = std::shared_ptr<Grid>(new Grid());
    g->n_ = 3;
    g->rep_ = Representation::FullSphere;
    g->n_rho_ = n_rho;
    g->n_phi_ = n_phi;
    g->fill_rows();
    g->h_phi_ = 2.0 * kPi / n_phi;
    const auto fejer = fejer_sine_weights(n_rho);
    g->weights_.resize(static_cast<std::size_t>(n_rho) * static_cast<std::size_t>(n_phi));
    for (int i = 0; i < n_rho; ++i) {
        for (int j = 0; j < n_phi; ++j) {
            g->weights_[static_cast<std::size_t>(i * n_phi + j)] =
                fejer[static_cast<std::size_t>(i)] * g->h_phi_;
        }
    }
    return g;
}

double Grid::min_spacing() const noexcept {
    if (rep_ == Representation::Axisymmetric) return h_rho_;
    return std::min(h_rho_, sin_.front() * h_phi_);
}

void even_derivatives(std::span<const double> f, double h, std::span<double> d1,
                      std::span<double> d2) {
    const int n = static_cast<int>(f.size());
    auto at = [&](int i) { return f[static_cast<std::size_t>(reflect(i, n))]; };
    for (int j = 0; j < n; ++j) {
        const double m2 = at(j - 2), m1 = at(j - 1), c = f[static_cast<std::size_t>(j)],
                     p1 = at(j + 1), p2 = at(j + 2);
        d1[static_cast<std::size_t>(j)] = first(m2, m1, p1, p2, h);
        d2[static_cast<std::size_t>(j)] = second(m2, m1, c, p1, p2, h);
    }
}

SphereDerivatives sphere_derivatives(const Grid& grid, std::span<const double> f) {
    const int nr = grid.n_rho();
    const int np = grid.n_phi();
    const int half = np / 2;
    const double hr = grid.h_rho();
    const double hp = grid.h_phi();
    const std::size_t total = f.size();

    SphereDerivatives d;
    d.d_rho.resize(total);
    d.d_phi.resize(total);
    d.d_rho_rho.resize(total);
    d.d_rho_phi.resize(total);
    d.d_phi_phi.resize(total);

    auto idx = [np](int i, int j) { return static_cast<std::size_t>(i * np + j); };

    // longitude: periodic
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            auto at = [&](int jj) { return f[idx(i, ((jj % np) + np) % np)]; };
            d.d_phi[idx(i, j)] = first(at(j - 2), at(j - 1), at(j + 1), at(j + 2), hp);
            d.d_phi_phi[idx(i, j)] =
                second(at(j - 2), at(j - 1), at(j), at(j + 1), at(j + 2), hp);
        }
    }

    // latitude: across a pole the row continues on the opposite meridian
    auto across = [&](std::span<const double> g, int i, int j) {
        if (i < 0 || i >= nr) return g[idx(reflect(i, nr), (j + half) % np)];
        return g[idx(i, j)];
    };
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < np; ++j) {
            const double m2 = across(f, i - 2, j), m1 = across(f, i - 1, j), c = f[idx(i, j)],
                         p1 = across(f, i + 1, j), p2 = across(f, i + 2, j);
            d.d_rho[idx(i, j)] = first(m2, m1, p1, p2, hr);
            d.d_rho_rho[idx(i, j)] = second(m2, m1, c, p1, p2, hr);
            const std::span<const double> fp = d.d_phi;
            d.d_rho_phi[idx(i, j)] = first(across(fp, i - 2, j), across(fp, i - 1, j),
                                           across(fp, i + 1, j), across(fp, i + 2, j), hr);
        }
    }
    return d;
}

}  // namespace hypflow
