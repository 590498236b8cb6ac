#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypflow/errors.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/shapes.hpp"
#include "hypflow/symfun.hpp"
#include "support/gen.hpp"

using namespace hypflow;
using std::numbers::pi;

namespace {

// Principal curvatures as generalized eigenvalues of (h, g), with g and h
// assembled from g_ij = lambda^2 (s_ij + phi_i phi_j) and
// h_ij = lambda'/(v lambda) g_ij - (lambda / v) Hess(phi)_ij.
Eigen::VectorXd eigen_curvatures(const Eigen::MatrixXd& sphere_metric, const Eigen::VectorXd& dphi,
                                 const Eigen::MatrixXd& hess_phi, double r) {
    const double lam = std::sinh(r), dlam = std::cosh(r);
    const double grad2 = dphi.dot(sphere_metric.inverse() * dphi);
    const double v = std::sqrt(1.0 + grad2);
    const Eigen::MatrixXd g = lam * lam * (sphere_metric + dphi * dphi.transpose());
    const Eigen::MatrixXd h = dlam / (v * lam) * g - lam / v * hess_phi;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, g);
    return es.eigenvalues();
}

// Zonal point in an orthonormal frame of S^{n-1}: e_1 along rho.
Eigen::VectorXd zonal_oracle(int n, double r, double dr, double d2r, double rho) {
    const int d = n - 1;
    const double lam = std::sinh(r), dlam = std::cosh(r);
    const double p1 = dr / lam;
    const double p2 = d2r / lam - dlam * dr * dr / (lam * lam);
    Eigen::VectorXd dphi = Eigen::VectorXd::Zero(d);
    dphi(0) = p1;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d, d);
    hess(0, 0) = p2;
    for (int i = 1; i < d; ++i) hess(i, i) = p1 * std::cos(rho) / std::sin(rho);
    return eigen_curvatures(Eigen::MatrixXd::Identity(d, d), dphi, hess, r);
}

}  // namespace

TEST_CASE("unit sphere areas") {
    CHECK(sphere_area_constant(3) == doctest::Approx(4 * pi).epsilon(1e-15));
    CHECK(sphere_area_constant(4) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
    CHECK(sphere_area_constant(5) == doctest::Approx(8 * pi * pi / 3).epsilon(1e-15));
    for (int n = 3; n <= 8; ++n) {
        CHECK(sphere_area_constant(n) ==
              doctest::Approx(2 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0)).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)sphere_area_constant(2), Error);
}

TEST_CASE("grid layout and weights") {
    auto g = Grid::axisymmetric(5, 64);
    CHECK(g->rho().front() == doctest::Approx(pi / 128));
    CHECK(g->rho().back() == doctest::Approx(pi - pi / 128));
    for (int n = 3; n <= 8; ++n) {
        for (int N : {8, 33, 200}) {
            auto grid = Grid::axisymmetric(n, N);
            double s = 0.0;
            for (double w : grid->weights()) s += w;
            CHECK(s == doctest::Approx(sphere_area_constant(n)).epsilon(1e-13));
        }
    }
    auto fs = Grid::full_sphere(20, 40);
    double s = 0.0;
    for (double w : fs->weights()) s += w;
    CHECK(s == doctest::Approx(4 * pi).epsilon(1e-13));
    CHECK_THROWS_AS((void)Grid::full_sphere(20, 41), Error);
    CHECK_THROWS_AS((void)Grid::axisymmetric(9, 100), Error);
    CHECK_THROWS_AS((void)Grid::axisymmetric(4, 4), Error);
}

TEST_CASE("quadrature integrates zonal polynomials in cos(rho)") {
    // int over S^{n-1} of cos^2(rho) = omega_{n-1} / n
    for (int n = 3; n <= 8; ++n) {
        auto g = Grid::axisymmetric(n, 50);
        double s = 0.0;
        for (std::size_t j = 0; j < g->node_count(); ++j) s += g->weights()[j] * g->cos_rho()[j] * g->cos_rho()[j];
        CHECK(s == doctest::Approx(sphere_area_constant(n) / n).epsilon(1e-13));
    }
}

TEST_CASE("derivative stencils are fourth order with even reflection") {
    auto err = [](int N) {
        auto g = Grid::axisymmetric(4, N);
        std::vector<double> f(g->node_count()), d1(f.size()), d2(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::cos(2 * g->rho()[j]) + 0.3 * std::cos(3 * g->rho()[j]);
        even_derivatives(f, g->h_rho(), d1, d2);
        double e = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double x = g->rho()[j];
            e = std::max(e, std::abs(d1[j] + 2 * std::sin(2 * x) + 0.9 * std::sin(3 * x)));
            e = std::max(e, std::abs(d2[j] + 4 * std::cos(2 * x) + 2.7 * std::cos(3 * x)));
        }
        return e;
    };
    const double e1 = err(100), e2 = err(200);
    CHECK(std::log2(e1 / e2) > 3.7);
}

TEST_CASE("geodesic spheres") {
    for (int n = 3; n <= 8; ++n) {
        for (double c : {0.5, 1.0, 2.0}) {
            const auto p = make_profile(ShapeSpec::sphere(c), n, 100);
            const auto cf = curvature_from_profile(p);
            for (std::size_t j = 0; j < cf.node_count(); ++j) {
                CHECK(cf.v[j] == 1.0);
                CHECK(cf.dlambda[j] * cf.dlambda[j] - cf.lambda[j] * cf.lambda[j] ==
                      doctest::Approx(1.0).epsilon(1e-12 * cf.dlambda[j] * cf.dlambda[j]));
                for (double k : cf.kappa_at(j)) CHECK(std::abs(k - 1.0 / std::tanh(c)) < 1e-10);
            }
            const double omega = sphere_area_constant(n);
            const double a = omega * std::pow(std::sinh(c), n - 1);
            CHECK(area(p) == doctest::Approx(a).epsilon(1e-12));
            const double s2 = 0.5 * (n - 1) * (n - 2) * omega * std::pow(1.0 / std::tanh(c), 2) * std::pow(std::sinh(c), n - 1);
            CHECK(total_sigma(p, 2) == doctest::Approx(s2).epsilon(1e-12));
            CHECK(q_value(p) == doctest::Approx(sharp_q_constant(n)).epsilon(1e-12));
            CHECK(std::abs(main_inequality_margin(p)) < 1e-9 * a);
            const auto aux = auxiliary_inequality_margins(p);
            CHECK(std::abs(aux.weighted_mean_curvature) < 1e-9 * a);
            CHECK(std::abs(aux.area_bound) < 1e-9 * a);
        }
    }
}

TEST_CASE("zonal closed forms agree with generalized eigenvalues") {
    testgen::SplitMix g(314);
    double worst = 0.0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = g.pick(3, 8);
        const double rho = g.uniform(0.05, pi - 0.05);
        const double r = g.uniform(0.3, 3.0), dr = g.uniform(-1.0, 1.0), d2r = g.uniform(-3.0, 3.0);
        const auto zc = zonal_curvatures(r, dr, d2r, std::cos(rho) / std::sin(rho));
        auto ev = zonal_oracle(n, r, dr, d2r, rho);
        std::vector<double> mine(static_cast<std::size_t>(n - 2), zc.spherical);
        mine.push_back(zc.radial);
        std::sort(mine.begin(), mine.end());
        for (int i = 0; i < n - 1; ++i) worst = std::max(worst, std::abs(mine[static_cast<std::size_t>(i)] - ev(i)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("S^2 closed-form eigenvalues agree with generalized eigenvalues") {
    testgen::SplitMix g(2718);
    double worst = 0.0;
    for (int trial = 0; trial < 400; ++trial) {
        const double rho = g.uniform(0.05, pi - 0.05);
        SurfaceJet jet{g.uniform(0.3, 3.0), g.uniform(-1, 1), g.uniform(-1, 1),
                       g.uniform(-3, 3),    g.uniform(-3, 3), g.uniform(-3, 3)};
        const double s = std::sin(rho), c = std::cos(rho);
        const auto sc = surface_curvatures(jet, s, c);

        const double lam = std::sinh(jet.r), dlam = std::cosh(jet.r);
        Eigen::Vector2d dphi(jet.r_rho / lam, jet.r_phi / lam);
        auto second = [&](double rij, double ri, double rj) { return rij / lam - dlam * ri * rj / (lam * lam); };
        Eigen::Matrix2d hess;
        hess(0, 0) = second(jet.r_rho_rho, jet.r_rho, jet.r_rho);
        hess(0, 1) = hess(1, 0) = second(jet.r_rho_phi, jet.r_rho, jet.r_phi) - c / s * dphi(1);
        hess(1, 1) = second(jet.r_phi_phi, jet.r_phi, jet.r_phi) + s * c * dphi(0);
        Eigen::Matrix2d metric;
        metric << 1, 0, 0, s * s;
        const auto ev = eigen_curvatures(metric, dphi, hess, jet.r);
        const double lo = std::min(sc.k1, sc.k2), hi = std::max(sc.k1, sc.k2);
        worst = std::max({worst, std::abs(lo - ev(0)), std::abs(hi - ev(1))});
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("field curvatures converge to the analytic profile") {
    testgen::SplitMix g(77);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = g.pick(3, 8);
        const auto z = testgen::zonal_series(g, 0.2, 4);
        auto grid = Grid::axisymmetric(n, 400);
        std::vector<double> r(grid->node_count());
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = z.r(grid->rho()[j]);
        const auto cf = curvature_from_profile(RadialProfile(grid, r));
        double worst = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const double x = grid->rho()[j];
            const auto ref = zonal_curvatures(z.r(x), z.dr(x), z.d2r(x), grid->cot_rho()[j]);
            const auto k = cf.kappa_at(j);
            worst = std::max(worst, std::abs(k[0] - ref.radial));
            for (int i = 1; i < n - 1; ++i) worst = std::max(worst, std::abs(k[static_cast<std::size_t>(i)] - ref.spherical));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("default test shapes") {
    const auto p4 = make_profile(ShapeSpec::cosine_bump(1.0, 0.1, 2), 4, 400);
    CHECK(two_convexity_violations(curvature_from_profile(p4)).empty());
    const auto aux = auxiliary_inequality_margins(p4);
    CHECK(aux.weighted_mean_curvature > 0.0);
    CHECK(aux.area_bound > 0.0);

    const auto p5 = make_profile(ShapeSpec::cosine_bump(1.0, 0.1, 2), 5, 400);
    CHECK(q_value(p5) > sharp_q_constant(5));
    CHECK(main_inequality_margin(p5) > 0.0);
}

TEST_CASE("n = 3 Gauss-Bonnet on both grids") {
    testgen::SplitMix g(3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto shape = ShapeSpec::random_bandlimited(g.uniform(0.5, 2.0), 0.3, 4, g.next());
        const auto zonal = make_profile(shape, 3, 400);
        CHECK(std::abs(total_sigma(zonal, 2) - area(zonal) - 4 * pi) < 1e-4);
        CHECK(q_value(zonal) == doctest::Approx(4 * pi).epsilon(1e-5));
        const auto full = make_sphere_profile(shape, 100, 200);
        CHECK(std::abs(total_sigma(full, 2) - area(full) - 4 * pi) < 1e-4);
    }
}

TEST_CASE("n = 3 main inequality is an equality") {
    const auto p = make_profile(ShapeSpec::cosine_bump(1.0, 0.1, 2), 3, 400);
    CHECK(std::abs(main_inequality_margin(p)) < 1e-4);
}

TEST_CASE("full-sphere grid reproduces zonal results") {
    const auto shape = ShapeSpec::cosine_bump(1.2, 0.2, 3);
    const auto zonal = make_profile(shape, 3, 200);
    const auto full = make_sphere_profile(shape, 200, 16);
    CHECK(area(full) == doctest::Approx(area(zonal)).epsilon(1e-10));
    CHECK(total_sigma(full, 1) == doctest::Approx(total_sigma(zonal, 1)).epsilon(1e-8));
}

TEST_CASE("preconditions and overflow") {
    const auto bad = make_profile(ShapeSpec::cosine_bump(1.0, 0.9, 4), 5, 200);
    try {
        (void)main_inequality_margin(bad);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Precondition);
        CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
    CHECK_THROWS_AS((void)make_two_convex_profile(ShapeSpec::cosine_bump(1.0, 0.9, 4), 5, 200), Error);
    auto grid = Grid::axisymmetric(4, 50);
    CHECK_THROWS_AS(RadialProfile(grid, std::vector<double>(50, -1.0)), Error);
    try {
        RadialProfile(grid, std::vector<double>(50, 30.0));
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Overflow);
    }
}

TEST_CASE("profile JSON round trip") {
    const auto p = make_profile(ShapeSpec::random_bandlimited(1.0, 0.2, 3, 42), 6, 64);
    const auto q = profile_from_json(profile_to_json(p));
    CHECK(q.dim() == 6);
    CHECK(q.representation() == Representation::Axisymmetric);
    CHECK(std::equal(p.radii().begin(), p.radii().end(), q.radii().begin(), q.radii().end()));

    const auto s = make_sphere_profile(ShapeSpec::random_bandlimited(1.0, 0.2, 3, 42), 16, 32);
    const auto t = profile_from_json(profile_to_json(s));
    CHECK(t.representation() == Representation::FullSphere);
    CHECK(t.grid().n_phi() == 32);
    CHECK(std::equal(s.radii().begin(), s.radii().end(), t.radii().begin(), t.radii().end()));

    CHECK_THROWS_AS((void)profile_from_json("{\"format\": \"hypflow.profile\"}"), Error);
    CHECK_THROWS_AS((void)profile_from_json("not json"), Error);
}

TEST_CASE("shapes") {
    const auto a = make_profile(ShapeSpec::random_bandlimited(1.0, 0.2, 4, 7), 5, 100);
    const auto b = make_profile(ShapeSpec::random_bandlimited(1.0, 0.2, 4, 7), 5, 100);
    const auto c = make_profile(ShapeSpec::random_bandlimited(1.0, 0.2, 4, 8), 5, 100);
    CHECK(std::equal(a.radii().begin(), a.radii().end(), b.radii().begin(), b.radii().end()));
    CHECK_FALSE(std::equal(a.radii().begin(), a.radii().end(), c.radii().begin(), c.radii().end()));
    for (double r : a.radii()) CHECK(std::abs(r - 1.0) <= 0.2 + 1e-15);

    const auto shape = ShapeSpec::random_bandlimited(1.5, 0.25, 5, 1234);
    const auto back = shape_from_json(shape_to_json(shape));
    CHECK(back.kind == shape.kind);
    CHECK(back.r0 == shape.r0);
    CHECK(back.eps == shape.eps);
    CHECK(back.max_mode == shape.max_mode);
    CHECK(back.seed == shape.seed);
    CHECK_THROWS_AS((void)shape_from_json("{\"kind\": \"torus\"}"), Error);
    CHECK_THROWS_AS((void)make_profile(ShapeSpec::cosine_bump(0.5, 0.6, 2), 4, 100), Error);
}
