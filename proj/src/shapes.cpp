#include "hypflow/shapes.hpp"

#include <cmath>
#include <vector>

#include "hypflow/errors.hpp"
#include "hypflow/geometry.hpp"
#include "json_io.hpp"
#include "node_list.hpp"
#include "shape_json.hpp"

namespace hypflow {

namespace {

void validate(const ShapeSpec& s) {
    if (!(s.r0 > 0.0) || !std::isfinite(s.r0)) {
        throw Error(ErrorCode::Domain, "shape: r0 must be positive");
    }
    if (!(s.eps >= 0.0) || !std::isfinite(s.eps)) {
        throw Error(ErrorCode::Domain, "shape: eps must be a nonnegative number");
    }
    if (s.kind != ShapeSpec::Kind::Sphere && s.eps >= s.r0) {
        throw Error(ErrorCode::Domain, "shape: eps must be smaller than r0 so that r > 0");
    }
    if (s.kind == ShapeSpec::Kind::CosineBump && s.k < 0) {
        throw Error(ErrorCode::Domain, "shape: cosine_bump mode k must be >= 0");
    }
    if (s.kind == ShapeSpec::Kind::RandomBandlimited && s.max_mode < 1) {
        throw Error(ErrorCode::Domain, "shape: random_bandlimited needs max_mode >= 1");
    }
}

std::vector<double> normalized_amplitudes(SeededRng& rng, std::size_t count) {
    std::vector<double> a(count);
    double total = 0.0;
    for (auto& x : a) {
        x = rng.uniform(-1.0, 1.0);
        total += std::abs(x);
    }
    if (total > 0.0) {
        for (auto& x : a) x /= total;
    }
    return a;
}

}  // namespace

const char* to_string(ShapeSpec::Kind kind) noexcept {
    switch (kind) {
        case ShapeSpec::Kind::Sphere: return "sphere";
        case ShapeSpec::Kind::CosineBump: return "cosine_bump";
        case ShapeSpec::Kind::RandomBandlimited: return "random_bandlimited";
    }
    return "unknown";
}

ShapeSpec::Kind shape_kind_from_string(std::string_view name) {
    if (name == "sphere") return ShapeSpec::Kind::Sphere;
    if (name == "cosine_bump") return ShapeSpec::Kind::CosineBump;
    if (name == "random_bandlimited") return ShapeSpec::Kind::RandomBandlimited;
    throw Error(ErrorCode::Parse, "unknown shape kind '" + std::string(name) + "'");
}

RadialProfile make_profile(const ShapeSpec& shape, int n, int n_rho) {
    validate(shape);
    auto grid = Grid::axisymmetric(n, n_rho);
    const auto rho = grid->rho();
    std::vector<double> r(rho.size(), shape.r0);
    switch (shape.kind) {
        case ShapeSpec::Kind::Sphere: break;
        case ShapeSpec::Kind::CosineBump:
            for (std::size_t j = 0; j < r.size(); ++j) r[j] += shape.eps * std::cos(shape.k * rho[j]);
            break;
        case ShapeSpec::Kind::RandomBandlimited: {
            SeededRng rng(shape.seed);
            const auto a = normalized_amplitudes(rng, static_cast<std::size_t>(shape.max_mode));
            for (std::size_t j = 0; j < r.size(); ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    s += a[k] * std::cos(static_cast<double>(k + 1) * rho[j]);
                }
                r[j] += shape.eps * s;
            }
            break;
        }
    }
    return RadialProfile(std::move(grid), std::move(r));
}

RadialProfile make_sphere_profile(const ShapeSpec& shape, int n_rho, int n_phi) {
    validate(shape);
    auto grid = Grid::full_sphere(n_rho, n_phi);
    const auto rho = grid->rho();
    const auto sn = grid->sin_rho();
    const auto np = static_cast<std::size_t>(n_phi);
    std::vector<double> r(grid->node_count(), shape.r0);

    switch (shape.kind) {
        case ShapeSpec::Kind::Sphere: break;
        case ShapeSpec::Kind::CosineBump:
            for (std::size_t i = 0; i < rho.size(); ++i) {
                for (std::size_t j = 0; j < np; ++j) r[i * np + j] += shape.eps * std::cos(shape.k * rho[i]);
            }
            break;
        case ShapeSpec::Kind::RandomBandlimited: {
            struct Term {
                int m, j;
                bool sine;
            };
            std::vector<Term> terms;
            for (int m = 0; m <= shape.max_mode; ++m) {
                for (int j = 0; m + j <= shape.max_mode; ++j) {
                    if (m + j == 0) continue;
                    terms.push_back({m, j, false});
                    if (m > 0) terms.push_back({m, j, true});
                }
            }
            SeededRng rng(shape.seed);
            const auto a = normalized_amplitudes(rng, terms.size());
            for (std::size_t i = 0; i < rho.size(); ++i) {
                for (std::size_t jj = 0; jj < np; ++jj) {
                    const double phi = grid->phi(static_cast<int>(jj));
                    double s = 0.0;
                    for (std::size_t t = 0; t < terms.size(); ++t) {
                        const auto& term = terms[t];
                        // T_j(cos rho) = cos(j rho); sin^m(rho) e^{i m phi} is smooth on S^2
                        const double polar = std::cos(term.j * rho[i]) * std::pow(sn[i], term.m);
                        const double azim = term.sine ? std::sin(term.m * phi) : std::cos(term.m * phi);
                        s += a[t] * polar * azim;
                    }
                    r[i * np + jj] += shape.eps * s;
                }
            }
            break;
        }
    }
    return RadialProfile(std::move(grid), std::move(r));
}

RadialProfile make_two_convex_profile(const ShapeSpec& shape, int n, int n_rho) {
    auto p = make_profile(shape, n, n_rho);
    const auto bad = two_convexity_violations(curvature_from_profile(p));
    if (!bad.empty()) {
        throw Error(ErrorCode::Precondition,
                    std::string("initial shape is not two-convex; ") + detail::describe_nodes(bad));
    }
    return p;
}

namespace detail {

json shape_to_json_value(const ShapeSpec& s) {
    json j;
    j["kind"] = to_string(s.kind);
    j["r0"] = s.r0;
    switch (s.kind) {
        case ShapeSpec::Kind::Sphere: break;
        case ShapeSpec::Kind::CosineBump:
            j["eps"] = s.eps;
            j["k"] = s.k;
            break;
        case ShapeSpec::Kind::RandomBandlimited:
            j["eps"] = s.eps;
            j["max_mode"] = s.max_mode;
            j["rng_seed"] = s.seed;
            j["rng"] = SeededRng::kAlgorithm;
            break;
    }
    return j;
}

ShapeSpec shape_from_json_value(const json& j) {
    constexpr const char* what = "shape";
    ShapeSpec s;
    s.kind = shape_kind_from_string(field<std::string>(j, "kind", what));
    s.r0 = field_or<double>(j, "r0", 1.0, what);
    switch (s.kind) {
        case ShapeSpec::Kind::Sphere:
            s.eps = 0.0;
            s.k = 0;
            break;
        case ShapeSpec::Kind::CosineBump:
            s.eps = field_or<double>(j, "eps", 0.1, what);
            s.k = field_or<int>(j, "k", 2, what);
            break;
        case ShapeSpec::Kind::RandomBandlimited:
            s.eps = field_or<double>(j, "eps", 0.1, what);
            s.max_mode = field_or<int>(j, "max_mode", 4, what);
            s.seed = field_or<std::uint64_t>(j, "rng_seed", 0, what);
            break;
    }
    validate(s);
    return s;
}

}  // namespace detail

std::string shape_to_json(const ShapeSpec& shape) { return detail::shape_to_json_value(shape).dump(); }

ShapeSpec shape_from_json(std::string_view text) {
    return detail::shape_from_json_value(detail::parse_json(text, "shape"));
}

}  // namespace hypflow
