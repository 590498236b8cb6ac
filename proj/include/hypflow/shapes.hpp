#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "hypflow/profile.hpp"

namespace hypflow {

/// Seeded generator with a platform-independent uniform mapping (the standard
/// distributions are implementation-defined, the engine is not).
class SeededRng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64";

    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

struct ShapeSpec {
    enum class Kind { Sphere, CosineBump, RandomBandlimited };

    Kind kind = Kind::CosineBump;
    double r0 = 1.0;
    double eps = 0.1;      // perturbation amplitude: |r - r0| <= eps
    int k = 2;             // cosine_bump: r0 + eps cos(k rho)
    int max_mode = 4;      // random_bandlimited
    std::uint64_t seed = 0;

    static ShapeSpec sphere(double r0) { return {Kind::Sphere, r0, 0.0, 0, 0, 0}; }
    static ShapeSpec cosine_bump(double r0, double eps, int k) {
        return {Kind::CosineBump, r0, eps, k, 0, 0};
    }
    static ShapeSpec random_bandlimited(double r0, double eps, int max_mode, std::uint64_t seed) {
        return {Kind::RandomBandlimited, r0, eps, 0, max_mode, seed};
    }
};

[[nodiscard]] const char* to_string(ShapeSpec::Kind kind) noexcept;
/// Throws Parse on unknown names.
[[nodiscard]] ShapeSpec::Kind shape_kind_from_string(std::string_view name);

/// Zonal profile on n_rho staggered nodes. Random shapes are sums of cos(k rho),
/// k = 1..max_mode, with uniform(-1, 1) amplitudes scaled to sum(|a_k|) = 1.
[[nodiscard]] RadialProfile make_profile(const ShapeSpec& shape, int n, int n_rho);

/// Profile on the latitude-longitude S^2 grid (n = 3). Random shapes use the
/// smooth basis T_j(cos rho) sin^m(rho) {cos, sin}(m phi), 1 <= m + j <= max_mode.
[[nodiscard]] RadialProfile make_sphere_profile(const ShapeSpec& shape, int n_rho, int n_phi);

/// make_profile plus a Gamma_2 check at every node; throws Precondition listing
/// the offending nodes.
[[nodiscard]] RadialProfile make_two_convex_profile(const ShapeSpec& shape, int n, int n_rho);

/// {"kind": "cosine_bump", "r0": 1, "eps": 0.1, "k": 2} and friends;
/// random shapes carry "max_mode" and "rng_seed".
[[nodiscard]] std::string shape_to_json(const ShapeSpec& shape);
[[nodiscard]] ShapeSpec shape_from_json(std::string_view text);

}  // namespace hypflow
