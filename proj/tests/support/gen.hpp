#pragma once

// Seeded generators for property tests. SplitMix64 keeps test inputs
// independent of the library's own PRNG.

#include <cmath>
#include <cstdint>
#include <vector>

namespace testgen {

class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int pick(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::uint64_t state_;
};

/// sigma_m by enumerating subsets; the brute-force oracle.
inline double sigma_by_subsets(const std::vector<double>& k, int m) {
    const int len = static_cast<int>(k.size());
    double s = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
        if (__builtin_popcount(mask) != m) continue;
        double p = 1.0;
        for (int i = 0; i < len; ++i) {
            if (mask & (1u << i)) p *= k[static_cast<std::size_t>(i)];
        }
        s += p;
    }
    return s;
}

/// Uniform draw from (-2, 5)^len kept only inside Gamma_2.
inline std::vector<double> gamma2_tuple(SplitMix& g, int len) {
    for (;;) {
        std::vector<double> k(static_cast<std::size_t>(len));
        for (auto& x : k) x = g.uniform(-2.0, 5.0);
        if (sigma_by_subsets(k, 1) > 0.0 && sigma_by_subsets(k, 2) > 0.0) return k;
    }
}

/// Smooth zonal radius r(rho) = r0 + sum_k a_k cos(k rho) with analytic derivatives.
struct ZonalSeries {
    double r0 = 1.0;
    std::vector<double> a;  // a[k-1] multiplies cos(k rho)

    double r(double rho) const {
        double s = r0;
        for (std::size_t k = 1; k <= a.size(); ++k) s += a[k - 1] * std::cos(k * rho);
        return s;
    }
    double dr(double rho) const {
        double s = 0.0;
        for (std::size_t k = 1; k <= a.size(); ++k) s -= a[k - 1] * k * std::sin(k * rho);
        return s;
    }
    double d2r(double rho) const {
        double s = 0.0;
        for (std::size_t k = 1; k <= a.size(); ++k) s -= a[k - 1] * double(k * k) * std::cos(k * rho);
        return s;
    }
};

inline ZonalSeries zonal_series(SplitMix& g, double amplitude, int modes) {
    ZonalSeries z;
    z.r0 = g.uniform(0.6, 2.0);
    for (int k = 1; k <= modes; ++k) z.a.push_back(g.uniform(-amplitude, amplitude) / k);
    return z;
}

}  // namespace testgen
