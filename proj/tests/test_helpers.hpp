#pragma once

#include <complex>
#include <random>
#include <vector>

#include "gcm/graded.hpp"

namespace gcm::testing {

struct Rng {
    std::mt19937_64 gen;
    std::uniform_real_distribution<double> unif{-1.0, 1.0};

    explicit Rng(std::uint64_t seed) : gen(seed) {}
    cplx c() { return {unif(gen), unif(gen)}; }
    double d() { return unif(gen); }
};

/// Well-separated points avoiding the origin and mirror coincidences.
inline std::vector<cplx> separated_points(Rng& rng, int n, double scale = 2.0,
                                          double sep = 0.35) {
    for (;;) {
        std::vector<cplx> z;
        for (int i = 0; i < n; ++i) z.push_back(scale * rng.c());
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (std::abs(z[i]) < sep) ok = false;
            for (int j = i + 1; j < n && ok; ++j)
                if (std::abs(z[i] - z[j]) < sep || std::abs(z[i] + z[j]) < sep) ok = false;
        }
        if (ok) return z;
    }
}

/// Points separated from each other and from +-avoid.
inline std::vector<cplx> separated_avoiding(Rng& rng, int n, const std::vector<cplx>& avoid,
                                            double scale = 1.5, double sep = 0.3) {
    for (;;) {
        std::vector<cplx> mu = separated_points(rng, n, scale, sep);
        bool ok = true;
        for (const cplx& m : mu)
            for (const cplx& a : avoid)
                if (std::abs(m - a) < sep || std::abs(m + a) < sep) ok = false;
        if (ok) return mu;
    }
}

inline double max_entry_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace gcm::testing
