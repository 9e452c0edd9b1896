#pragma once

// Shared fixtures: deterministic random matrices, lines and configurations.

#include <random>

#include "orthocalc/gram.hpp"

namespace orthotest {

using namespace orthocalc;

class Rng {
  public:
    explicit Rng(unsigned long long seed = 0xfe11a5) : gen_(seed) {}

    double real(double lo = -1.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    cplx complex(double scale = 1.0) {
        return {scale * real(), scale * real()};
    }

    // Random element of SL2 with entries of moderate size.
    SL2 sl2() {
        for (;;) {
            cplx a = complex(), b = complex(), c = complex();
            if (std::abs(a) < 0.2) continue;
            cplx d = (1.0 + b * c) / a;
            if (std::abs(d) > 20.0) continue;
            return SL2(Mat2(a, b, c, d), 1e-9);
        }
    }

    // Random normalized line matrix (a point of the det = 1 quadric).
    LineMatrix line() {
        for (;;) {
            LineMatrix raw(complex(), complex(), complex());
            if (std::abs(raw.det()) < 0.05) continue;
            return raw.normalized();
        }
    }

    // Random non-parabolic SL2 element.
    SL2 loxodromic() {
        for (;;) {
            SL2 h = sl2();
            cplx t = h.tr();
            if (std::abs(t * t - 4.0) > 0.1 && std::abs(t) > 0.1) return h;
        }
    }

    LineConfig lines(int n) {
        LineConfig cfg;
        for (int i = 0; i < n; ++i) cfg.push_back(line());
        return cfg;
    }

  private:
    std::mt19937_64 gen_;
};

inline double gram_error(const LineConfig& cfg, const GramMatrix& X) {
    double worst = 0;
    for (int i = 0; i < X.n; ++i)
        for (int j = 0; j < X.n; ++j)
            worst = std::max(worst,
                             std::abs(form(cfg[i], cfg[j]) - X.x[i][j]));
    return worst;
}

}  // namespace orthotest
