#pragma once

#include <random>

#include "dhyp/hyp.hpp"

namespace dhyp::test {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed = 42) : gen(seed) {}

    double real(double lo = -10.0, double hi = 10.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    Hyp hyp(double lo = -10.0, double hi = 10.0) {
        return Hyp{real(lo, hi), real(lo, hi)};
    }
    BC bc(double lo = -10.0, double hi = 10.0) {
        return BC{{real(lo, hi), real(lo, hi)}, {real(lo, hi), real(lo, hi)}};
    }
};

inline bool rel_close(double a, double b, double tol = 1e-12) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= tol * scale;
}

inline bool rel_close(const Hyp& a, const Hyp& b, double tol = 1e-12) {
    return rel_close(a.u, b.u, tol) && rel_close(a.v, b.v, tol);
}

} // namespace dhyp::test
