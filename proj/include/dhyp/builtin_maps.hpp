#pragma once

// Demo self-maps on D used by the CLI and the test suites.

#include <vector>

#include "dhyp/hyp.hpp"

namespace dhyp {

/// (u, v) -> (su*u + ou, sv*v + ov). A contraction iff |su|, |sv| < 1,
/// with closed-form fixed point (ou/(1-su), ov/(1-sv)).
struct AffineMap {
    double su, ou, sv, ov;

    Hyp operator()(const Hyp& x) const {
        return Hyp{su * x.u + ou, sv * x.v + ov};
    }
    Hyp lipschitz() const { return Hyp{std::abs(su), std::abs(sv)}; }
    Hyp fixed_point() const { return Hyp{ou / (1.0 - su), ov / (1.0 - sv)}; }
};

/// g(t) = 4 + 2*clamp(t, 0, 1) per component. Lipschitz constant 2, so
/// not a contraction, but g∘g is constant 6 and g(6) = 6.
inline Hyp clamp_step(const Hyp& x) {
    auto g = [](double t) { return 4.0 + 2.0 * std::clamp(t, 0.0, 1.0); };
    return Hyp{g(x.u), g(x.v)};
}

/// f(t) = t - t^2/2 per component on [0, 1]: contractive but not a
/// contraction (the local ratio tends to 1 near 0); unique fixed point 0.
inline Hyp quad_contractive(const Hyp& x) {
    auto f = [](double t) { return t - t * t / 2.0; };
    return Hyp{f(x.u), f(x.v)};
}

/// f(z) = z1*e1 + (1 - z1)*e2: continuous on [0,1]_D with sup 1 and
/// inf 0, neither attained at a single point.
inline Hyp evt_counterexample(const Hyp& z) { return Hyp{z.u, 1.0 - z.u}; }

/// n equally spaced points (t_i, t_i) with t_i from lo to hi inclusive.
inline std::vector<Hyp> diagonal_grid(double lo, double hi, size_t n) {
    if (n < 2) throw std::invalid_argument("diagonal_grid: need at least 2 points");
    std::vector<Hyp> pts;
    pts.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
        pts.emplace_back(t, t);
    }
    return pts;
}

} // namespace dhyp
