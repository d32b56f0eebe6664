#pragma once

// Fixed-point solvers over hyperbolic-valued metric spaces: plain
// contraction iteration with a-priori/a-posteriori error bounds, inexact
// iteration against an epsilon schedule, N-th power contractions, and
// contractive maps on compact grids.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dhyp/dmetric.hpp"
#include "dhyp/hyp.hpp"

namespace dhyp {

struct NotAContraction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegeneratePair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ScheduleViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PowerFixedPointMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotContractive : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Self-map with an optionally declared Lipschitz constant.
template <class P>
struct MapSpec {
    std::function<P(const P&)> map;
    std::optional<Hyp> lipschitz;
};

template <class P>
struct ContractionReport {
    P fixed_point{};
    size_t iterations = 0;
    Hyp residual;                  // d(x_n, T(x_n)) at the final iterate
    std::vector<Hyp> apriori_bounds; // k^n/(1-k) * d(x0, T(x0)) per iterate
    std::vector<P> trace;          // x0, x1, ..., x_n
    std::vector<Hyp> errors_to_reference; // inexact solves: d(y_n, x*)
    bool converged = false;
};

template <class P>
struct NoConvergence : std::runtime_error {
    ContractionReport<P> partial;
    NoConvergence(std::string msg, ContractionReport<P> rep)
        : std::runtime_error(std::move(msg)), partial(std::move(rep)) {}
};

namespace detail {

// Components of k must sit in [0, 1); a zero component converges in one
// step and is allowed.
inline void require_contraction(const std::optional<Hyp>& k) {
    if (!k) throw NotAContraction("no Lipschitz constant declared");
    if (k->u < 0.0 || k->v < 0.0 || k->u >= 1.0 || k->v >= 1.0)
        throw NotAContraction("Lipschitz constant not strictly below 1");
}

// 1/(1-k) componentwise
inline Hyp geometric_factor(const Hyp& k) {
    return Hyp{1.0 / (1.0 - k.u), 1.0 / (1.0 - k.v)};
}

} // namespace detail

/// Componentwise ratio estimate of the smallest Lipschitz constant: the
/// sup over pairs of d_i(Tx, Ty) / d_i(x, y) per idempotent slot. A
/// lower estimate of the true constant.
template <class P, DMetricFor<P> M>
Hyp estimate_lipschitz(const MapSpec<P>& t, std::span<const std::pair<P, P>> pairs,
                       const M& d) {
    Hyp k = hyp_zero;
    for (const auto& [x, y] : pairs) {
        const Hyp den = d(x, y);
        if (den.u == 0.0 || den.v == 0.0)
            throw DegeneratePair("estimate_lipschitz: zero distance in a component");
        const Hyp num = d(t.map(x), t.map(y));
        k.u = std::max(k.u, num.u / den.u);
        k.v = std::max(k.v, num.v / den.v);
    }
    return k;
}

/// Banach iteration x_{n+1} = T(x_n). Stops once the a-posteriori bound
/// (k/(1-k)) * d(x_{n-1}, x_n) guarantees d(x_n, x*) strictly below tol.
template <class P, DMetricFor<P> M>
ContractionReport<P> solve_banach(const MapSpec<P>& t, const P& x0, const M& d,
                                  const Hyp& tol, size_t max_iter = 10'000) {
    detail::require_contraction(t.lipschitz);
    if (!in_d_plus(tol))
        throw std::invalid_argument("solve_banach: tol not in D+");
    const Hyp k = *t.lipschitz;
    const Hyp factor = detail::geometric_factor(k);

    // stop when the step distance clears d(x_n, x*) <= (k/(1-k)) * step < tol
    const double thresh_u = k.u > 0.0 ? tol.u * (1.0 - k.u) / k.u
                                      : std::numeric_limits<double>::infinity();
    const double thresh_v = k.v > 0.0 ? tol.v * (1.0 - k.v) / k.v
                                      : std::numeric_limits<double>::infinity();

    ContractionReport<P> rep;
    rep.trace.push_back(x0);
    P x = x0;
    P tx = t.map(x);
    const Hyp d0 = d(x, tx);
    Hyp kn = hyp_one; // k^n
    rep.apriori_bounds.push_back(factor * d0 * kn);

    for (size_t n = 0; n < max_iter; ++n) {
        const Hyp step = d(x, tx);
        x = tx;
        kn = kn * k;
        rep.trace.push_back(x);
        rep.apriori_bounds.push_back(factor * d0 * kn);
        rep.iterations = n + 1;
        tx = t.map(x);
        if (step.u < thresh_u && step.v < thresh_v) {
            rep.residual = d(x, tx);
            rep.fixed_point = x;
            rep.converged = true;
            return rep;
        }
    }
    rep.residual = d(x, tx);
    rep.fixed_point = x;
    throw NoConvergence<P>("solve_banach: max_iter exhausted", std::move(rep));
}

/// Epsilon schedule for inexact iteration; each term must lie in D0+
/// (a zero schedule reduces to the exact iteration).
using EpsSchedule = std::function<Hyp(size_t)>;

/// Inexact iteration: the caller supplies y_{n+1} = step(y_n, n) with
/// d(y_{n+1}, T(y_n)) within eps_n, verified at every step. The exact
/// fixed point is computed via solve_banach and the distance of each
/// y_n to it is recorded.
template <class P, DMetricFor<P> M>
ContractionReport<P> solve_inexact(const MapSpec<P>& t, const P& y0,
                                   const EpsSchedule& eps,
                                   const std::function<P(const P&, size_t)>& step,
                                   const M& d, size_t n_max,
                                   const Hyp& reference_tol = Hyp{1e-14, 1e-14}) {
    detail::require_contraction(t.lipschitz);
    const auto exact = solve_banach(t, y0, d, reference_tol, 1'000'000);

    ContractionReport<P> rep;
    rep.fixed_point = exact.fixed_point;
    P y = y0;
    rep.trace.push_back(y);
    rep.errors_to_reference.push_back(d(y, exact.fixed_point));
    for (size_t n = 0; n < n_max; ++n) {
        const P ty = t.map(y);
        const P y_next = step(y, n);
        const Hyp e = eps(n);
        // absolute slack: computing d(y_next, T(y_n)) cancels at the
        // magnitude of the points, not at eps magnitude
        const Hyp dist = d(y_next, ty);
        constexpr double slack = 1e-12;
        if (dist.u > e.u + slack || dist.v > e.v + slack)
            throw ScheduleViolated("solve_inexact: perturbation exceeds eps_n");
        y = y_next;
        rep.trace.push_back(y);
        rep.errors_to_reference.push_back(d(y, exact.fixed_point));
        rep.iterations = n + 1;
    }
    rep.residual = d(y, t.map(y));
    rep.converged = true;
    return rep;
}

/// Fixed point of T through a contraction power T^N: solves T^N by
/// Banach iteration, then verifies the result is fixed by T itself.
template <class P, DMetricFor<P> M>
ContractionReport<P> solve_power(const MapSpec<P>& t, size_t n_pow, const P& x0,
                                 const M& d, const Hyp& tol,
                                 size_t max_iter = 10'000) {
    if (n_pow < 1) throw std::invalid_argument("solve_power: N must be >= 1");
    MapSpec<P> tn{
        [&map = t.map, n_pow](const P& x) {
            P y = x;
            for (size_t i = 0; i < n_pow; ++i) y = map(y);
            return y;
        },
        t.lipschitz};
    auto rep = solve_banach(tn, x0, d, tol, max_iter);
    const Hyp drift = d(t.map(rep.fixed_point), rep.fixed_point);
    if (!preceq(drift, tol))
        throw PowerFixedPointMismatch(
            "solve_power: fixed point of T^N is not fixed by T within tol");
    return rep;
}

/// Fixed point of a contractive (not necessarily contraction) map on a
/// compact subset of D given as a finite grid. Contractivity is spot
/// checked, psi(x) = d(x, Tx) is minimized componentwise over the grid,
/// and T is iterated from the minimizer until the step falls below the
/// grid resolution.
template <DMetricFor<Hyp> M>
ContractionReport<Hyp> solve_contractive_compact(const MapSpec<Hyp>& t,
                                                 std::span<const Hyp> grid,
                                                 double resolution, const M& d,
                                                 size_t n_max = 100'000) {
    if (grid.empty())
        throw std::invalid_argument("solve_contractive_compact: empty grid");

    // contractivity spot check on pairs with both components distinct
    size_t checked = 0;
    const size_t stride = std::max<size_t>(1, grid.size() / 32);
    for (size_t i = 0; i < grid.size() && checked < 512; i += stride)
        for (size_t j = i + stride; j < grid.size() && checked < 512; j += stride) {
            const Hyp& x = grid[i];
            const Hyp& y = grid[j];
            if (x.u == y.u || x.v == y.v) continue;
            if (!prec(d(t.map(x), t.map(y)), d(x, y)))
                throw NotContractive(
                    "solve_contractive_compact: d(Tx,Ty) < d(x,y) fails");
            ++checked;
        }

    // componentwise minimization of psi(x) = d(x, Tx)
    size_t iu = 0, iv = 0;
    Hyp best{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    for (size_t i = 0; i < grid.size(); ++i) {
        const Hyp psi = d(grid[i], t.map(grid[i]));
        if (psi.u < best.u) {
            best.u = psi.u;
            iu = i;
        }
        if (psi.v < best.v) {
            best.v = psi.v;
            iv = i;
        }
    }
    const Hyp start{grid[iu].u, grid[iv].v};

    ContractionReport<Hyp> rep;
    rep.trace.push_back(start);
    Hyp x = start;
    for (size_t n = 0; n < n_max; ++n) {
        const Hyp tx = t.map(x);
        const Hyp step = d(x, tx);
        rep.iterations = n + 1;
        if (step.u <= resolution && step.v <= resolution) {
            x = tx;
            rep.trace.push_back(x);
            break;
        }
        x = tx;
        rep.trace.push_back(x);
    }
    rep.fixed_point = x;
    rep.residual = d(x, t.map(x));
    rep.converged = true;
    if (rep.residual.u > 2.0 * resolution || rep.residual.v > 2.0 * resolution)
        throw GridTooCoarse(
            "solve_contractive_compact: residual above grid bound");
    return rep;
}

} // namespace dhyp
