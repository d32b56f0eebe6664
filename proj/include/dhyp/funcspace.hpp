#pragma once

// Sampled function spaces with the sup-metric sigma_D, boundedness and
// continuity probes, and componentwise extreme-value reporting.
//
// Functions X -> Y are represented as finite samples over an ordered
// grid; every supremum becomes an exact finite maximum.

#include <optional>
#include <span>
#include <vector>

#include "dhyp/dmetric.hpp"
#include "dhyp/hyp.hpp"

namespace dhyp {

struct DomainMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A function sampled on a finite ordered grid. `resolution` is the
/// declared grid spacing, carried as metadata for reports.
template <class X, class Y>
struct SampledFunction {
    std::vector<X> domain;
    std::vector<Y> values;
    double resolution = 0.0;

    SampledFunction(std::vector<X> dom, std::vector<Y> vals, double h = 0.0)
        : domain(std::move(dom)), values(std::move(vals)), resolution(h) {
        if (domain.empty() || domain.size() != values.size())
            throw std::invalid_argument("SampledFunction: domain/value size mismatch");
    }

    template <class F>
    static SampledFunction sample(std::vector<X> dom, F&& f, double h = 0.0) {
        std::vector<Y> vals;
        vals.reserve(dom.size());
        for (const X& x : dom) vals.push_back(f(x));
        return SampledFunction(std::move(dom), std::move(vals), h);
    }
};

template <class X, class Y>
bool same_domain(const SampledFunction<X, Y>& f, const SampledFunction<X, Y>& g) {
    return f.domain == g.domain;
}

/// Sup-metric sigma_D(f, g) = sup over the grid of rho(f(x), g(x)),
/// computed as the componentwise maximum of pointwise distances.
template <class X, class Y, DMetricFor<Y> M>
Hyp sigma_sup(const SampledFunction<X, Y>& f, const SampledFunction<X, Y>& g,
              const M& rho) {
    if (!same_domain(f, g)) throw DomainMismatch("sigma_sup: domains differ");
    Hyp s = hyp_zero;
    for (size_t i = 0; i < f.values.size(); ++i) {
        const Hyp dist = rho(f.values[i], g.values[i]);
        s.u = std::max(s.u, dist.u);
        s.v = std::max(s.v, dist.v);
    }
    return s;
}

/// Boundedness witness: the diameter of the value set.
template <class X, class Y, DMetricFor<Y> M>
Hyp check_bounded(const SampledFunction<X, Y>& f, const M& rho) {
    return diameter<Y>(rho, std::span<const Y>(f.values));
}

/// Componentwise extrema of a D-valued function over its grid, with one
/// attaining domain point per projection. `jointly_attained` reports
/// whether single points attain the sup and the inf outright, which the
/// extreme value theorem does not guarantee.
template <class X>
struct EvtReport {
    Hyp sup_value; // M
    Hyp inf_value; // m
    X at_sup_u, at_sup_v, at_inf_u, at_inf_v; // a, b, c, d
    bool jointly_attained = false;
};

template <class X>
EvtReport<X> evt_extrema(const SampledFunction<X, Hyp>& f) {
    const auto& vals = f.values;
    const Hyp big_m = sup_set(std::span<const Hyp>(vals));
    const Hyp small_m = inf_set(std::span<const Hyp>(vals));
    EvtReport<X> rep;
    rep.sup_value = big_m;
    rep.inf_value = small_m;
    bool sup_joint = false, inf_joint = false;
    auto first_index_where = [&](auto&& pred) {
        for (size_t i = 0; i < vals.size(); ++i)
            if (pred(vals[i])) return i;
        return size_t{0}; // unreachable: extrema are attained per component
    };
    rep.at_sup_u = f.domain[first_index_where([&](const Hyp& y) { return y.u == big_m.u; })];
    rep.at_sup_v = f.domain[first_index_where([&](const Hyp& y) { return y.v == big_m.v; })];
    rep.at_inf_u = f.domain[first_index_where([&](const Hyp& y) { return y.u == small_m.u; })];
    rep.at_inf_v = f.domain[first_index_where([&](const Hyp& y) { return y.v == small_m.v; })];
    for (const Hyp& y : vals) {
        sup_joint = sup_joint || y == big_m;
        inf_joint = inf_joint || y == small_m;
    }
    rep.jointly_attained = sup_joint && inf_joint;
    return rep;
}

/// Grid-scale continuity probe at a domain point: dyadically halves
/// delta starting from eps and returns the largest candidate for which
/// every grid point within delta of alpha maps within eps of f(alpha).
/// nullopt means no tested delta works (a jump at grid scale).
template <class X, class Y, DMetricFor<X> MX, DMetricFor<Y> MY>
std::optional<Hyp> continuity_modulus(const SampledFunction<X, Y>& f,
                                      const X& alpha, const Hyp& eps,
                                      const MX& d, const MY& rho,
                                      int max_halvings = 40) {
    if (!in_d_plus(eps))
        throw std::invalid_argument("continuity_modulus: eps not in D+");
    auto it = std::find(f.domain.begin(), f.domain.end(), alpha);
    if (it == f.domain.end())
        throw std::invalid_argument("continuity_modulus: alpha not on the grid");
    const Y& f_alpha = f.values[static_cast<size_t>(it - f.domain.begin())];

    Hyp delta = eps;
    for (int h = 0; h <= max_halvings; ++h) {
        // below the grid resolution the ball holds only alpha and the
        // probe degenerates; that counts as a jump at grid scale
        if (f.resolution > 0.0 &&
            (delta.u < f.resolution || delta.v < f.resolution))
            break;
        bool ok = true;
        for (size_t i = 0; i < f.domain.size() && ok; ++i)
            if (prec(d(f.domain[i], alpha), delta) &&
                !prec(rho(f.values[i], f_alpha), eps))
                ok = false;
        if (ok) return delta;
        delta = 0.5 * delta;
    }
    return std::nullopt;
}

template <class X>
struct UniformLimitReport {
    // per epsilon: least N with sigma(f_n, f) strictly below eps for all
    // n >= N within the prefix
    std::vector<std::optional<size_t>> uniform_n;
    std::vector<Hyp> sup_distances; // sigma(f_n, f) per n
    std::vector<bool> member_continuous; // continuity probe per f_n
    bool limit_continuous = false;
};

/// Uniform convergence probe for a prefix {f_n} against a candidate
/// limit f, plus a fixed continuity probe on every member and the limit
/// (a uniform limit of continuous functions stays continuous).
template <class X, DMetricFor<X> MX, DMetricFor<Hyp> MY>
UniformLimitReport<X> uniform_limit_check(
    std::span<const SampledFunction<X, Hyp>> fs, const SampledFunction<X, Hyp>& f,
    const MX& d, const MY& rho, std::span<const Hyp> eps_schedule,
    const Hyp& probe_eps = Hyp{0.25, 0.25}) {
    UniformLimitReport<X> rep;
    for (const auto& fn : fs) rep.sup_distances.push_back(sigma_sup(fn, f, rho));

    for (const Hyp& eps : eps_schedule) {
        std::optional<size_t> found;
        for (size_t start = 0; start < fs.size(); ++start) {
            bool all = true;
            for (size_t n = start; n < fs.size(); ++n)
                if (!prec(rep.sup_distances[n], eps)) {
                    all = false;
                    break;
                }
            if (all) {
                found = start;
                break;
            }
        }
        rep.uniform_n.push_back(found);
    }

    const X& alpha = f.domain[f.domain.size() / 2];
    auto continuous = [&](const SampledFunction<X, Hyp>& g) {
        return continuity_modulus(g, alpha, probe_eps, d, rho).has_value();
    };
    for (const auto& fn : fs) rep.member_continuous.push_back(continuous(fn));
    rep.limit_continuous = continuous(f);
    return rep;
}

} // namespace dhyp
