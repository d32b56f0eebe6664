#pragma once

// Hyperbolic-valued metrics, ball/sphere/interval geometry, and
// sequence/cover analysis over finite point sets.
//
// A D-metric is any callable (P, P) -> Hyp whose range lies in the cone
// D0+ and which satisfies the usual three metric axioms under the
// componentwise partial order. Everything here is generic over the
// point type P and the metric callable.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "dhyp/hyp.hpp"

namespace dhyp {

struct InvalidRadius : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class M, class P>
concept DMetricFor = requires(const M& m, const P& a, const P& b) {
    { m(a, b) } -> std::convertible_to<Hyp>;
};

// ---------------------------------------------------------------------------
// The three built-in metrics

/// Canonical metric on D: componentwise absolute difference of the
/// idempotent coordinates. Its open balls are axis-aligned open squares
/// and its spheres consist of exactly four points.
inline Hyp d_canonical(const Hyp& x, const Hyp& y) {
    return Hyp{std::abs(x.u - y.u), std::abs(x.v - y.v)};
}

/// Metric on BC induced by the hyperbolic modulus: |x - y|_k.
inline Hyp d_hypmod(const BC& x, const BC& y) { return hyp_mod(x - y); }

using RealMetric = std::function<double(std::complex<double>, std::complex<double>)>;

inline double real_euclidean(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b);
}
inline double real_discrete(std::complex<double> a, std::complex<double> b) {
    return a == b ? 0.0 : 1.0;
}

/// Product metric on BC: a real metric per idempotent slot.
inline auto d_product(RealMetric d1, RealMetric d2) {
    return [d1 = std::move(d1), d2 = std::move(d2)](const BC& x, const BC& y) {
        return Hyp{d1(x.z1, y.z1), d2(x.z2, y.z2)};
    };
}

// ---------------------------------------------------------------------------
// ulp helpers, shared by the axiom checker and the tests

inline double ulp_of(double x) {
    const double ax = std::abs(x);
    return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

/// a <= b, allowing b to be short by at most `ulps` units in its last place.
inline bool leq_with_ulps(double a, double b, int ulps) {
    return a <= b + ulps * ulp_of(std::max(std::abs(a), std::abs(b)));
}

/// |a - b| within `ulps` units in the last place of the larger magnitude.
inline bool within_ulps(double a, double b, int ulps) {
    return std::abs(a - b) <= ulps * ulp_of(std::max(std::abs(a), std::abs(b)));
}

inline bool preceq_with_ulps(const Hyp& a, const Hyp& b, int ulps) {
    return leq_with_ulps(a.u, b.u, ulps) && leq_with_ulps(a.v, b.v, ulps);
}

// ---------------------------------------------------------------------------
// Axiom checking

struct AxiomReport {
    bool nonneg_identity = true; // clause (i)
    bool symmetry = true;        // clause (ii)
    bool triangle = true;        // clause (iii)
    std::string counterexample;  // description of the first failure, if any

    bool all_pass() const { return nonneg_identity && symmetry && triangle; }
};

/// Checks the metric axioms (i)-(iii) on every pair and triple of
/// `pts`. Failures are reported, not thrown. The triangle inequality is
/// checked with `triangle_ulps` slack; the other clauses exactly.
template <class P, DMetricFor<P> M>
AxiomReport check_axioms(const M& d, std::span<const P> pts, int triangle_ulps = 4) {
    if (pts.size() < 3)
        throw std::invalid_argument("check_axioms: need at least 3 points");
    AxiomReport rep;
    auto fail = [&](bool& clause, const char* what, size_t i, size_t j, size_t k = SIZE_MAX) {
        if (rep.all_pass()) {
            std::ostringstream os;
            os << what << " at indices (" << i << ", " << j;
            if (k != SIZE_MAX) os << ", " << k;
            os << ")";
            rep.counterexample = os.str();
        }
        clause = false;
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = 0; j < pts.size(); ++j) {
            const Hyp dij = d(pts[i], pts[j]);
            if (!in_d0_plus(dij))
                fail(rep.nonneg_identity, "negative distance", i, j);
            if (i == j && dij != hyp_zero)
                fail(rep.nonneg_identity, "d(x,x) != 0", i, j);
            if (i != j && pts[i] == pts[j] && dij != hyp_zero)
                fail(rep.nonneg_identity, "d(x,y)=0 violated for equal points", i, j);
            if (i != j && !(pts[i] == pts[j]) && dij == hyp_zero)
                fail(rep.nonneg_identity, "d(x,y)=0 for distinct points", i, j);
            if (j > i && d(pts[j], pts[i]) != dij)
                fail(rep.symmetry, "asymmetric distance", i, j);
        }
    }
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
            for (size_t k = 0; k < pts.size(); ++k) {
                const Hyp lhs = d(pts[i], pts[j]);
                const Hyp rhs = d(pts[i], pts[k]) + d(pts[k], pts[j]);
                if (!preceq_with_ulps(lhs, rhs, triangle_ulps))
                    fail(rep.triangle, "triangle inequality", i, j, k);
            }
    return rep;
}

/// Per-triple variant of check_axioms for large sample counts: draws
/// `n_triples` triples from `gen` and checks all three clauses on each,
/// avoiding the cubic blowup of the exhaustive checker.
template <class P, DMetricFor<P> M, class Gen>
    requires requires(Gen g) { { g() } -> std::convertible_to<P>; }
AxiomReport check_axioms_sampled(const M& d, Gen&& gen, size_t n_triples,
                                 int triangle_ulps = 4) {
    AxiomReport rep;
    auto fail = [&](bool& clause, const char* what, size_t t) {
        if (rep.all_pass()) {
            std::ostringstream os;
            os << what << " at sampled triple " << t;
            rep.counterexample = os.str();
        }
        clause = false;
    };
    for (size_t t = 0; t < n_triples; ++t) {
        const P x = gen(), y = gen(), z = gen();
        const Hyp dxy = d(x, y);
        if (!in_d0_plus(dxy)) fail(rep.nonneg_identity, "negative distance", t);
        if (d(x, x) != hyp_zero || d(y, y) != hyp_zero)
            fail(rep.nonneg_identity, "d(x,x) != 0", t);
        if (!(x == y) && dxy == hyp_zero)
            fail(rep.nonneg_identity, "d(x,y)=0 for distinct points", t);
        if (d(y, x) != dxy) fail(rep.symmetry, "asymmetric distance", t);
        if (!preceq_with_ulps(dxy, d(x, z) + d(z, y), triangle_ulps))
            fail(rep.triangle, "triangle inequality", t);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Balls, spheres, intervals

enum class BallKind { Open, Closed, Sphere };

template <class P>
struct DBall {
    P center;
    Hyp radius; // must lie in D+
    BallKind kind = BallKind::Open;
};

/// Membership under the order-cone geometry: an Incomparable distance
/// excludes the point from open and closed balls alike.
template <class P, DMetricFor<P> M>
bool ball_membership(const DBall<P>& b, const M& d, const P& x) {
    const Hyp dist = d(x, b.center);
    switch (b.kind) {
    case BallKind::Open: return prec(dist, b.radius);
    case BallKind::Closed: return preceq(dist, b.radius);
    case BallKind::Sphere: return dist == b.radius;
    }
    return false;
}

/// The four-point sphere of the canonical metric on D:
/// {(u ± r.u, v ± r.v)} around the center.
inline std::array<Hyp, 4> sphere_vertices(const Hyp& center, const Hyp& r) {
    if (!in_d_plus(r)) throw InvalidRadius("sphere_vertices: radius not in D+");
    return {Hyp{center.u + r.u, center.v + r.v},
            Hyp{center.u + r.u, center.v - r.v},
            Hyp{center.u - r.u, center.v + r.v},
            Hyp{center.u - r.u, center.v - r.v}};
}

enum class IntervalKind { Open, Closed };

struct DInterval {
    Hyp lo;
    Hyp hi;
    IntervalKind kind = IntervalKind::Closed;

    DInterval(Hyp lo_, Hyp hi_, IntervalKind k = IntervalKind::Closed)
        : lo(lo_), hi(hi_), kind(k) {
        if (!prec(lo, hi))
            throw std::invalid_argument("DInterval: lo must precede hi strictly");
    }
};

inline bool interval_contains(const DInterval& iv, const Hyp& x) {
    if (iv.kind == IntervalKind::Open)
        return prec(iv.lo, x) && prec(x, iv.hi);
    return preceq(iv.lo, x) && preceq(x, iv.hi);
}

// ---------------------------------------------------------------------------
// Sequence analysis

struct SeqReport {
    // per epsilon in the schedule: least N with d(x_n, x_m) strictly below
    // eps for all n, m >= N within the prefix, if such N exists
    std::vector<std::optional<size_t>> cauchy_n;
    std::vector<Hyp> tail_distances; // d(x_n, limit), when a limit was given

    bool cauchy_for_all() const {
        for (const auto& n : cauchy_n)
            if (!n) return false;
        return true;
    }
};

/// Finite Cauchy/convergence probe: for each epsilon of the schedule,
/// find the least cutoff past which all pairwise distances are strictly
/// below it. Verdicts are per-epsilon only.
template <class P, DMetricFor<P> M>
SeqReport seq_analyze(const M& d, std::span<const P> xs,
                      const std::optional<P>& limit,
                      std::span<const Hyp> eps_schedule) {
    if (eps_schedule.empty())
        throw std::invalid_argument("seq_analyze: empty epsilon schedule");
    for (const Hyp& e : eps_schedule)
        if (!in_d_plus(e))
            throw std::invalid_argument("seq_analyze: epsilon not in D+");

    const size_t n = xs.size();
    // sup of pairwise distances over the tail starting at N, computed
    // backwards so each epsilon resolves in O(1) per cutoff
    std::vector<Hyp> tail_sup(n + 1, hyp_zero);
    for (size_t start = n; start-- > 0;) {
        Hyp s = tail_sup[start + 1];
        for (size_t m = start + 1; m < n; ++m) {
            const Hyp dist = d(xs[start], xs[m]);
            s.u = std::max(s.u, dist.u);
            s.v = std::max(s.v, dist.v);
        }
        tail_sup[start] = s;
    }

    SeqReport rep;
    for (const Hyp& eps : eps_schedule) {
        std::optional<size_t> found;
        // the tail must contain at least one pair, otherwise the verdict
        // is vacuous
        for (size_t start = 0; start + 2 <= n; ++start)
            if (prec(tail_sup[start], eps)) {
                found = start;
                break;
            }
        rep.cauchy_n.push_back(found);
    }
    if (limit)
        for (const P& x : xs) rep.tail_distances.push_back(d(x, *limit));
    return rep;
}

/// Finite surrogate for the summability hypothesis: partial sums of the
/// step distances must be monotone and the tail of the sum past `cut`
/// (default: half the prefix) must fall strictly below `tail_bound`
/// componentwise.
template <class P, DMetricFor<P> M>
bool summable_check(const M& d, std::span<const P> xs, const Hyp& tail_bound,
                    std::optional<size_t> cut = std::nullopt) {
    if (!in_d_plus(tail_bound))
        throw std::invalid_argument("summable_check: tail bound not in D+");
    if (xs.size() < 2) return true;
    const size_t steps = xs.size() - 1;
    const size_t c = cut.value_or(steps / 2);
    Hyp partial = hyp_zero;
    Hyp tail = hyp_zero;
    Hyp prev_partial = hyp_zero;
    for (size_t i = 0; i < steps; ++i) {
        const Hyp step = d(xs[i], xs[i + 1]);
        if (!in_d0_plus(step)) return false;
        partial = partial + step;
        if (!preceq(prev_partial, partial)) return false;
        prev_partial = partial;
        if (i >= c) tail = tail + step;
    }
    return prec(tail, tail_bound);
}

/// Componentwise sup of all pairwise distances; the boundedness witness M.
template <class P, DMetricFor<P> M>
Hyp diameter(const M& d, std::span<const P> a) {
    if (a.empty()) throw EmptySet("diameter: empty set");
    Hyp s = hyp_zero;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j) {
            const Hyp dist = d(a[i], a[j]);
            s.u = std::max(s.u, dist.u);
            s.v = std::max(s.v, dist.v);
        }
    return s;
}

/// Greedy farthest-point epsilon-net: returns indices into `a` of ball
/// centers such that every point of `a` lies in some open ball
/// B(center, eps). The next center is the uncovered point farthest from
/// the chosen ones (largest u+v of its min distance), ties broken by
/// lowest index.
template <class P, DMetricFor<P> M>
std::vector<size_t> cover_greedy(const M& d, std::span<const P> a, const Hyp& eps) {
    if (!in_d_plus(eps))
        throw std::invalid_argument("cover_greedy: eps not in D+");
    std::vector<size_t> centers;
    if (a.empty()) return centers;

    std::vector<bool> covered(a.size(), false);
    auto cover_from = [&](size_t c) {
        centers.push_back(c);
        for (size_t i = 0; i < a.size(); ++i)
            if (!covered[i] && prec(d(a[i], a[c]), eps)) covered[i] = true;
    };
    cover_from(0);
    for (;;) {
        std::optional<size_t> next;
        double best = -1.0;
        for (size_t i = 0; i < a.size(); ++i) {
            if (covered[i]) continue;
            Hyp mind = d(a[i], a[centers[0]]);
            for (size_t c = 1; c < centers.size(); ++c) {
                const Hyp dist = d(a[i], a[centers[c]]);
                mind.u = std::min(mind.u, dist.u);
                mind.v = std::min(mind.v, dist.v);
            }
            const double score = mind.u + mind.v;
            if (score > best) {
                best = score;
                next = i;
            }
        }
        if (!next) break;
        cover_from(*next);
    }
    return centers;
}

} // namespace dhyp
