#include <doctest.h>

#include "dhyp/builtin_maps.hpp"
#include "dhyp/fixedpoint.hpp"
#include "test_util.hpp"

using namespace dhyp;
using dhyp::test::Rng;
using dhyp::test::rel_close;

namespace {

MapSpec<Hyp> spec_of(const AffineMap& m) {
    return {[m](const Hyp& x) { return m(x); }, m.lipschitz()};
}

std::vector<std::pair<Hyp, Hyp>> random_pairs(Rng& rng, int n) {
    std::vector<std::pair<Hyp, Hyp>> ps;
    for (int i = 0; i < n; ++i) {
        Hyp a = rng.hyp(), b = rng.hyp();
        if (a.u == b.u || a.v == b.v) continue;
        ps.emplace_back(a, b);
    }
    return ps;
}

} // namespace

TEST_CASE("estimate_lipschitz of affine maps recovers the slopes") {
    Rng rng(51);
    const auto pairs = random_pairs(rng, 100);
    const AffineMap m{0.5, 0.0, 1.0 / 3.0, 0.0};
    const Hyp k = estimate_lipschitz<Hyp>(spec_of(m), pairs, d_canonical);
    CHECK(rel_close(k, Hyp{0.5, 1.0 / 3.0}));

    MapSpec<Hyp> identity{[](const Hyp& x) { return x; }, {}};
    CHECK(estimate_lipschitz<Hyp>(identity, pairs, d_canonical) == hyp_one);

    MapSpec<Hyp> constant{[](const Hyp&) { return Hyp{7, 7}; }, {}};
    CHECK(estimate_lipschitz<Hyp>(constant, pairs, d_canonical) == hyp_zero);
}

TEST_CASE("estimate_lipschitz rejects degenerate pairs") {
    const std::vector<std::pair<Hyp, Hyp>> bad{{Hyp{1, 2}, Hyp{1, 5}}};
    MapSpec<Hyp> identity{[](const Hyp& x) { return x; }, {}};
    CHECK_THROWS_AS(estimate_lipschitz<Hyp>(identity, bad, d_canonical), DegeneratePair);
}

TEST_CASE("solve_banach on the demo affine map") {
    const AffineMap m{0.5, 1.0, 1.0 / 3.0, 1.0};
    const auto rep = solve_banach<Hyp>(spec_of(m), hyp_zero, d_canonical, Hyp{1e-12, 1e-12});
    CHECK(rep.converged);
    CHECK(rel_close(rep.fixed_point, Hyp{2.0, 1.5}, 1e-11));
    CHECK(in_d0_plus(rep.residual));
    CHECK(rep.trace.size() == rep.apriori_bounds.size());
}

TEST_CASE("solve_banach a-priori bounds hold along the trace") {
    Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const AffineMap m{rng.real(0.05, 0.95), rng.real(-5, 5), rng.real(0.05, 0.95),
                          rng.real(-5, 5)};
        const auto rep = solve_banach<Hyp>(spec_of(m), rng.hyp(), d_canonical,
                                           Hyp{1e-11, 1e-11}, 100'000);
        const Hyp star = rep.fixed_point;
        for (size_t n = 0; n < rep.trace.size(); ++n) {
            const Hyp err = d_canonical(rep.trace[n], star);
            const Hyp bound = rep.apriori_bounds[n] + Hyp{1e-9, 1e-9};
            CHECK(preceq(err, bound));
        }
        // bounds are monotone non-increasing
        for (size_t n = 1; n < rep.apriori_bounds.size(); ++n)
            CHECK(preceq(rep.apriori_bounds[n], rep.apriori_bounds[n - 1]));
        // step contraction d(x_{n+1}, x_{n+2}) <= k * d(x_n, x_{n+1})
        const Hyp k = m.lipschitz();
        for (size_t n = 0; n + 2 < rep.trace.size(); ++n) {
            const Hyp s0 = d_canonical(rep.trace[n], rep.trace[n + 1]);
            const Hyp s1 = d_canonical(rep.trace[n + 1], rep.trace[n + 2]);
            const Hyp bnd = k * s0;
            // 4 ulps at iterate scale: the step is a cancelling difference
            const double scale = std::max({std::abs(rep.trace[n].u),
                                           std::abs(rep.trace[n].v), 1.0});
            const double slack = 4.0 * ulp_of(scale);
            CHECK(s1.u <= bnd.u + slack);
            CHECK(s1.v <= bnd.v + slack);
        }
    }
}

TEST_CASE("solve_banach converges from any start to the same point") {
    const AffineMap m{0.5, 1.0, 1.0 / 3.0, 1.0};
    const Hyp tol{1e-10, 1e-10};
    const auto r1 = solve_banach<Hyp>(spec_of(m), hyp_zero, d_canonical, tol);
    const auto r2 = solve_banach<Hyp>(spec_of(m), Hyp{10, -7}, d_canonical, tol);
    const auto r3 = solve_banach<Hyp>(spec_of(m), Hyp{-100, 42}, d_canonical, tol);
    CHECK(preceq(d_canonical(r1.fixed_point, r2.fixed_point), 2.0 * tol));
    CHECK(preceq(d_canonical(r1.fixed_point, r3.fixed_point), 2.0 * tol));
}

TEST_CASE("solve_banach handles constant maps and degenerate k") {
    MapSpec<Hyp> constant{[](const Hyp&) { return Hyp{3, 4}; }, Hyp{0, 0}};
    const auto rep = solve_banach<Hyp>(constant, hyp_zero, d_canonical, Hyp{1e-12, 1e-12});
    CHECK(rep.fixed_point == Hyp{3, 4});
    CHECK(rep.iterations == 1);

    // k with one zero component: that slot lands in one step
    MapSpec<Hyp> half{[](const Hyp& x) { return Hyp{x.u / 2, 9}; }, Hyp{0.5, 0}};
    const auto r2 = solve_banach<Hyp>(half, hyp_zero, d_canonical, Hyp{1e-10, 1e-10});
    CHECK(rel_close(r2.fixed_point, Hyp{0, 9}, 1e-9));
}

TEST_CASE("solve_banach rejects non-contractions and reports non-convergence") {
    MapSpec<Hyp> identity{[](const Hyp& x) { return x; }, hyp_one};
    CHECK_THROWS_AS(
        solve_banach<Hyp>(identity, hyp_zero, d_canonical, Hyp{1e-6, 1e-6}),
        NotAContraction);
    MapSpec<Hyp> undeclared{[](const Hyp& x) { return x; }, {}};
    CHECK_THROWS_AS(
        solve_banach<Hyp>(undeclared, hyp_zero, d_canonical, Hyp{1e-6, 1e-6}),
        NotAContraction);

    const AffineMap slow{0.95, 1.0, 0.95, 1.0};
    try {
        solve_banach<Hyp>(spec_of(slow), hyp_zero, d_canonical, Hyp{1e-14, 1e-14}, 3);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence<Hyp>& e) {
        CHECK(e.partial.iterations == 3);
        CHECK(e.partial.trace.size() == 4);
    }
}

TEST_CASE("solve_inexact tracks the exact fixed point") {
    const AffineMap m{0.5, 1.0, 1.0 / 3.0, 1.0};
    const auto spec = spec_of(m);
    auto eps = [](size_t n) {
        const double e = 1.0 / ((n + 1.0) * (n + 1.0));
        return Hyp{e, e};
    };
    // perturb adversarially at the eps boundary
    auto step = [&](const Hyp& y, size_t n) {
        const Hyp e = eps(n);
        return m(y) + Hyp{e.u, -e.v};
    };
    const auto rep = solve_inexact<Hyp>(spec, hyp_zero, eps, step, d_canonical, 10'000);
    CHECK(prec(rep.errors_to_reference.back(), Hyp{1e-6, 1e-6}));
    CHECK(rel_close(rep.fixed_point, Hyp{2.0, 1.5}, 1e-10));
}

TEST_CASE("solve_inexact with zero schedule reduces to Banach iteration") {
    const AffineMap m{0.5, 1.0, 1.0 / 3.0, 1.0};
    const auto spec = spec_of(m);
    auto zero_eps = [](size_t) { return hyp_zero; };
    auto exact_step = [&](const Hyp& y, size_t) { return m(y); };
    const auto rep = solve_inexact<Hyp>(spec, hyp_zero, zero_eps, exact_step,
                                        d_canonical, 50);
    const auto exact = solve_banach<Hyp>(spec, hyp_zero, d_canonical,
                                         Hyp{1e-14, 1e-14}, 1000);
    for (size_t n = 0; n < std::min(rep.trace.size(), exact.trace.size()); ++n)
        CHECK(rep.trace[n] == exact.trace[n]);
}

TEST_CASE("solve_inexact flags schedule violations") {
    const AffineMap m{0.5, 1.0, 0.5, 1.0};
    auto eps = [](size_t) { return Hyp{1e-8, 1e-8}; };
    auto cheat = [&](const Hyp& y, size_t) { return m(y) + Hyp{0.1, 0}; };
    CHECK_THROWS_AS(
        solve_inexact<Hyp>(spec_of(m), hyp_zero, eps, cheat, d_canonical, 10),
        ScheduleViolated);
}

TEST_CASE("solve_power on the clamp-step map") {
    // g has Lipschitz constant 2, but g∘g is constant 6
    Rng rng(57);
    std::vector<std::pair<Hyp, Hyp>> pairs;
    for (int i = 0; i < 50; ++i) {
        Hyp a{rng.real(0, 1), rng.real(0, 1)};
        Hyp b{rng.real(0, 1), rng.real(0, 1)};
        if (a.u == b.u || a.v == b.v) continue;
        pairs.emplace_back(a, b);
    }
    MapSpec<Hyp> g{clamp_step, {}};
    const Hyp k1 = estimate_lipschitz<Hyp>(g, pairs, d_canonical);
    CHECK(rel_close(k1, Hyp{2, 2}));

    g.lipschitz = Hyp{0, 0}; // constant composite
    const auto rep = solve_power<Hyp>(g, 2, hyp_zero, d_canonical, Hyp{1e-12, 1e-12});
    CHECK(rep.fixed_point == Hyp{6, 6});
}

TEST_CASE("solve_power with N=1 matches solve_banach exactly") {
    const AffineMap m{0.5, 1.0, 0.25, -2.0};
    const auto spec = spec_of(m);
    const Hyp tol{1e-11, 1e-11};
    const auto a = solve_banach<Hyp>(spec, Hyp{1, 1}, d_canonical, tol);
    const auto b = solve_power<Hyp>(spec, 1, Hyp{1, 1}, d_canonical, tol);
    CHECK(a.trace == b.trace);
    CHECK(a.fixed_point == b.fixed_point);
}

TEST_CASE("solve_power N=2 on a contraction agrees with N=1") {
    const AffineMap m{0.5, 0.0, 0.5, 0.0};
    auto spec = spec_of(m);
    spec.lipschitz = Hyp{0.25, 0.25}; // constant of the square
    const auto rep = solve_power<Hyp>(spec, 2, Hyp{8, -3}, d_canonical, Hyp{1e-12, 1e-12});
    CHECK(rel_close(rep.fixed_point, hyp_zero, 1e-10));
}

TEST_CASE("solve_contractive_compact finds the quad map's fixed point") {
    const auto grid = diagonal_grid(0.0, 1.0, 1001);
    MapSpec<Hyp> f{quad_contractive, {}};
    const auto rep = solve_contractive_compact(f, grid, 1.0 / 1000.0, d_canonical);
    CHECK(rep.fixed_point.u <= 1.0 / 1000.0);
    CHECK(rep.fixed_point.v <= 1.0 / 1000.0);
    // d(T^n x, x*) strictly decreases componentwise along the trace
    for (size_t n = 1; n < rep.trace.size(); ++n) {
        const Hyp prev = d_canonical(rep.trace[n - 1], rep.fixed_point);
        const Hyp cur = d_canonical(rep.trace[n], rep.fixed_point);
        if (cur == hyp_zero) break;
        CHECK(cur.u < prev.u);
        CHECK(cur.v < prev.v);
    }
}

TEST_CASE("solve_contractive_compact agrees with solve_banach on contractions") {
    const AffineMap m{0.5, 0.25, 0.5, 0.25}; // fixed point (0.5, 0.5)
    const auto grid = diagonal_grid(0.0, 1.0, 401);
    MapSpec<Hyp> spec{[m](const Hyp& x) { return m(x); }, {}};
    const auto rep = solve_contractive_compact(spec, grid, 1.0 / 400.0, d_canonical);
    const auto exact = solve_banach<Hyp>(spec_of(m), hyp_zero, d_canonical,
                                         Hyp{1e-12, 1e-12});
    CHECK(preceq(d_canonical(rep.fixed_point, exact.fixed_point),
                 Hyp{1.0 / 400.0, 1.0 / 400.0}));
}

TEST_CASE("solve_contractive_compact rejects the identity") {
    const auto grid = diagonal_grid(0.0, 1.0, 101);
    MapSpec<Hyp> identity{[](const Hyp& x) { return x; }, {}};
    CHECK_THROWS_AS(solve_contractive_compact(identity, grid, 0.01, d_canonical),
                    NotContractive);
}
