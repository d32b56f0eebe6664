#pragma once

// Hyperbolic and bicomplex numbers in idempotent coordinates.
//
// A hyperbolic number a1 + k*a2 (k*k = 1) is stored as the pair (u, v)
// of its coefficients in the idempotent basis e1 = (1+k)/2, e2 = (1-k)/2.
// In this basis every ring operation is componentwise, the order cone is
// the componentwise nonnegative quadrant, and sup/inf of sets decouple
// per coordinate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace dhyp {

struct InvalidReal : std::domain_error {
    using std::domain_error::domain_error;
};
struct Overflow : std::range_error {
    using std::range_error::range_error;
};
struct ZeroDivisor : std::domain_error {
    using std::domain_error::domain_error;
};
struct EmptySet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Hyperbolic number u*e1 + v*e2. Both components are always finite.
struct Hyp {
    double u = 0.0;
    double v = 0.0;

    constexpr Hyp() = default;

    Hyp(double u_, double v_) : u(u_), v(v_) {
        if (!std::isfinite(u) || !std::isfinite(v))
            throw InvalidReal("Hyp: non-finite component");
    }

    friend constexpr bool operator==(const Hyp&, const Hyp&) = default;
};

inline const Hyp hyp_zero{0.0, 0.0};
inline const Hyp hyp_one{1.0, 1.0};
inline const Hyp hyp_e1{1.0, 0.0};
inline const Hyp hyp_e2{0.0, 1.0};
inline const Hyp hyp_k{1.0, -1.0};

// projections p1, p2 onto the idempotent coordinates
inline double p1(const Hyp& x) { return x.u; }
inline double p2(const Hyp& x) { return x.v; }

namespace detail {
inline Hyp checked(double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v))
        throw Overflow("Hyp arithmetic overflowed to non-finite");
    return Hyp{u, v};
}
} // namespace detail

inline Hyp from_canonical(double a1, double a2) {
    if (!std::isfinite(a1) || !std::isfinite(a2))
        throw InvalidReal("from_canonical: non-finite input");
    return detail::checked(a1 + a2, a1 - a2);
}

/// Canonical coefficients (a1, a2) of x = a1 + k*a2.
inline std::pair<double, double> to_canonical(const Hyp& x) {
    return {(x.u + x.v) / 2.0, (x.u - x.v) / 2.0};
}

inline Hyp operator+(const Hyp& x, const Hyp& y) {
    return detail::checked(x.u + y.u, x.v + y.v);
}
inline Hyp operator-(const Hyp& x, const Hyp& y) {
    return detail::checked(x.u - y.u, x.v - y.v);
}
inline Hyp operator*(const Hyp& x, const Hyp& y) {
    return detail::checked(x.u * y.u, x.v * y.v);
}
inline Hyp operator-(const Hyp& x) { return Hyp{-x.u, -x.v}; }

inline Hyp operator*(double s, const Hyp& x) {
    return detail::checked(s * x.u, s * x.v);
}

/// Multiplicative inverse; defined only off the zero-divisor lines.
inline Hyp inv(const Hyp& x) {
    if (x.u == 0.0 || x.v == 0.0)
        throw ZeroDivisor("inv: component on zero-divisor line");
    return detail::checked(1.0 / x.u, 1.0 / x.v);
}

inline Hyp operator/(const Hyp& x, const Hyp& y) { return x * inv(y); }

/// Position of a hyperbolic number relative to the cone D+ and the
/// zero-divisor set O.
enum class Cone { PositiveInterior, ZeroDivisorBoundary, Zero, Outside };

struct ConeClass {
    Cone region;
    bool in_d0plus; // membership in D0+ = D+ ∪ O0
};

inline ConeClass classify_cone(const Hyp& x) {
    const bool nonneg = x.u >= 0.0 && x.v >= 0.0;
    if (x.u == 0.0 && x.v == 0.0) return {Cone::Zero, true};
    if (x.u > 0.0 && x.v > 0.0) return {Cone::PositiveInterior, true};
    if (x.u == 0.0 || x.v == 0.0) return {Cone::ZeroDivisorBoundary, nonneg};
    return {Cone::Outside, false};
}

inline bool in_d_plus(const Hyp& x) { return x.u > 0.0 && x.v > 0.0; }
inline bool in_d0_plus(const Hyp& x) { return x.u >= 0.0 && x.v >= 0.0; }

/// Six-way outcome of comparing two hyperbolic numbers under the
/// componentwise partial order.
enum class OrderRel {
    Equal,
    StrictLess,        // both components strictly less
    StrictGreater,
    LessEqNotStrict,   // <= in both, not all strict, not equal
    GreaterEqNotStrict,
    Incomparable,
};

inline OrderRel partial_cmp(const Hyp& x, const Hyp& y) {
    if (x == y) return OrderRel::Equal;
    const bool le = x.u <= y.u && x.v <= y.v;
    const bool ge = x.u >= y.u && x.v >= y.v;
    if (le) return (x.u < y.u && x.v < y.v) ? OrderRel::StrictLess
                                            : OrderRel::LessEqNotStrict;
    if (ge) return (x.u > y.u && x.v > y.v) ? OrderRel::StrictGreater
                                            : OrderRel::GreaterEqNotStrict;
    return OrderRel::Incomparable;
}

inline bool preceq(const Hyp& x, const Hyp& y) {
    return x.u <= y.u && x.v <= y.v;
}
inline bool prec(const Hyp& x, const Hyp& y) {
    return x.u < y.u && x.v < y.v;
}
inline bool succeq(const Hyp& x, const Hyp& y) { return preceq(y, x); }
inline bool succ(const Hyp& x, const Hyp& y) { return prec(y, x); }

/// Componentwise supremum of a finite nonempty set; the result need not
/// be an element of the set.
inline Hyp sup_set(std::span<const Hyp> a) {
    if (a.empty()) throw EmptySet("sup_set: empty set");
    Hyp s = a[0];
    for (const Hyp& x : a.subspan(1)) {
        s.u = std::max(s.u, x.u);
        s.v = std::max(s.v, x.v);
    }
    return s;
}

inline Hyp inf_set(std::span<const Hyp> a) {
    if (a.empty()) throw EmptySet("inf_set: empty set");
    Hyp s = a[0];
    for (const Hyp& x : a.subspan(1)) {
        s.u = std::min(s.u, x.u);
        s.v = std::min(s.v, x.v);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Bicomplex numbers

/// Bicomplex number z1*e1 + z2*e2 with complex idempotent components.
struct BC {
    std::complex<double> z1;
    std::complex<double> z2;

    BC() = default;

    BC(std::complex<double> z1_, std::complex<double> z2_) : z1(z1_), z2(z2_) {
        if (!std::isfinite(z1.real()) || !std::isfinite(z1.imag()) ||
            !std::isfinite(z2.real()) || !std::isfinite(z2.imag()))
            throw InvalidReal("BC: non-finite component");
    }

    friend bool operator==(const BC&, const BC&) = default;
};

namespace detail {
inline BC checked_bc(std::complex<double> z1, std::complex<double> z2) {
    if (!std::isfinite(z1.real()) || !std::isfinite(z1.imag()) ||
        !std::isfinite(z2.real()) || !std::isfinite(z2.imag()))
        throw Overflow("BC arithmetic overflowed to non-finite");
    return BC{z1, z2};
}
} // namespace detail

/// Build from the cartesian form w = w1 + j*w2.
inline BC bc_from_cartesian(std::complex<double> w1, std::complex<double> w2) {
    if (!std::isfinite(w1.real()) || !std::isfinite(w1.imag()) ||
        !std::isfinite(w2.real()) || !std::isfinite(w2.imag()))
        throw InvalidReal("bc_from_cartesian: non-finite input");
    const std::complex<double> i{0.0, 1.0};
    return detail::checked_bc(w1 - i * w2, w1 + i * w2);
}

/// Cartesian components (w1, w2) of w = w1 + j*w2.
inline std::pair<std::complex<double>, std::complex<double>>
bc_to_cartesian(const BC& w) {
    const std::complex<double> i{0.0, 1.0};
    return {(w.z1 + w.z2) / 2.0, i * (w.z1 - w.z2) / 2.0};
}

inline BC operator+(const BC& x, const BC& y) {
    return detail::checked_bc(x.z1 + y.z1, x.z2 + y.z2);
}
inline BC operator-(const BC& x, const BC& y) {
    return detail::checked_bc(x.z1 - y.z1, x.z2 - y.z2);
}
inline BC operator*(const BC& x, const BC& y) {
    return detail::checked_bc(x.z1 * y.z1, x.z2 * y.z2);
}

/// Hyperbolic modulus |w|_k = |z1|e1 + |z2|e2; always lands in D0+.
inline Hyp hyp_mod(const BC& w) {
    return Hyp{std::abs(w.z1), std::abs(w.z2)};
}

} // namespace dhyp
