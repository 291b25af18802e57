#pragma once

#include <cmath>
#include <limits>

namespace rqd {

// Double-double value: the unevaluated sum hi + lo with |lo| <= 1/2 ulp(hi).
// Gives ~32 significant digits at near-native speed, enough to keep phases
// E*t accurate to well below 1e-8 rad for |E*t| up to 1e14 rad.
//
// Error-free transformations follow Dekker (1971) and the Bailey/Hida QD
// conventions; products use std::fma so the residual is exact.
struct ExtendedReal {
    double hi = 0.0;
    double lo = 0.0;

    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double x) : hi(x), lo(0.0) {}
    constexpr ExtendedReal(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }

    ExtendedReal operator-() const { return {-hi, -lo}; }

    bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }
};

namespace detail {

// s = fl(a+b), err exact. No assumption on |a| vs |b|.
inline ExtendedReal two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// s = fl(a+b), err exact, requires |a| >= |b| (or a == 0).
inline ExtendedReal quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

// p = fl(a*b), err exact.
inline ExtendedReal two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    ExtendedReal s = detail::two_sum(a.hi, b.hi);
    ExtendedReal t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
    return a + (-b);
}

inline ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
    ExtendedReal p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
    const double q1 = a.hi / b.hi;
    ExtendedReal r = a - b * ExtendedReal(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * ExtendedReal(q2);
    const double q3 = r.hi / b.hi;
    ExtendedReal q = detail::quick_two_sum(q1, q2);
    return q + ExtendedReal(q3);
}

inline ExtendedReal sqrt(const ExtendedReal& a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {};
    const double s = std::sqrt(a.hi);
    // One Newton correction doubles the working precision.
    const ExtendedReal e = a - ExtendedReal(s) * ExtendedReal(s);
    return detail::quick_two_sum(s, e.to_double() / (2.0 * s));
}

inline bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }
inline bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.hi == b.hi && a.lo == b.lo;
}

inline ExtendedReal abs(const ExtendedReal& a) { return a.hi < 0.0 ? -a : a; }

// 2*pi to double-double precision (error ~ 1e-32 relative).
inline constexpr ExtendedReal kTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr ExtendedReal kPi{3.141592653589793116e+00, 1.224646799147353207e-16};

} // namespace rqd
