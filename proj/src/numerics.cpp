#include "rqd/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace rqd {

namespace {

void require_above_minus_one(double x) {
    if (!(x > -1.0))
        throw std::domain_error("sqrt1p kernel: argument must be > -1");
}

} // namespace

double sqrt1p_minus_one(double x) {
    require_above_minus_one(x);
    return x / (1.0 + std::sqrt(1.0 + x));
}

ExtendedReal sqrt1p_minus_one(const ExtendedReal& x) {
    require_above_minus_one(x.hi);
    const ExtendedReal s = sqrt(ExtendedReal(1.0) + x);
    return x / (ExtendedReal(1.0) + s);
}

double sqrt1p_minus_one_minus_half(double x) {
    require_above_minus_one(x);
    const double d = 1.0 + std::sqrt(1.0 + x);
    return -(x * x) / (2.0 * d * d);
}

ExtendedReal sqrt1p_minus_one_minus_half(const ExtendedReal& x) {
    require_above_minus_one(x.hi);
    const ExtendedReal d = ExtendedReal(1.0) + sqrt(ExtendedReal(1.0) + x);
    return -(x * x) / (ExtendedReal(2.0) * d * d);
}

double inv_sqrt1p_minus_one(double x) {
    require_above_minus_one(x);
    const double s = std::sqrt(1.0 + x);
    return -x / (s * (1.0 + s));
}

ExtendedReal inv_sqrt1p_minus_one(const ExtendedReal& x) {
    require_above_minus_one(x.hi);
    const ExtendedReal s = sqrt(ExtendedReal(1.0) + x);
    return -x / (s * (ExtendedReal(1.0) + s));
}

Phase::Phase(double radians) {
    if (!std::isfinite(radians))
        throw std::domain_error("Phase: angle must be finite");
    double v = std::fmod(radians, kTwoPi.hi);
    if (v < 0.0) v += kTwoPi.hi;
    if (v >= kTwoPi.hi) v = 0.0;
    value_ = v;
}

Phase reduce_phase(const ExtendedReal& energy, const ExtendedReal& time) {
    if (!energy.is_finite() || !time.is_finite())
        throw std::domain_error("reduce_phase: non-finite input");

    const ExtendedReal product = energy * time;
    if (std::abs(product.hi) > 1e30)
        throw std::range_error("reduce_phase: |E*t| too large to reduce");

    // Nearest-integer quotient, split across two doubles so that phases up
    // to ~1e30 rad keep an exactly representable k.
    const ExtendedReal q = product / kTwoPi;
    const double k_hi = std::round(q.hi);
    const double k_lo = std::round(q.lo + (q.hi - k_hi));
    const ExtendedReal k = detail::quick_two_sum(k_hi, k_lo);

    ExtendedReal r = product - k * kTwoPi;
    if (r.hi < 0.0) r = r + kTwoPi;
    if (!(r.hi < kTwoPi.hi)) r = r - kTwoPi;

    double v = r.to_double();
    if (v < 0.0) v += kTwoPi.hi;
    if (v >= kTwoPi.hi) v -= kTwoPi.hi;
    if (v < 0.0) v = 0.0;
    return Phase(v);
}

std::complex<double> compensated_complex_sum(std::span<const std::complex<double>> terms) {
    NeumaierComplexSum acc;
    for (const auto& z : terms) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("compensated_complex_sum: non-finite term");
        acc.add(z);
    }
    return acc.result();
}

} // namespace rqd
