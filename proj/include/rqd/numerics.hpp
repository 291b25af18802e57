#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rqd/extended_real.hpp"

namespace rqd {

// sqrt(1+x) - 1 without cancellation, as x/(1 + sqrt(1+x)).
// Domain: x > -1 (throws std::domain_error otherwise).
double sqrt1p_minus_one(double x);
ExtendedReal sqrt1p_minus_one(const ExtendedReal& x);

// sqrt(1+x) - 1 - x/2 via the exact identity -x^2 / (2*(1 + sqrt(1+x))^2).
// This is the relativistic energy correction kernel; no subtraction occurs.
double sqrt1p_minus_one_minus_half(double x);
ExtendedReal sqrt1p_minus_one_minus_half(const ExtendedReal& x);

// 1/sqrt(1+x) - 1 as -x / (sqrt(1+x) * (1 + sqrt(1+x))).
double inv_sqrt1p_minus_one(double x);
ExtendedReal inv_sqrt1p_minus_one(const ExtendedReal& x);

// An angle reduced to [0, 2*pi).
class Phase {
  public:
    Phase() = default;
    // Wraps an arbitrary finite angle into [0, 2*pi).
    explicit Phase(double radians);

    double value() const { return value_; }

  private:
    double value_ = 0.0;
};

// (E*t) mod 2*pi evaluated entirely in double-double arithmetic.
// Absolute phase error stays below 1e-8 rad for |E*t| <= 1e14 rad
// (in practice ~1e-17; accuracy degrades proportionally with |E*t|).
// Throws std::range_error once |E*t| exceeds ~1e30, where the quotient
// no longer fits two doubles.
Phase reduce_phase(const ExtendedReal& energy, const ExtendedReal& time);

// Neumaier-compensated accumulator. Deterministic for a fixed order of
// additions; error bound independent of condition up to second order.
class NeumaierSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double result() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class NeumaierComplexSum {
  public:
    void add(const std::complex<double>& z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> result() const { return {re_.result(), im_.result()}; }

  private:
    NeumaierSum re_;
    NeumaierSum im_;
};

std::complex<double> compensated_complex_sum(std::span<const std::complex<double>> terms);

} // namespace rqd
