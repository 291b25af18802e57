#pragma once

// High-precision reference implementations used only by tests. Everything
// here runs at 256-bit MPFR precision (~77 decimal digits) and is kept
// independent of the double/double-double code paths it checks.

#include <complex>
#include <mpfr.h>
#include <string>

#include "rqd/extended_real.hpp"
#include "rqd/spectra.hpp"

namespace oracle {

class Big {
  public:
    static constexpr mpfr_prec_t kPrec = 256;

    Big() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    explicit Big(double d) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit Big(const char* s) { mpfr_init2(v_, kPrec); mpfr_set_str(v_, s, 10, MPFR_RNDN); }
    explicit Big(long n) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, n, MPFR_RNDN); }
    Big(const Big& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Big& operator=(const Big& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Big() { mpfr_clear(v_); }

    // exact double-double payload: hi + lo
    static Big from_extended(const rqd::ExtendedReal& x) {
        Big r(x.hi);
        Big lo(x.lo);
        mpfr_add(r.v_, r.v_, lo.v_, MPFR_RNDN);
        return r;
    }

    static Big pi() {
        Big r;
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static Big two_pi() { return pi() * Big(2.0); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend Big operator+(const Big& a, const Big& b) {
        Big r;
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Big operator-(const Big& a, const Big& b) {
        Big r;
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Big operator*(const Big& a, const Big& b) {
        Big r;
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Big operator/(const Big& a, const Big& b) {
        Big r;
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Big operator-() const {
        Big r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend Big sqrt(const Big& a) {
        Big r;
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Big fmod(const Big& a, const Big& b) {
        Big r;
        mpfr_fmod(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Big abs(const Big& a) {
        Big r;
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    void sin_cos(Big& s, Big& c) const { mpfr_sin_cos(s.v_, c.v_, v_, MPFR_RNDN); }

    bool negative() const { return mpfr_sgn(v_) < 0; }

  private:
    mpfr_t v_;
};

Big sqrt1p_minus_one(double x);
Big sqrt1p_minus_one_minus_half(double x);
Big inv_sqrt1p_minus_one(double x);

// (E*t) mod 2*pi in [0, 2*pi)
double reduce_phase(const rqd::ExtendedReal& energy, const rqd::ExtendedReal& time);

// shortest distance between two angles on the circle
double phase_distance(double a, double b);

struct Levels {
    Big e_rel;
    Big e_nr;
    Big delta;
};

Levels rotor_levels(const rqd::RotorModel& model, int n);
Levels hydrogen_levels(const rqd::HydrogenModel& model, int n);

double omega(const rqd::RotorModel& model, int r, int s);

// C(t) = sum w_n exp(+i E_n t) with spectrum and reduction at full
// precision; weights are the exact |A_n(0)|^2 doubles.
std::complex<double> rotor_autocorrelation(const rqd::RotorModel& model,
                                           const std::vector<std::pair<int, double>>& weights,
                                           const rqd::ExtendedReal& t, rqd::Theory theory);

} // namespace oracle
