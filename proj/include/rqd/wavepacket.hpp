#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "rqd/numerics.hpp"
#include "rqd/spectra.hpp"

namespace rqd {

struct PacketParams {
    double n_bar = 0.0;
    double sigma0 = 0.0;
    double theta0 = 0.0; // radians
};

struct CoefficientEntry {
    int n = 0;
    std::complex<double> amplitude;
};

// Gaussian superposition coefficients over a contiguous quantum-number
// window, renormalized to unit probability after truncation.
struct CoefficientSet {
    PacketParams params;
    std::vector<CoefficientEntry> entries; // strictly increasing n
};

struct EvolvedCoefficients {
    ExtendedReal time;
    Theory theory = Theory::NR;
    std::vector<CoefficientEntry> entries;
};

struct AutocorrSample {
    double t = 0.0;
    std::complex<double> c;
};

struct AutocorrTrace {
    Theory theory = Theory::NR;
    std::vector<AutocorrSample> samples;
};

// Half-width such that the discarded Gaussian tail mass stays < 1e-14.
int default_window(double sigma0);

// A_n(0) = (2 sigma0^2/pi)^{1/4} exp(-i n theta0) exp(-sigma0^2 (n - n_bar)^2),
// over [round(n_bar) - window, round(n_bar) + window], entries with n < n_min
// dropped first (hydrogen needs n >= l+1), then renormalized.
CoefficientSet gaussian_coefficients(double n_bar, double sigma0, double theta0,
                                     int window,
                                     int n_min = std::numeric_limits<int>::min());

// Phase evolution: each amplitude picks up exp(-i E t) with E the
// relativistic or non-relativistic level energy; moduli are untouched.
EvolvedCoefficients evolve(const CoefficientSet& coeffs,
                           const std::vector<LevelEnergies>& levels,
                           const ExtendedReal& t, Theory theory);
EvolvedCoefficients evolve(const CoefficientSet& coeffs, const LevelFn& levels,
                           const ExtendedReal& t, Theory theory);

// C(t) = sum |A_n(0)|^2 exp(+i E_n t) as a compensated sum in ascending n.
std::complex<double> autocorrelation(const CoefficientSet& coeffs,
                                     const std::vector<LevelEnergies>& levels,
                                     const ExtendedReal& t, Theory theory);
std::complex<double> autocorrelation(const CoefficientSet& coeffs, const LevelFn& levels,
                                     const ExtendedReal& t, Theory theory);

// <a|b> over matching quantum numbers; the independent route to C(t):
// autocorrelation(t) == coefficient_inner_product(evolve(t), evolve(0)).
std::complex<double> coefficient_inner_product(const EvolvedCoefficients& a,
                                               const EvolvedCoefficients& b);

// Level energies aligned with the coefficient window.
std::vector<LevelEnergies> levels_for(const CoefficientSet& coeffs, const LevelFn& levels);

// t' = t (1 - delta_nbar / E_nbar), the time-shift relation between the
// two theories' autocorrelation functions.
double shifted_time(double t, const LevelFn& levels, int nbar);

} // namespace rqd
