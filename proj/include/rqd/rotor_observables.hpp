#pragma once

#include <span>
#include <vector>

#include "rqd/spectra.hpp"
#include "rqd/wavepacket.hpp"

namespace rqd {

// Per-mode spinor structure of the rotor eigenstates: norm is the
// 4-spinor normalization constant N_n, lower_weight the (signed) relative
// amplitude k_n = c*hbar*n / (R*(E_n + 2 m0 c^2)) of the lower component.
// Identity: 2*pi*N_n^2*(1 + k_n^2) = 1.
struct SpinorWeights {
    double norm = 0.0;
    double lower_weight = 0.0;
};

// Probability density per radian on a uniform grid over [0, 2*pi).
struct AngularDensity {
    std::vector<double> values;
    double grid_step() const { return 2.0 * kPi.hi / static_cast<double>(values.size()); }
};

struct Moments {
    double mean = 0.0;     // radians
    double variance = 0.0; // radians^2
};

SpinorWeights spinor_weights(const RotorModel& model, int n);
std::vector<SpinorWeights> spinor_weights(const RotorModel& model,
                                          const CoefficientSet& coeffs);

// Weights of the plane-wave basis exp(i n theta)/sqrt(2 pi); using these in
// the relativistic formulas reproduces the non-relativistic expressions.
std::vector<SpinorWeights> nonrelativistic_weights(size_t count);

// Omega_{r,s} = 2 pi N_r N_s + sqrt((1 - 2 pi N_r^2)(1 - 2 pi N_s^2)).
// Equals 1 for r == s and in the plane-wave limit.
double omega(const SpinorWeights& r, const SpinorWeights& s);

// rho(theta) = |sum A_n(t) N_n e^{i n theta}|^2 + |sum A_n(t) k_n N_n e^{i n theta}|^2
// sampled on M uniform points; requires M >= 4x the number of modes.
AngularDensity density(const EvolvedCoefficients& evolved,
                       std::span<const SpinorWeights> weights, size_t grid_size);

// Mean and variance of the angular position from the closed-form double
// sums; theta is treated as a plain coordinate on [0, 2*pi). The NR case
// is the Omega -> 1 specialization.
Moments analytic_moments(const EvolvedCoefficients& evolved,
                         std::span<const SpinorWeights> weights);

// Independent cross-check: composite trapezoid of theta*rho and
// theta^2*rho over [0, 2*pi], closing the interval with the periodic
// endpoint rho(2*pi) = rho(0).
Moments quadrature_moments(const AngularDensity& density);

} // namespace rqd
