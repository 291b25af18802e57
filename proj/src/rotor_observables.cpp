#include "rqd/rotor_observables.hpp"

#include <cmath>
#include <stdexcept>

#include "rqd/errors.hpp"

namespace rqd {

SpinorWeights spinor_weights(const RotorModel& model, int n) {
    const LevelEnergies lv = rotor_levels(model, n);
    const double k = model.c * static_cast<double>(n) /
                     (model.R * (lv.e_rel.to_double() + 2.0 * model.m0 * model.c * model.c));
    const double N = 1.0 / std::sqrt(2.0 * kPi.hi * (1.0 + k * k));
    return {N, k};
}

std::vector<SpinorWeights> spinor_weights(const RotorModel& model,
                                          const CoefficientSet& coeffs) {
    std::vector<SpinorWeights> out;
    out.reserve(coeffs.entries.size());
    for (const auto& e : coeffs.entries) out.push_back(spinor_weights(model, e.n));
    return out;
}

std::vector<SpinorWeights> nonrelativistic_weights(size_t count) {
    return std::vector<SpinorWeights>(count,
                                      SpinorWeights{1.0 / std::sqrt(2.0 * kPi.hi), 0.0});
}

double omega(const SpinorWeights& r, const SpinorWeights& s) {
    const double pr = 1.0 - 2.0 * kPi.hi * r.norm * r.norm;
    const double ps = 1.0 - 2.0 * kPi.hi * s.norm * s.norm;
    for (double p : {pr, ps}) {
        if (p < -1e-15)
            throw ConsistencyError("omega: 2*pi*N^2 exceeds 1 beyond roundoff");
    }
    const double rad = std::max(pr, 0.0) * std::max(ps, 0.0);
    return 2.0 * kPi.hi * r.norm * s.norm + std::sqrt(rad);
}

AngularDensity density(const EvolvedCoefficients& evolved,
                       std::span<const SpinorWeights> weights, size_t grid_size) {
    const size_t modes = evolved.entries.size();
    if (weights.size() != modes)
        throw std::invalid_argument("density: weights do not match coefficient window");
    if (grid_size < 4 * modes)
        throw std::invalid_argument("density: grid must oversample modes at least 4x");

    AngularDensity rho;
    rho.values.resize(grid_size);
    const double h = 2.0 * kPi.hi / static_cast<double>(grid_size);
    const int n0 = evolved.entries.front().n;

    for (size_t j = 0; j < grid_size; ++j) {
        const double theta = h * static_cast<double>(j);
        // e^{i n theta} marched up from the lowest mode; the rotation
        // accumulates ~modes*eps of phase error, far below the 1e-8 budget.
        const std::complex<double> step{std::cos(theta), std::sin(theta)};
        std::complex<double> basis = std::polar(1.0, n0 * theta);
        NeumaierComplexSum upper;
        NeumaierComplexSum lower;
        for (size_t i = 0; i < modes; ++i) {
            const std::complex<double> term = evolved.entries[i].amplitude * basis;
            upper.add(weights[i].norm * term);
            lower.add(weights[i].lower_weight * weights[i].norm * term);
            basis *= step;
        }
        rho.values[j] = std::norm(upper.result()) + std::norm(lower.result());
    }
    return rho;
}

Moments analytic_moments(const EvolvedCoefficients& evolved,
                         std::span<const SpinorWeights> weights) {
    const size_t modes = evolved.entries.size();
    if (weights.size() != modes)
        throw std::invalid_argument("analytic_moments: weights do not match coefficient window");

    const bool rel = evolved.theory == Theory::REL;
    NeumaierComplexSum mean_acc;
    NeumaierComplexSum var_acc;
    for (size_t ri = 0; ri < modes; ++ri) {
        for (size_t si = 0; si < modes; ++si) {
            if (ri == si) continue;
            const double m = static_cast<double>(evolved.entries[si].n - evolved.entries[ri].n);
            const std::complex<double> pair =
                std::conj(evolved.entries[ri].amplitude) * evolved.entries[si].amplitude *
                (rel ? omega(weights[ri], weights[si]) : 1.0);
            mean_acc.add(pair / std::complex<double>(0.0, m));
            var_acc.add(pair * (-2.0) *
                        (std::complex<double>(0.0, kPi.hi / m) - 1.0 / (m * m)));
        }
    }

    const std::complex<double> mean_off = mean_acc.result();
    const std::complex<double> var_off = var_acc.result();
    for (double im : {mean_off.imag(), var_off.imag()}) {
        if (std::abs(im) > 1e-8)
            throw ConsistencyError("analytic_moments: imaginary residue above 1e-8");
    }

    Moments mom;
    mom.mean = kPi.hi + mean_off.real();
    mom.variance = 4.0 * kPi.hi * kPi.hi / 3.0 + var_off.real() - mom.mean * mom.mean;
    return mom;
}

Moments quadrature_moments(const AngularDensity& density) {
    const size_t m = density.values.size();
    if (m < 2) throw std::invalid_argument("quadrature_moments: empty density");
    const double h = density.grid_step();

    // rho is periodic, so the closing endpoint value is values[0]; theta*rho
    // and theta^2*rho are not periodic and need it explicitly.
    NeumaierSum total;
    NeumaierSum first;
    NeumaierSum second;
    for (size_t j = 0; j < m; ++j) {
        const double w = (j == 0) ? 0.5 : 1.0;
        const double theta = h * static_cast<double>(j);
        const double r = density.values[j];
        if (r < 0.0 && r > -1e-12)  // clip quadrature-level noise
            continue;
        if (r < 0.0)
            throw std::invalid_argument("quadrature_moments: negative density");
        total.add(w * r);
        first.add(w * theta * r);
        second.add(w * theta * theta * r);
    }
    const double two_pi = 2.0 * kPi.hi;
    const double rho_end = density.values[0];
    total.add(0.5 * rho_end);
    first.add(0.5 * two_pi * rho_end);
    second.add(0.5 * two_pi * two_pi * rho_end);

    const double norm = h * total.result();
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument("quadrature_moments: density not normalized");

    Moments mom;
    mom.mean = h * first.result();
    mom.variance = h * second.result() - mom.mean * mom.mean;
    return mom;
}

} // namespace rqd
