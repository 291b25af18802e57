#include "rqd/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

namespace rqd {

int default_window(double sigma0) {
    if (!(sigma0 > 0.0))
        throw std::domain_error("default_window: sigma0 must be positive");
    return static_cast<int>(std::ceil(6.0 / (sigma0 * std::sqrt(2.0)))) + 2;
}

CoefficientSet gaussian_coefficients(double n_bar, double sigma0, double theta0,
                                     int window, int n_min) {
    if (!(sigma0 > 0.0))
        throw std::domain_error("gaussian_coefficients: sigma0 must be positive");
    if (window <= 0) window = default_window(sigma0);

    const long center = std::llround(n_bar);
    const double norm0 = std::pow(2.0 * sigma0 * sigma0 / kPi.hi, 0.25);

    CoefficientSet set;
    set.params = {n_bar, sigma0, theta0};
    set.entries.reserve(static_cast<size_t>(2 * window + 1));
    for (long n = center - window; n <= center + window; ++n) {
        if (n < n_min) continue;
        const double d = static_cast<double>(n) - n_bar;
        const double mag = norm0 * std::exp(-sigma0 * sigma0 * d * d);
        const double ph = -static_cast<double>(n) * theta0;
        set.entries.push_back({static_cast<int>(n), std::polar(mag, ph)});
    }
    if (set.entries.empty())
        throw std::invalid_argument("gaussian_coefficients: window empty after domain clipping");

    NeumaierSum norm2;
    for (const auto& e : set.entries) norm2.add(std::norm(e.amplitude));
    const double scale = 1.0 / std::sqrt(norm2.result());
    for (auto& e : set.entries) e.amplitude *= scale;
    return set;
}

std::vector<LevelEnergies> levels_for(const CoefficientSet& coeffs, const LevelFn& levels) {
    std::vector<LevelEnergies> out;
    out.reserve(coeffs.entries.size());
    for (const auto& e : coeffs.entries) out.push_back(levels(e.n));
    return out;
}

namespace {

const ExtendedReal& pick_energy(const LevelEnergies& lv, Theory theory) {
    return theory == Theory::REL ? lv.e_rel : lv.e_nr;
}

void check_alignment(const CoefficientSet& coeffs, const std::vector<LevelEnergies>& levels) {
    if (levels.size() != coeffs.entries.size())
        throw std::invalid_argument("level table does not match coefficient window");
    for (size_t i = 0; i < levels.size(); ++i)
        if (levels[i].n != coeffs.entries[i].n)
            throw std::invalid_argument("level table does not match coefficient window");
}

} // namespace

EvolvedCoefficients evolve(const CoefficientSet& coeffs,
                           const std::vector<LevelEnergies>& levels,
                           const ExtendedReal& t, Theory theory) {
    check_alignment(coeffs, levels);
    EvolvedCoefficients out;
    out.time = t;
    out.theory = theory;
    out.entries.reserve(coeffs.entries.size());
    for (size_t i = 0; i < coeffs.entries.size(); ++i) {
        const Phase ph = reduce_phase(pick_energy(levels[i], theory), t);
        const std::complex<double> rot{std::cos(ph.value()), -std::sin(ph.value())};
        out.entries.push_back({coeffs.entries[i].n, coeffs.entries[i].amplitude * rot});
    }
    return out;
}

EvolvedCoefficients evolve(const CoefficientSet& coeffs, const LevelFn& levels,
                           const ExtendedReal& t, Theory theory) {
    return evolve(coeffs, levels_for(coeffs, levels), t, theory);
}

std::complex<double> autocorrelation(const CoefficientSet& coeffs,
                                     const std::vector<LevelEnergies>& levels,
                                     const ExtendedReal& t, Theory theory) {
    check_alignment(coeffs, levels);
    NeumaierComplexSum acc;
    for (size_t i = 0; i < coeffs.entries.size(); ++i) {
        const Phase ph = reduce_phase(pick_energy(levels[i], theory), t);
        const double w = std::norm(coeffs.entries[i].amplitude);
        acc.add({w * std::cos(ph.value()), w * std::sin(ph.value())});
    }
    return acc.result();
}

std::complex<double> autocorrelation(const CoefficientSet& coeffs, const LevelFn& levels,
                                     const ExtendedReal& t, Theory theory) {
    return autocorrelation(coeffs, levels_for(coeffs, levels), t, theory);
}

std::complex<double> coefficient_inner_product(const EvolvedCoefficients& a,
                                               const EvolvedCoefficients& b) {
    if (a.entries.size() != b.entries.size())
        throw std::invalid_argument("coefficient_inner_product: mismatched windows");
    NeumaierComplexSum acc;
    for (size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].n != b.entries[i].n)
            throw std::invalid_argument("coefficient_inner_product: mismatched windows");
        acc.add(std::conj(a.entries[i].amplitude) * b.entries[i].amplitude);
    }
    return acc.result();
}

double shifted_time(double t, const LevelFn& levels, int nbar) {
    const LevelEnergies lv = levels(nbar);
    const double e = lv.e_rel.to_double();
    if (e == 0.0)
        throw std::domain_error("shifted_time: E(nbar) vanishes");
    return t * (1.0 - lv.delta.to_double() / e);
}

} // namespace rqd
