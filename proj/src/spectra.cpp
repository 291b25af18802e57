#include "rqd/spectra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rqd/numerics.hpp"

namespace rqd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_rotor(const RotorModel& m) {
    if (!(m.m0 > 0.0) || !(m.c > 0.0) || !(m.R > 0.0))
        throw std::domain_error("RotorModel: m0, c, R must be positive");
}

void validate_hydrogen(const HydrogenModel& m) {
    if (!(m.m0 > 0.0) || !(m.c > 1.0))
        throw std::domain_error("HydrogenModel: m0 > 0 and c > 1 required");
    if (m.l < 0)
        throw std::domain_error("HydrogenModel: l must be >= 0");
    const double lo = std::abs(m.l - 0.5);
    const double hi = m.l + 0.5;
    if (std::abs(m.j - lo) > 1e-12 && std::abs(m.j - hi) > 1e-12)
        throw std::domain_error("HydrogenModel: j must be |l - 1/2| or l + 1/2");
}

double safe_period(double factor, double derivative) {
    if (derivative == 0.0) return kInf;
    return factor / std::abs(derivative);
}

} // namespace

LevelEnergies rotor_levels(const RotorModel& model, int n) {
    validate_rotor(model);
    LevelEnergies lv;
    lv.n = n;
    if (n == 0) return lv;

    const ExtendedReal n2 = detail::two_prod(static_cast<double>(n), static_cast<double>(n));
    const ExtendedReal c2 = detail::two_prod(model.c, model.c);
    const ExtendedReal R2 = detail::two_prod(model.R, model.R);
    const ExtendedReal m0c2 = ExtendedReal(model.m0) * c2;
    const ExtendedReal m02 = detail::two_prod(model.m0, model.m0);

    // x = (hbar n)^2 / (m0 c R)^2
    const ExtendedReal x = n2 / (m02 * c2 * R2);

    lv.e_nr = n2 / (ExtendedReal(2.0) * ExtendedReal(model.m0) * R2);
    lv.delta = m0c2 * sqrt1p_minus_one_minus_half(x);
    lv.e_rel = lv.e_nr + lv.delta;
    return lv;
}

LevelEnergies hydrogen_levels(const HydrogenModel& model, int n) {
    validate_hydrogen(model);
    if (n < model.l + 1)
        throw std::domain_error("hydrogen_levels: n must be >= l + 1");

    const double jph = model.j + 0.5; // exact: j is a half-integer
    const ExtendedReal c2 = detail::two_prod(model.c, model.c);
    const ExtendedReal alpha2 = ExtendedReal(1.0) / c2;
    if (!(jph * jph > alpha2.hi))
        throw std::domain_error("hydrogen_levels: (j+1/2)^2 must exceed alpha^2");

    const ExtendedReal root = sqrt(detail::two_prod(jph, jph) - alpha2);
    const ExtendedReal den = ExtendedReal(n - model.j - 0.5) + root;
    const ExtendedReal x = alpha2 / (den * den);

    LevelEnergies lv;
    lv.n = n;
    // m0 c^2 alpha^2 = m0 exactly, with alpha defined as 1/c.
    lv.e_nr = -(ExtendedReal(model.m0) / (ExtendedReal(2.0) * detail::two_prod(static_cast<double>(n), static_cast<double>(n))));
    lv.e_rel = ExtendedReal(model.m0) * c2 * inv_sqrt1p_minus_one(x);
    lv.delta = lv.e_rel - lv.e_nr;
    return lv;
}

double hydrogen_delta_series(const HydrogenModel& model, int n) {
    validate_hydrogen(model);
    if (n < model.l + 1)
        throw std::domain_error("hydrogen_delta_series: n must be >= l + 1");
    const double alpha2 = 1.0 / (model.c * model.c);
    const double n2 = static_cast<double>(n) * n;
    return -(model.m0 * alpha2 / (2.0 * n2 * n2)) * (n / (model.j + 0.5) - 0.75);
}

LevelFn rotor_level_fn(const RotorModel& model) {
    validate_rotor(model);
    return [model](int n) { return rotor_levels(model, n); };
}

LevelFn hydrogen_level_fn(const HydrogenModel& model) {
    validate_hydrogen(model);
    return [model](int n) { return hydrogen_levels(model, n); };
}

Timescales rotor_timescales(const RotorModel& model, int nbar, Theory theory) {
    validate_rotor(model);
    const double n = nbar;
    const double m0R2 = model.m0 * model.R * model.R;
    Timescales ts;
    ts.theory = theory;
    ts.t_critical = critical_time(rotor_levels(model, nbar).delta);

    if (theory == Theory::NR) {
        ts.t_cl = safe_period(2.0 * kPi.hi, n / m0R2);
        ts.t_rev = safe_period(4.0 * kPi.hi, 1.0 / m0R2);
        ts.t_sup = kInf; // quadratic spectrum, third derivative vanishes
        return ts;
    }

    const double x = (n * n) / (model.m0 * model.m0 * model.c * model.c * model.R * model.R);
    const double s = std::sqrt(1.0 + x);
    const double d1 = n / (m0R2 * s);
    const double d2 = 1.0 / (m0R2 * s * s * s);
    const double d3 = -3.0 * n /
                      (std::pow(model.m0, 3) * model.c * model.c * std::pow(model.R, 4) * std::pow(s, 5));
    ts.t_cl = safe_period(2.0 * kPi.hi, d1);
    ts.t_rev = safe_period(4.0 * kPi.hi, d2);
    ts.t_sup = safe_period(12.0 * kPi.hi, d3);
    return ts;
}

Timescales hydrogen_timescales(const HydrogenModel& model, int nbar, Theory theory) {
    validate_hydrogen(model);
    if (nbar < model.l + 1)
        throw std::domain_error("hydrogen_timescales: nbar must be >= l + 1");

    Timescales ts;
    ts.theory = theory;
    ts.t_critical = critical_time(hydrogen_levels(model, nbar).delta);

    const double n = nbar;
    if (theory == Theory::NR) {
        // eps = -m0/(2 n^2)
        ts.t_cl = safe_period(2.0 * kPi.hi, model.m0 / (n * n * n));
        ts.t_rev = safe_period(4.0 * kPi.hi, -3.0 * model.m0 / std::pow(n, 4));
        ts.t_sup = safe_period(12.0 * kPi.hi, 12.0 * model.m0 / std::pow(n, 5));
        return ts;
    }

    // Exact derivatives of E(n) = m0 c^2 (g^{-1/2} - 1), g = 1 + alpha^2/D^2,
    // D = n - j - 1/2 + sqrt((j+1/2)^2 - alpha^2), dD/dn = 1.
    const double alpha2 = 1.0 / (model.c * model.c);
    const double jph = model.j + 0.5;
    const double D = n - model.j - 0.5 + std::sqrt(jph * jph - alpha2);
    const double g = 1.0 + alpha2 / (D * D);
    const double m0c2a2 = model.m0; // m0 c^2 alpha^2
    const double gm32 = std::pow(g, -1.5);
    const double gm52 = std::pow(g, -2.5);
    const double gm72 = std::pow(g, -3.5);

    const double d1 = m0c2a2 * gm32 / std::pow(D, 3);
    const double d2 = 3.0 * m0c2a2 * (alpha2 * gm52 / std::pow(D, 6) - gm32 / std::pow(D, 4));
    const double d3 = m0c2a2 * (15.0 * alpha2 * alpha2 * gm72 / std::pow(D, 9) -
                                27.0 * alpha2 * gm52 / std::pow(D, 7) +
                                12.0 * gm32 / std::pow(D, 5));
    ts.t_cl = safe_period(2.0 * kPi.hi, d1);
    ts.t_rev = safe_period(4.0 * kPi.hi, d2);
    ts.t_sup = safe_period(12.0 * kPi.hi, d3);
    return ts;
}

Timescales timescales_fd(const LevelFn& levels, int nbar, Theory theory) {
    const auto energy = [&](int n) {
        const LevelEnergies lv = levels(n);
        return theory == Theory::REL ? lv.e_rel : lv.e_nr;
    };
    const ExtendedReal em2 = energy(nbar - 2);
    const ExtendedReal em1 = energy(nbar - 1);
    const ExtendedReal e0 = energy(nbar);
    const ExtendedReal ep1 = energy(nbar + 1);
    const ExtendedReal ep2 = energy(nbar + 2);

    // stencils evaluated in double-double: the third difference of a nearly
    // quadratic spectrum cancels ~10 leading digits
    const auto lc = [](double c, const ExtendedReal& e) { return ExtendedReal(c) * e; };
    const double d1 =
        ((-ep2 + lc(8.0, ep1) - lc(8.0, em1) + em2) / ExtendedReal(12.0)).to_double();
    const double d2 = ((-ep2 + lc(16.0, ep1) - lc(30.0, e0) + lc(16.0, em1) - em2) /
                       ExtendedReal(12.0))
                          .to_double();
    const double d3 =
        ((ep2 - lc(2.0, ep1) + lc(2.0, em1) - em2) / ExtendedReal(2.0)).to_double();

    Timescales ts;
    ts.theory = theory;
    ts.t_critical = critical_time(levels(nbar).delta);
    ts.t_cl = safe_period(2.0 * kPi.hi, d1);
    ts.t_rev = safe_period(4.0 * kPi.hi, d2);
    ts.t_sup = safe_period(12.0 * kPi.hi, d3);
    return ts;
}

double critical_time(double delta_nbar) {
    if (delta_nbar == 0.0) return kInf;
    return 1.0 / std::abs(delta_nbar);
}

double critical_time(const ExtendedReal& delta_nbar) {
    return critical_time(delta_nbar.to_double());
}

} // namespace rqd
