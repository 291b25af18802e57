#pragma once

#include <functional>

#include "rqd/extended_real.hpp"

namespace rqd {

inline constexpr double kSpeedOfLightAu = 137.035999037;

enum class Theory { REL, NR };

// Free electron on a circle of radius R (atomic units; hbar = 1).
struct RotorModel {
    double m0 = 1.0;
    double c = kSpeedOfLightAu;
    double R = 1000.0;
};

// Hydrogen-like electron at fixed angular quantum numbers.
// j must equal |l - 1/2| or l + 1/2; levels require n >= l + 1.
struct HydrogenModel {
    double m0 = 1.0;
    double c = kSpeedOfLightAu;
    double j = 0.5;
    int l = 1;
};

// One level of a spectrum, rest energy subtracted. delta = e_rel - e_nr is
// the cancellation-sensitive quantity and is computed without subtractive
// loss; e_rel is reconstructed as e_nr + delta. All three are kept in
// double-double form because phases E*t reach ~1e13 rad and a bare double
// energy would already cost ~1e-3 rad there.
struct LevelEnergies {
    int n = 0;
    ExtendedReal e_rel;
    ExtendedReal e_nr;
    ExtendedReal delta;
};

using LevelFn = std::function<LevelEnergies(int)>;

// Characteristic times in a.u.: classical period 2*pi/|E'|, revival
// 4*pi/|E''|, super-revival 12*pi/|E'''| (derivatives in the level index),
// plus the breakdown horizon 1/|delta(nbar)|. A vanishing derivative is
// reported as an infinite timescale, not an error.
struct Timescales {
    double t_cl = 0.0;
    double t_rev = 0.0;
    double t_sup = 0.0;
    double t_critical = 0.0;
    Theory theory = Theory::NR;
};

LevelEnergies rotor_levels(const RotorModel& model, int n);
LevelEnergies hydrogen_levels(const HydrogenModel& model, int n);

// Leading relativistic correction for hydrogen,
// -(m0*c^2*alpha^4 / 2n^4) * (n/(j+1/2) - 3/4); cross-check for delta.
double hydrogen_delta_series(const HydrogenModel& model, int n);

LevelFn rotor_level_fn(const RotorModel& model);
LevelFn hydrogen_level_fn(const HydrogenModel& model);

// Closed-form n-derivatives of the exact spectra.
Timescales rotor_timescales(const RotorModel& model, int nbar, Theory theory);
Timescales hydrogen_timescales(const HydrogenModel& model, int nbar, Theory theory);

// 5-point central finite differences on integer n; generic cross-check
// route. Truncation is O(f^(5)), so for power-law spectra it only reaches
// the closed forms to ~1e-6 at large nbar (exact for the quadratic rotor
// NR spectrum).
Timescales timescales_fd(const LevelFn& levels, int nbar, Theory theory);

// T_critical = hbar/|delta|; returns +inf for delta == 0.
double critical_time(double delta_nbar);
double critical_time(const ExtendedReal& delta_nbar);

} // namespace rqd
