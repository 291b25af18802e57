#include <doctest.h>

#include <cmath>
#include <random>

#include "rqd/analysis.hpp"
#include "rqd/spectra.hpp"
#include "rqd/wavepacket.hpp"

using rqd::AutocorrTrace;
using rqd::Peak;
using rqd::Theory;

namespace {

std::vector<std::pair<double, double>> series(const std::vector<double>& ts,
                                              const std::vector<double>& vs) {
    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i < ts.size(); ++i) out.emplace_back(ts[i], vs[i]);
    return out;
}

AutocorrTrace beat_trace(double omega, double t0, double t1, size_t count) {
    AutocorrTrace tr;
    tr.theory = Theory::NR;
    for (size_t i = 0; i < count; ++i) {
        const double t = t0 + (t1 - t0) * double(i) / double(count - 1);
        tr.samples.push_back({t, {std::cos(0.5 * omega * t), 0.0}});
    }
    return tr;
}

} // namespace

TEST_CASE("relative difference series: definition and degeneracy floor") {
    const std::vector<double> ts{0.0, 1.0, 2.0};
    const auto same = rqd::relative_difference_series(series(ts, {1.0, 2.0, 3.0}),
                                                      series(ts, {1.0, 2.0, 3.0}));
    for (const auto& s : same.samples) {
        CHECK(s.rel_diff == 0.0);
        CHECK_FALSE(s.degenerate);
    }

    const auto one = rqd::relative_difference_series(series({0.0}, {1.17}),
                                                     series({0.0}, {1.0}));
    CHECK(one.samples[0].rel_diff == doctest::Approx(0.17).epsilon(1e-12));

    const auto deg = rqd::relative_difference_series(series(ts, {1.0, 1.0, 1.0}),
                                                     series(ts, {2.0, 1e-30, 2.0}));
    CHECK(deg.samples[1].degenerate);
    CHECK_FALSE(deg.samples[0].degenerate);

    CHECK_THROWS_AS(rqd::relative_difference_series(series(ts, {1, 2, 3}),
                                                    series({0.0, 1.0}, {1, 2})),
                    std::invalid_argument);
    CHECK_THROWS_AS(rqd::relative_difference_series(series({0.0}, {1.0}),
                                                    series({0.5}, {1.0})),
                    std::invalid_argument);
}

TEST_CASE("relative difference series: swapping arguments maps d to -d/(1+d)") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::vector<double> ts, nr, rel;
    for (int i = 0; i < 200; ++i) {
        ts.push_back(i);
        nr.push_back(u(rng));
        rel.push_back(u(rng));
    }
    const auto fwd = rqd::relative_difference_series(series(ts, nr), series(ts, rel));
    const auto swp = rqd::relative_difference_series(series(ts, rel), series(ts, nr));
    for (size_t i = 0; i < ts.size(); ++i) {
        const double d = fwd.samples[i].rel_diff;
        CHECK(swp.samples[i].rel_diff == doctest::Approx(-d / (1.0 + d)).epsilon(1e-12));
    }
}

TEST_CASE("windowed max abs") {
    std::vector<double> ts, nr, rel;
    for (int i = 0; i <= 1000; ++i) {
        ts.push_back(i);
        rel.push_back(1.0);
        nr.push_back(1.0 + 0.001 * std::sin(0.1 * i) * i / 100.0);
    }
    const auto s = rqd::relative_difference_series(series(ts, nr), series(ts, rel));
    const double m = rqd::windowed_max_abs(s, 500.0, 200.0);
    double want = 0.0;
    for (int i = 300; i <= 700; ++i) want = std::max(want, std::abs(nr[i] - 1.0));
    CHECK(m == doctest::Approx(want).epsilon(1e-12));

    const auto zero = rqd::relative_difference_series(series(ts, rel), series(ts, rel));
    CHECK(rqd::windowed_max_abs(zero, 500.0, 100.0) == 0.0);

    CHECK_THROWS_AS(rqd::windowed_max_abs(s, 5000.0, 10.0), std::invalid_argument);
}

TEST_CASE("find_peaks: flat trace, beat pattern, validation") {
    AutocorrTrace flat;
    for (int i = 0; i < 200; ++i) flat.samples.push_back({double(i), {0.5, 0.0}});
    CHECK(rqd::find_peaks(flat, 0.01, 20.0).empty());

    // |C|^2 = cos^2(omega t / 2): peaks at t = 2 pi k / omega of height 1
    const double omega = 0.1;
    const double period = 2.0 * rqd::kPi.hi / omega;
    const auto tr = beat_trace(omega, 0.0, 10.5 * period, 4200);
    const auto peaks = rqd::find_peaks(tr, 0.5, 0.5 * period);
    REQUIRE(peaks.size() == 10);
    for (size_t k = 0; k < peaks.size(); ++k) {
        CHECK(peaks[k].t == doctest::Approx(period * double(k + 1)).epsilon(1e-4));
        CHECK(peaks[k].height == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(peaks[k].prominence == doctest::Approx(1.0).epsilon(1e-2));
    }

    AutocorrTrace jagged = tr;
    jagged.samples[5].t += 1.0;
    CHECK_THROWS_AS(rqd::find_peaks(jagged, 0.5, 0.5 * period), std::invalid_argument);

    CHECK_THROWS_AS(rqd::find_peaks(tr, 0.5, 1.0), std::invalid_argument); // step too coarse
}

TEST_CASE("find_peaks: time reversal mirrors peak positions") {
    const double omega = 0.07;
    const auto tr = beat_trace(omega, 0.0, 700.0, 3500);
    AutocorrTrace rev;
    const double t_end = tr.samples.back().t;
    for (auto it = tr.samples.rbegin(); it != tr.samples.rend(); ++it)
        rev.samples.push_back({t_end - it->t, it->c});

    const double sep = rqd::kPi.hi / omega;
    const auto fwd = rqd::find_peaks(tr, 0.5, sep);
    const auto bwd = rqd::find_peaks(rev, 0.5, sep);
    REQUIRE(fwd.size() == bwd.size());
    for (size_t i = 0; i < fwd.size(); ++i) {
        const auto& mirrored = bwd[bwd.size() - 1 - i];
        CHECK(mirrored.t == doctest::Approx(t_end - fwd[i].t).epsilon(1e-9));
        CHECK(mirrored.height == doctest::Approx(fwd[i].height).epsilon(1e-12));
    }
}

TEST_CASE("pair_and_measure: identical, shifted, crossed-over") {
    std::vector<Peak> rel;
    for (int k = 1; k <= 12; ++k) rel.push_back({100.0 * k, 1.0, 0.5});

    CHECK_THROWS_AS(rqd::pair_and_measure({}, rel, 0.0), std::invalid_argument);

    const auto same = rqd::pair_and_measure(rel, rel, 0.0);
    CHECK(same.pairs.size() == rel.size());
    CHECK(same.unmatched_rel.empty());
    CHECK(same.unmatched_nr.empty());
    for (const auto& p : same.pairs) {
        CHECK(p.shift == 0.0);
        CHECK_FALSE(p.ambiguous);
    }

    // uniform fractional shift, still below one spacing
    const double fraction = 0.0002;
    std::vector<Peak> nr;
    for (const auto& p : rel) nr.push_back({p.t * (1.0 + fraction), 1.0, 0.5});
    const auto shifted = rqd::pair_and_measure(rel, nr, fraction);
    CHECK(shifted.pairs.size() == rel.size());
    for (const auto& p : shifted.pairs) {
        CHECK(p.shift == doctest::Approx(p.t_rel * fraction).epsilon(1e-12));
        CHECK(p.predicted_shift == doctest::Approx(p.shift).epsilon(1e-12));
    }

    // crossed-over regime: true shift 0.73 spacings; nearest-neighbour
    // pairing would latch onto the previous partner
    std::vector<Peak> nr_far;
    const double big_shift = 73.0;
    for (const auto& p : rel) nr_far.push_back({p.t + big_shift, 1.0, 0.5});
    const double guess_fraction = 0.8 * big_shift / rel.back().t; // imperfect prior
    const auto crossed = rqd::pair_and_measure(rel, nr_far, guess_fraction);
    int correct = 0;
    for (const auto& p : crossed.pairs)
        if (std::abs(p.shift - big_shift) < 1e-9) ++correct;
    CHECK(correct >= 4); // late peaks, where the prior points past half-spacing
}

TEST_CASE("hydrogen early autocorrelation peaks are Kepler-spaced") {
    const rqd::HydrogenModel h{1.0, rqd::kSpeedOfLightAu, 0.5, 1};
    const auto set = rqd::gaussian_coefficients(40.0, 0.505, 0.0, 0, 2);
    const auto levels = rqd::levels_for(set, rqd::hydrogen_level_fn(h));

    const double t_cl = rqd::hydrogen_timescales(h, 40, Theory::NR).t_cl;
    AutocorrTrace tr;
    tr.theory = Theory::NR;
    const double t0 = 0.45 * t_cl, t1 = 3.4 * t_cl;
    const size_t count = 1200;
    for (size_t i = 0; i < count; ++i) {
        const double t = t0 + (t1 - t0) * double(i) / double(count - 1);
        tr.samples.push_back(
            {t, rqd::autocorrelation(set, levels, rqd::ExtendedReal(t), Theory::NR)});
    }
    const auto peaks = rqd::find_peaks(tr, 0.05, 0.5 * t_cl);
    REQUIRE(peaks.size() >= 3);
    for (size_t i = 1; i < 3; ++i)
        CHECK(peaks[i].t - peaks[i - 1].t == doctest::Approx(t_cl).epsilon(0.02));
}

TEST_CASE("measured vs predicted shifts correlate on a synthetic run") {
    // measured = 1.5 * predicted + jitter: correlation must still be high
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> measured, predicted;
    for (int i = 1; i <= 50; ++i) {
        predicted.push_back(10.0 * i);
        measured.push_back(15.0 * i + 0.2 * u(rng));
    }
    double sm = 0, sp = 0;
    for (int i = 0; i < 50; ++i) {
        sm += measured[i] / 50;
        sp += predicted[i] / 50;
    }
    double num = 0, dm = 0, dp = 0;
    for (int i = 0; i < 50; ++i) {
        num += (measured[i] - sm) * (predicted[i] - sp);
        dm += (measured[i] - sm) * (measured[i] - sm);
        dp += (predicted[i] - sp) * (predicted[i] - sp);
    }
    CHECK(num / std::sqrt(dm * dp) > 0.99);
}
