#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "rqd/numerics.hpp"
#include "rqd/spectra.hpp"

using rqd::ExtendedReal;
using rqd::HydrogenModel;
using rqd::RotorModel;
using rqd::Theory;

namespace {
const RotorModel kRotor{1.0, rqd::kSpeedOfLightAu, 1000.0};
const HydrogenModel kHalf{1.0, rqd::kSpeedOfLightAu, 0.5, 1};

double big_rel_err(const ExtendedReal& got, const oracle::Big& want) {
    const double w = want.to_double();
    if (w == 0.0) return std::abs(got.to_double());
    return std::abs((oracle::Big::from_extended(got) - want).to_double() / w);
}
} // namespace

TEST_CASE("rotor levels: zero mode and fig-1 example") {
    const auto z = rqd::rotor_levels(kRotor, 0);
    CHECK(z.e_rel.to_double() == 0.0);
    CHECK(z.e_nr.to_double() == 0.0);
    CHECK(z.delta.to_double() == 0.0);

    const auto l1 = rqd::rotor_levels(kRotor, 1);
    CHECK(l1.e_nr.to_double() == doctest::Approx(5e-7).epsilon(1e-14));
    CHECK(l1.delta.to_double() == doctest::Approx(-6.66e-18).epsilon(0.03));
    // frozen 256-bit oracle value
    CHECK(l1.delta.to_double() == doctest::Approx(-6.656419319e-18).epsilon(1e-9));

    const auto want = oracle::rotor_levels(kRotor, 1);
    CHECK(big_rel_err(l1.delta, want.delta) < 1e-25);
    CHECK(big_rel_err(l1.e_rel, want.e_rel) < 1e-28);
    CHECK(big_rel_err(l1.e_nr, want.e_nr) < 1e-28);
}

TEST_CASE("rotor levels: stored identity and two routes to E_rel") {
    for (int n : {1, 2, 7, 19, -19, 50}) {
        const auto lv = rqd::rotor_levels(kRotor, n);
        const ExtendedReal resid = lv.e_rel - (lv.e_nr + lv.delta);
        CHECK(std::abs(resid.to_double()) <= 2.3e-16 * std::abs(lv.e_rel.to_double()));

        // direct route via sqrt1p kernel
        const ExtendedReal c2 = rqd::detail::two_prod(kRotor.c, kRotor.c);
        const ExtendedReal x = ExtendedReal(double(n) * n) /
                               (c2 * rqd::detail::two_prod(kRotor.R, kRotor.R));
        const ExtendedReal direct = c2 * rqd::sqrt1p_minus_one(x);
        CHECK(std::abs((direct - lv.e_rel).to_double()) <=
              1e-25 * std::abs(lv.e_rel.to_double()));
    }
}

TEST_CASE("rotor levels: symmetry, monotonicity, leading-order bound") {
    double prev = -1.0;
    for (int n = 0; n <= 50; ++n) {
        const auto pos = rqd::rotor_levels(kRotor, n);
        const auto neg = rqd::rotor_levels(kRotor, -n);
        CHECK(pos.e_rel.to_double() == neg.e_rel.to_double());
        CHECK(pos.e_rel.to_double() > prev);
        prev = pos.e_rel.to_double();

        if (n == 0) continue;
        const double x = double(n) * n / (kRotor.c * kRotor.c * kRotor.R * kRotor.R);
        if (x < 1e-4) {
            CHECK(pos.delta.to_double() <= 0.0);
            CHECK(std::abs(pos.delta.to_double()) / pos.e_nr.to_double() <=
                  x / 4.0 * (1.0 + 1e-3));
        }
    }
}

TEST_CASE("hydrogen levels: examples and signs") {
    const HydrogenModel ground{1.0, rqd::kSpeedOfLightAu, 0.5, 0};
    const auto g = rqd::hydrogen_levels(ground, 1);
    CHECK(g.e_nr.to_double() == doctest::Approx(-0.5).epsilon(1e-15));

    const auto n2 = rqd::hydrogen_levels(kHalf, 2);
    CHECK(n2.delta.to_double() / n2.e_rel.to_double() ==
          doctest::Approx(1.7e-5).epsilon(0.05));

    const auto n40 = rqd::hydrogen_levels(kHalf, 40);
    CHECK(n40.delta.to_double() == doctest::Approx(-4.08e-10).epsilon(0.01));
    CHECK(n40.delta.to_double() == doctest::Approx(-4.0823165e-10).epsilon(1e-7));
    CHECK(big_rel_err(n40.delta, oracle::hydrogen_levels(kHalf, 40).delta) < 1e-20);

    for (int n : {2, 3, 10, 40, 300}) {
        const auto lv = rqd::hydrogen_levels(kHalf, n);
        CHECK(lv.e_rel.to_double() < 0.0);
        CHECK(lv.e_nr.to_double() < 0.0);
        CHECK(lv.delta.to_double() < 0.0);
    }

    const HydrogenModel upper{1.0, rqd::kSpeedOfLightAu, 1.5, 1};
    for (int n : {2, 5, 40}) {
        const auto lv = rqd::hydrogen_levels(upper, n);
        CHECK(lv.delta.to_double() < 0.0);
        // fine-structure ordering: the j = 3/2 level sits above j = 1/2
        CHECK(lv.e_rel.to_double() > rqd::hydrogen_levels(kHalf, n).e_rel.to_double());
    }
}

TEST_CASE("hydrogen levels: invalid quantum numbers") {
    CHECK_THROWS_AS(rqd::hydrogen_levels(kHalf, 1), std::domain_error); // n < l+1
    CHECK_THROWS_AS(rqd::hydrogen_levels(HydrogenModel{1.0, rqd::kSpeedOfLightAu, 2.5, 1}, 3),
                    std::domain_error); // j neither l-1/2 nor l+1/2
}

TEST_CASE("hydrogen delta agrees with the alpha^4 series term") {
    for (int n : {2, 3, 5, 10, 40, 100, 300}) {
        const auto lv = rqd::hydrogen_levels(kHalf, n);
        const double series = rqd::hydrogen_delta_series(kHalf, n);
        CHECK(lv.delta.to_double() / series == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("hydrogen relative difference peaks at n = 2") {
    const auto ratio = [&](int n) {
        // E(n, j) depends only on n and j; the n = 1 point needs l = 0
        const HydrogenModel m{1.0, rqd::kSpeedOfLightAu, 0.5, n == 1 ? 0 : 1};
        const auto lv = rqd::hydrogen_levels(m, n);
        return lv.delta.to_double() / lv.e_rel.to_double();
    };
    CHECK(ratio(1) < ratio(2));
    double prev = ratio(2);
    for (int n = 3; n <= 300; ++n) {
        const double r = ratio(n);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("rotor timescales") {
    const auto nr = rqd::rotor_timescales(kRotor, 1, Theory::NR);
    CHECK(nr.t_rev == doctest::Approx(4.0 * rqd::kPi.hi * 1e6).epsilon(1e-12));
    CHECK(std::isinf(nr.t_sup));
    CHECK(nr.t_cl == doctest::Approx(2.0 * rqd::kPi.hi * 1e6).epsilon(1e-12));

    const auto rel = rqd::rotor_timescales(kRotor, 1, Theory::REL);
    CHECK(rel.t_sup == doctest::Approx(2.3598218e17).epsilon(1e-6));
    CHECK(rel.t_rev == doctest::Approx(nr.t_rev).epsilon(1e-9));
    CHECK(rel.t_critical == doctest::Approx(1.5023092e17).epsilon(1e-6));
}

TEST_CASE("hydrogen timescales") {
    const auto nr = rqd::hydrogen_timescales(kHalf, 40, Theory::NR);
    CHECK(nr.t_cl == doctest::Approx(2.0 * rqd::kPi.hi * 64000.0).epsilon(1e-12));
    CHECK(nr.t_rev == doctest::Approx(4.0 * rqd::kPi.hi * 2560000.0 / 3.0).epsilon(1e-12));
    CHECK(nr.t_sup == doctest::Approx(rqd::kPi.hi * 1.024e8).epsilon(1e-12));

    const auto rel = rqd::hydrogen_timescales(kHalf, 40, Theory::REL);
    CHECK(rel.t_cl == doctest::Approx(nr.t_cl).epsilon(1e-4));
    CHECK(rel.t_rev == doctest::Approx(nr.t_rev).epsilon(1e-4));
    CHECK(rel.t_sup == doctest::Approx(nr.t_sup).epsilon(1e-4));
}

TEST_CASE("finite-difference route matches closed forms where truncation allows") {
    // rotor spectra are (nearly) polynomial in n: 1e-6 everywhere
    for (Theory th : {Theory::NR, Theory::REL}) {
        const auto an = rqd::rotor_timescales(kRotor, 1, th);
        const auto fd = rqd::timescales_fd(rqd::rotor_level_fn(kRotor), 1, th);
        CHECK(fd.t_cl == doctest::Approx(an.t_cl).epsilon(1e-6));
        CHECK(fd.t_rev == doctest::Approx(an.t_rev).epsilon(1e-6));
        if (std::isfinite(an.t_sup)) CHECK(fd.t_sup == doctest::Approx(an.t_sup).epsilon(1e-6));
    }
    // hydrogen ~ n^-2: h=1 truncation scales as 1/nbar^2 for T_sup,
    // 1/nbar^4 for T_cl/T_rev
    for (Theory th : {Theory::NR, Theory::REL}) {
        const auto an40 = rqd::hydrogen_timescales(kHalf, 40, th);
        const auto fd40 = rqd::timescales_fd(rqd::hydrogen_level_fn(kHalf), 40, th);
        CHECK(fd40.t_cl == doctest::Approx(an40.t_cl).epsilon(1e-4));
        CHECK(fd40.t_rev == doctest::Approx(an40.t_rev).epsilon(1e-4));
        CHECK(fd40.t_sup == doctest::Approx(an40.t_sup).epsilon(1e-2));

        const auto an3k = rqd::hydrogen_timescales(kHalf, 3000, th);
        const auto fd3k = rqd::timescales_fd(rqd::hydrogen_level_fn(kHalf), 3000, th);
        CHECK(fd3k.t_cl == doctest::Approx(an3k.t_cl).epsilon(1e-6));
        CHECK(fd3k.t_rev == doctest::Approx(an3k.t_rev).epsilon(1e-6));
        CHECK(fd3k.t_sup == doctest::Approx(an3k.t_sup).epsilon(1e-6));
    }
}

TEST_CASE("critical time") {
    CHECK(std::isinf(rqd::critical_time(0.0)));

    for (double d : {-6.656e-18, 4.08e-10, -9.84e-13}) {
        const double tc = rqd::critical_time(d);
        const double prod = tc * std::abs(d);
        CHECK(prod >= std::nextafter(1.0, 0.0));
        CHECK(prod <= std::nextafter(1.0, 2.0));
    }

    const auto rotor = rqd::rotor_levels(kRotor, 1);
    CHECK(rqd::critical_time(rotor.delta) == doctest::Approx(1.5e17).epsilon(0.03));
}
