#include "chos/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace chos;

TEST_SUITE_BEGIN("model");

TEST_CASE("medium params derive alpha and kappa from the optical depth") {
    const MediumParams p = MediumParams::make(1.0, 200.0, 0.5);
    CHECK(p.alpha() * p.length == doctest::Approx(p.optical_depth).epsilon(1e-15));
    CHECK(p.kappa() * p.kappa() == doctest::Approx(p.optical_depth / 4.0).epsilon(1e-15));
}

TEST_CASE("medium params validation names the offending field") {
    CHECK_THROWS_WITH_AS(MediumParams::make(0.0, 1.0), doctest::Contains("gamma"),
                         validation_error);
    CHECK_THROWS_WITH_AS(MediumParams::make(1.0, -1.0), doctest::Contains("optical_depth"),
                         validation_error);
    CHECK_THROWS_WITH_AS(MediumParams::make(1.0, 1.0, 0.0), doctest::Contains("length"),
                         validation_error);
    // b = 0 is the free-propagation limit and allowed here
    CHECK_NOTHROW(MediumParams::make(1.0, 0.0));
}

TEST_CASE("normalize reproduces the strontium optical depth") {
    PhysicalInput in;
    in.gamma = 4.0 * M_PI * 7.5e3;  // gamma/2 = 2*pi*7.5 kHz
    in.alpha = 2.0e6;
    in.length = 1.0e-4;
    const NormalizedSetup s = normalize(in);
    CHECK(s.medium.optical_depth == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("normalize rejects an empty medium") {
    PhysicalInput in;
    in.gamma = 1.0;
    in.length = 1.0;
    in.optical_depth = 0.0;
    in.alpha = 0.0;
    CHECK_THROWS_WITH_AS(normalize(in), doctest::Contains("optical_depth"), validation_error);
}

TEST_CASE("normalize: b = alpha L by definition") {
    PhysicalInput in;
    in.gamma = 1.0;
    in.alpha = 3.0;
    in.length = 2.0;
    CHECK(normalize(in).medium.optical_depth == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("normalize / denormalize round-trips physical inputs") {
    PhysicalInput in;
    in.gamma = 4.0 * M_PI * 7.5e3;
    in.alpha = 2.0e6;
    in.length = 1.0e-4;
    in.delta = 23.0 * in.gamma;
    in.durations = {1.0e-6, 3.3e-5, 2.0e-7};
    const PhysicalInput back = denormalize(normalize(in));
    CHECK(back.gamma == doctest::Approx(in.gamma).epsilon(1e-12));
    CHECK(back.alpha == doctest::Approx(in.alpha).epsilon(1e-12));
    CHECK(back.length == doctest::Approx(in.length).epsilon(1e-12));
    CHECK(back.delta == doctest::Approx(in.delta).epsilon(1e-12));
    for (std::size_t i = 0; i < in.durations.size(); ++i)
        CHECK(back.durations[i] == doctest::Approx(in.durations[i]).epsilon(1e-12));
}

TEST_CASE("step schedule switches off and back on at the stated times") {
    const auto s = SplittingSchedule::step_store(3600.0, 0.017, 0.03);
    CHECK(s.value(0.02) == 0.0);
    CHECK(s.value(0.05) == 3600.0);
    CHECK(s.value(0.0) == 3600.0);
    CHECK(s.value(0.017) == 0.0);   // half-open: off at exactly t_off
    CHECK(s.value(0.03) == 3600.0); // back on at exactly t_on
}

TEST_CASE("constant schedule is constant") {
    const auto s = SplittingSchedule::constant(42.0);
    for (double t : {0.0, 0.3, 7.0, 1e4}) CHECK(s.value(t) == 42.0);
}

TEST_CASE("ramped schedule is continuous and hits the plateaus") {
    const double d0 = 100.0, t_off = 0.02, t_on = 0.05, ramp = 0.004;
    const auto s = SplittingSchedule::ramped_store(d0, t_off, t_on, ramp);
    CHECK(s.value(t_off - ramp) == d0);
    CHECK(s.value(0.5 * (t_off + t_on)) == 0.0);
    CHECK(s.value(t_on + ramp) == d0);
    // continuity: no jump larger than max|slope| * dt on a fine grid
    const double dt = 1e-6;
    const double max_jump = 1.5 * d0 * (1.5 / ramp) * dt;  // smoothstep peak slope = 1.5/ramp
    double prev = s.value(0.0);
    for (double t = dt; t < 0.08; t += dt) {
        const double v = s.value(t);
        CHECK(std::abs(v - prev) <= max_jump);
        prev = v;
    }
}

TEST_CASE("step schedule has exactly two discontinuities") {
    const auto s = SplittingSchedule::step_store(10.0, 0.3, 0.7);
    const double dt = 1e-5;
    int jumps = 0;
    double prev = s.value(0.0);
    for (double t = dt; t < 1.0; t += dt) {
        const double v = s.value(t);
        if (v != prev) ++jumps;
        prev = v;
    }
    CHECK(jumps == 2);
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(SplittingSchedule::constant(-1.0), validation_error);
    CHECK_THROWS_AS(SplittingSchedule::step_store(1.0, 0.5, 0.5), validation_error);
    CHECK_THROWS_AS(SplittingSchedule::ramped_store(1.0, 0.1, 0.2, -0.1), validation_error);
}

TEST_CASE("pulse envelope is the stated gaussian") {
    const ProbePulse p = ProbePulse::gaussian(0.002, 0.008, 2.5);
    CHECK(p.envelope(0.008) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(p.envelope(0.008 + 0.002) == doctest::Approx(2.5 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(p.is_truncated() == false);
    CHECK(ProbePulse::gaussian(0.002, 0.004).is_truncated() == true);
}

TEST_CASE("pulse validation") {
    CHECK_THROWS_AS(ProbePulse::gaussian(0.0, 0.01), validation_error);
    CHECK_THROWS_AS(ProbePulse::gaussian(0.002, 0.01, 1.0, cplx(1.0, 0.0), cplx(1.0, 0.0)),
                    validation_error);
}

TEST_CASE("grid invariants") {
    const SimGrid g = SimGrid::make(401, 1001, 0.05);
    CHECK(g.dt() == doctest::Approx(0.05 / 1000).epsilon(1e-15));
    CHECK(g.dzeta() == doctest::Approx(1.0 / 400).epsilon(1e-15));
    CHECK_THROWS_AS(SimGrid::make(1, 10, 1.0), validation_error);
    CHECK_THROWS_AS(SimGrid::make(10, 1, 1.0), validation_error);
    CHECK_THROWS_AS(SimGrid::make(10, 10, 0.0), validation_error);
}

TEST_SUITE_END();
