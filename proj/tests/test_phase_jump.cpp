#include <doctest.h>

#include <numbers>

#include "dlambda/phase_jump.hpp"
#include "oracles.hpp"

using namespace dlambda;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

MediumParams<> medium(double alpha, double delta)
{
    MediumParams<> p;
    p.alpha = alpha;
    p.delta = delta;
    return p;
}

}  // namespace

TEST_CASE("critical depth and jump phases: frozen values")
{
    CHECK(critical_depth(16.5, 1) == doctest::Approx(52.0266783389946).epsilon(1e-13));
    CHECK(critical_depth(16.5, 3) == doctest::Approx(156.080035016984).epsilon(1e-13));
    CHECK(critical_depth(1.0, 1) == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(jump_phase_probe(16.5, 1) == doctest::Approx(4.61733267727133).epsilon(1e-13));
    CHECK(jump_phase_signal(16.5, 1) == doctest::Approx(1.66585262990826).epsilon(1e-13));
    CHECK(jump_phase_probe(16.5, 3) == doctest::Approx(1.85259042352679).epsilon(1e-13));
    CHECK(jump_phase_signal(16.5, 3) == doctest::Approx(4.43059488365279).epsilon(1e-13));

    // rounded values quoted for the 16.5 detuning
    CHECK(std::abs(critical_depth(16.5, 1) - 52.0) < 0.1);
    CHECK(std::abs(jump_phase_probe(16.5, 1) - 4.62) < 0.01);
    CHECK(std::abs(jump_phase_signal(16.5, 1) - 1.66) < 0.01);

    const auto s = solve_jump(16.5, 3);
    CHECK(s.n == 3);
    CHECK(s.alpha_c == critical_depth(16.5, 3));
    CHECK(s.phi_pj == jump_phase_probe(16.5, 3));
    CHECK(s.phi_sj == jump_phase_signal(16.5, 3));
}

TEST_CASE("large detuning limits")
{
    CHECK(jump_phase_probe(1e9, 1) == doctest::Approx(1.5 * pi).epsilon(1e-8));
    CHECK(jump_phase_signal(1e9, 1) == doctest::Approx(0.5 * pi).epsilon(1e-8));
}

TEST_CASE("loop exponents")
{
    const auto e = loop_exponents(100.0, 16.5);
    CHECK(e.R == doctest::Approx(-50.0 / (16.5 * 16.5 + 1)).epsilon(1e-15));
    CHECK(e.I == doctest::Approx(50.0 * 16.5 / (16.5 * 16.5 + 1)).epsilon(1e-15));
    // I equals n pi / 2 at the critical depth
    CHECK(loop_exponents(critical_depth(7.0, 5), 7.0).I == doctest::Approx(2.5 * pi).epsilon(1e-14));
}

TEST_CASE("property: probe and signal jump phases sum to 2 pi")
{
    oracle::Gen gen(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const double delta = gen.uniform(0.2, 80) * (trial % 2 ? 1.0 : -1.0);
        const int n = gen.odd(9);
        const double pj = jump_phase_probe(delta, n);
        const double sj = jump_phase_signal(delta, n);
        CHECK(pj >= 0.0);
        CHECK(pj < 2 * pi);
        CHECK(sj >= 0.0);
        CHECK(sj < 2 * pi);
        CHECK(std::abs(wrap_pi(pj + sj)) < 1e-12);
        if (delta > 0)
            CHECK(critical_depth(delta, n) > 0.0);
    }
}

TEST_CASE("rejections")
{
    CHECK_THROWS_AS(critical_depth(0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(jump_phase_probe(0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(jump_phase_signal(0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(critical_depth(5.0, 2), InvalidArgument);
    CHECK_THROWS_AS(critical_depth(5.0, 0), InvalidArgument);
    CHECK_THROWS_AS(critical_depth(5.0, -1), InvalidArgument);
    CHECK_THROWS_AS(solve_jump(5.0, 4), InvalidArgument);
}

TEST_CASE("the jump point zeroes the probe exactly")
{
    for (double delta : {2.0, 5.0, 10.0, 16.5, 25.0, 40.0, 50.0}) {
        for (int n : {1, 3, 5}) {
            const double ac = critical_depth(delta, n);
            const double phi = jump_phase_probe(delta, n);
            const auto r = propagate_balanced(phi, medium(ac, delta), ac);
            CHECK(std::abs(r.probe) < 1e-9);
            CHECK(std::abs(oracle::probe_ratio(phi, ac, delta)) < 1e-9);
            const auto s = propagate_balanced(jump_phase_signal(delta, n), medium(ac, delta), ac);
            CHECK(std::abs(s.signal) < 1e-9);
        }
    }
}

TEST_CASE("zero detection on traced curves")
{
    SUBCASE("probe zero at the critical depth for Delta = 16.5")
    {
        const auto c = trace_curve(jump_phase_probe(16.5, 1), medium(100.0, 16.5), 2000);
        const auto z = detect_zero_crossing(c, Field::probe);
        REQUIRE(z.has_value());
        CHECK(std::abs(*z - critical_depth(16.5, 1)) < 100.0 / 1999);
        CHECK(std::abs(*z - critical_depth(16.5, 1)) < 1e-6);
        CHECK_FALSE(detect_zero_crossing(c, Field::signal).has_value());
    }
    SUBCASE("signal zero at the signal jump phase, probe stays finite")
    {
        const auto c = trace_curve(jump_phase_signal(16.5, 1), medium(100.0, 16.5), 2000);
        const auto z = detect_zero_crossing(c, Field::signal);
        REQUIRE(z.has_value());
        CHECK(std::abs(*z - critical_depth(16.5, 1)) < 100.0 / 1999);
        CHECK_FALSE(detect_zero_crossing(c, Field::probe).has_value());
    }
    SUBCASE("phi_r = 0 has no zero")
    {
        const auto c = trace_curve(0.0, medium(100.0, 16.5), 2000);
        CHECK_FALSE(detect_zero_crossing(c, Field::probe).has_value());
        CHECK_FALSE(detect_zero_crossing(c, Field::signal).has_value());
    }
    SUBCASE("negative detuning swaps the roles of the jump phases")
    {
        const auto c = trace_curve(jump_phase_probe(-16.5, 1), medium(100.0, -16.5), 2000);
        const auto z = detect_zero_crossing(c, Field::probe);
        REQUIRE(z.has_value());
        CHECK(std::abs(*z - critical_depth(16.5, 1)) < 100.0 / 1999);
        CHECK(jump_phase_probe(-16.5, 1) == doctest::Approx(jump_phase_signal(16.5, 1)).epsilon(1e-14));
    }
    SUBCASE("higher branch")
    {
        const double ac = critical_depth(16.5, 3);
        const auto c = trace_curve(jump_phase_probe(16.5, 3), medium(200.0, 16.5), 4000);
        const auto zeros = detect_zero_crossings(c, Field::probe);
        REQUIRE(zeros.size() == 1);
        CHECK(std::abs(zeros[0] - ac) < 200.0 / 3999);
    }
    SUBCASE("zero at the terminal sample")
    {
        const double ac = critical_depth(10.0, 1);
        const auto c = trace_curve(jump_phase_probe(10.0, 1), medium(ac, 10.0), 2000);
        const auto z = detect_zero_crossing(c, Field::probe);
        REQUIRE(z.has_value());
        CHECK(std::abs(*z - ac) < ac / 1999);
    }
}

TEST_CASE("property: zero detection agrees with a brute-force oracle")
{
    for (double delta = 2.0; delta <= 50.0; delta += 1.5) {
        const double ac = critical_depth(delta, 1);
        const double phi = jump_phase_probe(delta, 1);
        const double alpha = 1.3 * ac;
        const auto c = trace_curve(phi, medium(alpha, delta), 2000);
        const auto z = detect_zero_crossing(c, Field::probe);
        REQUIRE(z.has_value());
        const double step = alpha / 1999;
        CHECK(std::abs(*z - ac) < step);
        const auto [z_ref, v_ref] = oracle::brute_force_min(phi, alpha, delta);
        CHECK(v_ref < 1e-6);
        CHECK(std::abs(*z - z_ref) < step);
    }
}

TEST_CASE("terminal phase jumps across the jump phase only beyond the critical depth")
{
    const double phi = jump_phase_probe(16.5, 1);
    const double above = terminal_phase_step(medium(100.0, 16.5), phi, 0.05, Field::probe);
    CHECK(std::abs(above) > pi / 2);

    const double wide = std::abs(terminal_phase_step(medium(40.0, 16.5), phi, 0.05, Field::probe));
    const double narrow = std::abs(terminal_phase_step(medium(40.0, 16.5), phi, 0.005, Field::probe));
    const double narrower = std::abs(terminal_phase_step(medium(40.0, 16.5), phi, 0.0005, Field::probe));
    CHECK(wide < pi / 2);
    CHECK(narrow < wide);
    CHECK(narrower < narrow);
    CHECK(narrower < 0.01);

    // shrinking the bracket does not close the jump above the critical depth
    CHECK(std::abs(terminal_phase_step(medium(100.0, 16.5), phi, 0.0005, Field::probe)) > pi / 2);
}
