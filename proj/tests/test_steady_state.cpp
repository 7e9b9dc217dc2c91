#include <doctest.h>

#include <numbers>

#include "dlambda/steady_state.hpp"
#include "oracles.hpp"

using namespace dlambda;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

MediumParams<> drive(double alpha, double delta, cd oc = 1.0, cd od = 1.0)
{
    MediumParams<> p;
    p.alpha = alpha;
    p.delta = delta;
    p.omega_c = oc;
    p.omega_d = od;
    return p;
}

}  // namespace

TEST_CASE("coherences_steady: zero source and dark state")
{
    const auto p = drive(10.0, 3.0, std::polar(1.2, 0.4), std::polar(0.8, -1.1));
    const auto zero = coherences_steady(p, FieldPair<>{});
    CHECK(zero.rho21 == cd(0));
    CHECK(zero.rho31 == cd(0));
    CHECK(zero.rho41 == cd(0));

    // Omega_c = Omega_d = 1, Delta = 0, Omega_s = Omega_c Omega_p / Omega_d
    const auto q = drive(10.0, 0.0);
    const auto dark = coherences_steady(q, FieldPair<>{0.01, 0.01});
    CHECK(dark.rho31 == cd(0));
    CHECK(dark.rho41 == cd(0));

    // general dark combination Omega_s = Omega_p Omega_d / Omega_c for any drive and detuning
    oracle::Gen gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = drive(1.0, gen.uniform(-40, 40), gen.polar(0.1, 3), gen.polar(0.1, 3));
        const cd op = gen.polar(1e-3, 1e-2);
        const auto c = coherences_steady(r, FieldPair<>{op, op * r.omega_d / r.omega_c});
        CHECK(std::abs(c.rho31) < 1e-17);
        CHECK(std::abs(c.rho41) < 1e-17);
    }
}

TEST_CASE("coherences_steady against the Bloch linear system")
{
    // Delta = 0, Omega_c = Omega_d = 1, Omega_p = -Omega_s = 0.01
    const auto ref = oracle::obe_steady(0.0, 1.0, 1.0, 0.01, -0.01);
    const auto c = coherences_steady(drive(1.0, 0.0), FieldPair<>{0.01, -0.01});
    CHECK(std::abs(c.rho31 - ref.rho31) < 1e-16);
    CHECK(std::abs(c.rho41 - ref.rho41) < 1e-16);
    CHECK(std::abs(c.rho21 - ref.rho21) < 1e-16);
    // oracle values: rho31 = 0.01 i, rho41 = -0.01 i, rho21 = 0
    CHECK(std::abs(ref.rho31 - cd(0, 0.01)) < 1e-16);
    CHECK(std::abs(ref.rho41 - cd(0, -0.01)) < 1e-16);
    CHECK(std::abs(ref.rho21) < 1e-16);

    oracle::Gen gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = drive(1.0, gen.uniform(-40, 40), gen.polar(0.05, 4), gen.polar(0.05, 4));
        const FieldPair<> f{gen.polar(0, 0.01), gen.polar(0, 0.01)};
        const auto a = coherences_steady(p, f);
        const auto b = oracle::obe_steady(p.delta, p.omega_c, p.omega_d, f.probe, f.signal);
        const double scale = std::abs(b.rho21) + std::abs(b.rho31) + std::abs(b.rho41);
        CHECK(std::abs(a.rho21 - b.rho21) + std::abs(a.rho31 - b.rho31) + std::abs(a.rho41 - b.rho41)
              <= 1e-12 * scale);
        CHECK(within_perturbative_bound(a));
    }
}

TEST_CASE("closed forms reject dephasing")
{
    auto p = drive(10.0, 0.0);
    p.gamma21 = 0.01;
    CHECK_THROWS_AS(coherences_steady(p, FieldPair<>{0.01, 0.01}), InvalidArgument);
    try {
        propagate_general(p, FieldPair<>{1.0, 1.0}, 5.0);
        FAIL("expected rejection");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("dynamics") != std::string::npos);
    }
    CHECK_THROWS_AS(propagate_balanced(1.0, p, 5.0), InvalidArgument);
}

TEST_CASE("propagate_general: boundary identity and domain")
{
    const auto p = drive(50.0, 7.0, std::polar(1.3, 0.2), std::polar(0.7, 2.0));
    const FieldPair<> in{cd(0.01, 0.003), cd(-0.002, 0.007)};
    const auto out = propagate_general(p, in, 0.0);
    CHECK(out.probe == in.probe);
    CHECK(out.signal == in.signal);
    CHECK_THROWS_AS(propagate_general(p, in, -1.0), InvalidArgument);
    CHECK_THROWS_AS(propagate_general(p, in, 51.0), InvalidArgument);
}

TEST_CASE("propagate_general: no-signal probe at Delta = 16.5, alpha = 100")
{
    const auto out = propagate_general(drive(100.0, 16.5), FieldPair<>{1.0, 0.0}, 100.0);
    // about 1% transmission without the signal
    CHECK(std::norm(out.probe) == doctest::Approx(0.0101).epsilon(0.01));
    // independent complex evaluation of (1 + E)/2
    CHECK(std::abs(out.probe - cd(0.0867228858734786, -0.0508306506641808)) < 1e-14);
}

TEST_CASE("bright-mode factor at Delta = 34.2, alpha = 100")
{
    const cd e = bright_mode_factor(drive(100.0, 34.2), 100.0);
    CHECK(std::abs(e - cd(0.105242401631084, -0.952390436705847)) < 1e-14);
}

TEST_CASE("propagate_general matches RK4 integration of the slaved coherences")
{
    oracle::Gen gen(7);
    for (int trial = 0; trial < 40; ++trial) {
        const double alpha = gen.uniform(0.5, 100);
        const auto p = drive(alpha, gen.uniform(-40, 40), gen.polar(0.3, 2), gen.polar(0.3, 2));
        const FieldPair<> in{gen.polar(0.5, 1), trial % 5 == 0 ? cd(0) : gen.polar(0.5, 1)};
        const auto out = propagate_general(p, in, alpha);
        const auto [rp, rs] = oracle::rk4_fields(alpha, p.delta, p.omega_c, p.omega_d, in.probe, in.signal, 4000);
        CHECK(std::abs(out.probe - rp) < 1e-8);
        CHECK(std::abs(out.signal - rs) < 1e-8);
    }
}

TEST_CASE("propagate_balanced limits")
{
    SUBCASE("phi_r = 0 is transparent")
    {
        oracle::Gen gen(1);
        for (int trial = 0; trial < 200; ++trial) {
            const double alpha = gen.uniform(0, 200);
            const auto r = propagate_balanced(0.0, drive(alpha, gen.uniform(-50, 50)), gen.uniform(0, alpha));
            CHECK(r.probe == cd(1.0));
            CHECK(r.signal == cd(1.0));
        }
    }
    SUBCASE("phi_r = pi, Delta = 0 attenuates as exp(-zeta/2) with zero phase")
    {
        for (double alpha : {1.0, 10.0, 60.0, 100.0}) {
            const auto p = drive(alpha, 0.0);
            for (double z : {0.25 * alpha, 0.5 * alpha, alpha}) {
                const auto r = propagate_balanced(pi, p, z);
                CHECK(std::abs(r.probe - std::exp(-z / 2)) <= 1e-12 * std::exp(-z / 2));
                CHECK(r.probe.imag() == 0.0);
                CHECK(r.signal == r.probe);
                const auto tp = transmission_and_phase(r.probe);
                CHECK(tp.phase == 0.0);
                CHECK(std::abs(tp.transmission - std::exp(-z)) <= 1e-12 * std::exp(-z));
            }
        }
    }
    SUBCASE("drive imbalance is rejected")
    {
        CHECK_THROWS_AS(propagate_balanced(1.0, drive(10, 0, 1.0, 2.0), 5.0), InvalidArgument);
    }
}

TEST_CASE("property: balanced and general solutions agree")
{
    oracle::Gen gen(17);
    for (int trial = 0; trial < 2000; ++trial) {
        const double alpha = gen.uniform(0, 200);
        const double phi = gen.uniform(0, 2 * pi);
        const double mag = gen.uniform(0.1, 5);
        const auto p = balanced_params(alpha, gen.uniform(-50, 50), phi, mag);
        const double z = gen.uniform(0, alpha);
        const cd amp = gen.polar(0.1, 1);
        const auto g = propagate_general(p, FieldPair<>{amp, amp}, z);
        const auto b = propagate_balanced(phi, p, z);
        CHECK(std::abs(g.probe / amp - b.probe) <= 1e-12);
        CHECK(std::abs(g.signal / amp - b.signal) <= 1e-12);
    }
}

TEST_CASE("property: energy bound and Delta = 0 symmetry")
{
    oracle::Gen gen(23);
    for (int trial = 0; trial < 3000; ++trial) {
        const double alpha = gen.uniform(0, 300);
        const double phi = gen.uniform(0, 2 * pi);
        const auto r = propagate_balanced(phi, drive(alpha, gen.uniform(-60, 60)), alpha);
        CHECK(std::norm(r.probe) + std::norm(r.signal) <= 2.0 + 1e-12);

        // unequal drive, equal incident magnitudes
        const auto q = drive(alpha, gen.uniform(-60, 60), gen.polar(0.1, 3), gen.polar(0.1, 3));
        const auto o = propagate_general(q, FieldPair<>{1.0, std::polar(1.0, phi)}, alpha);
        CHECK(std::norm(o.probe) + std::norm(o.signal) <= 2.0 + 1e-12);

        const auto s = propagate_balanced(phi, drive(alpha, 0.0), alpha);
        CHECK(std::abs(std::norm(s.probe) - std::norm(s.signal)) < 1e-14);
        if (std::abs(s.probe) > 1e-9)
            CHECK(std::abs(std::arg(s.probe) + std::arg(s.signal)) < 1e-12);
    }
}

TEST_CASE("trace_curve")
{
    SUBCASE("empty medium gives a single unit sample")
    {
        const auto c = trace_curve(1.0, drive(0.0, 5.0), 50);
        REQUIRE(c.size() == 1);
        CHECK(c.probe_ratio[0] == cd(1.0));
        CHECK(c.signal_ratio[0] == cd(1.0));
    }
    SUBCASE("phi_r = pi, Delta = 0 is the real segment exp(-zeta/2)")
    {
        const auto c = trace_curve(pi, drive(100.0, 0.0), 2000);
        CHECK(c.size() == 2000);
        CHECK(c.zeta[1999] == 100.0);
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            CHECK(c.probe_ratio[k].imag() == 0.0);
            CHECK(std::abs(c.probe_ratio[k].real() - std::exp(-c.zeta[k] / 2)) <= 1e-12 * std::exp(-c.zeta[k] / 2));
        }
        CHECK(std::abs(c.probe_ratio[1999].real() - std::exp(-50.0)) <= 1e-12 * std::exp(-50.0));
    }
    SUBCASE("grid is strictly increasing and starts at unit ratios")
    {
        const auto c = trace_curve(2.0, drive(37.0, 4.0), 777);
        CHECK(c.probe_ratio[0] == cd(1.0));
        CHECK(c.signal_ratio[0] == cd(1.0));
        for (Eigen::Index k = 1; k < c.size(); ++k)
            CHECK(c.zeta[k] > c.zeta[k - 1]);
    }
    SUBCASE("Delta = 16.5, phi_r = 5: probe phase returns to zero near zeta = 40 and then grows")
    {
        const auto c = trace_curve(5.0, drive(100.0, 16.5), 2000);
        const auto ph = unwrapped_phase(c, Field::probe);
        Eigen::Index cross = -1;
        for (Eigen::Index k = 1; k < ph.size(); ++k)
            if (ph[k - 1] < 0.0 && ph[k] >= 0.0)
                cross = k;
        REQUIRE(cross > 0);
        CHECK(c.zeta[cross] == doctest::Approx(40.0).epsilon(0.1));
        CHECK(ph[ph.size() - 1] > 0.5);
    }
    SUBCASE("preconditions")
    {
        CHECK_THROWS_AS(trace_curve(1.0, drive(10, 0), 1), InvalidArgument);
        CHECK_THROWS_AS(trace_curve(drive(10, 0), FieldPair<>{1.0, 0.0}, 10), InvalidArgument);
    }
    SUBCASE("general trace reduces to the balanced one")
    {
        const auto p = balanced_params(80.0, 9.0, 2.5);
        const auto a = trace_curve(p, FieldPair<>{0.3, 0.3}, 300);
        const auto b = trace_curve(2.5, p, 300);
        CHECK((a.probe_ratio - b.probe_ratio).abs().maxCoeff() < 1e-12);
        CHECK((a.signal_ratio - b.signal_ratio).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("transmission_and_phase")
{
    auto tp = transmission_and_phase(cd(1.0));
    CHECK(tp.transmission == 1.0);
    CHECK(tp.phase == 0.0);

    tp = transmission_and_phase(cd(std::exp(-50.0)));
    CHECK(tp.transmission == doctest::Approx(std::exp(-100.0)).epsilon(1e-14));
    CHECK(tp.phase == 0.0);

    tp = transmission_and_phase(cd(0.0867228858734786, -0.0508306506641808));
    CHECK(tp.transmission == doctest::Approx(0.0101046139811684).epsilon(1e-12));
    CHECK(tp.phase == doctest::Approx(-0.530156528749808).epsilon(1e-12));

    CHECK(transmission_and_phase(cd(-1.0, -0.0)).phase == pi);
    CHECK(transmission_and_phase(cd(-1.0, 0.0)).phase == pi);
    CHECK_THROWS_AS(transmission_and_phase(cd(0.0)), ZeroFieldError);
    CHECK_THROWS_AS(transmission_and_phase(cd(std::nan(""), 0.0)), ZeroFieldError);
}

TEST_CASE("unwrapped phase follows accumulated rotation")
{
    // Delta = 16.5, phi_r = 4: probe keeps accumulating negative phase
    const auto c = trace_curve(4.0, drive(100.0, 16.5), 2000);
    const auto ph = unwrapped_phase(c, Field::probe);
    for (Eigen::Index k = 1; k < ph.size(); ++k)
        CHECK(std::abs(ph[k] - ph[k - 1]) < 0.1);
    const double principal = std::arg(c.probe_ratio[c.size() - 1]);
    CHECK(std::abs(wrap_pi(ph[ph.size() - 1] - principal)) < 1e-12);
    CHECK(terminal_unwrapped_phase(c, Field::probe) == ph[ph.size() - 1]);
}

TEST_CASE("propagation derivative reproduces (i/2) rho from the coherences")
{
    // central differences of the closed form against the slaved coherences, O(h^2)
    const auto p = drive(60.0, 6.0, std::polar(1.1, 0.3), std::polar(0.9, -0.4));
    const FieldPair<> in{0.01, cd(0.004, -0.006)};
    auto max_err = [&](double h) {
        double worst = 0.0;
        for (double z = 5.0; z < 55.0; z += 5.0) {
            const auto f = propagate_general(p, in, z);
            const auto fp = propagate_general(p, in, z + h);
            const auto fm = propagate_general(p, in, z - h);
            const auto rho = coherences_steady(p, f);
            const cd dp = (fp.probe - fm.probe) / (2 * h);
            const cd ds = (fp.signal - fm.signal) / (2 * h);
            worst = std::max({worst, std::abs(dp - 0.5 * oracle::I * rho.rho31),
                              std::abs(ds - 0.5 * oracle::I * rho.rho41)});
        }
        return worst;
    };
    const double e1 = max_err(0.2);
    const double e2 = max_err(0.1);
    CHECK(e1 < 1e-6);
    CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.05));
}
