#include <catch2/catch_amalgamated.hpp>

#include "knot/errors.hpp"
#include "knot/ode.hpp"
#include "test_support.hpp"

#include <random>

using namespace knot;
using knot::testing::rel_err;

namespace {

constexpr cplx kI{0.0, 1.0};

ContourSpec standard(int N) { return {N, 1.0, 0.1, 30.0, 400}; }

PropState exact_state(HankelKind kind, double nu, const SurfacePoint& p, double kappa) {
    const HankelValue h = hankel_on_surface_with_derivative(kind, Order(nu), p.scaled(kappa));
    const cplx psi = p.sqrt() * h.value;
    return PropState::from_true(psi, psi / (2.0 * p.to_complex()) + p.sqrt() * kappa * h.derivative);
}

}  // namespace

TEST_CASE("radial right-hand side", "[ode]") {
    CHECK(rhs({2.0, 1.0}, {1.0, 0.5}, 0.0, 1.0) == cplx(-1.0, -0.5));
    CHECK(rhs({1.0, 0.0}, {3.0, 0.0}, 1.0, 0.0) == cplx(6.0, 0.0));
    CHECK(std::abs(rhs({0.0, 2.0}, {1.0, 0.0}, 1.0, 0.0) + 0.5) < 1e-16);
    CHECK_THROWS_AS(rhs({0.0, 0.0}, {1.0, 0.0}, 0.5, 1.0), std::domain_error);
    CHECK(centrifugal_coefficient(ell_of_order(0.5)) == 0.0);
    CHECK(order_of_ell(ell_of_order(1.3)) == Catch::Approx(1.3));
}

TEST_CASE("PropState rescaling is transparent", "[ode]") {
    const PropState s = PropState::from_true({3e5, -4e5}, {0.0, 1e3});
    CHECK(std::max(std::abs(s.u), std::abs(s.du)) == Catch::Approx(1.0));
    CHECK(rel_err(s.psi(), cplx(3e5, -4e5)) < 1e-15);
    PropState t = s;
    t.u *= 1e-5;
    t.du *= 1e-5;
    const cplx before = t.psi();
    const double f = t.renormalize();
    CHECK(f == Catch::Approx(1e5));
    CHECK(rel_err(t.psi(), before) < 1e-14);
    CHECK(PropState::from_true({0.0, 0.0}, {0.0, 0.0}).logscale == 0.0);
}

TEST_CASE("entire solutions come back single-valued", "[ode]") {
    // l = 0: psi = e^{-i r} solves the equation with E = 1 on every sheet.
    for (int N : {1, 2}) {
        const ContourPath path = build_contour(standard(N));
        const cplx r0 = path.points().front().to_complex();
        const cplx r1 = path.points().back().to_complex();
        const PropState start = PropState::from_true(std::exp(-kI * r0), -kI * std::exp(-kI * r0));
        const Propagation out = propagate(path, 0.0, 1.0, start);
        INFO("N=" << N);
        // global error of the default tolerances over ~10 wavelengths of ray
        CHECK(rel_err(out.state.psi(), std::exp(-kI * r1)) < 5e-8);
        CHECK(rel_err(out.state.dpsi(), -kI * std::exp(-kI * r1)) < 5e-8);
        CHECK(out.steps > 0);

        Numerics fine;
        fine.rel_tol = 1e-12;
        fine.abs_tol = 1e-14;
        const Propagation refined = propagate(path, 0.0, 1.0, start, fine);
        CHECK(rel_err(refined.state.psi(), std::exp(-kI * r1)) < 1e-9);
        CHECK(refined.steps > out.steps);
    }
}

TEST_CASE("one turn around the origin", "[ode]") {
    const ContourPath path = build_contour({2, 2.0, 0.1, 30.0, 400});
    const double t0 = 1.1;
    const double t1 = t0 + 2 * kPi / path.arc_turn();
    const SurfacePoint p0 = path.point_at(t0);
    const SurfacePoint p1 = path.point_at(t1);
    REQUIRE(p1.theta() - p0.theta() == Catch::Approx(2 * kPi));

    SECTION("nu = 1/2 returns to its value") {
        const PropState start = exact_state(HankelKind::two, 0.5, p0, 1.0);
        const Propagation out = propagate_between(path, t0, t1, ell_of_order(0.5), 1.0, start);
        CHECK(rel_err(out.state.psi(), start.psi()) < 1e-9);
    }
    SECTION("nu = 0.7 follows the circuit relation") {
        const PropState start = exact_state(HankelKind::two, 0.7, p0, 1.0);
        const Propagation out = propagate_between(path, t0, t1, ell_of_order(0.7), 1.0, start);
        const PropState want = exact_state(HankelKind::two, 0.7, p1, 1.0);
        CHECK(rel_err(out.state.psi(), want.psi()) < 1e-8);
        CHECK(rel_err(out.state.dpsi(), want.dpsi()) < 1e-8);
        // and backwards
        const Propagation back = propagate_between(path, t1, t0, ell_of_order(0.7), 1.0, out.state);
        CHECK(rel_err(back.state.psi(), start.psi()) < 1e-8);
    }
}

TEST_CASE("transport is linear and Wronskian-preserving", "[ode][property]") {
    const ContourPath path = build_contour(standard(1));
    const SurfacePoint& p = path.points().front();
    auto rng = knot::testing::make_rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double nu : {0.3, 0.75, 1.5}) {
        const double ell = ell_of_order(nu);
        const PropState s1 = exact_state(HankelKind::one, nu, p, 1.0);
        const PropState s2 = exact_state(HankelKind::two, nu, p, 1.0);
        const Propagation o1 = propagate(path, ell, 1.0, s1);
        const Propagation o2 = propagate(path, ell, 1.0, s2);
        INFO("nu=" << nu);
        CHECK(rel_err(wronskian(o1.state, o2.state), wronskian(s1, s2)) < 1e-8);

        const cplx alpha(u(rng), u(rng));
        const cplx beta(u(rng), u(rng));
        const PropState mix = PropState::from_true(alpha * s1.psi() + beta * s2.psi(),
                                                   alpha * s1.dpsi() + beta * s2.dpsi());
        const Propagation om = propagate(path, ell, 1.0, mix);
        const cplx want = alpha * o1.state.psi() + beta * o2.state.psi();
        const double scale = std::abs(alpha * o1.state.psi()) + std::abs(beta * o2.state.psi());
        CHECK(std::abs(om.state.psi() - want) < 1e-8 * scale);
    }
}

TEST_CASE("renormalization does not change the solution", "[ode]") {
    const ContourPath path = build_contour(standard(2));
    const PropState start = exact_state(HankelKind::two, 0.75, path.points().front(), 1.0);
    Numerics off;
    off.renorm_low = 1e-200;
    off.renorm_high = 1e200;
    Numerics eager;
    eager.renorm_low = 0.9;
    eager.renorm_high = 1.1;
    const Propagation a = propagate(path, ell_of_order(0.75), 1.0, start, eager);
    const Propagation b = propagate(path, ell_of_order(0.75), 1.0, start, off);
    CHECK(rel_err(a.state.psi(), b.state.psi()) < 1e-8);
    CHECK(a.state.logscale != b.state.logscale);

    const auto rec = propagate_recording(path, ell_of_order(0.75), 1.0, start, eager);
    REQUIRE(rec.size() == path.size());
    CHECK(rel_err(rec.back().psi(), a.state.psi()) < 1e-12);
}

TEST_CASE("asymptotic seeds", "[ode][seed]") {
    SECTION("half-integer closed form") {
        const SurfacePoint p(25.0, -kPi + 0.1);
        const double kappa = 1.3;
        const PropState s = seed_asymptotic(HankelKind::two, Order(0.5), p, kappa);
        const cplx r = p.to_complex();
        const cplx psi = kI * std::sqrt(2.0 / (kPi * kappa)) * std::exp(-kI * kappa * r);
        CHECK(rel_err(s.psi(), psi) < 1e-13);
        CHECK(rel_err(s.dpsi(), -kI * kappa * psi) < 1e-13);
    }
    SECTION("too close to the origin") {
        CHECK_THROWS_AS(seed_asymptotic(HankelKind::two, Order(0.7), {2.0, -3.0}, 1.0), std::domain_error);
        CHECK_THROWS_AS(seed_asymptotic(HankelKind::two, Order(0.7), {30.0, -3.0}, 0.0), std::domain_error);
    }
    SECTION("seed and fit round trip") {
        for (double nu : {0.3, 0.75, 1.0, 1.5}) {
            const SurfacePoint p(30.0, -kPi + std::atan(0.1));
            const Coefficients c2 = fit_coefficients(seed_asymptotic(HankelKind::two, Order(nu), p, 1.0), p,
                                                     Order(nu), 1.0);
            const Coefficients c1 = fit_coefficients(seed_asymptotic(HankelKind::one, Order(nu), p, 1.0), p,
                                                     Order(nu), 1.0);
            INFO("nu=" << nu);
            CHECK(std::abs(c2.c1) < 1e-12);
            CHECK(std::abs(c2.c2 - 1.0) < 1e-12);
            CHECK(std::abs(c1.c1 - 1.0) < 1e-12);
            CHECK(std::abs(c1.c2) < 1e-12);
            CHECK(std::abs(c2.determinant - (-4.0 * kI / kPi)) < 1e-12);
        }
    }
    SECTION("fit on a higher sheet returns circuit coefficients") {
        const double nu = 0.7;
        for (int N : {1, 2}) {
            const SurfacePoint p(30.0, 2 * kPi * N - std::atan(0.1));
            const PropState s = exact_state(HankelKind::two, nu, p, 1.0);
            const Coefficients c = fit_coefficients(s, p, Order(nu), 1.0);
            const Monodromy m = monodromy_coeffs(Order(nu), 2 * N);
            CHECK(std::abs(c.c1 - m.b) < 1e-10);
            CHECK(std::abs(c.c2 - m.a) < 1e-10);
        }
    }
}

TEST_CASE("transported coefficients match the circuit relation", "[ode][oracle]") {
    for (int N : {1, 2}) {
        const ContourPath path = build_contour(standard(N));
        for (double nu : {0.3, 0.5, 0.75, 1.5}) {
            const PropState seed = seed_asymptotic(HankelKind::two, Order(nu), path.points().front(), 1.0);
            const Propagation out = propagate(path, ell_of_order(nu), 1.0, seed);
            const Coefficients c = fit_coefficients(out.state, path.points().back(), Order(nu), 1.0);
            const Monodromy m = monodromy_coeffs(Order(nu), 2 * N);
            const double scale = std::abs(m.a) + std::abs(m.b);
            INFO("N=" << N << " nu=" << nu);
            CHECK(std::abs(c.c1 - m.b) < 1e-6 * scale);
            CHECK(std::abs(c.c2 - m.a) < 1e-6 * scale);
        }
    }
}

TEST_CASE("integration failures carry their location", "[ode]") {
    const ContourPath path = build_contour(standard(1));
    Numerics tight;
    tight.max_steps = 10;
    const PropState seed = seed_asymptotic(HankelKind::two, Order(0.5), path.points().front(), 1.0);
    try {
        (void)propagate(path, 0.0, 1.0, seed, tight);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(std::abs(e.r()) > 0.0);
    }
    Numerics bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(propagate(path, 0.0, 1.0, seed, bad), std::invalid_argument);
}
