#include "knot/unroll.hpp"

#include "knot/rk.hpp"

#include <cmath>

namespace knot {

namespace {

constexpr cplx kI{0.0, 1.0};

// (dr/dx)^{-1/2} = (i r / 2)^{-1/2}, with sqrt(r) taken on the sheet of p.
cplx inverse_root_jacobian(const SurfacePoint& p) {
    return 1.0 / (std::sqrt(0.5) * std::polar(1.0, 0.25 * kPi) * p.sqrt());
}

}  // namespace

StripPoint map_to_strip(const SurfacePoint& p) { return {2.0 * p.theta() + kPi, -2.0 * std::log(p.rho())}; }

SurfacePoint map_from_strip(const StripPoint& q) { return {std::exp(-0.5 * q.v), 0.5 * (q.u - kPi)}; }

double strip_order_term(double nu) { return (centrifugal_coefficient(ell_of_order(nu)) + 0.25) / 4.0; }

cplx strip_equation_residual(double nu, double kappa, cplx x, cplx phi, cplx phi_xx) {
    return phi_xx + 0.25 * kappa * kappa * std::exp(kI * x) * phi + strip_order_term(nu) * phi;
}

StripJet to_strip_jet(const SurfacePoint& p, cplx psi, cplx dpsi, cplx d2psi) {
    const cplx g = inverse_root_jacobian(p);
    const cplx r = p.to_complex();
    // dr/dx = i r / 2, d2r/dx2 = -r / 4, dg/dx = -(i/4) g, d2g/dx2 = -g / 16.
    return {g * psi, g * (-0.25 * kI * psi + 0.5 * kI * r * dpsi), g * (-psi / 16.0 - 0.25 * r * r * d2psi)};
}

std::pair<cplx, cplx> from_strip(const SurfacePoint& p, cplx phi, cplx dphi) {
    const cplx g = inverse_root_jacobian(p);
    const cplx r = p.to_complex();
    const cplx psi = phi / g;
    const cplx dpsi = (dphi / g + 0.25 * kI * psi) / (0.5 * kI * r);
    return {psi, dpsi};
}

std::pair<cplx, cplx> propagate_strip(double nu, double kappa, cplx x0, cplx x1, cplx phi, cplx dphi,
                                      const Numerics& num) {
    num.validate();
    const cplx dx = x1 - x0;
    const double order_term = strip_order_term(nu);
    const double k2 = 0.25 * kappa * kappa;
    auto at = [x0, dx](double s) { return x0 + s * dx; };
    auto system = [&](double s, const detail::State2& y) -> detail::State2 {
        const cplx x = at(s);
        return {dx * y[1], -dx * (k2 * std::exp(kI * x) + order_term) * y[0]};
    };
    detail::State2 y{phi, dphi};
    detail::IntegrationStats stats;
    double h = 1e-3;
    detail::integrate_dp45(system, 0.0, 1.0, y, {num.rel_tol, num.abs_tol, num.max_steps}, h, stats,
                           [](double, detail::State2&) { return 1.0; }, at);
    return {y[0], y[1]};
}

}  // namespace knot
