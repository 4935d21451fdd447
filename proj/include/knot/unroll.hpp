#pragma once

// The map r = -i e^{i x / 2} sends each Riemann sheet of log r onto a strip
// of width 4 pi in the x plane: Re x = 2 theta + pi is angular, Im x = -2 ln rho
// is radial. With psi = sqrt(dr/dx) phi the free radial equation becomes
//
//   phi'' + (kappa^2 / 4) e^{i x} phi + (nu^2 / 4) phi = 0,
//
// an exponential potential; the Schwarzian of the map shifts l(l+1) by 1/4
// into nu^2.

#include "knot/ode.hpp"
#include "knot/riemann.hpp"

namespace knot {

struct StripPoint {
    double u;  ///< Re x
    double v;  ///< Im x

    cplx x() const noexcept { return {u, v}; }
};

StripPoint map_to_strip(const SurfacePoint& p);
SurfacePoint map_from_strip(const StripPoint& q);

/// nu^2 / 4, assembled from centrifugal_coefficient(l) + 1/4.
double strip_order_term(double nu);

/// phi'' + (kappa^2 / 4) e^{ix} phi + (nu^2 / 4) phi; zero for exact solutions.
cplx strip_equation_residual(double nu, double kappa, cplx x, cplx phi, cplx phi_xx);

struct StripJet {
    cplx phi;
    cplx dphi;    ///< d phi / dx
    cplx d2phi;   ///< d^2 phi / dx^2
};

/// Transforms (psi, dpsi/dr, d2psi/dr2) at a surface point into the strip
/// function and its x-derivatives by the chain rule. The square root of
/// dr/dx follows the sheet of p.
StripJet to_strip_jet(const SurfacePoint& p, cplx psi, cplx dpsi, cplx d2psi);

/// Inverse of the first two rows of to_strip_jet.
std::pair<cplx, cplx> from_strip(const SurfacePoint& p, cplx phi, cplx dphi);

/// Integrates the strip equation along the straight segment x0 -> x1 starting
/// from (phi, dphi).
std::pair<cplx, cplx> propagate_strip(double nu, double kappa, cplx x0, cplx x1, cplx phi, cplx dphi,
                                      const Numerics& num = {});

}  // namespace knot
