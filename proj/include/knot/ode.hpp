#pragma once

// Transport of the free radial equation
//
//   psi''(r) = (l(l+1) / r^2 - E) psi(r)
//
// along a contour of the punctured complex plane, with overflow-safe
// rescaling and extraction of Hankel coefficients at the far end.

#include "knot/contour.hpp"
#include "knot/hankel.hpp"

#include <vector>

namespace knot {

/// l(l+1). The only place the centrifugal coefficient is formed; the strip
/// equation derives nu^2 / 4 from it.
inline double centrifugal_coefficient(double ell) noexcept { return ell * (ell + 1.0); }

/// Branch l = nu - 1/2 >= -1/2 of nu = l + 1/2.
inline double ell_of_order(double nu) noexcept { return nu - 0.5; }
inline double order_of_ell(double ell) noexcept { return ell + 0.5; }

/// Rescaled solution pair: psi = e^{logscale} u, psi' = e^{logscale} du.
struct PropState {
    cplx u{};
    cplx du{};
    double logscale = 0.0;

    /// Packs true values with max(|u|, |du|) = 1.
    static PropState from_true(cplx psi, cplx dpsi);

    cplx psi() const { return std::exp(logscale) * u; }
    cplx dpsi() const { return std::exp(logscale) * du; }

    /// Moves magnitude into logscale when max(|u|, |du|) leaves [low, high].
    /// Returns the factor applied to (u, du).
    double renormalize(double low = 1e-2, double high = 1e2);
};

struct Numerics {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 2'000'000;
    double renorm_low = 1e-2;
    double renorm_high = 1e2;

    void validate() const;
};

/// Second derivative psi'' = (l(l+1)/r^2 - E) psi. Throws std::domain_error at r = 0.
cplx rhs(cplx r, cplx psi, double ell, cplx energy);

struct Propagation {
    PropState state;
    long steps = 0;
    long rejected = 0;
};

/// Integrates along `path` from its first to its last sample. The state must
/// be attached at path.points().front(). Throws IntegrationError with the
/// failing location on step underflow or when max_steps is exceeded.
Propagation propagate(const ContourPath& path, double ell, cplx energy, const PropState& start,
                      const Numerics& num = {});

/// Same as propagate, also returning the state at every path sample.
std::vector<PropState> propagate_recording(const ContourPath& path, double ell, cplx energy,
                                           const PropState& start, const Numerics& num = {},
                                           long* steps = nullptr);

/// Integrates between two parameter values of the path (either direction).
Propagation propagate_between(const ContourPath& path, double t_from, double t_to, double ell,
                              cplx energy, const PropState& start, const Numerics& num = {});

/// sqrt(r) H^(kind)_nu(kappa r) and its r-derivative at a point of the surface.
/// Throws std::domain_error if kappa * rho is too small for the requested
/// number of asymptotic terms to reach 1e-12.
PropState seed_asymptotic(HankelKind kind, const Order& nu, const SurfacePoint& p, double kappa,
                          int n_terms = kMaxAsymptoticTerms);

struct Coefficients {
    cplx c1;           ///< weight of sqrt(r) H1_nu(kappa r)
    cplx c2;           ///< weight of sqrt(r) H2_nu(kappa r)
    cplx determinant;  ///< basis Wronskian; exactly -4i/pi in theory
};

/// Solves psi = c1 sqrt(r) H1_nu(kappa r') + c2 sqrt(r) H2_nu(kappa r') from
/// the value and derivative rows. r' is the point carried back to the
/// principal sheet by whole turns; sqrt(r) keeps the actual sheet. A state
/// transported from an H2 seed in S_0 across N turns therefore fits to
/// (c1, c2) proportional to (b, a) of monodromy_coeffs(nu, 2N).
/// Throws std::runtime_error if the basis determinant is below 1e-8 of 4/pi.
Coefficients fit_coefficients(const PropState& state, const SurfacePoint& p, const Order& nu, double kappa);

/// True-value Wronskian psi1 psi2' - psi1' psi2.
cplx wronskian(const PropState& a, const PropState& b);

}  // namespace knot
