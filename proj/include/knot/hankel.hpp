#pragma once

// Bessel and Hankel functions of real order on the logarithmic Riemann
// surface. Principal-sheet kernels (ascending series for moderate |z|, the
// Hankel asymptotic expansion for large |z|) are carried to other sheets with
// the circuit relations
//
//   sin(pi nu) H2(z e^{i m pi}) = sin((m+1) pi nu) H2(z) + e^{i pi nu} sin(m pi nu) H1(z)
//   sin(pi nu) H1(z e^{i m pi}) = -sin((m-1) pi nu) H1(z) - e^{-i pi nu} sin(m pi nu) H2(z)
//
// valid for every integer m, with the integer-order limits taken explicitly.

#include "knot/riemann.hpp"
#include "knot/rk.hpp"

namespace knot {

/// Real, non-negative Bessel order.
class Order {
public:
    static constexpr double kDefaultIntegerTolerance = 1e-6;

    explicit Order(double nu, double integer_tolerance = kDefaultIntegerTolerance);

    double value() const noexcept { return nu_; }
    double integer_tolerance() const noexcept { return tol_; }
    int nearest_integer() const noexcept;
    /// |nu - round(nu)| < integer_tolerance.
    bool near_integer() const noexcept;

private:
    double nu_;
    double tol_;
};

inline constexpr double kSeriesSwitchRadius = 12.0;
inline constexpr int kMaxAsymptoticTerms = 20;
inline constexpr int kDefaultSeriesTerms = 400;

/// J_nu(z) by its ascending series on the principal sheet (|arg z| <= pi).
/// Throws ConvergenceError when the tail bound does not fall below 1e-12
/// (relative) within `terms` terms.
cplx bessel_j(const Order& nu, cplx z, int terms = kDefaultSeriesTerms);

/// Same series for any real order, including the negative non-integer orders
/// needed for J_{-nu}.
cplx bessel_j_series(double nu, cplx z, int terms = kDefaultSeriesTerms);

/// Y_n(z) for integer n >= 0 from its ascending series.
cplx bessel_y_integer(int n, cplx z, int terms = kDefaultSeriesTerms);

/// Hankel function from the ascending series (J_{-nu}, J_nu combination or
/// the integer-order J/Y series). Intended for |z| up to about z_switch.
cplx hankel_series(HankelKind kind, const Order& nu, cplx z);

/// The truncated large-|z| expansion
///   sqrt(pi z / 2) H1 = e^{ i w} sum_k i^k a_k(nu) / z^k,
///   sqrt(pi z / 2) H2 = e^{-i w} sum_k (-i)^k a_k(nu) / z^k,   w = z - pi (2 nu + 1) / 4,
/// summed until terms drop below machine precision or n_terms are used.
/// Throws ConvergenceError if the last retained term exceeds `rel_accuracy`
/// relative to the sum. This is the bare expansion; near arg z = -pi (H1) or
/// +pi (H2) it misses the recessive contribution, which hankel_principal adds
/// back through the circuit relations.
cplx hankel_asymptotic(HankelKind kind, const Order& nu, cplx z, int n_terms = kMaxAsymptoticTerms,
                       double rel_accuracy = 1e-12);

/// Principal-branch H^(kind)_nu(z), -pi < arg z <= pi, z != 0.
cplx hankel_principal(HankelKind kind, const Order& nu, cplx z);

struct HankelValue {
    cplx value;
    cplx derivative;  // d/dz
};

HankelValue hankel_principal_with_derivative(HankelKind kind, const Order& nu, cplx z);

/// sin(k pi nu) / sin(pi nu), with the limit k (-1)^{(k-1) n} at integer nu.
double sine_ratio(int k, const Order& nu);

/// Coefficients of H2_nu(z e^{i m pi}) = a H2_nu(z) + b H1_nu(z).
struct Monodromy {
    cplx a;
    cplx b;
};

Monodromy monodromy_coeffs(const Order& nu, int m);

/// Full circuit matrix in the (H2, H1) basis:
///   [H2(z e^{i m pi})]   [a  b] [H2(z)]
///   [H1(z e^{i m pi})] = [d  c] [H1(z)]
struct CircuitMatrix {
    cplx a, b, d, c;
    CircuitMatrix operator*(const CircuitMatrix& rhs) const noexcept;
};

CircuitMatrix circuit_matrix(const Order& nu, int m);

/// H^(kind)_nu at an arbitrary point of the Riemann surface of log z.
cplx hankel_on_surface(HankelKind kind, const Order& nu, const SurfacePoint& p);
HankelValue hankel_on_surface_with_derivative(HankelKind kind, const Order& nu, const SurfacePoint& p);

struct ContinuationResult {
    cplx value;
    cplx derivative;
    long steps = 0;
};

/// Continues H^(seed)_nu numerically along the circle |z| = |z0| from arg z0
/// through a phase increment dtheta by integrating Bessel's equation. Shares
/// no code with the circuit relations above.
ContinuationResult continuation_oracle(const Order& nu, cplx z0, double dtheta,
                                       HankelKind seed = HankelKind::two,
                                       const detail::StepControl& control = {1e-13, 1e-15, 2'000'000});

}  // namespace knot
