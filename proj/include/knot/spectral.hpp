#pragma once

// Quantization of the free radial problem on the knot contours C^(N).
//
// An H2 solution fixed in S_0 reaches S_{2N} as a H2 + b H1 (circuit relation
// with m = 2N). A bound state needs b = 0, i.e. 2 N nu integral with nu itself
// not integral. Equivalently nu = M / (2N) with M not a multiple of 2N.

#include "knot/contour.hpp"
#include "knot/hankel.hpp"
#include "knot/ode.hpp"

#include <optional>
#include <vector>

namespace knot {

inline constexpr double kQuantizationTolerance = 1e-6;

struct KnotQuantum {
    int N;
    int M;
    double nu;   ///< M / (2N)
    double ell;  ///< (M - N) / (2N)
    bool allowed;
};

KnotQuantum make_knot_quantum(int N, int M);

struct PhysicalChannel {
    int D = 3;           ///< spatial dimension
    int m = 0;           ///< partial wave
    double gamma = 0.0;  ///< inverse-square coupling, V = gamma / r^2
    double kappa = 1.0;  ///< momentum, E = kappa^2

    void validate() const;
};

struct ShootResult {
    cplx c1;
    cplx c2;
    double residual = 0.0;  ///< |c1| / (|c1| + |c2|)
    double logscale = 0.0;  ///< final rescaling exponent of the transported state
    long steps = 0;
    cplx predicted_ratio;       ///< b / a from the circuit relation (may be infinite)
    double predicted_residual;  ///< |b| / (|a| + |b|)
};

/// Coefficient of the growing H1 component after N turns,
/// A(nu, N) = e^{i pi nu} sin(2 N pi nu) / sin(pi nu).
cplx growing_coefficient(double nu, int N);

bool is_bound_state(double nu, int N, double tol = kQuantizationTolerance);

/// All M in [1, M_max] with M mod 2N != 0.
std::vector<KnotQuantum> allowed_angular_momenta(int N, int M_max);

/// nu = sqrt(gamma + (m + (D-2)/2)^2); throws std::domain_error when the
/// radicand is negative (complex order).
double effective_order(const PhysicalChannel& channel);

struct KnotCoupling {
    double gamma;
    bool forbidden;  ///< M is a multiple of 2N; gamma is still reported
};

/// gamma = (M / 2N)^2 - (m + (D-2)/2)^2.
KnotCoupling coupling_for_knot(int D, int m, int N, int M);

struct Dichotomy {
    bool allowed_free;
    std::optional<int> M;
};

/// The gamma = 0 case: odd D gives a half-odd nu and an allowed M = 2 N nu,
/// even D an integral nu and no bound state.
Dichotomy dimension_dichotomy(int D, int m, int N);

/// |b| / (|a| + |b|) from monodromy_coeffs(nu, 2N).
double predicted_residual(double nu, int N);

/// Seeds H2 at the tip of the incoming ray, transports it over C^(N) and
/// fits the Hankel pair on the outgoing ray tip.
ShootResult shoot(double nu, int N, double kappa, const ContourSpec& contour, const Numerics& num = {});

struct ResidualMinimum {
    double nu;
    double residual;
};

/// Residual on `grid_points` equally spaced orders in [nu_min, nu_max]; each
/// local minimum is refined by golden-section search to width 1e-8 and kept
/// when its residual is below 1e-4. Results are ordered by nu.
std::vector<ResidualMinimum> scan_sturmian(int N, double kappa, double nu_min, double nu_max, int grid_points,
                                           const ContourSpec& contour, const Numerics& num = {});

}  // namespace knot
