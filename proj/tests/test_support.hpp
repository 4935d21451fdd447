#pragma once

#include "knot/riemann.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace knot::testing {

inline double rel_err(cplx got, cplx want) {
    const double scale = std::abs(want);
    return scale > 0 ? std::abs(got - want) / scale : std::abs(got);
}

/// Term-by-term ascending series of J_nu in long double, each term built
/// from its own power and Gamma value (no recurrences).
inline cplx naive_bessel_j(double nu, cplx z, int terms = 80) {
    using lc = std::complex<long double>;
    const lc half = lc(z) / 2.0L;
    lc sum = 0;
    for (int j = 0; j < terms; ++j) {
        const long double g = std::tgamma(static_cast<long double>(nu) + j + 1.0L);
        const long double f = std::tgamma(static_cast<long double>(j) + 1.0L);
        const lc power = std::pow(half, lc(static_cast<long double>(nu) + 2.0L * j));
        const long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
        sum += sign * power / (f * g);
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

inline std::mt19937_64 make_rng(unsigned seed = 20240611u) { return std::mt19937_64(seed); }

}  // namespace knot::testing
