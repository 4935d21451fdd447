#include "knot/hankel.hpp"

#include "knot/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace knot {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kSeriesEps = 1e-17;
constexpr double kSeriesAccuracy = 1e-12;
// Accuracy demanded from the expansion inside hankel_principal. The expansion
// reaches roughly 6e-12 at |z| = z_switch with 20 terms.
constexpr double kPrincipalAsymptoticAccuracy = 1e-10;
// Offset used to bracket near-integer orders; the J_{+-nu} combination is
// still well conditioned there.
constexpr double kNearIntegerBracket = 1e-4;

int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

double reciprocal_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

// sin(pi nu) without the argument-reduction loss near integers.
double sin_pi(double nu) {
    const double n = std::round(nu);
    return parity_sign(static_cast<long>(n)) * std::sin(kPi * (nu - n));
}

cplx hankel_noninteger(HankelKind kind, double nu, cplx z) {
    const cplx jp = bessel_j_series(nu, z);
    const cplx jm = bessel_j_series(-nu, z);
    const double s = sin_pi(nu);
    if (kind == HankelKind::one) return (jm - std::exp(-kI * (kPi * nu)) * jp) / (kI * s);
    return (jm - std::exp(kI * (kPi * nu)) * jp) / (-kI * s);
}

cplx hankel_integer(HankelKind kind, int n, cplx z) {
    const cplx j = bessel_j_series(n, z);
    const cplx y = bessel_y_integer(n, z);
    return kind == HankelKind::one ? j + kI * y : j - kI * y;
}

cplx phase_of_pi_nu(const Order& nu, double sign) { return std::exp(kI * (sign * kPi * nu.value())); }

}  // namespace

Order::Order(double nu, double integer_tolerance) : nu_(nu), tol_(integer_tolerance) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error("Bessel order must be finite and non-negative");
    if (!(integer_tolerance > 0.0)) throw std::domain_error("integer tolerance must be positive");
}

int Order::nearest_integer() const noexcept { return static_cast<int>(std::lround(nu_)); }

bool Order::near_integer() const noexcept { return std::abs(nu_ - std::round(nu_)) < tol_; }

cplx bessel_j_series(double nu, cplx z, int terms) {
    if (nu < 0.0 && nu == std::floor(nu)) {
        const long n = std::lround(-nu);
        return static_cast<double>(parity_sign(n)) * bessel_j_series(-nu, z, terms);
    }
    if (z == cplx{0.0, 0.0}) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw std::domain_error("J_nu(0) is singular for negative order");
    }
    const cplx half = 0.5 * z;
    const cplx q = -half * half;
    cplx term = std::exp(nu * std::log(half)) * reciprocal_gamma(nu + 1.0);
    cplx sum = term;
    double tail = std::numeric_limits<double>::infinity();
    for (int j = 1; j < terms; ++j) {
        term *= q / (static_cast<double>(j) * (nu + j));
        sum += term;
        const double next_ratio = std::abs(q) / ((j + 1.0) * std::abs(nu + j + 1.0));
        if (next_ratio < 1.0 && j + 1.0 + nu > 0.0) {
            tail = std::abs(term) * next_ratio / (1.0 - next_ratio);
            if (tail <= kSeriesEps * std::abs(sum) || term == cplx{0.0, 0.0}) return sum;
        }
    }
    if (tail <= kSeriesAccuracy * std::abs(sum)) return sum;
    std::ostringstream os;
    os << "Bessel series did not converge in " << terms << " terms (relative tail bound "
       << tail / std::abs(sum) << ")";
    throw ConvergenceError(os.str(), tail / std::abs(sum));
}

cplx bessel_j(const Order& nu, cplx z, int terms) { return bessel_j_series(nu.value(), z, terms); }

cplx bessel_y_integer(int n, cplx z, int terms) {
    if (n < 0) throw std::domain_error("bessel_y_integer requires n >= 0");
    if (z == cplx{0.0, 0.0}) throw std::domain_error("Y_n is singular at z = 0");
    const cplx half = 0.5 * z;
    const cplx h2 = half * half;

    // Finite sum of negative powers.
    cplx finite = 0.0;
    if (n > 0) {
        cplx power = 1.0;
        for (int k = 0; k < n; ++k) {
            finite += std::tgamma(static_cast<double>(n - k)) / std::tgamma(k + 1.0) * power;
            power *= h2;
        }
        finite *= std::pow(half, -n);
    }

    // Digamma-weighted series, psi(k+1) + psi(n+k+1).
    double psi_k = -kEulerGamma;
    double psi_nk = -kEulerGamma;
    for (int j = 1; j <= n; ++j) psi_nk += 1.0 / j;
    cplx base = 1.0 / std::tgamma(n + 1.0);
    cplx series = (psi_k + psi_nk) * base;
    bool converged = false;
    double tail = std::numeric_limits<double>::infinity();
    for (int k = 1; k < terms; ++k) {
        base *= -h2 / (static_cast<double>(k) * (n + k));
        psi_k += 1.0 / k;
        psi_nk += 1.0 / (n + k);
        const cplx term = (psi_k + psi_nk) * base;
        series += term;
        const double next_ratio = std::abs(h2) / ((k + 1.0) * (n + k + 1.0));
        if (next_ratio < 0.5) {
            // Digamma weights grow at most logarithmically; the factor 2 covers it.
            tail = 2.0 * std::abs(term) * next_ratio / (1.0 - next_ratio);
            if (tail <= kSeriesEps * std::abs(series)) {
                converged = true;
                break;
            }
        }
    }
    if (!converged && !(tail <= kSeriesAccuracy * std::abs(series))) {
        throw ConvergenceError("Y_n series did not converge", tail / std::abs(series));
    }
    series *= std::pow(half, n);

    const cplx j = bessel_j_series(n, z, terms);
    return (-finite + 2.0 * std::log(half) * j - series) / kPi;
}

cplx hankel_series(HankelKind kind, const Order& nu, cplx z) {
    if (z == cplx{0.0, 0.0}) throw std::domain_error("Hankel functions are singular at z = 0");
    if (!nu.near_integer()) return hankel_noninteger(kind, nu.value(), z);
    const int n = nu.nearest_integer();
    const cplx at_integer = hankel_integer(kind, n, z);
    const double offset = nu.value() - n;
    if (offset == 0.0) return at_integer;
    // Linear bracket between the exact integer order and a nearby regular one.
    const double step = std::copysign(kNearIntegerBracket, offset);
    const cplx nearby = hankel_noninteger(kind, n + step, z);
    return at_integer + (offset / step) * (nearby - at_integer);
}

cplx hankel_asymptotic(HankelKind kind, const Order& nu, cplx z, int n_terms, double rel_accuracy) {
    if (z == cplx{0.0, 0.0} || std::abs(std::arg(z)) >= kPi)
        throw std::domain_error("hankel_asymptotic requires |arg z| < pi");
    const double mu = 4.0 * nu.value() * nu.value();
    const cplx step = (kind == HankelKind::one ? kI : -kI) / z;
    cplx sum = 1.0;
    cplx term = 1.0;
    double last = 0.0;
    for (int k = 1; k < n_terms; ++k) {
        const double odd = 2.0 * k - 1.0;
        const cplx next = term * step * ((mu - odd * odd) / (8.0 * k));
        if (next == cplx{0.0, 0.0}) {
            last = 0.0;  // terminating series (half-integer order)
            break;
        }
        if (std::abs(next) > std::abs(term) && k > 1) break;  // divergent tail
        term = next;
        sum += term;
        last = std::abs(term);
        if (last <= kSeriesEps * std::abs(sum)) break;
    }
    if (last > rel_accuracy * std::abs(sum)) {
        std::ostringstream os;
        os << "|z| = " << std::abs(z) << " too small for the asymptotic expansion of order "
           << nu.value() << " (last term " << last / std::abs(sum) << " relative)";
        throw ConvergenceError(os.str(), last / std::abs(sum));
    }
    const cplx w = z - 0.25 * kPi * (2.0 * nu.value() + 1.0);
    const cplx phase = kind == HankelKind::one ? std::exp(kI * w) : std::exp(-kI * w);
    return std::sqrt(2.0 / (kPi * z)) * phase * sum;
}

cplx hankel_principal(HankelKind kind, const Order& nu, cplx z) {
    if (z == cplx{0.0, 0.0}) throw std::domain_error("Hankel functions are singular at z = 0");
    if (std::abs(z) <= kSeriesSwitchRadius) return hankel_series(kind, nu, z);
    try {
        const double ph = std::arg(z);
        if (kind == HankelKind::two) {
            if (ph <= 0.5 * kPi)
                return hankel_asymptotic(kind, nu, z, kMaxAsymptoticTerms, kPrincipalAsymptoticAccuracy);
            // z = w e^{i pi} with arg w in (-pi/2, 0]
            // H2(w e^{i pi}) = 2 cos(pi nu) H2(w) + e^{i pi nu} H1(w)
            const cplx w = -z;
            return 2.0 * std::cos(kPi * nu.value()) *
                       hankel_asymptotic(HankelKind::two, nu, w, kMaxAsymptoticTerms,
                                         kPrincipalAsymptoticAccuracy) +
                   std::exp(kI * (kPi * nu.value())) *
                       hankel_asymptotic(HankelKind::one, nu, w, kMaxAsymptoticTerms,
                                         kPrincipalAsymptoticAccuracy);
        }
        if (ph >= -0.5 * kPi)
            return hankel_asymptotic(kind, nu, z, kMaxAsymptoticTerms, kPrincipalAsymptoticAccuracy);
        // z = w e^{-i pi} with arg w in [0, pi/2)
        // H1(w e^{-i pi}) = 2 cos(pi nu) H1(w) + e^{-i pi nu} H2(w)
        const cplx w = -z;
        return 2.0 * std::cos(kPi * nu.value()) *
                   hankel_asymptotic(HankelKind::one, nu, w, kMaxAsymptoticTerms,
                                     kPrincipalAsymptoticAccuracy) +
               std::exp(-kI * (kPi * nu.value())) *
                   hankel_asymptotic(HankelKind::two, nu, w, kMaxAsymptoticTerms,
                                     kPrincipalAsymptoticAccuracy);
    } catch (const ConvergenceError&) {
        // Large order relative to |z|: the ascending series still converges.
        return hankel_series(kind, nu, z);
    }
}

HankelValue hankel_principal_with_derivative(HankelKind kind, const Order& nu, cplx z) {
    const cplx h = hankel_principal(kind, nu, z);
    const cplx h_up = hankel_principal(kind, Order(nu.value() + 1.0, nu.integer_tolerance()), z);
    return {h, (nu.value() / z) * h - h_up};
}

double sine_ratio(int k, const Order& nu) {
    const int n = nu.nearest_integer();
    const double delta = nu.value() - n;
    const double sign = parity_sign(static_cast<long>(k - 1) * n);
    if (std::abs(delta) < nu.integer_tolerance()) return sign * k;
    return sign * std::sin(k * kPi * delta) / std::sin(kPi * delta);
}

Monodromy monodromy_coeffs(const Order& nu, int m) {
    return {sine_ratio(m + 1, nu), phase_of_pi_nu(nu, 1.0) * sine_ratio(m, nu)};
}

CircuitMatrix CircuitMatrix::operator*(const CircuitMatrix& r) const noexcept {
    return {a * r.a + b * r.d, a * r.b + b * r.c, d * r.a + c * r.d, d * r.b + c * r.c};
}

CircuitMatrix circuit_matrix(const Order& nu, int m) {
    const Monodromy mono = monodromy_coeffs(nu, m);
    return {mono.a, mono.b, -phase_of_pi_nu(nu, -1.0) * sine_ratio(m, nu), -sine_ratio(m - 1, nu)};
}

namespace {

struct SheetSplit {
    int m;
    cplx z0;
};

// theta = theta0 + m pi with theta0 in (-pi, 0].
SheetSplit split_sheet(const SurfacePoint& p) {
    const int m = static_cast<int>(std::ceil(p.theta() / kPi - 1e-12));
    return {m, std::polar(p.rho(), p.theta() - m * kPi)};
}

}  // namespace

cplx hankel_on_surface(HankelKind kind, const Order& nu, const SurfacePoint& p) {
    const SheetSplit s = split_sheet(p);
    if (s.m == 0) return hankel_principal(kind, nu, s.z0);
    const cplx h2 = hankel_principal(HankelKind::two, nu, s.z0);
    const cplx h1 = hankel_principal(HankelKind::one, nu, s.z0);
    const CircuitMatrix t = circuit_matrix(nu, s.m);
    return kind == HankelKind::two ? t.a * h2 + t.b * h1 : t.d * h2 + t.c * h1;
}

HankelValue hankel_on_surface_with_derivative(HankelKind kind, const Order& nu, const SurfacePoint& p) {
    const SheetSplit s = split_sheet(p);
    if (s.m == 0) return hankel_principal_with_derivative(kind, nu, s.z0);
    const HankelValue h2 = hankel_principal_with_derivative(HankelKind::two, nu, s.z0);
    const HankelValue h1 = hankel_principal_with_derivative(HankelKind::one, nu, s.z0);
    const CircuitMatrix t = circuit_matrix(nu, s.m);
    // d/dz of f(z e^{-i m pi}) picks up e^{-i m pi}.
    const double chain = parity_sign(s.m);
    if (kind == HankelKind::two)
        return {t.a * h2.value + t.b * h1.value, chain * (t.a * h2.derivative + t.b * h1.derivative)};
    return {t.d * h2.value + t.c * h1.value, chain * (t.d * h2.derivative + t.c * h1.derivative)};
}

ContinuationResult continuation_oracle(const Order& nu, cplx z0, double dtheta, HankelKind seed,
                                       const detail::StepControl& control) {
    const HankelValue start = hankel_principal_with_derivative(seed, nu, z0);
    if (dtheta == 0.0) return {start.value, start.derivative, 0};

    // Long double state: on |z| = R the solution swings through e^{+-R}, and
    // double round-off alone would cap the relative accuracy near 1e-8 at R = 8.
    using real = long double;
    using wide = std::complex<real>;
    using State = std::array<wide, 2>;
    const real radius = std::abs(z0);
    const double phi0 = std::arg(z0);
    const real nu2 = static_cast<real>(nu.value()) * nu.value();
    auto on_circle = [radius](real phi) { return std::polar(radius, phi); };
    // y = (w, dw/dz); d/dphi = (dz/dphi) d/dz with dz/dphi = i z.
    auto bessel = [&](real phi, const State& y) -> State {
        const wide z = on_circle(phi);
        const wide dz = wide(0, 1) * z;
        const wide w2 = -y[1] / z - (real(1) - nu2 / (z * z)) * y[0];
        return {dz * y[1], dz * w2};
    };

    State y{wide(start.value), wide(start.derivative)};
    detail::IntegrationStats stats;
    double h = 0.01;
    detail::integrate_dp45(bessel, phi0, phi0 + dtheta, y, control, h, stats,
                           [](double, State&) { return real(1); },
                           [&](double phi) { return cplx(on_circle(phi)); });
    return {cplx(y[0]), cplx(y[1]), stats.accepted};
}

}  // namespace knot
