#include "knot/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace knot {

KnotQuantum make_knot_quantum(int N, int M) {
    if (N < 1 || M < 1) throw std::invalid_argument("knot quanta need N >= 1 and M >= 1");
    return {N, M, M / (2.0 * N), (M - N) / (2.0 * N), M % (2 * N) != 0};
}

void PhysicalChannel::validate() const {
    if (D < 1) throw std::invalid_argument("dimension must be >= 1");
    if (m < 0) throw std::invalid_argument("partial wave index must be >= 0");
    if (D == 1 && m > 1) throw std::invalid_argument("in one dimension only m = 0 or 1 exist");
    if (!std::isfinite(gamma)) throw std::invalid_argument("coupling must be finite");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
}

cplx growing_coefficient(double nu, int N) {
    if (N < 0) throw std::invalid_argument("winding number must be >= 0");
    return monodromy_coeffs(Order(nu), 2 * N).b;
}

bool is_bound_state(double nu, int N, double tol) {
    if (N < 1) return false;
    const double twice = 2.0 * N * nu;
    return std::abs(twice - std::round(twice)) < tol && std::abs(nu - std::round(nu)) >= tol;
}

std::vector<KnotQuantum> allowed_angular_momenta(int N, int M_max) {
    if (N < 1 || M_max < 1) throw std::invalid_argument("need N >= 1 and M_max >= 1");
    std::vector<KnotQuantum> out;
    for (int M = 1; M <= M_max; ++M)
        if (M % (2 * N) != 0) out.push_back(make_knot_quantum(N, M));
    return out;
}

namespace {

double shifted_partial_wave(int D, int m) { return m + 0.5 * (D - 2); }

}  // namespace

double effective_order(const PhysicalChannel& channel) {
    channel.validate();
    const double a = shifted_partial_wave(channel.D, channel.m);
    const double radicand = channel.gamma + a * a;
    if (radicand < 0.0) {
        std::ostringstream os;
        os << "gamma = " << channel.gamma << " gives a complex order (nu^2 = " << radicand << ")";
        throw std::domain_error(os.str());
    }
    return std::sqrt(radicand);
}

KnotCoupling coupling_for_knot(int D, int m, int N, int M) {
    PhysicalChannel{D, m, 0.0, 1.0}.validate();
    if (N < 1 || M < 1) throw std::invalid_argument("need N >= 1 and M >= 1");
    const double nu = M / (2.0 * N);
    const double a = shifted_partial_wave(D, m);
    return {nu * nu - a * a, M % (2 * N) == 0};
}

Dichotomy dimension_dichotomy(int D, int m, int N) {
    PhysicalChannel{D, m, 0.0, 1.0}.validate();
    if (N < 1) throw std::invalid_argument("winding number must be >= 1");
    // nu on the non-negative branch; D = 1, m = 0 gives nu = 1/2.
    const double nu = std::abs(shifted_partial_wave(D, m));
    if (D % 2 == 0) return {false, std::nullopt};
    const int M = static_cast<int>(std::lround(2.0 * N * nu));
    return {M % (2 * N) != 0, M};
}

double predicted_residual(double nu, int N) {
    const Monodromy mono = monodromy_coeffs(Order(nu), 2 * N);
    const double b = std::abs(mono.b);
    const double a = std::abs(mono.a);
    return b == 0.0 ? 0.0 : b / (a + b);
}

ShootResult shoot(double nu, int N, double kappa, const ContourSpec& contour, const Numerics& num) {
    if (contour.N != N) throw std::invalid_argument("contour winding number does not match N");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
    const Order order(nu);
    const ContourPath path = build_contour(contour);

    const PropState seed = seed_asymptotic(HankelKind::two, order, path.points().front(), kappa);
    const Propagation run = propagate(path, ell_of_order(nu), kappa * kappa, seed, num);
    const Coefficients fit = fit_coefficients(run.state, path.points().back(), order, kappa);

    const Monodromy mono = monodromy_coeffs(order, 2 * N);
    ShootResult out;
    out.c1 = fit.c1;
    out.c2 = fit.c2;
    const double total = std::abs(fit.c1) + std::abs(fit.c2);
    out.residual = total > 0.0 ? std::abs(fit.c1) / total : 0.0;
    out.logscale = run.state.logscale;
    out.steps = run.steps;
    out.predicted_ratio = mono.b / mono.a;
    out.predicted_residual = predicted_residual(nu, N);
    return out;
}

namespace {

constexpr double kGoldenWidth = 1e-8;
constexpr double kMinimumThreshold = 1e-4;

}  // namespace

std::vector<ResidualMinimum> scan_sturmian(int N, double kappa, double nu_min, double nu_max, int grid_points,
                                           const ContourSpec& contour, const Numerics& num) {
    if (!(nu_min >= 0.0) || !(nu_max > nu_min)) throw std::invalid_argument("need 0 <= nu_min < nu_max");
    if (grid_points < 3) throw std::invalid_argument("need at least 3 grid points");

    auto residual = [&](double nu) { return shoot(nu, N, kappa, contour, num).residual; };

    const double h = (nu_max - nu_min) / (grid_points - 1);
    std::vector<double> nus(grid_points);
    std::vector<double> values(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        nus[i] = (i == grid_points - 1) ? nu_max : nu_min + i * h;
        values[i] = residual(nus[i]);
    }

    std::vector<ResidualMinimum> minima;
    for (int i = 0; i < grid_points; ++i) {
        const bool below_left = i == 0 || values[i] < values[i - 1];
        const bool below_right = i == grid_points - 1 || values[i] <= values[i + 1];
        if (!below_left || !below_right) continue;

        double lo = nus[std::max(i - 1, 0)];
        double hi = nus[std::min(i + 1, grid_points - 1)];
        constexpr double inv_phi = 0.6180339887498949;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = residual(x1);
        double f2 = residual(x2);
        while (hi - lo > kGoldenWidth) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = residual(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = residual(x2);
            }
        }
        ResidualMinimum best{nus[i], values[i]};
        if (f1 < best.residual) best = {x1, f1};
        if (f2 < best.residual) best = {x2, f2};
        if (best.residual < kMinimumThreshold) minima.push_back(best);
    }
    return minima;
}

}  // namespace knot
