#include "knot/ode.hpp"

#include "knot/errors.hpp"
#include "knot/rk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace knot {

PropState PropState::from_true(cplx psi, cplx dpsi) {
    PropState s{psi, dpsi, 0.0};
    const double m = std::max(std::abs(psi), std::abs(dpsi));
    if (m > 0.0 && std::isfinite(m)) {
        s.u /= m;
        s.du /= m;
        s.logscale = std::log(m);
    }
    return s;
}

double PropState::renormalize(double low, double high) {
    const double m = std::max(std::abs(u), std::abs(du));
    if ((m >= low && m <= high) || m == 0.0) return 1.0;
    const double factor = 1.0 / m;
    u *= factor;
    du *= factor;
    logscale += std::log(m);
    return factor;
}

void Numerics::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
    if (!(renorm_low > 0.0) || !(renorm_high > renorm_low) || renorm_low > 1.0 || renorm_high < 1.0)
        throw std::invalid_argument("renormalization bounds must satisfy 0 < low <= 1 <= high");
}

cplx rhs(cplx r, cplx psi, double ell, cplx energy) {
    if (r == cplx{0.0, 0.0}) throw std::domain_error("the radial equation is singular at r = 0");
    return (centrifugal_coefficient(ell) / (r * r) - energy) * psi;
}

namespace {

struct Transport {
    const ContourPath& path;
    double coupling;
    cplx energy;
    const Numerics& num;
    detail::IntegrationStats stats{};
    double h = 0.0;

    void run(double t0, double t1, PropState& s) {
        auto system = [this](double t, const detail::State2& y) -> detail::State2 {
            const cplx r = path.position_at(t);
            const cplx dr = path.tangent_at(t);
            return {dr * y[1], dr * ((coupling / (r * r) - energy) * y[0])};
        };
        auto post = [this, &s](double, detail::State2& y) {
            s.u = y[0];
            s.du = y[1];
            const double f = s.renormalize(num.renorm_low, num.renorm_high);
            y = {s.u, s.du};
            return f;
        };
        auto where = [this](double t) { return path.position_at(t); };
        detail::State2 y{s.u, s.du};
        if (h == 0.0) h = 1e-3 * std::abs(t1 - t0);
        const detail::StepControl ctl{num.rel_tol, num.abs_tol, num.max_steps};
        detail::integrate_dp45(system, t0, t1, y, ctl, h, stats, post, where);
        s.u = y[0];
        s.du = y[1];
    }
};

}  // namespace

std::vector<PropState> propagate_recording(const ContourPath& path, double ell, cplx energy,
                                           const PropState& start, const Numerics& num, long* steps) {
    num.validate();
    Transport tr{path, centrifugal_coefficient(ell), energy, num};
    std::vector<PropState> out;
    out.reserve(path.size());
    PropState s = start;
    s.renormalize(num.renorm_low, num.renorm_high);
    out.push_back(s);
    const auto& ts = path.params();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        tr.run(ts[i], ts[i + 1], s);
        out.push_back(s);
    }
    if (steps) *steps = tr.stats.accepted;
    return out;
}

Propagation propagate(const ContourPath& path, double ell, cplx energy, const PropState& start,
                      const Numerics& num) {
    num.validate();
    Transport tr{path, centrifugal_coefficient(ell), energy, num};
    PropState s = start;
    s.renormalize(num.renorm_low, num.renorm_high);
    const auto& ts = path.params();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) tr.run(ts[i], ts[i + 1], s);
    return {s, tr.stats.accepted, tr.stats.rejected};
}

Propagation propagate_between(const ContourPath& path, double t_from, double t_to, double ell,
                              cplx energy, const PropState& start, const Numerics& num) {
    num.validate();
    Transport tr{path, centrifugal_coefficient(ell), energy, num};
    PropState s = start;
    s.renormalize(num.renorm_low, num.renorm_high);
    tr.run(t_from, t_to, s);
    return {s, tr.stats.accepted, tr.stats.rejected};
}

namespace {

// Relative size of the last retained term of the large-|z| expansion.
double asymptotic_tail(const Order& nu, double abs_z, int n_terms) {
    const double mu = 4.0 * nu.value() * nu.value();
    double term = 1.0;
    double last = 0.0;
    for (int k = 1; k < n_terms; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * std::abs(mu - odd * odd) / (8.0 * k * abs_z);
        if (next == 0.0) return 0.0;
        if (next > term && k > 1) break;
        term = next;
        last = term;
        if (last < 1e-17) break;
    }
    return last;
}

}  // namespace

PropState seed_asymptotic(HankelKind kind, const Order& nu, const SurfacePoint& p, double kappa, int n_terms) {
    if (!(kappa > 0.0)) throw std::domain_error("seed_asymptotic requires kappa > 0");
    const double abs_z = kappa * p.rho();
    const double tail = asymptotic_tail(nu, abs_z, n_terms);
    if (tail > 1e-12) {
        std::ostringstream os;
        os << "seed point kappa*rho = " << abs_z << " too close to the origin for order " << nu.value()
           << " (asymptotic tail " << tail << ")";
        throw std::domain_error(os.str());
    }
    const HankelValue h = hankel_on_surface_with_derivative(kind, nu, p.scaled(kappa));
    const cplx r = p.to_complex();
    const cplx root = p.sqrt();
    const cplx psi = root * h.value;
    const cplx dpsi = psi / (2.0 * r) + root * kappa * h.derivative;
    return PropState::from_true(psi, dpsi);
}

Coefficients fit_coefficients(const PropState& state, const SurfacePoint& p, const Order& nu, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("fit_coefficients requires kappa > 0");
    const double turns = std::round(p.theta() / (2.0 * kPi));
    const cplx z = std::polar(kappa * p.rho(), p.theta() - 2.0 * kPi * turns);
    const cplx r = p.to_complex();
    const cplx root = p.sqrt();

    const HankelValue h1 = hankel_principal_with_derivative(HankelKind::one, nu, z);
    const HankelValue h2 = hankel_principal_with_derivative(HankelKind::two, nu, z);
    const cplx b1 = root * h1.value;
    const cplx b2 = root * h2.value;
    const cplx db1 = b1 / (2.0 * r) + root * kappa * h1.derivative;
    const cplx db2 = b2 / (2.0 * r) + root * kappa * h2.derivative;

    const cplx det = b1 * db2 - db1 * b2;
    constexpr double kTheory = 4.0 / kPi;
    if (!(std::abs(det) >= 1e-8 * kTheory)) {
        std::ostringstream os;
        os << "near-singular Hankel basis at r = " << r << " (|det| = " << std::abs(det) << ")";
        throw std::runtime_error(os.str());
    }
    const double scale = std::exp(state.logscale);
    const cplx c1 = (state.u * db2 - state.du * b2) / det * scale;
    const cplx c2 = (b1 * state.du - db1 * state.u) / det * scale;
    return {c1, c2, det};
}

cplx wronskian(const PropState& a, const PropState& b) {
    return std::exp(a.logscale + b.logscale) * (a.u * b.du - a.du * b.u);
}

}  // namespace knot
