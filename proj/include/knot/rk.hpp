#pragma once

// Embedded Dormand-Prince 5(4) pair with PI step-size control for a linear
// second-order system written as two complex first-order components.

#include "knot/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

namespace knot::detail {

using State2 = std::array<std::complex<double>, 2>;

struct StepControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 2'000'000;
};

struct IntegrationStats {
    long accepted = 0;
    long rejected = 0;
};

template <class State, class Real>
State axpy(const State& y, Real h, const State& k) {
    return {y[0] + h * k[0], y[1] + h * k[1]};
}

/// Integrates dy/dt = f(t, y) from t0 to t1 (either direction). `h` is the
/// initial step guess on input and the last successful step on output, so
/// consecutive calls can chain. The system must be linear in y: after every
/// accepted step `post(t, y)` may rescale y in place and returns the factor it
/// applied (1.0 for none). `where(t)` maps t to a complex position for error
/// reports. State is a pair of std::complex<Real>; arithmetic runs in Real.
template <class State, class F, class Post, class Where>
void integrate_dp45(F&& f, double t0, double t1, State& y, const StepControl& ctl, double& h,
                    IntegrationStats& stats, Post&& post, Where&& where) {
    using Real = typename State::value_type::value_type;
    static constexpr Real c2 = Real(1) / 5, c3 = Real(3) / 10, c4 = Real(4) / 5, c5 = Real(8) / 9;
    static constexpr Real a21 = Real(1) / 5;
    static constexpr Real a31 = Real(3) / 40, a32 = Real(9) / 40;
    static constexpr Real a41 = Real(44) / 45, a42 = -Real(56) / 15, a43 = Real(32) / 9;
    static constexpr Real a51 = Real(19372) / 6561, a52 = -Real(25360) / 2187, a53 = Real(64448) / 6561,
                            a54 = -Real(212) / 729;
    static constexpr Real a61 = Real(9017) / 3168, a62 = -Real(355) / 33, a63 = Real(46732) / 5247,
                            a64 = Real(49) / 176, a65 = -Real(5103) / 18656;
    static constexpr Real b1 = Real(35) / 384, b3 = Real(500) / 1113, b4 = Real(125) / 192,
                            b5 = -Real(2187) / 6784, b6 = Real(11) / 84;
    // b - b_hat
    static constexpr Real e1 = Real(71) / 57600, e3 = -Real(71) / 16695, e4 = Real(71) / 1920,
                            e5 = -Real(17253) / 339200, e6 = Real(22) / 525, e7 = -Real(1) / 40;

    const double span = t1 - t0;
    if (span == 0.0) return;
    const double dir = span > 0 ? 1.0 : -1.0;
    const double min_step = 1e-14 * std::max(1.0, std::abs(t0) + std::abs(t1));

    Real t = t0;
    h = std::abs(h);
    if (!(h > 0.0) || h > std::abs(span)) h = std::abs(span);

    State k1 = f(t, y);
    double err_prev = 1e-4;
    bool last_rejected = false;

    while (dir * (t1 - t) > 0.0) {
        if (stats.accepted + stats.rejected >= ctl.max_steps)
            throw IntegrationError("maximum number of integration steps exceeded", double(t), where(double(t)));
        if (h < min_step)
            throw IntegrationError("integration step size underflow", double(t), where(double(t)));

        bool final_step = false;
        double h_try = h;
        if (h_try >= std::abs(t1 - t)) {
            h_try = std::abs(t1 - t);
            final_step = true;
        }
        const Real hs = dir * h_try;

        const State k2 = f(t + c2 * hs, axpy(y, hs * a21, k1));
        State y3 = {y[0] + hs * (a31 * k1[0] + a32 * k2[0]), y[1] + hs * (a31 * k1[1] + a32 * k2[1])};
        const State k3 = f(t + c3 * hs, y3);
        State y4;
        for (int i = 0; i < 2; ++i) y4[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State k4 = f(t + c4 * hs, y4);
        State y5;
        for (int i = 0; i < 2; ++i)
            y5[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const State k5 = f(t + c5 * hs, y5);
        State y6;
        for (int i = 0; i < 2; ++i)
            y6[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const State k6 = f(t + hs, y6);
        State ynew;
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const State k7 = f(t + hs, ynew);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const std::complex<Real> e =
                hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale =
                ctl.abs_tol + ctl.rel_tol * static_cast<double>(std::max(std::abs(y[i]), std::abs(ynew[i])));
            const double q = static_cast<double>(std::abs(e)) / scale;
            err += q * q;
        }
        err = std::sqrt(err / 2.0);
        if (!std::isfinite(err))
            throw IntegrationError("non-finite solution during integration", double(t), where(double(t)));

        if (err <= 1.0) {
            // PI controller (Gustafsson), exponents for a 5th order pair.
            double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
            fac = std::clamp(fac, 0.2, 5.0);
            if (last_rejected) fac = std::min(fac, 1.0);
            t = final_step ? t1 : t + hs;
            y = ynew;
            k1 = k7;
            err_prev = std::max(err, 1e-4);
            ++stats.accepted;
            last_rejected = false;
            const Real rescale = post(double(t), y);
            if (rescale != Real(1)) {
                k1[0] *= rescale;
                k1[1] *= rescale;
            }
            if (!final_step) h = h_try * fac;
        } else {
            const double fac = std::max(0.2, 0.9 * std::pow(err, -1.0 / 5));
            h = h_try * fac;
            ++stats.rejected;
            last_rejected = true;
        }
    }
}

}  // namespace knot::detail
