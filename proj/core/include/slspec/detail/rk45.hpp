#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "slspec/types.hpp"

namespace slspec::detail {

template <std::size_t N>
using Vec = std::array<cplx, N>;

struct RkOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 1000000;
    double min_step = 0.0;
    /// Rescale the state when its largest component exceeds this; 0 disables.
    double renormalize_above = 0.0;
    /// The last `quadratic_tail` components hold quadratic functionals of the others and are
    /// rescaled by the square of the renormalization factor.
    std::size_t quadratic_tail = 0;
};

template <std::size_t N>
struct RkFailure {
    double t;
    Vec<N> y;
    const char* reason;
};

template <std::size_t N>
struct RkResult {
    Vec<N> y;
    long steps = 0;
    double log_scale = 0.0;
};

/// Dormand–Prince 5(4) with PI step-size control on a complex N-vector.
/// `hmax(t)` bounds the step, `observe(t, y)` sees every accepted step.
/// Throws RkFailure<N> carrying the last accepted state.
template <std::size_t N, class Rhs, class Ceiling, class Observer>
RkResult<N> dormand_prince(Rhs&& f, double t0, Vec<N> y, double t1, const RkOptions& opt,
                           Ceiling&& hmax, Observer&& observe) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    RkResult<N> res;
    if (t0 == t1) {
        res.y = y;
        return res;
    }
    const double dir = t1 > t0 ? 1.0 : -1.0;
    std::array<double, N> peak{};
    for (std::size_t i = 0; i < N; ++i) peak[i] = std::abs(y[i]);

    double t = t0;
    Vec<N> k1 = f(t, y), k2, k3, k4, k5, k6, k7, tmp, ynew;
    double h = std::min(std::abs(t1 - t0), hmax(t)) * 0.01;
    if (!(h > 0.0)) h = std::abs(t1 - t0) * 1e-3;
    {
        // short spans start at the step floor instead of below it
        const double hmin0 = opt.min_step > 0.0 ? opt.min_step : 1e-14 * std::max(std::abs(t), 1e-300);
        h = std::max(h, std::min({std::abs(t1 - t0), hmax(t), 10.0 * hmin0}));
    }
    double err_prev = 1.0;
    bool rejected_last = false;

    for (long step = 0;; ++step) {
        if (step >= opt.max_steps) throw RkFailure<N>{t, y, "step count exhausted"};
        const double remaining = std::abs(t1 - t);
        const double ceiling = hmax(t);
        h = std::min({h, ceiling, remaining});
        const double hmin = opt.min_step > 0.0 ? opt.min_step : 1e-14 * std::max(std::abs(t), 1e-300);
        if (h < hmin && h < remaining) throw RkFailure<N>{t, y, "step size underflow"};
        const double hs = dir * h;

        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a21 * k1[i]);
        k2 = f(t + c2 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(t + c3 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(t + c4 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(t + c5 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double tnew = (h == remaining) ? t1 : t + hs;
        k6 = f(tnew, tmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = f(tnew, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const cplx ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double mag = std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double sc = opt.abs_tol * std::max(peak[i], mag) + opt.rel_tol * mag;
            const double ratio = sc > 0.0 ? std::abs(ei) / sc : (std::abs(ei) > 0.0 ? HUGE_VAL : 0.0);
            err = std::max(err, ratio);
        }
        if (!std::isfinite(err)) {
            h *= 0.2;
            rejected_last = true;
            continue;
        }
        if (err <= 1.0) {
            t = tnew;
            y = ynew;
            k1 = k7;
            ++res.steps;
            double big = 0.0;
            const std::size_t linear = N - std::min(opt.quadratic_tail, N);
            for (std::size_t i = 0; i < N; ++i) {
                const double m = std::abs(y[i]);
                peak[i] = std::max(peak[i], m);
                if (i < linear) big = std::max(big, m);
            }
            if (opt.renormalize_above > 0.0 && big > opt.renormalize_above) {
                for (std::size_t i = 0; i < N; ++i) {
                    const double f = i < linear ? big : big * big;
                    y[i] /= f;
                    k1[i] /= f;
                    peak[i] /= f;
                }
                res.log_scale += std::log(big);
            }
            observe(t, y);
            if (t == t1) break;
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, rejected_last ? 1.0 : 5.0);
            h *= fac;
            err_prev = std::max(err, 1e-4);
            rejected_last = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            rejected_last = true;
        }
    }
    res.y = y;
    return res;
}

}  // namespace slspec::detail
