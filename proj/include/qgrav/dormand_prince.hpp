#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with FSAL and standard
// step-size control. Works on fixed-size states (std::array<double, N>).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>

#include "qgrav/errors.hpp"

namespace qgrav::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
    double rtol = 1e-12;
    double atol = 1e-12;
    double initial_step = 0.0;  ///< 0 picks (t1 - t0) / 100
    double max_step = std::numeric_limits<double>::infinity();
    double min_step = 1e-14;    ///< relative to max(1, |t|)
    std::size_t max_steps = 50'000'000;
};

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

namespace detail {

// Butcher tableau, Dormand & Prince (1980).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = y;
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (const auto& [w, k] : terms) acc += w * (*k)[i];
        out[i] += h * acc;
    }
    return out;
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). `observer(t, y)` is called
/// for the initial state and after every accepted step; the final step lands
/// exactly on t1. Throws step_failure_error if the step size underflows.
template <std::size_t N, class Rhs, class Observer>
IntegrationStats integrate_adaptive(Rhs&& f, State<N> y, double t0, double t1, const StepControl& ctl,
                                    Observer&& observer) {
    using namespace detail;
    IntegrationStats stats;
    if (!(t1 > t0)) throw domain_error("integrate_adaptive: t1 must exceed t0");

    double t = t0;
    double h = ctl.initial_step > 0.0 ? ctl.initial_step : (t1 - t0) / 100.0;
    h = std::min(h, ctl.max_step);
    observer(t, static_cast<const State<N>&>(y));

    State<N> k1 = f(t, y);
    ++stats.evaluations;
    while (t < t1) {
        if (stats.accepted + stats.rejected >= ctl.max_steps)
            throw step_failure_error("integrate_adaptive: step budget exhausted at t = " + std::to_string(t));
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }
        const State<N> k2 = f(t + c2 * h, axpy<N>(y, h, {{a21, &k1}}));
        const State<N> k3 = f(t + c3 * h, axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
        const State<N> k4 = f(t + c4 * h, axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 = f(t + c5 * h, axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 =
            f(t + h, axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State<N> y_new = axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State<N> k7 = f(t + h, y_new);
        stats.evaluations += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(e) / scale);
        }

        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0) {
            t = last ? t1 : t + h;
            y = y_new;
            k1 = k7;
            ++stats.accepted;
            observer(t, static_cast<const State<N>&>(y));
            h = std::min(h * factor, ctl.max_step);
        } else {
            ++stats.rejected;
            h *= std::min(factor, 1.0);
        }
        if (h < ctl.min_step * std::max(1.0, std::abs(t)))
            throw step_failure_error("integrate_adaptive: step size underflow at t = " + std::to_string(t));
    }
    return stats;
}

}  // namespace qgrav::ode
