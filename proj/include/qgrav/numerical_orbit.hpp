#pragma once

// Direct integration of the exact Binet equation for the corrected force,
//     u'' + u = (k^2/h^2) / (1 - q_l u),
// with perihelion detection on the sampled trajectory. Serves as an
// independent check of the first-order closed form in analytic.hpp.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qgrav/analytic.hpp"
#include "qgrav/bodies.hpp"
#include "qgrav/dormand_prince.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/gravity.hpp"
#include "qgrav/precession_result.hpp"

namespace qgrav {

struct BinetState {
    double theta = 0.0;  ///< rad
    double u = 0.0;      ///< 1/r, m^-1
    double du = 0.0;     ///< du/dtheta, m^-1
};

struct Trajectory {
    std::vector<BinetState> samples;
    double tol = 0.0;
    std::size_t steps = 0;
    std::size_t rejected_steps = 0;
};

struct PerihelionSeries {
    std::vector<double> theta;    ///< refined perihelion angles
    std::vector<double> advance;  ///< theta[i+1] - theta[i] - 2 pi

    double mean_advance() const {
        return (theta.back() - theta.front()) / static_cast<double>(theta.size() - 1) - 2.0 * std::numbers::pi;
    }
};

struct IntegrateOptions {
    double initial_step = std::numbers::pi / 256;
    /// Caps the gap between stored samples, which bounds the perihelion
    /// refinement error.
    double max_step = std::numbers::pi / 256;
};

namespace detail {
inline double binet_forcing(double K, double q_l, double u) {
    if (!(q_l * u < 1.0)) throw singularity_error(1.0 / u, q_l);
    return -u + K / (1.0 - q_l * u);
}
}  // namespace detail

/// d^2u/dtheta^2 for the exact corrected force.
inline double binet_rhs(const QuantizedModel& model, double u) {
    model.validate();
    if (!model.h) throw domain_error("binet_rhs: model needs h");
    if (!(u > 0.0)) throw domain_error("binet_rhs: u must be positive");
    return detail::binet_forcing(model.k2 / (*model.h * *model.h), model.q_l, u);
}

inline Trajectory integrate(const QuantizedModel& model, double u0, double du0, double theta_max, double tol,
                            const IntegrateOptions& opts = {}) {
    model.validate();
    if (!model.h) throw domain_error("integrate: model needs h");
    if (!(u0 > 0.0) || !std::isfinite(du0)) throw domain_error("integrate: invalid initial state");
    if (!(theta_max > 0.0)) throw domain_error("integrate: theta_max must be positive");
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw domain_error("integrate: tol must lie in [1e-14, 1e-6]");
    if (!(model.q_l * u0 < 1.0)) throw singularity_error(1.0 / u0, model.q_l);

    // Integrate w = u/u0 so both components are O(1) for the error norm.
    const double K = model.k2 / (*model.h * *model.h) / u0;
    const double q = model.q_l * u0;
    auto rhs = [K, q, u0](double, const ode::State<2>& y) -> ode::State<2> {
        if (!(y[0] > 0.0)) throw domain_error("integrate: orbit reached u <= 0 (unbound)");
        if (!(q * y[0] < 1.0)) throw singularity_error(1.0 / (y[0] * u0), q / u0);
        return {y[1], -y[0] + K / (1.0 - q * y[0])};
    };

    Trajectory traj;
    traj.tol = tol;
    ode::StepControl ctl;
    ctl.rtol = tol;
    ctl.atol = tol;
    ctl.initial_step = opts.initial_step;
    ctl.max_step = opts.max_step;
    traj.samples.reserve(static_cast<std::size_t>(theta_max / opts.max_step) + 16);
    const auto stats = ode::integrate_adaptive<2>(rhs, {1.0, du0 / u0}, 0.0, theta_max, ctl,
                                                  [&](double t, const ode::State<2>& y) {
                                                      traj.samples.push_back({t, y[0] * u0, y[1] * u0});
                                                  });
    traj.steps = stats.accepted;
    traj.rejected_steps = stats.rejected;
    return traj;
}

namespace detail {

/// Abscissa of the extremum of the parabola through three points.
inline double parabola_vertex(double t0, double f0, double t1, double f1, double t2, double f2) {
    // Newton form around t1 keeps the offsets small.
    const double d0 = t0 - t1, d2 = t2 - t1;
    const double s0 = (f0 - f1) / d0, s2 = (f2 - f1) / d2;
    const double curv = (s2 - s0) / (d2 - d0);
    const double slope = s0 - curv * d0;  // derivative at t1
    return t1 - slope / (2.0 * curv);
}

/// Extremum of the parabola with value f0 and slope g0 at t0 through (t1, f1).
inline double parabola_vertex_with_slope(double t0, double f0, double g0, double t1, double f1) {
    const double d = t1 - t0;
    const double curv = (f1 - f0 - g0 * d) / (d * d);
    return t0 - g0 / (2.0 * curv);
}

}  // namespace detail

/// Perihelia (maxima of u) where du changes sign from + to -, each refined by
/// a parabola through the three samples nearest the maximum. At a trajectory
/// endpoint the parabola is anchored on the endpoint's value and slope instead.
inline PerihelionSeries detect_perihelia(const Trajectory& traj) {
    const auto& s = traj.samples;
    PerihelionSeries out;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (!(s[i].du >= 0.0 && s[i + 1].du < 0.0)) continue;
        const std::size_t j = s[i].u >= s[i + 1].u ? i : i + 1;
        double th = 0.0;
        if (j > 0 && j + 1 < s.size()) {
            th = detail::parabola_vertex(s[j - 1].theta, s[j - 1].u, s[j].theta, s[j].u, s[j + 1].theta, s[j + 1].u);
        } else {
            // Trajectory endpoint: anchor the parabola on the endpoint's slope.
            const std::size_t n = j == 0 ? 1 : j - 1;
            th = detail::parabola_vertex_with_slope(s[j].theta, s[j].u, s[j].du, s[n].theta, s[n].u);
        }
        if (!out.theta.empty() && !(th > out.theta.back())) continue;
        out.theta.push_back(th);
    }
    if (out.theta.size() < 2)
        throw insufficient_span_error("detect_perihelia: found " + std::to_string(out.theta.size()) +
                                      " perihelion passage(s), need at least 2");
    for (std::size_t i = 0; i + 1 < out.theta.size(); ++i)
        out.advance.push_back(out.theta[i + 1] - out.theta[i] - 2.0 * std::numbers::pi);
    return out;
}

/// Model, analytic reference and starting state for one planet and delta.
struct OrbitSetup {
    DerivedOrbit orbit;
    QuantizedModel model;
    AnalyticOrbit analytic;
    double u0 = 0.0;  ///< 1/r at the theta = 0 perihelion
};

inline OrbitSetup orbit_setup_for_quantum(const PlanetElements& el, double q_l,
                                          const Constants& k = default_constants) {
    OrbitSetup s;
    s.orbit = derive_orbit(el, k);
    s.analytic = make_analytic_orbit(q_l, s.orbit);
    s.model.q_l = q_l;
    s.model.k2 = s.orbit.k2;
    s.model.h = s.orbit.h;
    s.u0 = (1.0 + s.analytic.A * s.analytic.p) / s.analytic.p;
    return s;
}

inline OrbitSetup orbit_setup(const PlanetElements& el, double delta_arcsec, QuantumRule rule,
                              const Constants& k = default_constants) {
    const auto orbit = derive_orbit(el, k);
    return orbit_setup_for_quantum(el, quantum_from_error(delta_arcsec, orbit, rule), k);
}

/// Integrates `n_orbits` revolutions from perihelion and returns the trajectory.
inline Trajectory integrate_orbits(const OrbitSetup& s, int n_orbits, double tol, const IntegrateOptions& opts = {}) {
    if (n_orbits < 1) throw domain_error("integrate_orbits: need at least one orbit");
    // A quarter revolution past the last expected perihelion.
    const double theta_max = (2.0 * std::numbers::pi * n_orbits + std::numbers::pi / 2) / s.analytic.x;
    return integrate(s.model, s.u0, 0.0, theta_max, tol, opts);
}

inline PrecessionResult precession_from_series(const PerihelionSeries& series, const DerivedOrbit& orbit,
                                               const Constants& k = default_constants) {
    PrecessionResult r;
    r.per_orbit = series.mean_advance();
    r.per_century = r.per_orbit * orbit.orbits_per_century * k.arcsec_per_rad;
    r.provenance = Provenance::numeric;
    return r;
}

inline PrecessionResult measured_precession_for_quantum(const PlanetElements& el, double q_l, int n_orbits,
                                                        double tol = 1e-12, const Constants& k = default_constants) {
    if (n_orbits < 2) throw domain_error("measured_precession: need at least 2 orbits");
    const auto s = orbit_setup_for_quantum(el, q_l, k);
    return precession_from_series(detect_perihelia(integrate_orbits(s, n_orbits, tol)), s.orbit, k);
}

/// Mean per-orbit perihelion advance measured on the integrated exact orbit,
/// extrapolated to a century.
inline PrecessionResult measured_precession(const PlanetElements& el, double delta_arcsec, QuantumRule rule,
                                            int n_orbits, double tol = 1e-12,
                                            const Constants& k = default_constants) {
    const auto orbit = derive_orbit(el, k);
    return measured_precession_for_quantum(el, quantum_from_error(delta_arcsec, orbit, rule), n_orbits, tol, k);
}

}  // namespace qgrav
