#pragma once

// Inverting the analytic pipeline for delta, fitting one delta to several
// observed advances, and sweeping delta.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qgrav/analytic.hpp"
#include "qgrav/bodies.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/observation.hpp"

namespace qgrav {

struct Residual {
    std::string planet;
    double observed = 0.0;
    double predicted = 0.0;
    double residual = 0.0;  ///< observed - predicted
};

struct FitResult {
    double delta_star = 0.0;   ///< arcsec
    double delta_sigma = 0.0;  ///< arcsec
    std::vector<Residual> residuals;
    double chi2 = 0.0;
};

/// delta (arcsec) whose analytic centurial advance equals `target_arcsec`.
inline double invert_delta(const PlanetElements& el, double target_arcsec,
                           QuantumRule rule = QuantumRule::perihelion_distance,
                           const Constants& k = default_constants) {
    if (!(target_arcsec >= 0.0) || !std::isfinite(target_arcsec))
        throw domain_error("invert_delta: target must be finite and >= 0");
    const auto orbit = derive_orbit(el, k);
    const double per_orbit = target_arcsec / (orbit.orbits_per_century * k.arcsec_per_rad);
    // 1 - x^2 with x = 2 pi / (2 pi + per_orbit)
    const double eps = epsilon_from_precession_per_orbit(per_orbit);
    if (!(eps < 1.0)) throw model_breakdown_error("invert_delta: target implies q_l k^2/h^2 >= 1");
    const double q_l = eps * orbit.h * orbit.h / orbit.k2;
    return rad_to_arcsec(q_l / quantum_length(orbit, rule));
}

/// Weighted least squares for predicted_i = s_i delta, with slopes taken from
/// the pipeline at `delta_ref` and weights 1/sigma_i^2.
inline FitResult fit_delta(const std::vector<Observation>& obs, const std::vector<PlanetElements>& planets,
                           QuantumRule rule = QuantumRule::perihelion_distance,
                           const Constants& k = default_constants, double delta_ref = 0.01) {
    if (obs.empty()) throw domain_error("fit_delta: no observations");
    std::vector<double> slopes;
    double sws = 0.0, swss = 0.0;
    for (const auto& o : obs) {
        if (!(o.sigma > 0.0)) throw domain_error("fit_delta: sigma must be positive for " + o.planet);
        const auto& el = find_planet(planets, o.planet);
        const double s = planet_precession(el, delta_ref, rule, k).per_century / delta_ref;
        const double w = 1.0 / (o.sigma * o.sigma);
        slopes.push_back(s);
        sws += w * s * o.value;
        swss += w * s * s;
    }
    FitResult fit;
    fit.delta_star = sws / swss;
    fit.delta_sigma = 1.0 / std::sqrt(swss);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double pred = slopes[i] * fit.delta_star;
        const double r = obs[i].value - pred;
        fit.residuals.push_back({obs[i].planet, obs[i].value, pred, r});
        fit.chi2 += r * r / (obs[i].sigma * obs[i].sigma);
    }
    return fit;
}

struct SweepRow {
    double delta = 0.0;        ///< arcsec
    double per_century = 0.0;  ///< arcsec / century
};

/// `steps` evenly spaced deltas from delta_min to delta_max inclusive.
inline std::vector<SweepRow> sweep_delta(const PlanetElements& el, double delta_min, double delta_max,
                                         std::size_t steps, QuantumRule rule = QuantumRule::perihelion_distance,
                                         const Constants& k = default_constants) {
    if (!(delta_min >= 0.0) || !(delta_max > delta_min)) throw domain_error("sweep_delta: need 0 <= min < max");
    if (steps < 2) throw domain_error("sweep_delta: need at least 2 steps");
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double d = i + 1 == steps
                             ? delta_max
                             : delta_min + (delta_max - delta_min) * static_cast<double>(i) /
                                               static_cast<double>(steps - 1);
        rows.push_back({d, planet_precession(el, d, rule, k).per_century});
    }
    return rows;
}

}  // namespace qgrav
