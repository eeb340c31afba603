#pragma once

// Closed-form precessing orbit for the corrected force.
//
// To first order in q_l the Binet equation becomes
//     u'' + (1 - q_l k^2/h^2) u = k^2/h^2,
// solved by r = p / (1 + A p cos(x theta)) with p = (h^2 - q_l k^2)/k^2 and
// x = sqrt(1 - q_l k^2/h^2). Perihelia sit at theta = 2 n pi / x, so each
// revolution advances the perihelion by 2 pi (1/x - 1).
//
// epsilon = q_l k^2/h^2 is of order 1e-7 for the planets, so 1/x - 1 is
// evaluated from epsilon with log1p/expm1 rather than from a rounded x.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qgrav/bodies.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/precession_result.hpp"

namespace qgrav {

/// Length that converts the observational error angle into the space quantum.
enum class QuantumRule {
    perihelion_distance,  ///< q_l = delta * a (1 - e); reproduces the published table
    semi_minor_axis,      ///< q_l = delta * b, the literal textual rule
};

inline constexpr std::string_view to_string(QuantumRule r) {
    return r == QuantumRule::perihelion_distance ? "perihelion" : "semiminor";
}

inline QuantumRule parse_quantum_rule(std::string_view s) {
    if (s == "perihelion" || s == "perihelion-distance") return QuantumRule::perihelion_distance;
    if (s == "semiminor" || s == "semi-minor-axis") return QuantumRule::semi_minor_axis;
    throw std::invalid_argument("unknown quantum rule '" + std::string(s) + "'");
}

inline double quantum_length(const DerivedOrbit& orbit, QuantumRule rule) {
    return rule == QuantumRule::perihelion_distance ? orbit.r_p : orbit.b;
}

/// q_l = delta (converted to radians) times the rule's reference length.
inline double quantum_from_error(double delta_arcsec, const DerivedOrbit& orbit,
                                 QuantumRule rule = QuantumRule::perihelion_distance) {
    if (!(delta_arcsec >= 0.0)) throw domain_error("quantum_from_error: delta must be >= 0");
    return arcsec_to_rad(delta_arcsec) * quantum_length(orbit, rule);
}

struct AnalyticOrbit {
    double p = 0.0;        ///< semi-latus rectum, m
    double x = 1.0;        ///< angular frequency ratio
    double A = 0.0;        ///< amplitude, m^-1
    double epsilon = 0.0;  ///< q_l k^2 / h^2, kept for cancellation-free precession

    bool bound() const { return std::abs(A) * p < 1.0; }
};

struct OrbitParams {
    double p = 0.0;
    double x = 1.0;
    double epsilon = 0.0;
};

inline OrbitParams orbit_params(double q_l, const DerivedOrbit& orbit) {
    if (!(q_l >= 0.0)) throw domain_error("orbit_params: q_l must be >= 0");
    if (!(orbit.h > 0.0) || !(orbit.k2 > 0.0)) throw domain_error("orbit_params: h and k2 must be positive");
    const double h2 = orbit.h * orbit.h;
    const double eps = q_l * orbit.k2 / h2;
    if (!(eps < 1.0))
        throw model_breakdown_error("space quantum " + std::to_string(q_l) +
                                    " m too large for this orbit (q_l k^2/h^2 = " + std::to_string(eps) + ")");
    return {(h2 - q_l * orbit.k2) / orbit.k2, std::sqrt(1.0 - eps), eps};
}

/// Fixes the integration constant so that theta = 0 is a perihelion at r_p.
inline double amplitude_from_perihelion(double p, double r_p) {
    if (!(p > 0.0) || !(r_p > 0.0)) throw domain_error("amplitude_from_perihelion: p and r_p must be positive");
    return 1.0 / r_p - 1.0 / p;
}

inline AnalyticOrbit make_analytic_orbit(double q_l, const DerivedOrbit& orbit) {
    const auto op = orbit_params(q_l, orbit);
    return {op.p, op.x, amplitude_from_perihelion(op.p, orbit.r_p), op.epsilon};
}

inline double closed_form_radius(const AnalyticOrbit& sol, double theta) {
    if (!sol.bound()) throw domain_error("closed_form_radius: orbit is not bound (|A| p >= 1)");
    return sol.p / (1.0 + sol.A * sol.p * std::cos(sol.x * theta));
}

/// 2 pi (1/x - 1).
inline double precession_per_orbit(double x) {
    if (!(x > 0.0) || !(x <= 1.0)) throw domain_error("precession_per_orbit: x must lie in (0, 1]");
    return 2.0 * std::numbers::pi * (1.0 - x) / x;
}

/// Same quantity from epsilon = 1 - x^2, without forming x.
inline double precession_per_orbit_from_epsilon(double epsilon) {
    if (!(epsilon >= 0.0) || !(epsilon < 1.0)) throw domain_error("precession_per_orbit: epsilon must lie in [0, 1)");
    return 2.0 * std::numbers::pi * std::expm1(-0.5 * std::log1p(-epsilon));
}

/// Inverse of precession_per_orbit_from_epsilon.
inline double epsilon_from_precession_per_orbit(double per_orbit) {
    if (!(per_orbit >= 0.0) || !std::isfinite(per_orbit)) throw domain_error("per-orbit advance must be >= 0");
    return -std::expm1(-2.0 * std::log1p(per_orbit / (2.0 * std::numbers::pi)));
}

inline double precession_per_century(double per_orbit, const DerivedOrbit& orbit,
                                      const Constants& k = default_constants) {
    if (!(per_orbit >= 0.0)) throw domain_error("precession_per_century: per_orbit must be >= 0");
    return per_orbit * orbit.orbits_per_century * k.arcsec_per_rad;
}

inline PrecessionResult planet_precession(const PlanetElements& el, double delta_arcsec,
                                          QuantumRule rule = QuantumRule::perihelion_distance,
                                          const Constants& k = default_constants) {
    const auto orbit = derive_orbit(el, k);
    const double q_l = quantum_from_error(delta_arcsec, orbit, rule);
    const auto op = orbit_params(q_l, orbit);
    PrecessionResult r;
    r.per_orbit = precession_per_orbit_from_epsilon(op.epsilon);
    r.per_century = precession_per_century(r.per_orbit, orbit, k);
    r.provenance = Provenance::analytic;
    return r;
}

}  // namespace qgrav
