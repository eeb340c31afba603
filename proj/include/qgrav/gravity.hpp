#pragma once

// Force laws on a quantized length scale.
//
// Separations measured in units of the space quantum q_l are integers L, and
// the state of two masses at separation L carries weight 1/L. The attraction
// is proportional to the weight gained by stepping one quantum closer,
// 1/(L-1) - 1/L, which in ordinary units reads F = G m1 m2 / (L (L - q_l)).

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>

#include "qgrav/bodies.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/precession_result.hpp"

namespace qgrav {

/// Exact non-negative rational num/den, always in lowest terms.
struct Weight {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Weight&, const Weight&) = default;
};

namespace detail {
// L (L - 1) must fit in int64.
inline constexpr std::int64_t max_quantum_count = 3'000'000'000LL;
}

inline Weight state_weight(std::int64_t L) {
    if (L < 1) throw domain_error("state_weight: L must be >= 1");
    return {1, L};
}

/// 1/(L-1) - 1/L, evaluated exactly.
inline Weight weight_increment(std::int64_t L) {
    if (L < 2) throw domain_error("weight_increment: L must be >= 2 (no predecessor state)");
    if (L > detail::max_quantum_count) throw domain_error("weight_increment: L too large for exact arithmetic");
    const Weight hi = state_weight(L - 1);
    const Weight lo = state_weight(L);
    // hi.den and lo.den are consecutive, hence coprime.
    return {hi.num * lo.den - lo.num * hi.den, hi.den * lo.den};
}

inline double corrected_force(double G, double m1, double m2, double L, double q_l) {
    if (!(G > 0.0)) throw domain_error("corrected_force: G must be positive");
    if (!(m1 >= 0.0) || !(m2 >= 0.0)) throw domain_error("corrected_force: masses must be non-negative");
    if (!(q_l >= 0.0)) throw domain_error("corrected_force: q_l must be non-negative");
    if (!(L > q_l)) throw singularity_error(L, q_l);
    return G * m1 * m2 / (L * (L - q_l));
}

inline double newtonian_force(double G, double m1, double m2, double L) {
    if (!(L > 0.0)) throw domain_error("newtonian_force: L must be positive");
    return corrected_force(G, m1, m2, L, 0.0);
}

/// Force/orbit model for one planet and one space quantum.
///
/// G is the ordinary Newton constant; no dependence on q_l is modeled, and the
/// orbital pipeline only ever uses k2 = GM.
struct QuantizedModel {
    double q_l = 0.0;
    double k2 = default_constants.gm_sun;
    std::optional<double> h;
    double G = 6.67430e-11;

    /// q_l k^2 / h^2. Requires h.
    double epsilon() const {
        if (!h) throw domain_error("QuantizedModel: epsilon requires h");
        return q_l * k2 / (*h * *h);
    }

    void validate() const {
        if (!(q_l >= 0.0) || !std::isfinite(q_l)) throw domain_error("QuantizedModel: q_l must be >= 0");
        if (!(k2 > 0.0)) throw domain_error("QuantizedModel: k2 must be positive");
        if (h && !(*h > 0.0)) throw domain_error("QuantizedModel: h must be positive");
        if (!(G > 0.0)) throw domain_error("QuantizedModel: G must be positive");
    }
};

/// Standard general-relativistic perihelion advance 6 pi k^2 / (c^2 a (1 - e^2))
/// per orbit. Included only as the comparison baseline.
inline PrecessionResult gr_precession_baseline(const PlanetElements& el, double k2, double c,
                                               const Constants& k = default_constants) {
    validate(el);
    if (!(k2 > 0.0)) throw domain_error("gr_precession_baseline: k2 must be positive");
    if (!(c > 0.0)) throw domain_error("gr_precession_baseline: c must be positive");
    PrecessionResult r;
    r.per_orbit = 6.0 * std::numbers::pi * k2 / (c * c * el.a_m * (1.0 - el.e * el.e));
    r.per_century = r.per_orbit * (k.century_days / el.tau_days) * k.arcsec_per_rad;
    r.provenance = Provenance::gr_baseline;
    return r;
}

inline PrecessionResult gr_precession_baseline(const PlanetElements& el, const Constants& k = default_constants) {
    return gr_precession_baseline(el, k.gm_sun, k.c, k);
}

}  // namespace qgrav
