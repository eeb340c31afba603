#pragma once

// Physical constants, unit conversions, planetary elements and the orbital
// quantities derived from them. Everything is SI (m, s, rad) except periods,
// which are carried in days as published in almanacs.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qgrav/errors.hpp"

namespace qgrav {

struct Constants {
    double gm_sun = 1.32712440018e20;  ///< k^2, m^3 s^-2
    double c = 299792458.0;            ///< m s^-1
    double au = 1.495978707e11;        ///< m
    double julian_year_days = 365.25;
    double century_days = 36525.0;
    double arcsec_per_rad = 648000.0 / std::numbers::pi;
    double seconds_per_day = 86400.0;
};

inline constexpr Constants default_constants{};

/// Identifies the constant set in machine-readable reports.
inline constexpr const char* constants_version = "IAU2012-CODATA2018/1";

inline double arcsec_to_rad(double arcsec) {
    if (!std::isfinite(arcsec)) throw domain_error("arcsec_to_rad: non-finite input");
    return arcsec * (std::numbers::pi / 648000.0);
}

inline double rad_to_arcsec(double rad) {
    if (!std::isfinite(rad)) throw domain_error("rad_to_arcsec: non-finite input");
    return rad * (648000.0 / std::numbers::pi);
}

struct PlanetElements {
    std::string name;
    double a_m = 0.0;       ///< semi-major axis
    double e = 0.0;         ///< eccentricity
    double tau_days = 0.0;  ///< sidereal period
};

/// Throws ingestion_error naming the record when an element is out of range.
inline void validate(const PlanetElements& el) {
    auto fail = [&](const std::string& what) {
        throw ingestion_error("planet '" + el.name + "': " + what);
    };
    if (el.name.empty()) fail("empty name");
    if (!std::isfinite(el.a_m) || el.a_m <= 0.0) fail("semi-major axis must be positive");
    if (!std::isfinite(el.e) || el.e < 0.0 || el.e >= 1.0) fail("eccentricity must lie in [0, 1)");
    if (!std::isfinite(el.tau_days) || el.tau_days <= 0.0) fail("period must be positive");
}

/// Mercury, Venus and Earth (J2000 mean elements).
inline std::vector<PlanetElements> bundled_planets() {
    return {
        {"Mercury", 5.79092e10, 0.20563069, 87.96926},
        {"Venus", 1.08209e11, 0.00677323, 224.70080},
        {"Earth", 1.49598e11, 0.01671022, 365.25636},
    };
}

class unknown_planet_error : public error {
public:
    using error::error;
};

/// Case-insensitive lookup by name.
inline const PlanetElements& find_planet(const std::vector<PlanetElements>& planets, const std::string& name) {
    auto lower = [](std::string s) {
        std::ranges::transform(s, s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        return s;
    };
    const auto key = lower(name);
    for (const auto& p : planets) {
        if (lower(p.name) == key) return p;
    }
    throw unknown_planet_error("unknown planet '" + name + "'");
}

struct DerivedOrbit {
    double b = 0.0;    ///< semi-minor axis, m
    double r_p = 0.0;  ///< perihelion distance, m
    double h = 0.0;    ///< specific angular momentum 2 pi a b / tau, m^2 s^-1
    double k2 = 0.0;   ///< gravitational parameter, m^3 s^-2
    double orbits_per_century = 0.0;
};

inline DerivedOrbit derive_orbit(const PlanetElements& el, double k2,
                                 const Constants& k = default_constants) {
    validate(el);
    if (!(k2 > 0.0)) throw domain_error("derive_orbit: k2 must be positive");
    DerivedOrbit o;
    o.b = el.a_m * std::sqrt(1.0 - el.e * el.e);
    o.r_p = el.a_m * (1.0 - el.e);
    o.h = 2.0 * std::numbers::pi * el.a_m * o.b / (el.tau_days * k.seconds_per_day);
    o.k2 = k2;
    o.orbits_per_century = k.century_days / el.tau_days;
    return o;
}

inline DerivedOrbit derive_orbit(const PlanetElements& el, const Constants& k = default_constants) {
    return derive_orbit(el, k.gm_sun, k);
}

}  // namespace qgrav
