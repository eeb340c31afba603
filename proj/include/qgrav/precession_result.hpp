#pragma once

#include <string_view>

namespace qgrav {

enum class Provenance { analytic, numeric, gr_baseline };

inline constexpr std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::analytic: return "analytic";
        case Provenance::numeric: return "numeric";
        case Provenance::gr_baseline: return "gr-baseline";
    }
    return "?";
}

/// Perihelion advance per orbit (rad) and per Julian century (arcsec).
struct PrecessionResult {
    double per_orbit = 0.0;
    double per_century = 0.0;
    Provenance provenance = Provenance::analytic;
};

}  // namespace qgrav
