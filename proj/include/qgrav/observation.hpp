#pragma once

#include <string>

namespace qgrav {

/// Observed centurial perihelion advance of one planet.
struct Observation {
    std::string planet;
    double value = 0.0;  ///< arcsec / century
    double sigma = 0.0;  ///< 1-sigma, arcsec / century
};

}  // namespace qgrav
