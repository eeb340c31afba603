// Prints analytic and integrated precession for the bundled planets.

#include <cstdio>

#include "qgrav/qgrav.hpp"

int main() {
    const double delta = 0.0398;
    for (const auto& el : qgrav::bundled_planets()) {
        const auto analytic = qgrav::planet_precession(el, delta);
        const auto numeric = qgrav::measured_precession(el, delta, qgrav::QuantumRule::perihelion_distance, 20);
        const auto gr = qgrav::gr_precession_baseline(el);
        std::printf("%-8s analytic %7.3f  numeric %7.3f  GR %6.3f  arcsec/century\n", el.name.c_str(),
                    analytic.per_century, numeric.per_century, gr.per_century);
    }
}
