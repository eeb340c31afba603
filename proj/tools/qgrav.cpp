// qgrav: perihelion precession under a quantized-space correction to
// Newtonian gravity.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qgrav/qgrav.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_model = 3;

struct CommonOptions {
    std::string planets_path;
    std::string observations_path;
    std::string rule = "perihelion";
    std::string format = "text";
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--planets", o.planets_path, "Planets table (JSON, schema_version 1)")->check(CLI::ExistingFile);
    cmd.add_option("--observations", o.observations_path, "Observations table (JSON, schema_version 1)")
        ->check(CLI::ExistingFile);
    cmd.add_option("--rule", o.rule,
                   "Length scaling the space quantum: perihelion (q_l = delta * a(1-e), reproduces the published "
                   "table) or semiminor (q_l = delta * b, the rule as literally stated in the text)")
        ->check(CLI::IsMember({"perihelion", "semiminor"}));
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
}

std::optional<std::filesystem::path> opt_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perihelion precession from a quantized-space correction to Newtonian gravity.\n"
                 "Note: the default --rule perihelion scales the quantum by the perihelion distance; the textual "
                 "rule (semi-minor axis) does not reproduce the published table."};
    app.require_subcommand(1);

    CommonOptions common;

    auto* table = app.add_subcommand("table", "Precession table: observation, GR baseline and one column per delta");
    std::vector<double> deltas{0.01, 0.05, 0.0398};
    add_common(*table, common);
    table->add_option("--deltas", deltas, "Observation errors delta (arcsec)")->delimiter(',')->check(CLI::NonNegativeNumber);

    auto* precess = app.add_subcommand("precess", "Centurial precession for one planet");
    std::string planet;
    double delta = 0.0398;
    int orbits = 0;
    double tol = 1e-12;
    add_common(*precess, common);
    precess->add_option("--planet", planet, "Planet name")->required();
    precess->add_option("--delta", delta, "Observation error delta (arcsec)")->check(CLI::NonNegativeNumber);
    precess->add_option("--orbits", orbits, "Also integrate this many orbits numerically (>= 2)");
    precess->add_option("--tol", tol, "Integrator relative tolerance");

    auto* orbit = app.add_subcommand("orbit", "Integrate the exact orbit and export (theta, u, r) samples");
    int orbit_count = 3;
    add_common(*orbit, common);
    orbit->add_option("--planet", planet, "Planet name")->required();
    orbit->add_option("--delta", delta, "Observation error delta (arcsec)")->check(CLI::NonNegativeNumber);
    orbit->add_option("--orbits", orbit_count, "Number of revolutions (>= 2)");
    orbit->add_option("--tol", tol, "Integrator relative tolerance");

    auto* fit = app.add_subcommand("fit", "Weighted least-squares fit of one delta to observed precessions");
    add_common(*fit, common);

    auto* sweep = app.add_subcommand("sweep", "Precession over an evenly spaced range of delta");
    double dmin = 0.01, dmax = 0.05;
    std::size_t steps = 5;
    add_common(*sweep, common);
    sweep->add_option("--planet", planet, "Planet name")->required();
    sweep->add_option("--min", dmin, "Smallest delta (arcsec)");
    sweep->add_option("--max", dmax, "Largest delta (arcsec)");
    sweep->add_option("--steps", steps, "Number of rows (>= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const auto fmt = qgrav::report::parse_format(common.format);
        const auto rule = qgrav::parse_quantum_rule(common.rule);
        const auto planets = qgrav::load_planets(opt_path(common.planets_path));
        std::string out;

        if (*table) {
            const auto obs = qgrav::load_observations(opt_path(common.observations_path));
            const auto rows = qgrav::report::build_table(planets, obs, deltas, rule);
            out = qgrav::report::render_table(rows, deltas, rule, fmt);
        } else if (*precess) {
            const auto& el = qgrav::find_planet(planets, planet);
            std::vector<qgrav::PrecessionResult> results{qgrav::planet_precession(el, delta, rule)};
            if (precess->count("--orbits")) {
                if (orbits < 2) throw std::invalid_argument("--orbits must be >= 2");
                results.push_back(qgrav::measured_precession(el, delta, rule, orbits, tol));
            }
            out = qgrav::report::render_precess(el, delta, rule, results, fmt);
        } else if (*orbit) {
            if (orbit_count < 2) throw std::invalid_argument("--orbits must be >= 2");
            const auto& el = qgrav::find_planet(planets, planet);
            const auto setup = qgrav::orbit_setup(el, delta, rule);
            const auto traj = qgrav::integrate_orbits(setup, orbit_count, tol);
            const auto series = qgrav::detect_perihelia(traj);
            out = qgrav::report::render_orbit(el, delta, rule, setup, traj, series, fmt);
        } else if (*fit) {
            const auto obs = qgrav::load_observations(opt_path(common.observations_path));
            out = qgrav::report::render_fit(qgrav::fit_delta(obs, planets, rule), obs, rule, fmt);
        } else if (*sweep) {
            const auto& el = qgrav::find_planet(planets, planet);
            out = qgrav::report::render_sweep(el, rule, qgrav::sweep_delta(el, dmin, dmax, steps, rule), fmt);
        }
        std::fwrite(out.data(), 1, out.size(), stdout);
        return 0;
    } catch (const qgrav::ingestion_error& e) {
        std::cerr << "qgrav: " << e.what() << "\n";
        return exit_usage;
    } catch (const qgrav::unknown_planet_error& e) {
        std::cerr << "qgrav: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qgrav: " << e.what() << "\n";
        return exit_usage;
    } catch (const qgrav::error& e) {
        std::cerr << "qgrav: " << e.what() << "\n";
        return exit_model;
    }
}
