#pragma once

// Rendering of command results as text (two decimals), CSV and JSON (full
// precision). Machine-readable output carries no timestamps so identical
// inputs give byte-identical documents.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qgrav/analytic.hpp"
#include "qgrav/bodies.hpp"
#include "qgrav/calibration.hpp"
#include "qgrav/gravity.hpp"
#include "qgrav/numerical_orbit.hpp"
#include "qgrav/observation.hpp"

namespace qgrav::report {

enum class Format { text, csv, json };

inline Format parse_format(std::string_view s) {
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

/// Shortest representation that round-trips.
inline std::string num(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    return s == "-0.00" ? "0.00" : s;
}

inline nlohmann::json constants_json(const Constants& k) {
    return {{"version", constants_version},
            {"gm_sun", k.gm_sun},
            {"c", k.c},
            {"au", k.au},
            {"julian_year_days", k.julian_year_days},
            {"century_days", k.century_days},
            {"arcsec_per_rad", k.arcsec_per_rad}};
}

inline nlohmann::json result_json(const PrecessionResult& r) {
    return {{"provenance", to_string(r.provenance)}, {"per_orbit_rad", r.per_orbit}, {"per_century_arcsec", r.per_century}};
}

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

inline std::string render_grid(const std::vector<std::vector<std::string>>& grid) {
    std::vector<std::size_t> widths;
    for (const auto& row : grid) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    std::string out;
    for (const auto& row : grid) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) line += i + 1 == row.size() ? row[i] : pad(row[i], widths[i] + 2);
        out += line + "\n";
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------- table

struct ModelColumn {
    double delta = 0.0;
    double per_century = 0.0;
};

struct ReportRow {
    std::string planet;
    std::optional<Observation> observation;
    double gr_baseline = 0.0;
    std::vector<ModelColumn> models;  ///< ascending delta
};

inline std::vector<ReportRow> build_table(const std::vector<PlanetElements>& planets,
                                          const std::vector<Observation>& observations, std::vector<double> deltas,
                                          QuantumRule rule, const Constants& k = default_constants) {
    if (deltas.empty()) throw std::invalid_argument("table: at least one delta is required");
    std::ranges::sort(deltas);
    std::vector<ReportRow> rows;
    for (const auto& el : planets) {
        ReportRow row;
        row.planet = el.name;
        for (const auto& o : observations) {
            if (o.planet == el.name) row.observation = o;
        }
        row.gr_baseline = gr_precession_baseline(el, k).per_century;
        for (double d : deltas) row.models.push_back({d, planet_precession(el, d, rule, k).per_century});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string render_table(const std::vector<ReportRow>& rows, const std::vector<double>& deltas,
                                 QuantumRule rule, Format fmt, const Constants& k = default_constants) {
    std::vector<double> sorted = deltas;
    std::ranges::sort(sorted);
    if (fmt == Format::json) {
        nlohmann::json doc;
        doc["command"] = "table";
        doc["rule"] = to_string(rule);
        doc["constants"] = constants_json(k);
        doc["deltas_arcsec"] = sorted;
        doc["rows"] = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json jr;
            jr["planet"] = r.planet;
            jr["observation"] = r.observation ? nlohmann::json{{"value_arcsec", r.observation->value},
                                                               {"sigma_arcsec", r.observation->sigma}}
                                              : nlohmann::json(nullptr);
            jr["gr_baseline_arcsec"] = r.gr_baseline;
            jr["model"] = nlohmann::json::array();
            for (const auto& m : r.models) jr["model"].push_back({{"delta_arcsec", m.delta}, {"per_century_arcsec", m.per_century}});
            doc["rows"].push_back(std::move(jr));
        }
        return doc.dump(2) + "\n";
    }
    if (fmt == Format::csv) {
        std::string out = "planet,observation_arcsec,sigma_arcsec,gr_baseline_arcsec";
        for (double d : sorted) out += ",delta_" + num(d);
        out += "\n";
        for (const auto& r : rows) {
            out += r.planet + "," + (r.observation ? num(r.observation->value) : "") + "," +
                   (r.observation ? num(r.observation->sigma) : "") + "," + num(r.gr_baseline);
            for (const auto& m : r.models) out += "," + num(m.per_century);
            out += "\n";
        }
        return out;
    }
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head{"planet", "observation", "relativity"};
    for (double d : sorted) head.push_back("delta=" + num(d));
    grid.push_back(head);
    for (const auto& r : rows) {
        std::vector<std::string> line{r.planet,
                                      r.observation ? fixed2(r.observation->value) + " +/- " + fixed2(r.observation->sigma)
                                                    : "-",
                                      fixed2(r.gr_baseline)};
        for (const auto& m : r.models) line.push_back(fixed2(m.per_century));
        grid.push_back(std::move(line));
    }
    return "Perihelion precession (arcsec/century), rule = " + std::string(to_string(rule)) + "\n" +
           detail::render_grid(grid);
}

// ---------------------------------------------------------------- precess

inline std::string render_precess(const PlanetElements& el, double delta, QuantumRule rule,
                                  const std::vector<PrecessionResult>& results, Format fmt,
                                  const Constants& k = default_constants) {
    if (fmt == Format::json) {
        nlohmann::json doc{{"command", "precess"}, {"planet", el.name},  {"delta_arcsec", delta},
                           {"rule", to_string(rule)}, {"constants", constants_json(k)}};
        doc["results"] = nlohmann::json::array();
        for (const auto& r : results) doc["results"].push_back(result_json(r));
        return doc.dump(2) + "\n";
    }
    if (fmt == Format::csv) {
        std::string out = "planet,delta_arcsec,rule,provenance,per_orbit_rad,per_century_arcsec\n";
        for (const auto& r : results)
            out += el.name + "," + num(delta) + "," + std::string(to_string(rule)) + "," +
                   std::string(to_string(r.provenance)) + "," + num(r.per_orbit) + "," + num(r.per_century) + "\n";
        return out;
    }
    std::string out;
    for (const auto& r : results)
        out += el.name + ": " + fixed2(r.per_century) + " arcsec/century (" + std::string(to_string(r.provenance)) +
               ", delta = " + num(delta) + " arcsec, rule = " + std::string(to_string(rule)) + ")\n";
    return out;
}

// ---------------------------------------------------------------- orbit

inline std::string render_orbit(const PlanetElements& el, double delta, QuantumRule rule, const OrbitSetup& setup,
                                const Trajectory& traj, const PerihelionSeries& series, Format fmt) {
    const double analytic = precession_per_orbit_from_epsilon(setup.analytic.epsilon);
    if (fmt == Format::csv) {
        std::string out = "theta_rad,u_inv_m,r_m\n";
        for (const auto& s : traj.samples) out += num(s.theta) + "," + num(s.u) + "," + num(1.0 / s.u) + "\n";
        return out;
    }
    if (fmt == Format::json) {
        nlohmann::json doc{{"command", "orbit"},
                           {"planet", el.name},
                           {"delta_arcsec", delta},
                           {"rule", to_string(rule)},
                           {"q_l_m", setup.model.q_l},
                           {"tol", traj.tol},
                           {"steps", traj.steps},
                           {"rejected_steps", traj.rejected_steps},
                           {"perihelia_rad", series.theta},
                           {"advances_rad", series.advance},
                           {"mean_advance_rad", series.mean_advance()},
                           {"analytic_advance_rad", analytic}};
        auto samples = nlohmann::json::array();
        for (const auto& s : traj.samples) samples.push_back({s.theta, s.u, 1.0 / s.u});
        doc["samples"] = std::move(samples);
        doc["sample_columns"] = {"theta_rad", "u_inv_m", "r_m"};
        return doc.dump(2) + "\n";
    }
    char buf[256];
    std::string out = el.name + ": integrated " + std::to_string(series.theta.size() - 1) + " orbits, " +
                      std::to_string(traj.steps) + " steps (" + std::to_string(traj.rejected_steps) +
                      " rejected), tol = " + num(traj.tol) + "\n";
    std::snprintf(buf, sizeof buf, "q_l = %.6g m, mean perihelion advance = %.6e rad/orbit (analytic %.6e)\n",
                  setup.model.q_l, series.mean_advance(), analytic);
    out += buf;
    return out;
}

// ---------------------------------------------------------------- fit

inline std::string render_fit(const FitResult& fit, const std::vector<Observation>& obs, QuantumRule rule, Format fmt) {
    if (fmt == Format::json) {
        nlohmann::json doc{{"command", "fit"},         {"rule", to_string(rule)},
                           {"delta_star_arcsec", fit.delta_star}, {"delta_sigma_arcsec", fit.delta_sigma},
                           {"chi2", fit.chi2}};
        doc["residuals"] = nlohmann::json::array();
        for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
            const auto& r = fit.residuals[i];
            doc["residuals"].push_back({{"planet", r.planet},
                                        {"observed_arcsec", r.observed},
                                        {"sigma_arcsec", obs[i].sigma},
                                        {"predicted_arcsec", r.predicted},
                                        {"residual_arcsec", r.residual}});
        }
        return doc.dump(2) + "\n";
    }
    if (fmt == Format::csv) {
        std::string out = "planet,observed_arcsec,sigma_arcsec,predicted_arcsec,residual_arcsec,delta_star_arcsec,"
                          "delta_sigma_arcsec,chi2\n";
        for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
            const auto& r = fit.residuals[i];
            out += r.planet + "," + num(r.observed) + "," + num(obs[i].sigma) + "," + num(r.predicted) + "," +
                   num(r.residual) + "," + num(fit.delta_star) + "," + num(fit.delta_sigma) + "," + num(fit.chi2) +
                   "\n";
        }
        return out;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "delta* = %.5f +/- %.5f arcsec (rule = %s), chi2 = %.2f\n", fit.delta_star,
                  fit.delta_sigma, std::string(to_string(rule)).c_str(), fit.chi2);
    std::vector<std::vector<std::string>> grid{{"planet", "observed", "predicted", "residual"}};
    for (std::size_t i = 0; i < fit.residuals.size(); ++i) {
        const auto& r = fit.residuals[i];
        grid.push_back({r.planet, fixed2(r.observed) + " +/- " + fixed2(obs[i].sigma), fixed2(r.predicted),
                        fixed2(r.residual)});
    }
    return buf + detail::render_grid(grid);
}

// ---------------------------------------------------------------- sweep

inline std::string render_sweep(const PlanetElements& el, QuantumRule rule, const std::vector<SweepRow>& rows,
                                Format fmt) {
    if (fmt == Format::json) {
        nlohmann::json doc{{"command", "sweep"}, {"planet", el.name}, {"rule", to_string(rule)}};
        doc["rows"] = nlohmann::json::array();
        for (const auto& r : rows) doc["rows"].push_back({{"delta_arcsec", r.delta}, {"per_century_arcsec", r.per_century}});
        return doc.dump(2) + "\n";
    }
    if (fmt == Format::csv) {
        std::string out = "delta_arcsec,per_century_arcsec\n";
        for (const auto& r : rows) out += num(r.delta) + "," + num(r.per_century) + "\n";
        return out;
    }
    std::vector<std::vector<std::string>> grid{{"delta", "arcsec/century"}};
    for (const auto& r : rows) grid.push_back({num(r.delta), fixed2(r.per_century)});
    return el.name + " (rule = " + std::string(to_string(rule)) + ")\n" + detail::render_grid(grid);
}

}  // namespace qgrav::report
