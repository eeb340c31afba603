#pragma once

// Planets and observations tables.
//
// Both are JSON documents with a file-level "schema_version": 1 and an array
// of flat records:
//
//   {"schema_version": 1,
//    "planets": [{"name": "Mercury", "a_m": 5.79092e10, "e": 0.20563069, "tau_days": 87.96926}]}
//
//   {"schema_version": 1,
//    "observations": [{"planet": "Mercury", "value_arcsec": 43.11, "sigma_arcsec": 0.45}]}
//
// Unknown keys are rejected at both levels.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgrav/bodies.hpp"
#include "qgrav/observation.hpp"
#include "qgrav/errors.hpp"

namespace qgrav {

inline constexpr int schema_version = 1;

namespace detail {

inline void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                       const std::string& where) {
    if (!obj.is_object()) throw ingestion_error(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ingestion_error(where + ": unknown field '" + key + "'");
    }
    for (const auto& key : allowed) {
        if (!obj.contains(key)) throw ingestion_error(where + ": missing field '" + key + "'");
    }
}

inline double number_field(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ingestion_error(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

inline std::string string_field(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ingestion_error(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline const nlohmann::json& table_body(const nlohmann::json& doc, const char* table) {
    check_keys(doc, {"schema_version", table}, "document");
    const auto& version = doc.at("schema_version");
    if (!version.is_number_integer() || version.get<int>() != schema_version)
        throw ingestion_error("document: unsupported schema_version " + version.dump());
    const auto& rows = doc.at(table);
    if (!rows.is_array()) throw ingestion_error(std::string("document: '") + table + "' must be an array");
    return rows;
}

inline nlohmann::json parse_document(std::istream& in) {
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ingestion_error(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace detail

inline std::vector<PlanetElements> parse_planets(const nlohmann::json& doc) {
    std::vector<PlanetElements> out;
    const auto& rows = detail::table_body(doc, "planets");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        std::string where = "planets[" + std::to_string(i) + "]";
        if (row.is_object() && row.contains("name") && row["name"].is_string())
            where += " (" + row["name"].get<std::string>() + ")";
        detail::check_keys(row, {"name", "a_m", "e", "tau_days"}, where);
        PlanetElements el{detail::string_field(row, "name", where), detail::number_field(row, "a_m", where),
                          detail::number_field(row, "e", where), detail::number_field(row, "tau_days", where)};
        validate(el);
        out.push_back(std::move(el));
    }
    return out;
}

inline std::vector<PlanetElements> parse_planets(std::istream& in) {
    return parse_planets(detail::parse_document(in));
}

inline std::vector<Observation> parse_observations(const nlohmann::json& doc) {
    std::vector<Observation> out;
    const auto& rows = detail::table_body(doc, "observations");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = "observations[" + std::to_string(i) + "]";
        const auto& row = rows[i];
        detail::check_keys(row, {"planet", "value_arcsec", "sigma_arcsec"}, where);
        Observation ob{detail::string_field(row, "planet", where), detail::number_field(row, "value_arcsec", where),
                       detail::number_field(row, "sigma_arcsec", where)};
        if (!(ob.sigma > 0.0) || !std::isfinite(ob.value))
            throw ingestion_error(where + " (" + ob.planet + "): sigma must be positive and value finite");
        out.push_back(std::move(ob));
    }
    return out;
}

inline std::vector<Observation> parse_observations(std::istream& in) {
    return parse_observations(detail::parse_document(in));
}

/// Observed centurial advances with 1-sigma errors for the bundled planets.
inline std::vector<Observation> bundled_observations() {
    return {{"Mercury", 43.11, 0.45}, {"Venus", 8.4, 4.8}, {"Earth", 5.0, 1.2}};
}

/// Where bundled tables live: $QGRAV_DATA_DIR, else the install-time data
/// directory if one was compiled in. Empty when neither is available.
inline std::optional<std::filesystem::path> data_dir() {
    if (const char* env = std::getenv("QGRAV_DATA_DIR"); env && *env) return std::filesystem::path(env);
#ifdef QGRAV_DEFAULT_DATA_DIR
    if (std::filesystem::is_directory(QGRAV_DEFAULT_DATA_DIR)) return std::filesystem::path(QGRAV_DEFAULT_DATA_DIR);
#endif
    return std::nullopt;
}

namespace detail {

inline std::ifstream open_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open " + path.string());
    return in;
}

}  // namespace detail

/// Reads a planets table; with no path, the bundled table.
inline std::vector<PlanetElements> load_planets(const std::optional<std::filesystem::path>& path = std::nullopt) {
    if (path) {
        auto in = detail::open_table(*path);
        return parse_planets(in);
    }
    if (auto dir = data_dir()) {
        auto in = detail::open_table(*dir / "planets.json");
        return parse_planets(in);
    }
    return bundled_planets();
}

inline std::vector<Observation> load_observations(
    const std::optional<std::filesystem::path>& path = std::nullopt) {
    if (path) {
        auto in = detail::open_table(*path);
        return parse_observations(in);
    }
    if (auto dir = data_dir()) {
        auto in = detail::open_table(*dir / "observations.json");
        return parse_observations(in);
    }
    return bundled_observations();
}

}  // namespace qgrav
