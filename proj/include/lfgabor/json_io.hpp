#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfgabor/certify.hpp"
#include "lfgabor/gabor.hpp"
#include "lfgabor/grid.hpp"
#include "lfgabor/oracle.hpp"

namespace lfgabor {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Deterministic serialization: floats printed with 17 significant digits so
// identical runs produce byte-identical reports.
// ---------------------------------------------------------------------------

namespace detail {

inline void dumpFixed(const Json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string padEnd(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += Json(it.key()).dump();
                out += ": ";
                dumpFixed(it.value(), out, indent, depth + 1);
            }
            out += "\n" + padEnd + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dumpFixed(v, out, indent, depth + 1);
            }
            out += "\n" + padEnd + "]";
            return;
        }
        case Json::value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace detail

inline std::string dumpFixed(const Json& j) {
    std::string out;
    detail::dumpFixed(j, out, 2, 0);
    out += "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Config parsing with field-naming diagnostics
// ---------------------------------------------------------------------------

namespace detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& context) {
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument("config: missing field '" + context + key + "'");
    return j.at(key);
}

inline int requireInt(const Json& j, const std::string& key, const std::string& context) {
    const Json& v = require(j, key, context);
    if (!v.is_number_integer())
        throw std::invalid_argument("config: field '" + context + key + "' must be an integer");
    return v.get<int>();
}

inline double requireNumber(const Json& j, const std::string& key, const std::string& context) {
    const Json& v = require(j, key, context);
    if (!v.is_number())
        throw std::invalid_argument("config: field '" + context + key + "' must be a number");
    return v.get<double>();
}

}  // namespace detail

inline FieldParams fieldFromJson(const Json& j) {
    const int p = detail::requireInt(j, "p", "field.");
    const int c = detail::requireInt(j, "c", "field.");
    std::vector<int> modulus;
    if (j.contains("modulusPoly")) {
        if (!j.at("modulusPoly").is_array())
            throw std::invalid_argument("config: field 'field.modulusPoly' must be an array");
        for (const auto& v : j.at("modulusPoly")) modulus.push_back(v.get<int>());
    }
    return FieldParams(p, c, std::move(modulus));
}

inline Json fieldToJson(const FieldParams& f) {
    return Json{{"p", f.p()}, {"c", f.c()}, {"modulusPoly", f.modulus()}};
}

inline GridSpec gridFromJson(const Json& field, const Json& grid) {
    return GridSpec(fieldFromJson(field), detail::requireInt(grid, "M", "grid."),
                    detail::requireInt(grid, "N", "grid."));
}

inline Json gridToJson(const GridSpec& g) {
    Json j = fieldToJson(g.field());
    j["M"] = g.M();
    j["N"] = g.N();
    return j;
}

inline WindowSpec windowFromJson(const FieldParams& f, const Json& j) {
    WindowSpec spec;
    const Json& dom = detail::require(j, "domain", "window.");
    if (dom == "time")
        spec.domain = Domain::time;
    else if (dom == "frequency")
        spec.domain = Domain::frequency;
    else
        throw std::invalid_argument("config: field 'window.domain' must be \"time\" or \"frequency\"");
    const Json& terms = detail::require(j, "terms", "window.");
    if (!terms.is_array() || terms.empty())
        throw std::invalid_argument("config: field 'window.terms' must be a nonempty array");
    for (const auto& t : terms) {
        WindowTerm term;
        term.k = detail::requireInt(t, "k", "window.terms[].");
        const Json& h = detail::require(t, "h", "window.terms[].");
        if (!h.is_string())
            throw std::invalid_argument("config: field 'window.terms[].h' must be an element string");
        term.h = lf_parse(f, h.get<std::string>());
        term.coeff = {detail::requireNumber(t, "re", "window.terms[]."),
                      t.contains("im") ? t.at("im").get<double>() : 0.0};
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

inline Json windowToJson(const FieldParams& f, const WindowSpec& spec) {
    Json terms = Json::array();
    for (const auto& t : spec.terms)
        terms.push_back(Json{{"k", t.k},
                             {"h", lf_format(f, t.h)},
                             {"re", t.coeff.real()},
                             {"im", t.coeff.imag()}});
    return Json{{"domain", domainName(spec.domain)}, {"terms", terms}};
}

/// Everything a CLI run needs. Parsed and validated before any computation.
struct RunConfig {
    FieldParams field;
    GridSpec grid;
    LatticeParams lattice;
    std::optional<WindowSpec> window;
    std::uint64_t seed = 0;
};

inline RunConfig runConfigFromJson(const Json& j) {
    if (j.contains("schemaVersion") && j.at("schemaVersion").get<int>() != kSchemaVersion)
        throw std::invalid_argument("config: unsupported schemaVersion");
    FieldParams field = fieldFromJson(detail::require(j, "field", ""));
    GridSpec grid = gridFromJson(detail::require(j, "field", ""), detail::require(j, "grid", ""));
    const Json& lat = detail::require(j, "lattice", "");
    RunConfig cfg{field, grid,
                  {detail::requireInt(lat, "s", "lattice."), detail::requireInt(lat, "t", "lattice.")},
                  std::nullopt, 0};
    if (j.contains("window")) cfg.window = windowFromJson(field, j.at("window"));
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

inline RunConfig runConfigFromFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config: JSON parse error in " + path + ": " + e.what());
    }
    return runConfigFromJson(j);
}

// ---------------------------------------------------------------------------
// SampledFunction serialization: compact JSON and CSV
// ---------------------------------------------------------------------------

inline Json sampledToJson(const SampledFunction& f) {
    Json values = Json::array();
    for (const auto& v : f.values) values.push_back(Json::array({v.real(), v.imag()}));
    return Json{{"schemaVersion", kSchemaVersion},
                {"grid", gridToJson(f.grid)},
                {"domain", domainName(f.domain)},
                {"values", values}};
}

inline SampledFunction sampledFromJson(const Json& j) {
    const Json& gj = detail::require(j, "grid", "");
    GridSpec grid = gridFromJson(gj, gj);
    const Json& dom = detail::require(j, "domain", "");
    Domain d = dom == "time" ? Domain::time : Domain::frequency;
    if (dom != "time" && dom != "frequency")
        throw std::invalid_argument("function: field 'domain' must be \"time\" or \"frequency\"");
    const Json& values = detail::require(j, "values", "");
    if (!values.is_array() || values.size() != grid.size())
        throw std::invalid_argument("function: 'values' must have exactly D entries");
    SampledFunction f = SampledFunction::zeros(grid, d);
    for (std::size_t i = 0; i < values.size(); ++i)
        f.values[i] = {values[i].at(0).get<double>(), values[i].at(1).get<double>()};
    return f;
}

inline std::string sampledToCsv(const SampledFunction& f) {
    std::string out = "index,re,im\n";
    char buf[96];
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, f.values[i].real(),
                      f.values[i].imag());
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json theoremToJson(const TheoremVerdict& t) {
    return Json{{"applicable", t.applicable}, {"C", t.C}, {"D", t.D}};
}

inline Json certificateToJson(const CertificateReport& rep, const GridSpec& grid,
                              const LatticeParams& lat, const WindowSpec& window,
                              const OracleResult* oracle, const CertificateVerdict* verdict) {
    Json j{{"schemaVersion", kSchemaVersion},
           {"window", windowToJson(grid.field(), window)},
           {"lattice", Json{{"s", lat.s}, {"t", lat.t}}},
           {"grid", gridToJson(grid)},
           {"normalization", Json{{"absA", rep.absA}}},
           {"scalars", Json{{"alpha0", rep.quantities.alpha0},
                            {"beta", rep.quantities.beta},
                            {"gamma", rep.quantities.gamma},
                            {"mu", rep.quantities.mu},
                            {"sigma", rep.quantities.sigma}}},
           {"kMax", rep.quantities.kMax},
           {"theorems", Json{{"2.1", theoremToJson(rep.t21)},
                             {"2.2", theoremToJson(rep.t22)},
                             {"2.3", theoremToJson(rep.t23)}}}};
    if (!rep.diagnostic.empty()) j["diagnostic"] = rep.diagnostic;
    if (oracle) {
        Json oj{{"Amin", oracle->Amin},
                {"Bmax", oracle->Bmax},
                {"dim", oracle->dim},
                {"isFrame", oracle->isFrame}};
        if (verdict) {
            oj["bracketed"] = verdict->bracketed;
            oj["anyApplicable"] = verdict->anyApplicable;
            oj["violations"] = verdict->violations;
        }
        j["oracle"] = oj;
    }
    return j;
}

}  // namespace lfgabor
