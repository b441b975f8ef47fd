#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gband/errors.hpp"
#include "gband/graphon.hpp"
#include "gband/hom_density.hpp"
#include "gband/norms.hpp"
#include "gband/step_fuzzy.hpp"

namespace gband {

using nlohmann::json;

/// %.17g: shortest form that still round-trips a double; '.' decimal point.
inline std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline json step_to_json(const StepField2D& f) {
    json j;
    j["breakpoints"] = f.partition().breakpoints();
    json rows = json::array();
    const std::size_t k = f.block_count();
    for (std::size_t i = 0; i < k; ++i) {
        json row = json::array();
        for (std::size_t jj = 0; jj < k; ++jj) row.push_back(f.value(i, jj));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

inline StepField2D field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values")) {
        throw InvalidInput("step function JSON needs 'breakpoints' and 'values'");
    }
    std::vector<double> breakpoints;
    for (const auto& x : j.at("breakpoints")) {
        if (!x.is_number()) throw InvalidInput("breakpoint is not a number");
        breakpoints.push_back(x.get<double>());
    }
    Partition p{std::move(breakpoints)}; // validates monotone 0..1 invariants
    const std::size_t k = p.block_count();
    const auto& rows = j.at("values");
    if (!rows.is_array() || rows.size() != k) {
        throw InvalidInput("value matrix must have one row per block");
    }
    std::vector<double> values;
    values.reserve(k * k);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != k) {
            throw InvalidInput("value matrix rows must have one entry per block");
        }
        for (const auto& x : row) {
            if (!x.is_number()) throw InvalidInput("block value is not a number");
            values.push_back(x.get<double>());
        }
    }
    return StepField2D(std::move(p), std::move(values));
}

inline StepFuzzy2D fuzzy_from_json(const json& j) {
    return StepFuzzy2D(field_from_json(j));
}

inline Graphon graphon_from_json(const json& j) {
    return validate_graphon(fuzzy_from_json(j));
}

inline json graph_to_json(const SimpleGraph& g) {
    json j;
    j["n"] = g.vertex_count();
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back(json::array({a, b})); // a < b
    j["edges"] = std::move(edges);
    return j;
}

inline SimpleGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
        throw InvalidInput("graph JSON needs 'n' and 'edges'");
    }
    if (!j.at("n").is_number_integer()) throw InvalidInput("'n' must be an integer");
    const long long n = j.at("n").get<long long>();
    if (n < 1) throw InvalidInput("'n' must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            throw InvalidInput("edge must be a pair of integers");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>()); // either order accepted
    }
    return SimpleGraph(static_cast<std::size_t>(n), std::move(edges));
}

inline json density_to_json(const DensityEstimate& e) {
    return json{{"value", e.value},
                {"std_error", e.std_error},
                {"samples", e.samples},
                {"method", method_name(e.method)}};
}

inline json bound_report_to_json(const BoundReport& r) {
    return json{{"lhs", r.lhs},
                {"rhs", r.rhs},
                {"cut0", r.cut0},
                {"l1", r.l1},
                {"edge_count", r.edge_count},
                {"sup_W", r.sup_w},
                {"sup_f", r.sup_f},
                {"delta_area", r.delta_area},
                {"holds", r.holds},
                {"chain_holds", r.chain_holds},
                {"slack", r.slack}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
    if (!out) throw InvalidInput("write failed for '" + path + "'");
}

} // namespace gband
