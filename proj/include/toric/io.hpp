#pragma once

// JSON serialization of polynomials, configurations, polygons and
// discriminant bundles.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chow.hpp"
#include "discriminant.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "poly.hpp"
#include "polygon.hpp"

namespace toric {

using json = nlohmann::ordered_json;

inline json to_json(const Polynomial& f) {
    json j;
    j["vars"] = f.context()->names();
    json terms = json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto e = f.exponents(i);
        terms.push_back({{"e", std::vector<Exponent>(e.begin(), e.end())}, {"c", f.coeff(i).to_string()}});
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Polynomial polynomial_from_json(const json& j) {
    try {
        auto ctx = make_context(j.at("vars").get<std::vector<std::string>>());
        std::vector<std::pair<std::vector<Exponent>, Integer>> terms;
        for (const auto& t : j.at("terms")) {
            auto e = t.at("e").get<std::vector<Exponent>>();
            if (e.size() != ctx->size()) throw PreconditionError("term exponent length does not match \"vars\"");
            const auto& c = t.at("c");
            terms.emplace_back(std::move(e), c.is_string() ? Integer::from_string(c.get<std::string>())
                                                           : Integer(c.get<std::int64_t>()));
        }
        return Polynomial::from_terms(ctx, std::move(terms));
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("malformed polynomial JSON: ") + e.what());
    }
}

inline json to_json(const BConfig& b) {
    json rows = json::array();
    for (const auto& r : b.rows) rows.push_back({r[0], r[1]});
    return {{"B", rows}};
}

inline json to_json(const AConfig& a) { return {{"A", a.rows}}; }

struct ConfigInput {
    BConfig B;
    std::vector<std::string> vars;  // optional names, one per row
    bool from_a = false;
};

// {"B": [[b11, b12], ...]} or {"A": [[...], ...]}, optionally with "vars".
inline ConfigInput config_from_json(const json& j) {
    ConfigInput in;
    try {
        if (j.contains("B")) {
            std::vector<Vec2> rows;
            for (const auto& r : j.at("B")) {
                if (!r.is_array() || r.size() != 2) throw PreconditionError("every row of B must have two entries");
                rows.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>()});
            }
            in.B = validate_b(std::move(rows));
        } else if (j.contains("A")) {
            AConfig a{j.at("A").get<std::vector<std::vector<std::int64_t>>>()};
            in.B = gale_dual_b(a);
            in.from_a = true;
        } else {
            throw PreconditionError("input must contain \"B\" or \"A\"");
        }
        if (j.contains("vars")) in.vars = j.at("vars").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("malformed configuration JSON: ") + e.what());
    }
    if (!in.vars.empty() && in.vars.size() != in.B.size())
        throw PreconditionError("\"vars\" must name one variable per row of B");
    return in;
}

// {"M": [[m11, m12, m13], [m21, m22, m23]]} with each entry an exponent vector.
inline BezoutInput bezout_from_json(const json& j) {
    BezoutInput in;
    try {
        const auto& m = j.at("M");
        if (m.size() != 2 || m[0].size() != 3 || m[1].size() != 3)
            throw PreconditionError("\"M\" must be a 2x3 array of exponent vectors");
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 3; ++c) in.m[3 * r + c] = m[r][c].get<std::vector<std::int64_t>>();
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("malformed Bezout JSON: ") + e.what());
    }
    return in;
}

inline json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot read input file '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline json points_to_json(const std::vector<Vec2>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back({p[0], p[1]});
    return a;
}

inline json to_json(const LatticePolygon& p) {
    json edges = json::array();
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
        std::vector<std::size_t> rows;
        for (auto r : p.edge_rows[k]) rows.push_back(r + 1);
        edges.push_back({{"vector", {p.edges[k][0], p.edges[k][1]}}, {"rows", rows}});
    }
    return {{"vertices", points_to_json(p.vertices)}, {"edges", edges}};
}

inline json to_json(const RelevantLine& l) {
    std::vector<std::size_t> rows;
    for (auto r : l.members) rows.push_back(r + 1);
    return {{"v", {l.v[0], l.v[1]}}, {"rows", rows}, {"lambda", l.lambdas}, {"alpha", l.alpha}, {"delta", l.delta}};
}

inline json to_json(const ConfigStats& st) {
    json nu = json::array();
    for (const auto& e : st.nu) nu.push_back({{"r", e.r + 1}, {"s", e.s + 1}, {"nu", e.nu}});
    return {{"beta", {st.beta1, st.beta2}}, {"nu", nu}, {"nu_sum", st.nu_sum}, {"degree", st.degree}};
}

inline json to_json(const DiscriminantBundle& b) {
    json j;
    j["D_A"] = to_json(b.D_A);
    j["nu"] = b.nu.to_string();
    j["u"] = b.u.exponents;
    json facets = json::array();
    for (const auto& f : b.facets)
        facets.push_back({{"line", to_json(f.line)}, {"D_v", to_json(f.binomial)}, {"delta", f.delta}});
    j["facets"] = facets;
    if (b.E_A) {
        j["E_A"] = to_json(*b.E_A);
        j["E_dual"] = to_json(*b.E_dual);
        j["nu_prime"] = b.nu_prime.to_string();
        j["u_prime"] = b.u_prime.exponents;
    }
    j["r_B"] = to_json(b.r_B);
    if (!b.notes.empty()) j["notes"] = b.notes;
    return j;
}

}  // namespace toric
