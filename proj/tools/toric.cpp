// Command-line front end: chow forms, discriminants, polygons and golden checks
// for codimension-2 toric varieties.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toric/cayley.hpp"
#include "toric/chow.hpp"
#include "toric/discriminant.hpp"
#include "toric/io.hpp"
#include "toric/lattice.hpp"
#include "toric/polygon.hpp"

#ifndef TORIC_FIXTURE_DIR
#define TORIC_FIXTURE_DIR "fixtures"
#endif

using namespace toric;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input;
    std::string vars;
    std::string pipeline = "residual";
    std::string emit_svg;
    std::string emit_json;
    std::string matrix;
    std::string b_vectors, c_vectors;
    std::vector<std::string> fixtures;
    double timeout_sec = 0;
    bool full = false;
    std::size_t trials = 20;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// "1,0; 0,1; -1,-1"
std::vector<Vec2> parse_pairs(const std::string& s) {
    std::vector<Vec2> out;
    for (const auto& p : split(s, ';')) {
        auto xy = split(p, ',');
        if (xy.size() != 2) throw PreconditionError("expected integer pairs 'a,b; c,d; ...', got '" + s + "'");
        try {
            out.push_back({std::stoll(xy[0]), std::stoll(xy[1])});
        } catch (const std::exception&) {
            throw PreconditionError("not an integer pair: '" + p + "'");
        }
    }
    return out;
}

ConfigInput load_config(const Options& o) {
    if (o.input.empty()) throw PreconditionError("--input is required");
    auto in = config_from_json(read_json_file(o.input));
    if (!o.vars.empty()) {
        in.vars = split(o.vars, ',');
        if (in.vars.size() != in.B.size()) throw PreconditionError("--vars must name one variable per row of B");
    }
    return in;
}

ContextPtr x_ctx(const ConfigInput& in) { return x_context(in.B.size(), in.vars); }
ContextPtr y_ctx(const ConfigInput& in) { return chow_context(in.B.size(), in.vars); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw PreconditionError("cannot write '" + path + "'");
    f << text;
}

void emit(const Options& o, const json& j) {
    if (!o.emit_json.empty()) write_file(o.emit_json, j.dump(2) + "\n");
}

int cmd_validate(const Options& o) {
    auto in = load_config(o);
    json j = to_json(in.B);
    j["prime"] = is_prime(in.B);
    if (is_prime(in.B)) j["A"] = gale_dual_a(in.B).rows;
    j["stats"] = to_json(compute_stats(in.B));
    json lines = json::array();
    for (const auto& l : relevant_lines(in.B)) lines.push_back(to_json(l));
    j["relevant_lines"] = lines;
    j["mu"] = mu_vector(in.B);
    j["centrally_symmetric"] = is_centrally_symmetric(in.B);
    std::cout << j.dump(2) << "\n";
    emit(o, j);
    return 0;
}

int cmd_chow(const Options& o) {
    auto in = load_config(o);
    auto y = y_ctx(in);
    ChowForm c = o.matrix.empty() ? chow_form(in.B, y) : bezout_chow_form(in.B, bezout_from_json(read_json_file(o.matrix)), y);
    std::cout << c.polynomial.to_string() << "\n";
    emit(o, {{"degree", c.degree}, {"terms", c.polynomial.size()}, {"chow_form", to_json(c.polynomial)}});
    return 0;
}

int cmd_bezout(const Options& o) {
    auto in = load_config(o);
    if (o.matrix.empty()) throw PreconditionError("bezout needs --matrix M.json");
    auto y = y_ctx(in);
    auto r = bezout_matrix(in.B, bezout_from_json(read_json_file(o.matrix)), y);
    json m = json::array();
    for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < r.matrix.cols(); ++k) row.push_back(r.matrix.at(i, k).to_string());
        m.push_back(row);
    }
    std::cout << "matrix " << r.matrix.rows() << "x" << r.matrix.cols() << "\n";
    for (const auto& row : m) std::cout << row.dump() << "\n";
    std::cout << r.determinant.to_string() << "\n";
    emit(o, {{"matrix", m}, {"determinant", to_json(r.determinant)}});
    return 0;
}

json zn_points(const std::vector<ZnPoint>& pts) { return pts; }

int cmd_polygons(const Options& o) {
    auto in = load_config(o);
    auto pb = build_PB(in.B);
    json j;
    j["P_B"] = to_json(pb);
    j["lattice_points"] = lattice_point_count(pb);
    j["boundary_points"] = boundary_point_count(pb);
    j["mu"] = mu_vector(in.B, pb);
    j["chow_polygon"] = zn_points(chow_polygon(in.B));
    j["secondary_polygon"] = zn_points(secondary_polygon(in.B));
    j["centrally_symmetric"] = is_centrally_symmetric(in.B);
    std::optional<LatticePolygon> qb;
    if (!in.B.has_zero_row()) {
        qb = build_QB(in.B);
        j["Q_B"] = to_json(*qb);
        j["newton_polygon_DA"] = zn_points(newton_polygon_DA(in.B));
        j["degree_DA"] = degree_DA(in.B);
    }
    std::cout << j.dump(2) << "\n";
    emit(o, j);
    if (!o.emit_svg.empty()) {
        write_file(o.emit_svg + "_PB.svg", polygon_svg(pb, "P_B"));
        if (qb) write_file(o.emit_svg + "_QB.svg", polygon_svg(*qb, "Q_B"));
    }
    return 0;
}

int cmd_full_disc(const Options& o) {
    auto in = load_config(o);
    auto x = x_ctx(in);
    auto dual = dual_full_discriminant(in.B, x);
    json j{{"E_dual", to_json(dual)}};
    if (is_prime(in.B)) {
        auto e = full_discriminant_from_dual(in.B, dual);
        std::cout << e.to_string() << "\n";
        j["E_A"] = to_json(e);
    } else {
        std::cerr << "note: B is not prime, printing the dual full discriminant only\n";
        std::cout << dual.to_string() << "\n";
    }
    emit(o, j);
    return 0;
}

int cmd_disc(const Options& o) {
    auto in = load_config(o);
    auto x = x_ctx(in);
    if (o.pipeline != "residual" && o.pipeline != "horn" && o.pipeline != "both")
        throw PreconditionError("--pipeline must be residual, horn or both");
    json j;
    std::optional<Polynomial> residual, horn;
    if (o.pipeline != "horn") {
        auto b = a_discriminant(in.B, x, {o.full});
        residual = b.D_A;
        j = to_json(b);
        for (const auto& n : b.notes) std::cerr << "note: " << n << "\n";
    }
    if (o.pipeline != "residual") {
        auto h = horn_implicitize(in.B, x);
        horn = h.lifted;
        j["horn"] = {{"delta", to_json(h.delta)}, {"lifted", to_json(h.lifted)}};
    }
    if (residual && horn && !(*residual == *horn)) {
        std::cerr << "error: residual-resultant and Horn pipelines disagree\n";
        emit(o, j);
        return 2;
    }
    std::cout << (residual ? *residual : *horn).to_string() << "\n";
    emit(o, j);
    return 0;
}

int cmd_horn(const Options& o) {
    auto in = load_config(o);
    auto h = horn_implicitize(in.B, x_ctx(in));
    std::cout << "Delta(w1, w2) = " << h.delta.to_string() << "\n";
    std::cout << "lifted = " << h.lifted.to_string() << "\n";
    emit(o, {{"delta", to_json(h.delta)}, {"lifted", to_json(h.lifted)}});
    return 0;
}

int cmd_cayley(const Options& o) {
    std::vector<Vec2> b, c;
    if (!o.input.empty()) {
        auto j = read_json_file(o.input);
        for (const auto& r : j.at("b")) b.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>()});
        for (const auto& r : j.at("c")) c.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>()});
    } else {
        b = parse_pairs(o.b_vectors);
        c = parse_pairs(o.c_vectors);
    }
    if (c.size() != 2) throw PreconditionError("need exactly two vectors c1, c2");
    auto cfg = build_cayley(b, c[0], c[1]);
    auto res = mixed_resultant(cfg);
    auto tb = check_term_bound(cfg, res);
    auto pf = product_formula_check(cfg, res, o.trials);
    std::cout << sparse_system(cfg).to_string();
    std::cout << "Gamma = " << cfg.Gamma << ", prod gamma_i = " << cfg.gamma_product << "\n";
    std::cout << "resultant = " << res.to_string() << "\n";
    std::cout << "terms " << tb.terms << " <= bound " << tb.bound << " (triangle points " << tb.triangle_points
              << "): " << (tb.holds ? "ok" : "VIOLATED") << (tb.tight ? ", tight" : "") << "\n";
    std::cout << "product formula (D_A^" << cfg.power() << "), " << pf.trials
              << " trials: max relative deviation " << pf.max_relative_deviation << ": "
              << (pf.passed ? "ok" : "FAILED") << "\n";
    emit(o, {{"derived_B", to_json(cfg.derived_B)["B"]},
             {"gammas", cfg.gammas},
             {"alphas", cfg.alphas},
             {"betas", cfg.betas},
             {"Gamma", cfg.Gamma},
             {"resultant", to_json(res)},
             {"terms", tb.terms},
             {"bound", tb.bound},
             {"product_formula_deviation", pf.max_relative_deviation}});
    return tb.holds && pf.passed ? 0 : 2;
}

// ---------------------------------------------------------------------------
// verify

struct CheckTable {
    int failed = 0;
    void row(const std::string& fixture, const std::string& check, const std::string& want, const std::string& got) {
        const bool ok = want == got;
        if (!ok) ++failed;
        std::cout << (ok ? "PASS  " : "FAIL  ") << fixture << "  " << check << "  expected " << want << ", got " << got
                  << "\n";
    }
};

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }

void verify_fixture(const fs::path& path, CheckTable& t) {
    const auto j = read_json_file(path.string());
    const std::string name = path.filename().string();
    if (!j.contains("expect")) return;
    const auto& e = j.at("expect");
    if (j.contains("b")) {
        Options o;
        std::vector<Vec2> b, c;
        for (const auto& r : j.at("b")) b.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>()});
        for (const auto& r : j.at("c")) c.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>()});
        auto cfg = build_cayley(b, c.at(0), c.at(1));
        auto res = mixed_resultant(cfg);
        auto tb = check_term_bound(cfg, res);
        if (e.contains("Gamma")) t.row(name, "Gamma", str(e["Gamma"].get<std::int64_t>()), str(cfg.Gamma));
        if (e.contains("terms")) t.row(name, "resultant terms", str(e["terms"].get<std::int64_t>()), str(static_cast<std::int64_t>(tb.terms)));
        if (e.contains("bound")) t.row(name, "term bound", str(e["bound"].get<std::int64_t>()), str(tb.bound));
        auto pf = product_formula_check(cfg, res, 20);
        t.row(name, "product formula", "true", str(pf.passed));
        return;
    }
    auto in = config_from_json(j);
    auto x = x_context(in.B.size(), in.vars);
    auto y = chow_context(in.B.size(), in.vars);
    const auto st = compute_stats(in.B);
    auto want_int = [&](const char* k) { return str(e[k].get<std::int64_t>()); };
    if (e.contains("degree")) t.row(name, "d_B", want_int("degree"), str(st.degree));
    if (e.contains("degree")) t.row(name, "d_B via mu", want_int("degree"), str(degree_via_mu(in.B)));
    if (e.contains("prime")) t.row(name, "prime", str(e["prime"].get<bool>()), str(is_prime(in.B)));
    if (e.contains("relevant_lines"))
        t.row(name, "relevant lines", want_int("relevant_lines"), str(static_cast<std::int64_t>(relevant_lines(in.B).size())));
    if (e.contains("lattice_points")) {
        t.row(name, "lattice points of P_B", want_int("lattice_points"), str(lattice_point_count(build_PB(in.B))));
    }
    if (e.contains("boundary_points"))
        t.row(name, "boundary points of P_B", want_int("boundary_points"), str(boundary_point_count(build_PB(in.B))));
    if (e.contains("centrally_symmetric"))
        t.row(name, "centrally symmetric", str(e["centrally_symmetric"].get<bool>()), str(is_centrally_symmetric(in.B)));
    std::optional<ChowForm> chow;
    if (e.contains("chow_terms")) {
        chow = chow_form(in.B, y);
        t.row(name, "chow form terms", want_int("chow_terms"), str(static_cast<std::int64_t>(chow->polynomial.size())));
        t.row(name, "chow form degree", want_int("chow_degree"), str(chow->polynomial.total_degree()));
        t.row(name, "chow form homogeneous", "true", str(chow->polynomial.is_homogeneous()));
    }
    if (e.contains("bezout") && chow) {
        auto m = bezout_from_json(read_json_file((path.parent_path() / e["bezout"].get<std::string>()).string()));
        auto bz = bezout_chow_form(in.B, m, y);
        t.row(name, "bezout determinant = chow form", "true", str(bz.polynomial == chow->polynomial));
    }
    if (e.contains("dual_terms")) {
        auto dual = dual_full_discriminant(in.B, x);
        t.row(name, "dual full discriminant terms", want_int("dual_terms"), str(static_cast<std::int64_t>(dual.size())));
        if (chow)
            t.row(name, "dual full discriminant = chow form at y = b x", "true",
                  str(dual_full_discriminant_from_chow(in.B, chow->polynomial, x) == dual));
        if (e.contains("dual_factorization")) {
            const auto& f = e["dual_factorization"];
            Polynomial prod = Polynomial::constant(x, Integer::from_string(f["constant"].get<std::string>()));
            for (const auto& s : f["factors"]) prod *= parse_polynomial(x, s.get<std::string>());
            t.row(name, "dual full discriminant factorization (up to sign)", "true",
                  str(dual == prod || dual == -prod));
        }
    }
    if (e.contains("da_terms")) {
        auto b = a_discriminant(in.B, x, {false});
        t.row(name, "D_A terms", want_int("da_terms"), str(static_cast<std::int64_t>(b.D_A.size())));
        t.row(name, "D_A degree", want_int("da_degree"), str(b.D_A.total_degree()));
        t.row(name, "D_A degree formula", want_int("da_degree"), str(degree_DA(in.B)));
        if (e.contains("da_coefficients"))
            for (const auto& c : e["da_coefficients"]) {
                auto ex = c["e"].get<std::vector<Exponent>>();
                std::string label = "D_A coefficient of [";
                for (std::size_t k = 0; k < ex.size(); ++k) label += (k ? "," : "") + std::to_string(ex[k]);
                t.row(name, label + "]", c["c"].get<std::string>(), b.D_A.coefficient_of(ex).to_string());
            }
        auto h = horn_implicitize(in.B, x);
        t.row(name, "Horn lift = D_A", "true", str(h.lifted == b.D_A));
    }
}

int cmd_verify(const Options& o) {
    std::vector<fs::path> files;
    for (const auto& f : o.fixtures) files.emplace_back(f);
    if (!o.input.empty()) files.emplace_back(o.input);
    if (files.empty()) {
        for (const auto& entry : fs::directory_iterator(TORIC_FIXTURE_DIR))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
    }
    CheckTable t;
    for (const auto& f : files) verify_fixture(f, t);
    std::cout << (t.failed == 0 ? "all checks passed" : std::to_string(t.failed) + " check(s) failed") << "\n";
    return t.failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chow forms, full discriminants and A-discriminants of codimension-2 toric varieties"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c, bool input_required) {
        auto* opt = c->add_option("--input,-i", o.input, "JSON file with \"B\" (n x 2) or \"A\" ((n-2) x n)");
        if (input_required) opt->required();
        c->add_option("--vars", o.vars, "comma-separated variable names, one per row of B");
        c->add_option("--emit-json", o.emit_json, "write a JSON result to this path");
        c->add_option("--timeout-sec", o.timeout_sec, "abort the computation after this many seconds");
    };
    auto* validate = app.add_subcommand("validate", "check B, print A, d_B, nu, relevant lines");
    common(validate, true);
    auto* chow = app.add_subcommand("chow", "Chow form (Sylvester route, or Bezout route with --matrix)");
    common(chow, true);
    chow->add_option("--matrix,--bezout", o.matrix, "2x3 monomial matrix JSON for the Bezout route");
    auto* bezout = app.add_subcommand("bezout", "Bezout matrix and its determinant");
    common(bezout, true);
    bezout->add_option("--matrix", o.matrix, "2x3 monomial matrix JSON")->required();
    auto* polygons = app.add_subcommand("polygons", "P_B, Q_B, Chow, secondary and Newton polygons");
    common(polygons, true);
    polygons->add_option("--emit-svg", o.emit_svg, "write <prefix>_PB.svg and <prefix>_QB.svg");
    auto* full = app.add_subcommand("full-disc", "full discriminant E_A");
    common(full, true);
    auto* disc = app.add_subcommand("disc", "A-discriminant D_A");
    common(disc, true);
    disc->add_option("--pipeline", o.pipeline, "residual, horn or both")->check(CLI::IsMember({"residual", "horn", "both"}));
    disc->add_flag("--full", o.full, "also compute E_A and verify its factorization");
    auto* horn = app.add_subcommand("horn", "Horn uniformization and implicit equation");
    common(horn, true);
    auto* cayley = app.add_subcommand("cayley", "mixed resultant of a Cayley configuration");
    common(cayley, false);
    cayley->add_option("--b", o.b_vectors, "vectors b_i as 'x,y; x,y; ...'");
    cayley->add_option("--c", o.c_vectors, "vectors c1, c2 as 'x,y; x,y'");
    cayley->add_option("--trials", o.trials, "random trials for the product formula");
    auto* verify = app.add_subcommand("verify", "replay the golden fixtures");
    common(verify, false);
    verify->add_option("fixtures", o.fixtures, "fixture files (default: all shipped fixtures)");

    CLI11_PARSE(app, argc, argv);
    try {
        std::optional<CancelScope> scope;
        if (o.timeout_sec > 0)
            scope.emplace(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(o.timeout_sec)));
        if (*validate) return cmd_validate(o);
        if (*chow) return cmd_chow(o);
        if (*bezout) return cmd_bezout(o);
        if (*polygons) return cmd_polygons(o);
        if (*full) return cmd_full_disc(o);
        if (*disc) return cmd_disc(o);
        if (*horn) return cmd_horn(o);
        if (*cayley) return cmd_cayley(o);
        if (*verify) return cmd_verify(o);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const InexactDivision& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const Cancelled& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
