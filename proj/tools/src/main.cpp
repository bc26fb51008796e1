// noethkit command line: every subcommand prints a single JSON object
// {"command", "inputs", "result"} on stdout. Output is deterministic for a
// fixed argument vector (and --seed where one applies).
//
// Exit codes: 0 success, 2 bad input or usage, 3 point not integrable,
// 4 inconclusive oracle, 5 internal degree-budget violation.

#include <noethkit/bound_expr.hpp>
#include <noethkit/bounds.hpp>
#include <noethkit/chain.hpp>
#include <noethkit/chain_io.hpp>
#include <noethkit/deflicity.hpp>
#include <noethkit/errors.hpp>
#include <noethkit/local_mult.hpp>
#include <noethkit/ni_perturb.hpp>
#include <noethkit/polynomial.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace noethkit;

namespace {

json integer_json(const integer& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

json rational_json(const rational& r) {
    if (r.get_den() == 1) return integer_json(r.get_num());
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

json point_json(const std::vector<rational>& coords) {
    json a = json::array();
    for (const rational& c : coords) a.push_back(rational_json(c));
    return a;
}

// Power products are reported symbolically with a certified decimal-log
// enclosure; --expand adds the decimal digits when they fit the cap.
json bound_json(const bound_expr& b, bool expand) {
    json out;
    out["power_product"] = b.str();
    auto [lo, hi] = b.log10_enclosure();
    out["log10"] = json::array({lo, hi});
    if (expand) {
        auto v = b.expand();
        out["expanded"] = v ? json(v->get_str()) : json(nullptr);
    }
    return out;
}

json mult_json(const mult_result& r) {
    json out;
    if (r.decided()) {
        out["multiplicity"] = static_cast<std::uint64_t>(*r.value);
    } else {
        out["undecided"] = true;
        out["order"] = r.order;
    }
    return out;
}

json checks_json(const std::vector<std::pair<std::string, bool>>& checks) {
    json a = json::array();
    for (const auto& [label, ok] : checks) a.push_back({{"check", label}, {"ok", ok}});
    return a;
}

json branch_json(const branch& b) {
    json out;
    out["vertical"] = b.vertical;
    out["ramification"] = b.ram;
    out["series"] = b.x2_series.str();
    out["truncation"] = b.truncation;
    out["multiplicity"] = static_cast<std::uint64_t>(b.multiplicity);
    return out;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<poly> parse_system(const std::string& text, const arena& allowed) {
    std::vector<poly> out;
    for (const std::string& part : split_list(text, ';')) out.push_back(poly::parse(part, allowed));
    return out;
}

std::vector<unsigned> parse_word(const std::string& text, unsigned n) {
    std::vector<unsigned> word;
    for (const std::string& part : split_list(text, ',')) {
        std::size_t pos = 0;
        unsigned long axis = 0;
        try {
            axis = std::stoul(part, &pos);
        } catch (const std::exception&) {
            throw usage_error("bad derivation word entry '" + part + "'");
        }
        while (pos < part.size() && std::isspace(static_cast<unsigned char>(part[pos]))) ++pos;
        if (pos != part.size() || axis < 1 || axis > n)
            throw usage_error("derivation axes must lie in 1.." + std::to_string(n));
        word.push_back(static_cast<unsigned>(axis));
    }
    return word;
}

// A point argument is either the name of a point recorded in the chain file
// or a comma-separated coordinate list.
leaf_point resolve_point(const chain_file& cf, const std::string& text) {
    auto it = cf.points.find(text);
    if (it != cf.points.end()) return it->second;
    leaf_point q{parse_point_csv(text)};
    if (q.coords.size() != cf.c.n() + cf.c.m())
        throw usage_error("point needs " + std::to_string(cf.c.n() + cf.c.m()) +
                          " coordinates, got " + std::to_string(q.coords.size()));
    return q;
}

void emit(const std::string& command, json inputs, json result) {
    json out;
    out["command"] = command;
    out["inputs"] = std::move(inputs);
    out["result"] = std::move(result);
    std::cout << out.dump(2) << "\n";
}

struct common_args {
    std::string chain_path;
    std::string point_text;
    unsigned precision = 128;
    bool expand = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-numeric multiplicity toolkit for Noetherian chains"};
    app.require_subcommand(1);
    bool json_flag = false;  // output is always JSON; kept for script compat
    bool expand = false;
    app.add_flag("--json", json_flag, "emit JSON output (always on)");
    app.add_flag("--expand", expand, "expand power products to decimal digits (capped)");

    // bounds
    auto* cmd_bounds = app.add_subcommand("bounds", "degree and multiplicity bound formulas");
    std::int64_t b_m = 0, b_n = 1, b_delta = 1, b_d = 1;
    std::string b_k;
    unsigned b_precision = 128;
    cmd_bounds->add_option("--m", b_m, "number of chain functions")->required();
    cmd_bounds->add_option("--n", b_n, "number of variables")->required();
    cmd_bounds->add_option("--delta", b_delta, "chain degree")->required();
    cmd_bounds->add_option("--d", b_d, "input degree")->required();
    cmd_bounds->add_option("--k", b_k, "also report the degree after k derivative steps");
    cmd_bounds->add_option("--precision", b_precision, "interval precision in bits");

    // verify-bounds-grid
    auto* cmd_grid = app.add_subcommand("verify-bounds-grid",
                                        "re-derive every bound inequality over a parameter grid");
    unsigned g_max_mn = 2, g_max_d = 3, g_jobs = 1, g_precision = 128;
    cmd_grid->add_option("--max-mn", g_max_mn, "grid limit for m and n")->required();
    cmd_grid->add_option("--max-d", g_max_d, "grid limit for d and delta")->required();
    cmd_grid->add_option("--jobs", g_jobs, "parallel workers");
    cmd_grid->add_option("--precision", g_precision, "interval precision in bits");

    // derive
    auto* cmd_derive = app.add_subcommand("derive", "apply a word of chain derivations");
    std::string dv_chain, dv_poly, dv_word;
    cmd_derive->add_option("--chain", dv_chain, "chain JSON file")->required();
    cmd_derive->add_option("--poly", dv_poly, "polynomial to derive")->required();
    cmd_derive->add_option("--word", dv_word, "comma-separated axes, leftmost applied last")->required();

    // jet
    auto* cmd_jet = app.add_subcommand("jet", "truncated leaf restriction at a point");
    std::string j_chain, j_poly, j_point;
    unsigned j_order = 4;
    cmd_jet->add_option("--chain", j_chain, "chain JSON file")->required();
    cmd_jet->add_option("--poly", j_poly, "polynomial to restrict")->required();
    cmd_jet->add_option("--point", j_point, "base point (name or coordinates)")->required();
    cmd_jet->add_option("--order", j_order, "truncation order");

    // il
    auto* cmd_il = app.add_subcommand("il", "integrability-locus generators and membership");
    std::string il_chain, il_point;
    unsigned il_depth = 0;
    cmd_il->add_option("--chain", il_chain, "chain JSON file")->required();
    cmd_il->add_option("--depth", il_depth, "bracket depth (0 = default for the chain)");
    cmd_il->add_option("--point", il_point, "test this point against the generators");

    // mult
    auto* cmd_mult = app.add_subcommand("mult", "multiplicity of an isolated solution on a leaf");
    std::string m_chain, m_system, m_point;
    unsigned m_order = 64;
    cmd_mult->add_option("--chain", m_chain, "chain JSON file")->required();
    cmd_mult->add_option("--system", m_system, "semicolon-separated system")->required();
    cmd_mult->add_option("--point", m_point, "base point (name or coordinates)")->required();
    cmd_mult->add_option("--order", m_order, "truncation cap for the dual-space schedule");

    // deflicity
    auto* cmd_defl = app.add_subcommand("deflicity",
                                        "deflicity of a cut system (symbolic or numeric family)");
    std::string df_chain, df_system, df_rho, df_point, df_family;
    std::string df_eps = "1/1000,1/10000";
    double df_radius = 0.1;
    unsigned df_order = 16;
    cmd_defl->add_option("--chain", df_chain, "chain JSON file (symbolic mode)");
    cmd_defl->add_option("--system", df_system, "semicolon-separated section tuple (symbolic mode)");
    cmd_defl->add_option("--rho", df_rho, "projection polynomial (symbolic mode)");
    cmd_defl->add_option("--point", df_point, "base point")->required();
    cmd_defl->add_option("--order", df_order, "branch truncation order");
    cmd_defl->add_option("--family", df_family,
                         "semicolon-separated family in x-variables and eps (numeric mode)");
    cmd_defl->add_option("--eps", df_eps, "comma-separated eps samples (numeric mode)");
    cmd_defl->add_option("--radius", df_radius, "root-collection radius (numeric mode)");

    // ni
    auto* cmd_ni = app.add_subcommand("ni", "non-isolation locus generators and membership");
    std::string ni_chain, ni_syst, ni_rho, ni_point;
    unsigned ni_khat = 4;
    cmd_ni->add_option("--chain", ni_chain, "chain JSON file")->required();
    cmd_ni->add_option("--system", ni_syst, "semicolon-separated section tuple (n-1 entries)");
    cmd_ni->add_option("--rho", ni_rho, "projection polynomial")->required();
    cmd_ni->add_option("--khat", ni_khat, "working truncation order");
    cmd_ni->add_option("--point", ni_point, "test this point for membership");

    // perturb-verify
    auto* cmd_pv = app.add_subcommand("perturb-verify",
                                      "perturb a cut system and verify deflicity preservation");
    std::string pv_chain, pv_system, pv_rho, pv_point, pv_eprime;
    unsigned pv_khat = 4, pv_order = 16;
    std::uint64_t pv_seed = 0;
    cmd_pv->add_option("--chain", pv_chain, "chain JSON file")->required();
    cmd_pv->add_option("--system", pv_system, "semicolon-separated section tuple (n-1 entries)");
    cmd_pv->add_option("--rho", pv_rho, "projection polynomial")->required();
    cmd_pv->add_option("--point", pv_point, "base point")->required();
    cmd_pv->add_option("--eprime", pv_eprime, "perturbation multiplier polynomial")->required();
    cmd_pv->add_option("--khat", pv_khat, "working truncation order");
    cmd_pv->add_option("--order", pv_order, "branch truncation order");
    cmd_pv->add_option("--seed", pv_seed, "seed for the random coefficient tuple");

    // sard
    auto* cmd_sard = app.add_subcommand("sard", "sample random perturbations for membership flips");
    std::string sd_chain, sd_system, sd_rho, sd_point, sd_e;
    unsigned sd_khat = 4, sd_trials = 20;
    std::uint64_t sd_seed = 0;
    cmd_sard->add_option("--chain", sd_chain, "chain JSON file")->required();
    cmd_sard->add_option("--system", sd_system, "semicolon-separated section tuple (n-1 entries)");
    cmd_sard->add_option("--rho", sd_rho, "projection polynomial")->required();
    cmd_sard->add_option("--point", sd_point, "base point")->required();
    cmd_sard->add_option("--e", sd_e, "separating polynomial E")->required();
    cmd_sard->add_option("--khat", sd_khat, "working truncation order");
    cmd_sard->add_option("--trials", sd_trials, "number of random tuples");
    cmd_sard->add_option("--seed", sd_seed, "base seed");

    // loja
    auto* cmd_loja = app.add_subcommand("loja", "inequality exponent bound");
    std::int64_t lj_m = 0, lj_n = 1, lj_delta = 1, lj_d = 1;
    unsigned lj_precision = 128;
    cmd_loja->add_option("--m", lj_m, "number of chain functions")->required();
    cmd_loja->add_option("--n", lj_n, "number of variables")->required();
    cmd_loja->add_option("--delta", lj_delta, "chain degree")->required();
    cmd_loja->add_option("--d", lj_d, "input degree")->required();
    cmd_loja->add_option("--precision", lj_precision, "interval precision in bits");

    // Let --json/--expand appear after the subcommand name as well.
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_bounds->parsed()) {
            if (b_m < 0 || b_n < 1 || b_delta < 1 || b_d < 1)
                throw usage_error("bounds requires m >= 0, n >= 1, delta >= 1, d >= 1");
            bound_params p{static_cast<unsigned>(b_m), static_cast<unsigned>(b_n),
                           integer(b_delta), integer(b_d)};
            json inputs{{"m", b_m}, {"n", b_n}, {"delta", b_delta}, {"d", b_d},
                        {"precision", b_precision}};
            json result;
            if (!b_k.empty()) {
                integer k(b_k);
                if (k < 0) throw usage_error("k must be nonnegative");
                inputs["k"] = integer_json(k);
                result["degree_after_steps"] = integer_json(deg_after_mo(p.n, p.delta, p.d, k));
            }
            auto il = il_degree(p.m, p.n, p.delta);
            result["il_degree"] = integer_json(il.value);
            result["rough"] = bound_json(mult0_bound(p, mult_mode::rough, b_precision), expand);
            result["sharp"] = bound_json(mult0_bound(p, mult_mode::exact, b_precision), expand);
            result["main"] = bound_json(main_bound(p), expand);
            emit("bounds", inputs, result);
            return 0;
        }

        if (cmd_grid->parsed()) {
            if (g_max_mn < 1 || g_max_d < 1 || g_jobs < 1)
                throw usage_error("grid limits and jobs must be at least 1");
            auto reports = verify_grid(g_max_mn, g_max_d, g_jobs, g_precision);
            bool all = true;
            json cells = json::array();
            for (const auto& rep : reports) {
                bool ok = rep.all_true();
                all = all && ok;
                cells.push_back({{"m", rep.params.m},
                                 {"n", rep.params.n},
                                 {"delta", integer_json(rep.params.delta)},
                                 {"d", integer_json(rep.params.d)},
                                 {"k", integer_json(rep.k)},
                                 {"all_true", ok},
                                 {"checks", checks_json(rep.checks)}});
            }
            emit("verify-bounds-grid",
                 {{"max_mn", g_max_mn}, {"max_d", g_max_d}, {"jobs", g_jobs},
                  {"precision", g_precision}},
                 {{"all_true", all}, {"cells", std::move(cells)}});
            return 0;
        }

        if (cmd_derive->parsed()) {
            chain_file cf = load_chain_file(dv_chain);
            arena allowed = cf.c.make_arena();
            poly p = poly::parse(dv_poly, allowed);
            auto word = parse_word(dv_word, cf.c.n());
            poly out = iterated_derive(cf.c, p, word);
            emit("derive",
                 {{"chain", dv_chain}, {"poly", dv_poly}, {"word", dv_word}},
                 {{"poly", out.str()}, {"degree", out.total_degree()}});
            return 0;
        }

        if (cmd_jet->parsed()) {
            chain_file cf = load_chain_file(j_chain);
            arena allowed = cf.c.make_arena();
            poly p = poly::parse(j_poly, allowed);
            leaf_point q = resolve_point(cf, j_point);
            jet_result jr = jet(cf.c, q, p, j_order);
            emit("jet",
                 {{"chain", j_chain}, {"poly", j_poly}, {"point", j_point}, {"order", j_order}},
                 {{"series", jr.series.str()},
                  {"order", jr.order},
                  {"integrable", jr.integrable},
                  {"base", point_json(jr.base.coords)}});
            return 0;
        }

        if (cmd_il->parsed()) {
            chain_file cf = load_chain_file(il_chain);
            unsigned depth = il_depth == 0 ? default_il_depth(cf.c) : il_depth;
            auto gens = il_generators(cf.c, depth);
            json gl = json::array();
            for (const poly& g : gens) gl.push_back(g.str());
            json result{{"depth", depth}, {"generators", std::move(gl)}};
            if (!il_point.empty()) {
                leaf_point q = resolve_point(cf, il_point);
                result["member"] = il_test(cf.c, q, depth);
            }
            emit("il", {{"chain", il_chain}, {"depth", il_depth}, {"point", il_point}},
                 result);
            return 0;
        }

        if (cmd_mult->parsed()) {
            chain_file cf = load_chain_file(m_chain);
            arena allowed = cf.c.make_arena();
            auto system = parse_system(m_system, allowed);
            leaf_point q = resolve_point(cf, m_point);
            mult_result r = system.size() == 1 && cf.c.n() == 1
                                ? mult_univariate(cf.c, q, system[0], m_order)
                                : mult_isolated(cf.c, q, system, m_order);
            emit("mult",
                 {{"chain", m_chain}, {"system", m_system}, {"point", m_point},
                  {"order", m_order}},
                 mult_json(r));
            return r.decided() ? 0 : 4;
        }

        if (cmd_defl->parsed()) {
            json inputs{{"point", df_point}, {"order", df_order}};
            json result;
            if (!df_family.empty()) {
                if (!df_system.empty() || !df_rho.empty())
                    throw usage_error("--family excludes --system/--rho");
                auto base = parse_point_csv(df_point);
                std::vector<var_id> vars;
                for (std::size_t i = 1; i <= base.size(); ++i)
                    vars.push_back(var("x" + std::to_string(i)));
                vars.push_back(var("eps"));
                arena allowed(vars);
                auto family = parse_system(df_family, allowed);
                auto eps = parse_point_csv(df_eps);
                inputs["family"] = df_family;
                inputs["eps"] = df_eps;
                inputs["radius"] = df_radius;
                result["mode"] = "numeric";
                result["deflicity"] = integer_json(deflicity_numeric(family, base, eps, df_radius));
            } else {
                if (df_chain.empty() || df_rho.empty())
                    throw usage_error("symbolic mode requires --chain and --rho");
                chain_file cf = load_chain_file(df_chain);
                arena allowed = cf.c.make_arena();
                std::vector<poly> P;
                if (!df_system.empty()) P = parse_system(df_system, allowed);
                poly R = poly::parse(df_rho, allowed);
                leaf_point p = resolve_point(cf, df_point);
                inputs["chain"] = df_chain;
                inputs["system"] = df_system;
                inputs["rho"] = df_rho;
                result["mode"] = "symbolic";
                result["deflicity"] =
                    integer_json(deflicity_symbolic({cf.c, p, P, R, df_order}));
            }
            emit("deflicity", inputs, result);
            return 0;
        }

        if (cmd_ni->parsed()) {
            chain_file cf = load_chain_file(ni_chain);
            arena allowed = cf.c.make_arena();
            std::vector<poly> P;
            if (!ni_syst.empty()) P = parse_system(ni_syst, allowed);
            ni_system sys{cf.c, P, poly::parse(ni_rho, allowed), ni_khat};
            auto gens = ni_generators(sys);
            json gl = json::array();
            for (const poly& g : gens) gl.push_back(g.str());
            json result{{"k_hat", ni_khat}, {"generators", std::move(gl)}};
            if (!ni_point.empty()) {
                leaf_point q = resolve_point(cf, ni_point);
                result["member"] = ni_member_numeric(sys, q);
            }
            emit("ni",
                 {{"chain", ni_chain}, {"system", ni_syst}, {"rho", ni_rho},
                  {"khat", ni_khat}, {"point", ni_point}},
                 result);
            return 0;
        }

        if (cmd_pv->parsed()) {
            chain_file cf = load_chain_file(pv_chain);
            arena allowed = cf.c.make_arena();
            std::vector<poly> P;
            if (!pv_system.empty()) P = parse_system(pv_system, allowed);
            ni_system sys{cf.c, P, poly::parse(pv_rho, allowed), pv_khat};
            leaf_point p = resolve_point(cf, pv_point);
            poly eprime = poly::parse(pv_eprime, allowed);
            auto q_tuple = random_polys(cf.c, sys.P.size(), cf.c.n() + cf.c.m(), pv_seed);
            auto pprime = perturb(sys, q_tuple, eprime);
            perturb_report rep = verify_preservation(sys, pprime, p, pv_order);
            rep.seed = pv_seed;
            json checks = json::array();
            for (const auto& gc : rep.checks) {
                json c;
                c["branch"] = branch_json(gc.b);
                c["perturbation_order"] =
                    gc.perturbation_order ? rational_json(*gc.perturbation_order) : json(nullptr);
                c["projection_order"] = rational_json(gc.projection_order);
                c["pass"] = gc.pass;
                checks.push_back(std::move(c));
            }
            json deltas = json::array();
            for (const auto& md : rep.deltas)
                deltas.push_back({{"point", point_json(md.point)},
                                  {"before", md.before},
                                  {"after", md.after}});
            json perturbed = json::array();
            for (const poly& pp : pprime) perturbed.push_back(pp.str());
            emit("perturb-verify",
                 {{"chain", pv_chain}, {"system", pv_system}, {"rho", pv_rho},
                  {"point", pv_point}, {"eprime", pv_eprime}, {"khat", pv_khat},
                  {"order", pv_order}, {"seed", pv_seed}},
                 {{"original", integer_json(rep.original)},
                  {"perturbed", integer_json(rep.perturbed)},
                  {"preserved", rep.preserved},
                  {"all_growth_pass", rep.all_growth_pass},
                  {"growth_checks", std::move(checks)},
                  {"membership_deltas", std::move(deltas)},
                  {"perturbed_system", std::move(perturbed)}});
            return 0;
        }

        if (cmd_sard->parsed()) {
            chain_file cf = load_chain_file(sd_chain);
            arena allowed = cf.c.make_arena();
            std::vector<poly> P;
            if (!sd_system.empty()) P = parse_system(sd_system, allowed);
            ni_system sys{cf.c, P, poly::parse(sd_rho, allowed), sd_khat};
            leaf_point p = resolve_point(cf, sd_point);
            poly e = poly::parse(sd_e, allowed);
            sard_report rep = sard_sample(sys, p, e, sd_trials, sd_seed);
            emit("sard",
                 {{"chain", sd_chain}, {"system", sd_system}, {"rho", sd_rho},
                  {"point", sd_point}, {"e", sd_e}, {"khat", sd_khat},
                  {"trials", sd_trials}, {"seed", sd_seed}},
                 {{"trials", rep.trials},
                  {"points", rep.points},
                  {"failures", rep.failures},
                  {"failure_fraction", rep.failure_fraction}});
            return 0;
        }

        if (cmd_loja->parsed()) {
            if (lj_m < 0 || lj_n < 1 || lj_delta < 1 || lj_d < 1)
                throw usage_error("loja requires m >= 0, n >= 1, delta >= 1, d >= 1");
            bound_params p{static_cast<unsigned>(lj_m), static_cast<unsigned>(lj_n),
                           integer(lj_delta), integer(lj_d)};
            emit("loja",
                 {{"m", lj_m}, {"n", lj_n}, {"delta", lj_delta}, {"d", lj_d},
                  {"precision", lj_precision}},
                 {{"exponent_bound", bound_json(loja_exponent_bound(p), expand)}});
            return 0;
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_integrable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const inconclusive_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ledger_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }

    std::cerr << "error: no subcommand\n";
    return 2;
}
