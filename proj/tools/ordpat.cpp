// Command-line front end: term queries, pattern operations, constructions,
// and the theorem verifiers.  Exit codes: 0 success/PASS, 1 FAIL, 2 usage
// error, 3 oracle-gap-only outcome.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <ordpat/constructions.hpp>
#include <ordpat/json_io.hpp>

namespace {

using namespace ordpat;

std::vector<Term> parse_list(const std::string& s, const TermBounds& bounds) {
    std::vector<Term> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse(item, bounds));
    return out;
}

struct Options {
    StructureParams params;
    AxiomTable table;
    bool json = false;
};

// key=value config: theta2_bound, theta2_infinite, alpha_succ_is_theta1,
// depth_bound, coeff_bound, nu_unit_offset, level_shift, oracle.<index>=<max>
void load_config(const std::string& path, Options* opt) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "theta2_bound") opt->params.theta2 = Theta2Mode::successor(parse(val));
        else if (key == "theta2_infinite" && val == "1") opt->params.theta2 = Theta2Mode::unbounded();
        else if (key == "alpha_succ_is_theta1") opt->params.alpha_succ_is_theta1 = val == "1";
        else if (key == "depth_bound") opt->params.bounds.depth = std::stoi(val);
        else if (key == "coeff_bound") opt->params.bounds.coeff = std::stoull(val);
        else if (key == "nu_unit_offset") opt->table.nu_unit_offset = std::stoull(val);
        else if (key == "level_shift") opt->table.level_shift_enabled = val != "0";
        else if (key.rfind("oracle.", 0) == 0)
            opt->params.oracle.entries.emplace_back(parse(key.substr(7)), parse(val));
        else throw CLI::ValidationError("--config", "unknown key: " + key);
    }
}

int report_exit(const VerifyReport& r) {
    if (!r.disagreed.empty()) return 1;
    if (!r.passed()) return 1;
    if (r.agreed == 0 && r.oracle_gaps > 0) return 3;
    return 0;
}

void print_report(const Options& opt, const VerifyReport& r) {
    if (opt.json) {
        std::cout << to_json(r).dump(2) << "\n";
        return;
    }
    std::cout << r.theorem << " (" << r.params << "): " << (r.passed() ? "PASS" : "FAIL")
              << "  checked=" << r.checked << " agreed=" << r.agreed
              << " unknown=" << r.unknown << " oracle_gaps=" << r.oracle_gaps
              << " disagreed=" << r.disagreed.size() << "\n";
    for (const auto& d : r.disagreed)
        std::cout << "  disagreement: " << d.note << " [" << d.left << " | " << d.right << "]\n";
}

int run(int argc, char** argv) {
    CLI::App app{"ordpat: symbolic engine for two-level resemblance patterns"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    std::string config;
    int seed = 0;
    app.add_option("--config", config, "key=value parameter file");
    app.add_flag("--json", opt.json, "emit JSON");
    app.add_option("--seed", seed, "reserved; all computation is deterministic")->group("");
    app.add_option("--nu-unit-offset", opt.table.nu_unit_offset,
                   "spacing unit of the nu-sequence (mutation hook, default 1)");
    app.add_flag("!--no-level-shift", opt.table.level_shift_enabled,
                 "disable the level-shift rule");

    std::string expr, expr2, sigma_s = "k[a]", level_s = "rho", xi_s = "w^0";
    std::string universe_s, set_s, map_s, fix_s, above_s, cap_s, nu_s, members_s;
    std::string eta1_s = "0", eta2_s = "w^0";
    int k = 1;
    std::uint64_t eta_max = 4;
    std::string bound_s = "a*3", fam_bound_s = "k[a]*9";

    auto* norm = app.add_subcommand("norm", "normalize a term");
    norm->add_option("expr", expr)->required();

    auto* rel = app.add_subcommand("rel", "decide a <=k query");
    rel->add_option("--level", level_s)->check(CLI::IsMember({"rho", "alpha"}));
    rel->add_option("--k", k)->check(CLI::Range(1, 2));
    rel->add_option("a", expr)->required();
    rel->add_option("b", expr2)->required();

    auto* decomp = app.add_subcommand("decomp", "interval decomposition of a set");
    decomp->add_option("set", set_s)->required();

    auto* closed = app.add_subcommand("closed", "sigma-floor closure of a set");
    closed->add_option("--sigma", sigma_s);
    closed->add_option("set", set_s)->required();

    auto* cover = app.add_subcommand("cover", "covering search / check");
    auto* cfind = cover->add_subcommand("find", "search for a covering");
    cfind->add_option("--source", set_s)->required();
    cfind->add_option("--universe", universe_s)->required();
    cfind->add_option("--level", level_s)->check(CLI::IsMember({"rho", "alpha"}));
    cfind->add_option("--fix", fix_s);
    cfind->add_option("--above", above_s);
    cfind->add_option("--cap", cap_s);
    auto* ccheck = cover->add_subcommand("check", "verify an explicit map");
    ccheck->add_option("--source", set_s)->required();
    ccheck->add_option("--universe", universe_s)->required();
    ccheck->add_option("--map", map_s, "comma list of images, in source order")->required();
    ccheck->add_option("--level", level_s)->check(CLI::IsMember({"rho", "alpha"}));
    cover->require_subcommand(1);

    auto* incompr = app.add_subcommand("incompr", "incompressibility in a universe");
    incompr->add_option("set", set_s)->required();
    incompr->add_option("--universe", universe_s, "defaults to the kappa grid");

    auto* iota_c = app.add_subcommand("iota", "collapse map at xi");
    iota_c->add_option("--xi", xi_s);
    iota_c->add_option("lambda", expr)->required();
    auto* phi_c = app.add_subcommand("phi", "inverse collapse at xi");
    phi_c->add_option("--xi", xi_s);
    phi_c->add_option("beta", expr)->required();
    auto* dom_c = app.add_subcommand("dom", "domain maximum of the collapse at xi");
    dom_c->add_option("--xi", xi_s);

    auto* construct = app.add_subcommand("construct", "run a named construction");
    auto* iso_c = construct->add_subcommand("iso", "initial-segment isomorphism");
    iso_c->add_option("--eta1", eta1_s);
    iso_c->add_option("--eta2", eta2_s);
    auto* pd_c = construct->add_subcommand("pushdown", "push-down covering");
    pd_c->add_option("--xi", xi_s)->required();
    pd_c->add_option("--nu", nu_s)->required();
    pd_c->add_option("--set", set_s)->required();
    auto* di_c = construct->add_subcommand("dom-inclusion", "domain inclusion check");
    di_c->add_option("--eta1", eta1_s);
    di_c->add_option("--eta2", eta2_s);
    auto* fr_c = construct->add_subcommand("family-reduce", "cofinal family reduction");
    fr_c->add_option("--x", set_s)->required();
    fr_c->add_option("--family", members_s, "semicolon-separated member lists")->required();
    fr_c->add_option("--bound", fam_bound_s);
    auto* ld_c = construct->add_subcommand("lift-decomp", "block-wise identity lift");
    ld_c->add_option("--x", set_s)->required();
    construct->require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "theorem verifiers");
    auto* vor = verify->add_subcommand("order-reduction", "order reduction dual computation");
    vor->add_option("--xi", xi_s);
    vor->add_option("--bound", bound_s);
    auto* vr2 = verify->add_subcommand("recurrence2", "interval-length recurrence");
    vr2->add_option("--eta-max", eta_max);
    verify->add_subcommand("suite", "full verification suite");
    verify->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);
    if (!config.empty()) load_config(config, &opt);
    Engine engine{opt.params, opt.table};
    const TermBounds& tb = opt.params.bounds;
    Level level = level_s == "alpha" ? Level::Alpha : Level::Rho;

    if (*norm) {
        Term t = parse(expr, tb);
        if (opt.json) std::cout << nlohmann::json{{"term", to_string(t)}}.dump() << "\n";
        else std::cout << to_string(t) << "\n";
        return 0;
    }
    if (*rel) {
        Term a = parse(expr, tb), b = parse(expr2, tb);
        Verdict v = engine.leq_k(level, k, a, b);
        if (opt.json) std::cout << verdict_json(a, b, level, k, v).dump(2) << "\n";
        else {
            std::cout << to_string(v.value);
            for (const auto& r : v.trace) std::cout << " " << r;
            if (v.is_unknown()) std::cout << " (" << v.reason << ")";
            std::cout << "\n";
        }
        return v.oracle_gap ? 3 : 0;
    }
    if (*decomp) {
        auto d = interval_decomposition(parse_list(set_s, tb));
        if (opt.json) {
            nlohmann::json j = nlohmann::json::array();
            for (std::size_t i = 0; i < d.M.size(); ++i) {
                nlohmann::json r = nlohmann::json::array();
                for (const auto& t : d.R[i]) r.push_back(to_string(t));
                j.push_back({{"mu", to_string(d.M[i])}, {"R", std::move(r)}});
            }
            std::cout << j.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < d.M.size(); ++i) {
                std::cout << to_string(d.M[i]) << ": {";
                for (std::size_t r = 0; r < d.R[i].size(); ++r)
                    std::cout << (r ? ", " : "") << to_string(d.R[i][r]);
                std::cout << "}\n";
            }
        }
        return 0;
    }
    if (*closed) {
        bool c = is_closed(parse_list(set_s, tb), parse(sigma_s, tb));
        std::cout << (c ? "true" : "false") << "\n";
        return 0;
    }
    if (*cfind || *ccheck) {
        FinitePattern S = pattern_from_engine(engine, level, parse_list(set_s, tb));
        FinitePattern U = pattern_from_engine(engine, level, parse_list(universe_s, tb));
        if (*cfind) {
            CoveringConstraints cs;
            if (!fix_s.empty()) cs.fix = parse_list(fix_s, tb);
            if (!above_s.empty()) cs.above = parse(above_s, tb);
            if (!cap_s.empty()) cs.cap = parse(cap_s, tb);
            auto res = find_covering(S, U, cs);
            if (!res.witness) {
                std::cout << "NotFound (nodes=" << res.nodes << ")\n";
                return 1;
            }
            auto cert = verify_covering(*res.witness);
            if (opt.json) std::cout << to_json(cert, *res.witness).dump(2) << "\n";
            else
                for (std::size_t i = 0; i < res.witness->map.size(); ++i)
                    std::cout << to_string(S.carrier[i]) << " -> "
                              << to_string(res.witness->image(i)) << "\n";
            return 0;
        }
        CoveringMap h;
        h.source = S;
        h.target_universe = U;
        for (const auto& img : parse_list(map_s, tb)) {
            auto j = U.find(img);
            if (!j) throw PreconditionViolated("map image not in the universe: " + to_string(img));
            h.map.push_back(*j);
        }
        auto cert = verify_covering(h);
        if (opt.json) std::cout << to_json(cert, h).dump(2) << "\n";
        else std::cout << (cert.ok ? "certificate" : "violation: " + cert.violation) << "\n";
        return cert.ok ? 0 : 1;
    }
    if (*incompr) {
        FinitePattern U = universe_s.empty()
                              ? default_sub_universe()
                              : reflexive_pattern(parse_list(universe_s, tb));
        bool r = is_incompressible(reflexive_pattern(parse_list(set_s, tb)), U);
        std::cout << (r ? "true" : "false") << "\n";
        return 0;
    }
    if (*iota_c || *phi_c || *dom_c) {
        CollapseContext ctx = make_collapse_context(engine, parse(xi_s, tb));
        if (*iota_c) std::cout << to_string(iota(ctx, parse(expr, tb))) << "\n";
        else if (*phi_c) std::cout << to_string(phi(ctx, parse(expr, tb))) << "\n";
        else std::cout << (ctx.dom_max ? to_string(*ctx.dom_max) : "unbounded") << "\n";
        return 0;
    }
    if (*construct) {
        if (*iso_c) {
            auto iso = initial_segment_iso(engine, parse(eta1_s, tb), parse(eta2_s, tb));
            for (std::size_t i = 0; i < iso.map.size(); ++i)
                std::cout << to_string(iso.source.carrier[i]) << " -> "
                          << to_string(iso.image(i)) << "\n";
            return 0;
        }
        if (*pd_c) {
            FinitePattern Y =
                pattern_from_engine(engine, Level::Rho, parse_list(set_s, tb));
            auto pd = push_down_covering(engine, parse(xi_s, tb), parse(nu_s, tb), Y);
            std::cout << "eta = " << to_string(pd.eta) << "\n";
            for (std::size_t i = 0; i < pd.h.map.size(); ++i)
                std::cout << to_string(Y.carrier[i]) << " -> " << to_string(pd.h.image(i))
                          << "\n";
            return 0;
        }
        if (*di_c) {
            bool r = dom_inclusion_check(engine, parse(eta1_s, tb), parse(eta2_s, tb));
            std::cout << (r ? "true" : "false") << "\n";
            return r ? 0 : 1;
        }
        if (*fr_c) {
            FinitePattern X = pattern_from_engine(engine, Level::Rho, parse_list(set_s, tb));
            std::vector<FinitePattern> fam;
            std::stringstream ss(members_s);
            std::string member;
            while (std::getline(ss, member, ';'))
                fam.push_back(pattern_from_engine(engine, Level::Rho, parse_list(member, tb)));
            auto fr =
                family_reduce(engine, X, fam, parse(fam_bound_s, tb), default_sub_universe());
            std::cout << "kept " << fr.kept.size() << " of " << fam.size() << "; R = {";
            for (std::size_t i = 0; i < fr.R.size(); ++i)
                std::cout << (i ? ", " : "") << to_string(fr.R[i]);
            std::cout << "}; " << fr.lifts.size() << " verified lifts\n";
            return 0;
        }
        FinitePattern X = pattern_from_engine(engine, Level::Rho, parse_list(set_s, tb));
        auto h = lift_covering_decomposition(engine, X, {}, default_sub_universe());
        for (std::size_t i = 0; i < h.map.size(); ++i)
            std::cout << to_string(X.carrier[i]) << " -> " << to_string(h.image(i)) << "\n";
        return 0;
    }
    // verify
    if (*vor) {
        auto r = verify_order_reduction(engine, parse(xi_s, tb), parse(bound_s, tb));
        print_report(opt, r);
        return report_exit(r);
    }
    if (*vr2) {
        auto r = verify_second_recurrence(engine, eta_max);
        print_report(opt, r);
        return report_exit(r);
    }
    auto s = run_suite(engine);
    if (opt.json) std::cout << to_json(s).dump(2) << "\n";
    else {
        for (const auto& r : s.reports) print_report(opt, r);
        std::cout << (s.passed() ? "PASS" : "FAIL") << "\n";
    }
    return s.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ordpat::OracleGap& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ordpat::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ordpat::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
