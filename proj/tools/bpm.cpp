// bpm: branching-program measure laboratory. Exit codes: 0 ok, 1 bad input,
// 2 budget exhausted, 3 internal invariant violated.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bpm/acceptance.hpp"
#include "bpm/geometry.hpp"
#include "bpm/genred.hpp"
#include "bpm/measures.hpp"
#include "bpm/obdd.hpp"
#include "bpm/report.hpp"
#include "bpm/roster.hpp"
#include "bpm/tep.hpp"
#include "bpm/tseitin.hpp"

using namespace bpm;
using nlohmann::ordered_json;

namespace {

truth_table load_tt(const std::string& path) {
    std::ifstream is(path);
    check_arg(static_cast<bool>(is), "cannot open '" + path + "'");
    return read_tt(is);
}

void emit(const ordered_json& j, const std::string& out_path) {
    ordered_json wrapped;
    wrapped["schema"] = report_schema;
    for (auto& [k, v] : j.items()) wrapped[k] = v;
    std::string text = wrapped.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        check_arg(static_cast<bool>(os), "cannot write '" + out_path + "'");
        os << text;
    }
}

void save_tt(const truth_table& t, const std::string& path) {
    if (path.empty() || path == "-") {
        write_tt(std::cout, t);
    } else {
        std::ofstream os(path);
        check_arg(static_cast<bool>(os), "cannot write '" + path + "'");
        write_tt(os, t);
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"branching-program measure laboratory"};
    app.require_subcommand(1);

    // ---- measure
    auto* m = app.add_subcommand("measure", "evaluate measures of a truth-table file");
    std::string m_in, m_list = "S", m_out;
    u32 m_mixed = 0;
    m->add_option("-i,--input", m_in, "TT file")->required();
    m->add_option("-m,--measures", m_list,
                  "comma list: S,Shat,Sstar,C,Chat,P,Pplus,Pplushat,Phat,CC,NCC,weight");
    m->add_option("--mixed", m_mixed, "also test m-mixedness for this m");
    m->add_option("-o,--output", m_out, "JSON output path (default stdout)");

    // ---- roster
    auto* r = app.add_subcommand("roster", "generate a function family table");
    std::string r_family, r_out, r_gin;
    u32 r_n = 0, r_d = 0;
    r->add_option("family", r_family,
                  "eq|seq|parity|clique|pointer|brs|isa|nand|and-parity")
        ->required();
    r->add_option("-n", r_n, "family size parameter");
    r->add_option("-d", r_d, "BRS exponent d (n = 2^d)");
    r->add_option("-g,--g-input", r_gin, "TT file with g for and-parity");
    r->add_option("-o,--output", r_out, "TT output path (default stdout)");

    // ---- relations
    auto* rel = app.add_subcommand("relations", "run the inequality harness");
    u32 rel_n = 3;
    u64 rel_sample = 0, rel_seed = 1;
    std::string rel_out;
    rel->add_option("-n", rel_n, "arity (3 = exhaustive default)");
    rel->add_option("--sample", rel_sample, "random sample count (required for n > 3)");
    rel->add_option("--seed", rel_seed, "sample seed");
    rel->add_option("-o,--output", rel_out, "JSON output path");

    // ---- obdd
    auto* o = app.add_subcommand("obdd", "build or minimize an OBDD");
    std::string o_in, o_order, o_dot, o_out;
    bool o_min = false;
    o->add_option("-i,--input", o_in, "TT file")->required();
    o->add_option("--order", o_order, "comma list of variables");
    o->add_flag("--min", o_min, "search all orders (subset DP)");
    o->add_option("--dot", o_dot, "write the diagram in DOT form");
    o->add_option("-o,--output", o_out, "JSON output path");

    // ---- tep
    auto* t = app.add_subcommand("tep", "tree evaluation problem tooling");
    t->require_subcommand(1);
    auto* tp = t->add_subcommand("profile", "exact S((TEP,h),ell) profile");
    tp->set_help_flag("--help");
    u32 tp_h = 2, tp_k = 2;
    double tp_budget = 0.0;
    std::string tp_ells, tp_out;
    tp->add_option("--h", tp_h, "height")->required();
    tp->add_option("--k", tp_k, "alphabet")->required();
    tp->add_option("--budget", tp_budget, "wall-clock seconds (0 = unbounded)");
    tp->add_option("--ell", tp_ells, "comma list of ell values (default all)");
    tp->add_option("-o,--output", tp_out, "JSON output path");
    auto* ts = t->add_subcommand("shat", "exact S_hat(TEP,h)");
    ts->set_help_flag("--help");
    u32 ts_h = 2, ts_k = 2;
    std::string ts_out;
    ts->add_option("--h", ts_h, "height")->required();
    ts->add_option("--k", ts_k, "alphabet")->required();
    ts->add_option("-o,--output", ts_out, "JSON output path");
    auto* tl = t->add_subcommand("lemmas", "appendix lemma battery");
    tl->set_help_flag("--help");
    u32 tl_h = 2, tl_k = 2;
    std::string tl_out;
    tl->add_option("--h", tl_h, "height")->required();
    tl->add_option("--k", tl_k, "alphabet")->required();
    tl->add_option("-o,--output", tl_out, "JSON output path");
    auto* tt = t->add_subcommand("table", "emit the full TEP table");
    tt->set_help_flag("--help");
    u32 tt_h = 2, tt_k = 2;
    std::string tt_out;
    tt->add_option("--h", tt_h, "height")->required();
    tt->add_option("--k", tt_k, "alphabet")->required();
    tt->add_option("-o,--output", tt_out, "TT output path");

    // ---- tseitin
    auto* tse = app.add_subcommand("tseitin", "Tseitin formula tooling");
    std::string tse_graph, tse_charge, tse_table_out, tse_out;
    bool tse_fact = false, tse_bound = false, tse_cross = false;
    tse->add_option("--graph", tse_graph, "graph file: 'n m' then edges")->required();
    tse->add_option("--charge", tse_charge, "charge file: n bits")->required();
    tse->add_flag("--fact", tse_fact, "check the satisfying-count identity");
    tse->add_flag("--bound", tse_bound, "evaluate the C_hat lower bound");
    tse->add_flag("--crosscheck", tse_cross, "compare the bound against exact C_hat");
    tse->add_option("--table", tse_table_out, "write the truth table here");
    tse->add_option("-o,--output", tse_out, "JSON output path");

    // ---- plane
    auto* pl = app.add_subcommand("plane", "affine-plane blocking-set tooling");
    u32 pl_p = 3;
    pl->add_option("--p", pl_p, "prime order")->required();
    pl->require_subcommand(1);
    auto* plm = pl->add_subcommand("mbs", "enumerate minimal blocking sets");
    u32 plm_max = 3;
    std::string plm_out;
    plm->add_option("--max-size", plm_max, "largest size to enumerate")->required();
    plm->add_option("-o,--output", plm_out, "JSON output path");
    auto* plb = pl->add_subcommand("blocking-count", "count blocking subsets of a mask");
    std::string plb_mask, plb_out;
    u64 plb_random = 0, plb_seed = 1;
    plb->add_option("--mask", plb_mask, "file with point indices (a*p+b), one per line");
    plb->add_option("--random", plb_random, "sample estimate with this many draws");
    plb->add_option("--seed", plb_seed, "sample seed");
    plb->add_option("-o,--output", plb_out, "JSON output path");
    auto* pll = pl->add_subcommand("lemmas", "identity + intersecting-point lemmas");
    std::string pll_out;
    pll->add_option("-o,--output", pll_out, "JSON output path");
    auto* plt = pl->add_subcommand("table", "emit the GAL or BW table");
    std::string plt_which = "gal", plt_out;
    plt->add_option("--which", plt_which, "gal|bw");
    plt->add_option("-o,--output", plt_out, "TT output path");

    // ---- gen
    auto* g = app.add_subcommand("gen", "GEN evaluation and the circuit projection");
    g->require_subcommand(1);
    auto* ge = g->add_subcommand("eval", "evaluate a circuit on an assignment");
    std::string ge_in, ge_x;
    ge->add_option("-i,--input", ge_in, "circuit file")->required();
    ge->add_option("-x", ge_x, "assignment bits, e.g. 1011")->required();
    auto* gp = g->add_subcommand("project", "emit the read-once GEN projection");
    std::string gp_in, gp_out;
    gp->add_option("-i,--input", gp_in, "circuit file")->required();
    gp->add_option("-o,--output", gp_out, "JSON output path");
    auto* gv = g->add_subcommand("verify", "verify the projection on every input");
    std::string gv_in, gv_out;
    gv->add_option("-i,--input", gv_in, "circuit file")->required();
    gv->add_option("-o,--output", gv_out, "JSON output path");
    auto* gb = g->add_subcommand("brs-circuit", "emit the BRS De Morgan circuit");
    u32 gb_d = 0;
    std::string gb_out;
    gb->add_option("--d", gb_d, "exponent (n = 2^d)")->required();
    gb->add_option("-o,--output", gb_out, "circuit output path");

    // ---- suite
    auto* s = app.add_subcommand("suite", "run a module acceptance battery");
    std::string s_name, s_out;
    s->add_option("name", s_name, "tep|tseitin|geometry|genred|obdd|random-shat|relations")
        ->required();
    s->add_option("-o,--output", s_out, "JSON output path");

    CLI11_PARSE(app, argc, argv);

    if (m->parsed()) {
        truth_table f = load_tt(m_in);
        ordered_json j;
        ordered_json reports = ordered_json::array();
        for (const std::string& name : split_list(m_list)) {
            if (name == "S") reports.push_back(to_json(measure_S(f)));
            else if (name == "Shat") reports.push_back(to_json(measure_S_hat(f)));
            else if (name == "Sstar") {
                sstar_report sr = measure_S_star(f);
                ordered_json sj;
                sj["measure"] = "Sstar";
                sj["value_num"] = sr.value;
                sj["order"] = sr.order;
                reports.push_back(std::move(sj));
            } else if (name == "C") reports.push_back(to_json(measure_C(f)));
            else if (name == "Chat") reports.push_back(to_json(measure_C_hat(f)));
            else if (name == "P") reports.push_back(to_json(measure_P(f)));
            else if (name == "Pplus") reports.push_back(to_json(measure_P_plus(f)));
            else if (name == "Pplushat") reports.push_back(to_json(measure_P_plus_hat(f)));
            else if (name == "Phat") reports.push_back(to_json(measure_P_hat(f)));
            else if (name == "CC") reports.push_back(to_json(measure_CC(f)));
            else if (name == "NCC") reports.push_back(to_json(measure_NCC(f)));
            else if (name == "weight") {
                weight_report w = weight(f);
                ordered_json wj;
                wj["measure"] = "weight";
                wj["dnf_size"] = w.dnf_size;
                wj["cnf_size"] = w.cnf_size;
                wj["value_num"] = w.weight;
                reports.push_back(std::move(wj));
            } else {
                throw argument_error("unknown measure '" + name + "'");
            }
        }
        if (m_mixed) {
            ordered_json mj;
            mj["measure"] = "mixed";
            mj["m"] = m_mixed;
            mj["value_num"] = is_m_mixed(f, m_mixed) ? 1 : 0;
            reports.push_back(std::move(mj));
        }
        j["reports"] = std::move(reports);
        emit(j, m_out);
        return 0;
    }

    if (r->parsed()) {
        truth_table out = [&]() -> truth_table {
            if (r_family == "eq") return roster::gen_eq(r_n);
            if (r_family == "seq") return roster::gen_seq(r_n);
            if (r_family == "parity") return roster::gen_parity(r_n);
            if (r_family == "clique") return roster::gen_clique(r_n);
            if (r_family == "pointer") return roster::gen_pointer(r_n);
            if (r_family == "isa") return roster::gen_isa(r_n);
            if (r_family == "nand") return roster::gen_nand(r_n);
            if (r_family == "brs") return roster::gen_brs(r_d);
            if (r_family == "and-parity") {
                check_arg(!r_gin.empty(), "and-parity needs -g with the g table");
                return roster::product_with_parity(load_tt(r_gin));
            }
            throw argument_error("unknown family '" + r_family + "'");
        }();
        save_tt(out, r_out);
        return 0;
    }

    if (rel->parsed()) {
        ordered_json j;
        ordered_json cases = ordered_json::array();
        bool all = true;
        auto run_one = [&](const truth_table& f, u64 tag) {
            relation_outcome out = relation_suite(f);
            all = all && out.all_pass;
            if (!out.all_pass) {
                ordered_json bad = to_json(out);
                bad["function_index"] = tag;
                bad["function_values"] = f.values();
                cases.push_back(std::move(bad));
            }
        };
        u64 total = 0;
        if (rel_n == 3 && rel_sample == 0) {
            for (u64 bits = 0; bits < 256; ++bits) {
                std::vector<u32> vals(8);
                for (u32 i = 0; i < 8; ++i) vals[i] = (bits >> i) & 1;
                run_one(truth_table(3, 2, std::move(vals)), bits);
                ++total;
            }
        } else {
            check_arg(rel_n <= 5, "relations limited to n <= 5");
            check_arg(rel_sample > 0, "sampled mode needs --sample");
            u64 state = rel_seed ? rel_seed : 1;
            for (u64 i = 0; i < rel_sample; ++i) {
                std::vector<u32> vals(u64(1) << rel_n);
                for (auto& v : vals) {
                    state = state * 6364136223846793005ull + 1442695040888963407ull;
                    v = static_cast<u32>(state >> 63);
                }
                run_one(truth_table(rel_n, 2, std::move(vals)), i);
                ++total;
            }
        }
        j["n"] = rel_n;
        j["functions"] = total;
        j["violations"] = std::move(cases);
        j["all_pass"] = all;
        emit(j, rel_out);
        return all ? 0 : 3;
    }

    if (o->parsed()) {
        truth_table f = load_tt(o_in);
        ordered_json j;
        std::vector<u32> order;
        if (o_min) {
            obdd::min_obdd_result mr = obdd::min_obdd_size(f);
            order = mr.order;
            j["minimal"] = true;
        } else if (!o_order.empty()) {
            for (const std::string& tok : split_list(o_order))
                order.push_back(static_cast<u32>(std::stoul(tok)));
        } else {
            for (u32 v = 1; v <= f.n(); ++v) order.push_back(v);
        }
        obdd::diagram dd = obdd::build_obdd(f, order);
        j["order"] = dd.order;
        j["size"] = dd.size();
        obdd::level_profile_t prof = obdd::level_profile(f, order);
        ordered_json pj = ordered_json::array();
        for (const auto& e : prof.entries) {
            ordered_json ej;
            ej["nrows"] = e.nrows;
            ej["u"] = e.u;
            ej["w"] = e.w;
            pj.push_back(std::move(ej));
        }
        j["profile"] = std::move(pj);
        if (!o_dot.empty()) {
            std::ofstream os(o_dot);
            check_arg(static_cast<bool>(os), "cannot write '" + o_dot + "'");
            os << dd.to_dot();
        }
        emit(j, o_out);
        return 0;
    }

    if (tp->parsed()) {
        std::vector<u32> ells;
        for (const std::string& tok : split_list(tp_ells))
            ells.push_back(static_cast<u32>(std::stoul(tok)));
        tep::s_profile_result prof = tep::s_tep_profile(tp_h, tp_k, ells, tp_budget);
        ordered_json j;
        j["h"] = prof.h;
        j["k"] = prof.k;
        j["n"] = prof.n;
        ordered_json entries = ordered_json::array();
        for (const auto& e : prof.entries) {
            ordered_json ej;
            ej["ell"] = e.ell;
            ej["complete"] = e.complete;
            if (e.complete) {
                ej["S_value"] = e.s_value;
                ej["witness_A"] = mask_to_indices(e.witness_mask);
            }
            entries.push_back(std::move(ej));
        }
        j["entries"] = std::move(entries);
        if (prof.all_complete) {
            j["S"] = prof.S;
            j["argmax_ell"] = prof.argmax_ells;
        }
        emit(j, tp_out);
        return prof.all_complete ? 0 : 2;
    }
    if (ts->parsed()) {
        tep::shat_result res = tep::s_hat_tep(ts_h, ts_k);
        ordered_json j;
        j["h"] = ts_h;
        j["k"] = ts_k;
        j["value_num"] = res.value.num;
        j["value_den"] = res.value.den;
        j["witness_ell"] = res.witness_ell;
        j["witness_A"] = mask_to_indices(res.witness_mask);
        j["upper_bound_num"] = res.upper_bound.num;
        j["upper_bound_den"] = res.upper_bound.den;
        j["upper_bound_hypothesis_holds"] = res.hypothesis_holds;
        emit(j, ts_out);
        return 0;
    }
    if (tl->parsed()) {
        auto checks = tep::appendix_lemma_suite(tl_h, tl_k);
        ordered_json j;
        ordered_json cj = ordered_json::array();
        bool all = true;
        for (const auto& c : checks) {
            ordered_json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["detail"] = c.detail;
            all = all && c.pass;
            cj.push_back(std::move(e));
        }
        j["checks"] = std::move(cj);
        j["all_pass"] = all;
        emit(j, tl_out);
        return all ? 0 : 3;
    }
    if (tt->parsed()) {
        save_tt(tep::tep_table(tt_h, tt_k), tt_out);
        return 0;
    }

    if (tse->parsed()) {
        std::ifstream gs(tse_graph);
        check_arg(static_cast<bool>(gs), "cannot open '" + tse_graph + "'");
        tseitin::graph gr = tseitin::read_graph(gs);
        std::ifstream cs(tse_charge);
        check_arg(static_cast<bool>(cs), "cannot open '" + tse_charge + "'");
        tseitin::instance inst{gr, tseitin::read_charge(cs, gr.n)};
        ordered_json j;
        j["n"] = gr.n;
        j["m"] = gr.m();
        j["satisfiable"] = tseitin::satisfiable(inst);
        if (!tse_table_out.empty()) save_tt(tseitin::tseitin_table(inst), tse_table_out);
        if (tse_fact) j["count"] = tseitin::count_sat(inst);
        if (tse_bound) {
            tseitin::bound_result b = tseitin::tseitin_bound(inst);
            j["bound"] = b.value;
            j["bound_witness_ell"] = b.witness_ell;
        }
        if (tse_cross) {
            tseitin::crosscheck_result cc = tseitin::crosscheck_chat(inst);
            j["bound"] = cc.bound;
            j["chat"] = cc.c_hat;
            j["bound_le_chat"] = cc.holds;
            if (!cc.holds) {
                emit(j, tse_out);
                return 3;
            }
        }
        emit(j, tse_out);
        return 0;
    }

    if (plm->parsed() || plb->parsed() || pll->parsed() || plt->parsed()) {
        geom::plane plane = geom::make_plane(pl_p);
        if (plm->parsed()) {
            geom::mbs_enumeration e = geom::enumerate_mbs(plane, plm_max);
            ordered_json j;
            j["p"] = pl_p;
            j["max_size"] = plm_max;
            j["count_by_size"] = e.count_by_size;
            ordered_json sets = ordered_json::array();
            for (u64 S : e.sets) sets.push_back(mask_to_indices(S));
            j["sets"] = std::move(sets);
            emit(j, plm_out);
            return 0;
        }
        if (plb->parsed()) {
            u64 M = 0;
            if (!plb_mask.empty()) {
                std::ifstream ms(plb_mask);
                check_arg(static_cast<bool>(ms), "cannot open '" + plb_mask + "'");
                u32 pt;
                while (ms >> pt) {
                    check_arg(pt < plane.npoints, "point index out of range");
                    M |= u64(1) << pt;
                }
            } else {
                M = (u64(1) << plane.npoints) - 1;
            }
            geom::blocking_count bc =
                geom::count_blocking_within(plane, M, plb_random == 0, plb_random, plb_seed);
            ordered_json j;
            j["p"] = pl_p;
            j["mask_size"] = popcount64(M);
            if (bc.exact) {
                j["exact"] = true;
                j["blocking"] = bc.blocking;
                j["total"] = bc.total_subsets;
            } else {
                j["exact"] = false;
                j["estimate"] = bc.estimate;
                j["ci_low"] = bc.ci_low;
                j["ci_high"] = bc.ci_high;
                j["samples"] = bc.samples;
            }
            emit(j, plb_out);
            return 0;
        }
        if (pll->parsed()) {
            ordered_json j;
            j["p"] = pl_p;
            j["identity_lemma"] = geom::lemma_identity_check(pl_p);
            if (pl_p <= 5) j["intersecting_points_lemma"] = geom::intersecting_points_check(pl_p);
            emit(j, pll_out);
            return 0;
        }
        if (plt->parsed()) {
            if (plt_which == "gal") save_tt(geom::gal_table(plane), plt_out);
            else if (plt_which == "bw") save_tt(geom::bw_table(plane), plt_out);
            else throw argument_error("--which must be gal or bw");
            return 0;
        }
    }

    if (ge->parsed() || gp->parsed() || gv->parsed()) {
        std::string path = ge->parsed() ? ge_in : gp->parsed() ? gp_in : gv_in;
        std::ifstream is(path);
        check_arg(static_cast<bool>(is), "cannot open '" + path + "'");
        genred::circuit c = genred::parse_circuit(is);
        if (ge->parsed()) {
            check_arg(ge_x.size() == c.n_inputs, "assignment length mismatch");
            std::vector<u32> x;
            for (char ch : ge_x) {
                check_arg(ch == '0' || ch == '1', "assignment must be bits");
                x.push_back(ch == '1');
            }
            std::cout << c.eval(x) << "\n";
            return 0;
        }
        if (gp->parsed()) {
            genred::projection pr = genred::project_to_gen(c);
            ordered_json j;
            j["elements"] = pr.m;
            j["cells"] = pr.cells.size();
            j["inputs"] = pr.n_inputs;
            ordered_json names = ordered_json::array();
            for (u32 e = 1; e <= pr.m; ++e) names.push_back(pr.elem_name[e]);
            j["element_names"] = std::move(names);
            ordered_json cells = ordered_json::array();
            u32 idx = 0;
            for (u32 i = 1; i <= pr.m - 1; ++i)
                for (u32 jj = i; jj <= pr.m - 1; ++jj) {
                    const auto& cl = pr.cells[idx++];
                    ordered_json cj;
                    cj["i"] = i;
                    cj["j"] = jj;
                    if (cl.is_var) {
                        cj["var"] = cl.var;
                        cj["if0"] = cl.if0;
                        cj["if1"] = cl.if1;
                    } else {
                        cj["value"] = cl.value;
                    }
                    cells.push_back(std::move(cj));
                }
            j["table"] = std::move(cells);
            emit(j, gp_out);
            return 0;
        }
        genred::verify_result v = genred::verify_projection(c);
        ordered_json j;
        j["tested"] = v.tested;
        j["read_once"] = v.read_once;
        j["ok"] = v.ok;
        if (!v.ok) j["first_violation"] = v.first_violation;
        emit(j, gv_out);
        return v.ok ? 0 : 3;
    }
    if (gb->parsed()) {
        genred::circuit c = genred::brs_circuit(gb_d);
        std::string text = genred::circuit_to_string(c);
        if (gb_out.empty() || gb_out == "-") {
            std::cout << text;
        } else {
            std::ofstream os(gb_out);
            check_arg(static_cast<bool>(os), "cannot write '" + gb_out + "'");
            os << text;
        }
        return 0;
    }

    if (s->parsed()) {
        auto results = accept::run_suite(s_name);
        ordered_json j;
        ordered_json rs = ordered_json::array();
        bool all = true;
        for (const auto& cr : results) {
            ordered_json e;
            e["name"] = cr.name;
            e["pass"] = cr.pass;
            e["detail"] = cr.detail;
            e["seconds"] = cr.seconds;
            all = all && cr.pass;
            rs.push_back(std::move(e));
            std::cerr << (cr.pass ? "[PASS] " : "[FAIL] ") << cr.name << "\n";
        }
        j["suite"] = s_name;
        j["results"] = std::move(rs);
        j["all_pass"] = all;
        emit(j, s_out);
        return all ? 0 : 3;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const argument_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
