#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "syang/errors.hpp"
#include "syang/hopf.hpp"
#include "syang/parser.hpp"
#include "syang/suites.hpp"
#include "syang/weyl.hpp"

using namespace syang;
using ojson = nlohmann::ordered_json;

namespace {

struct Common {
    std::string word;
    bool affine = false;
    int loop_cutoff = -1;
    int height_cutoff = -1;
    int maxlen = -1;
    std::vector<int> index;
    bool json = false;
    bool text = false;
    int jobs = 1;
    bool timing = false;

    RootDatum datum() const {
        if (word.empty()) throw Error("--word is required");
        return build_root_datum(word, affine);
    }
    int idx() const {
        if (index.size() != 1) throw Error("exactly one --index is required");
        return index[0];
    }
    int L(int dflt) const { return maxlen < 0 ? dflt : maxlen; }
    int N(const RootDatum& rd, int dflt) const {
        if (!rd.affine) return 0;
        return loop_cutoff < 0 ? dflt : loop_cutoff;
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--word", c.word, "epsilon/delta word, e.g. EEEDD");
    app->add_flag("--affine", c.affine, "affine datum");
    app->add_option("--loop-cutoff", c.loop_cutoff, "loop degree cutoff N");
    app->add_option("--height-cutoff", c.height_cutoff, "finite root height cutoff H");
    app->add_option("--maxlen", c.maxlen, "word length bound L for ideal membership");
    app->add_option("--index", c.index, "node label (repeat for a reflection word)");
    auto* j = app->add_flag("--json", c.json, "JSON output (default)");
    auto* t = app->add_flag("--text", c.text, "text output");
    j->excludes(t);
    app->add_option("--jobs", c.jobs, "worker threads for relation checks")->check(CLI::PositiveNumber);
    app->add_flag("--timing", c.timing, "report elapsed times");
}

int emit(const Common& c, Report rep) {
    if (!c.timing)
        for (auto& e : rep.entries) e.elapsed_ms = 0;
    std::cout << (c.text ? rep.to_text() : rep.to_json() + "\n");
    return rep.exit_code();
}

void emit_json(const ojson& j) { std::cout << j.dump(2) << "\n"; }

std::string weight_json_text(const WeightVector& w) { return weight_to_string(w); }

int cmd_cartan(const Common& c) {
    auto rd = c.datum();
    auto cm = cartan_matrix(rd);
    if (c.text) {
        for (auto& row : cm.entries) {
            for (size_t k = 0; k < row.size(); ++k) std::cout << (k ? " " : "") << row[k];
            std::cout << "\n";
        }
        return 0;
    }
    ojson j;
    j["schema"] = "syang/1";
    j["word"] = rd.word;
    j["affine"] = rd.affine;
    j["labels"] = cm.labels;
    j["parity"] = cm.parity;
    j["matrix"] = cm.entries;
    emit_json(j);
    return 0;
}

int cmd_dynkin(const Common& c, bool dot) {
    auto rd = c.datum();
    auto d = dynkin_diagram(rd);
    if (dot) {
        std::cout << d.to_dot();
        return 0;
    }
    if (c.text) {
        std::cout << d.to_ascii() << "\n";
        return 0;
    }
    ojson j;
    j["schema"] = "syang/1";
    j["word"] = rd.word;
    j["affine"] = rd.affine;
    j["nodes"] = ojson::array();
    for (auto& n : d.nodes) j["nodes"].push_back({{"label", n.label}, {"grey", n.grey}});
    j["edges"] = ojson::array();
    for (auto& [a, b] : d.edges) j["edges"].push_back({a, b});
    emit_json(j);
    return 0;
}

int cmd_posroots(const Common& c) {
    auto rd = c.datum();
    auto roots = positive_roots(rd, c.N(rd, 1));
    if (c.text) {
        for (auto& r : roots)
            std::cout << weight_to_string(r.weight) << (r.parity ? " odd" : " even") << " mult " << r.multiplicity
                      << "\n";
        return 0;
    }
    ojson j;
    j["schema"] = "syang/1";
    j["word"] = rd.word;
    j["roots"] = ojson::array();
    for (auto& r : roots)
        j["roots"].push_back(
            {{"weight", weight_json_text(r.weight)}, {"parity", r.parity}, {"multiplicity", r.multiplicity}});
    emit_json(j);
    return 0;
}

int cmd_reflect(const Common& c) {
    auto rd = c.datum();
    if (c.index.empty()) throw Error("--index is required");
    auto res = apply_word({rd, c.index});
    if (c.text) {
        std::cout << res.datum.word << "\n";
        for (size_t p = 0; p < res.root_images.size(); ++p)
            std::cout << "alpha_" << rd.node_label(static_cast<int>(p)) << " -> "
                      << weight_to_string(res.root_images[p]) << "\n";
        return 0;
    }
    ojson j;
    j["schema"] = "syang/1";
    j["start"] = rd.word;
    j["indices"] = c.index;
    j["word"] = res.datum.word;
    j["root_images"] = ojson::array();
    for (size_t p = 0; p < res.root_images.size(); ++p)
        j["root_images"].push_back(
            {{"label", rd.node_label(static_cast<int>(p))}, {"image", weight_to_string(res.root_images[p])}});
    emit_json(j);
    return 0;
}

int cmd_orbit(const Common& c, bool dot) {
    auto rd = c.datum();
    auto g = orbit_from(rd);
    if (dot)
        std::cout << g.to_dot();
    else if (c.text) {
        std::cout << g.nodes.size() << " nodes, " << g.edges.size() << " edges\n";
        for (auto& n : g.nodes) std::cout << n << "\n";
    } else {
        auto j = ojson::parse(g.to_json());
        emit_json(j);
    }
    return 0;
}

std::vector<std::string> lemma_families() { return {"xpxm1a", "xpxm1b", "shift+", "shift-"}; }

int cmd_normalize(const Common& c, const std::string& expr) {
    auto rd = c.datum();
    Parsed p = parse_expression(expr, rd);
    IdealEngine eng(minimalistic_relations(rd));
    IdealOptions opt;
    opt.L = c.L(4);
    ojson j;
    j["schema"] = "syang/1";
    std::string verdict, witness;
    if (auto* e = std::get_if<Element>(&p)) {
        Element r = rewrite_h1(*e);
        j["normal_form"] = r.to_string();
        Verdict v;
        v.verdict = "member";
        if (!r.is_zero()) v = eng.is_member(r, opt);
        verdict = v.verdict;
        witness = v.witness_text();
    } else {
        TensorElement t = rewrite_h1(std::get<TensorElement>(p));
        j["normal_form"] = t.to_string();
        TensorVerdict v;
        v.verdict = "member";
        if (!t.is_zero()) v = eng.tensor_member(t, opt);
        verdict = v.verdict;
    }
    j["verdict"] = verdict;
    j["reduces_to_zero"] = verdict == "member";
    if (!witness.empty()) j["witness"] = witness;
    if (c.text)
        std::cout << j["normal_form"].get<std::string>() << "\n" << verdict << "\n";
    else
        emit_json(j);
    return 0;
}

int cmd_serre(const Common& c, const std::vector<int>& rows) {
    auto rd = c.datum();
    if (rows.size() != 3) throw Error("--rows takes three labels");
    auto sb = serre_block_determinant(rd, c.idx(), {rows[0], rows[1], rows[2]});
    if (c.text) {
        for (auto& r : sb.matrix) std::cout << r[0] << " " << r[1] << " " << r[2] << "\n";
        std::cout << "det " << sb.determinant << "\n";
        return 0;
    }
    ojson j;
    j["schema"] = "syang/1";
    j["rows"] = rows;
    j["matrix"] = sb.matrix;
    j["determinant"] = sb.determinant;
    emit_json(j);
    return 0;
}

std::vector<int> odd_nodes(const RootDatum& rd) {
    std::vector<int> out;
    for (int l : rd.node_labels())
        if (rd.root_parity(l)) out.push_back(l);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root data, reflections and super Yangian verification"};
    app.require_subcommand(1);
    Common c;
    std::function<int()> action;

    auto* roots = app.add_subcommand("roots", "root data")->require_subcommand(1);
    auto* cartan = roots->add_subcommand("cartan", "symmetric Cartan matrix");
    add_common(cartan, c);
    cartan->callback([&] { action = [&] { return cmd_cartan(c); }; });
    bool dot = false;
    auto* dynkin = roots->add_subcommand("dynkin", "Dynkin diagram");
    add_common(dynkin, c);
    dynkin->add_flag("--dot", dot, "Graphviz output");
    dynkin->callback([&] { action = [&] { return cmd_dynkin(c, dot); }; });
    auto* pos = roots->add_subcommand("posroots", "positive roots (loop degrees up to --loop-cutoff)");
    add_common(pos, c);
    pos->callback([&] { action = [&] { return cmd_posroots(c); }; });

    auto* weyl = app.add_subcommand("weyl", "Weyl groupoid")->require_subcommand(1);
    auto* reflect = weyl->add_subcommand("reflect", "apply simple reflections in --index order");
    add_common(reflect, c);
    reflect->callback([&] { action = [&] { return cmd_reflect(c); }; });
    auto* orb = weyl->add_subcommand("orbit", "odd-reflection orbit of --word");
    add_common(orb, c);
    orb->add_flag("--dot", dot, "Graphviz output");
    orb->callback([&] { action = [&] { return cmd_orbit(c, dot); }; });

    auto* verify = app.add_subcommand("verify", "verification suites")->require_subcommand(1);
    auto* km = verify->add_subcommand("kac-moody", "Kac-Moody relations in the realization");
    add_common(km, c);
    km->callback([&] {
        action = [&] {
            auto rd = c.datum();
            return emit(c, verify_kac_moody(rd, c.N(rd, 3)));
        };
    });

    bool classical = false;
    std::vector<std::string> families;
    auto* rh = verify->add_subcommand("reflection-hom", "reflection images of the level-one mixed relations");
    add_common(rh, c);
    rh->add_flag("--classical", classical, "Lie-level map on the Kac-Moody relations");
    rh->add_option("--family", families, "relation families (default xpxm1a xpxm1b shift+ shift-)");
    rh->callback([&] {
        action = [&] {
            auto rd = c.datum();
            if (classical) return emit(c, verify_classical_reflection(rd, c.idx(), c.L(4), c.jobs));
            auto fam = families.empty() ? lemma_families() : families;
            return emit(c, verify_quantum_reflection(rd, c.idx(), fam, c.L(5), c.jobs));
        };
    });

    auto* yr = verify->add_subcommand("yangian-reflection", "quantum reflection on every minimalistic relation");
    add_common(yr, c);
    yr->add_option("--family", families, "restrict to relation families");
    yr->callback([&] {
        action = [&] { return emit(c, verify_quantum_reflection(c.datum(), c.idx(), families, c.L(5), c.jobs)); };
    });

    bool literal = false;
    auto* cc = verify->add_subcommand("coproduct-compat", "coproduct against the odd quantum reflection");
    add_common(cc, c);
    cc->add_flag("--literal-shift", literal, "use x+ @ x- - x- @ x+ for the Casimir shift");
    cc->callback([&] {
        action = [&] {
            CompatOptions opt;
            opt.ideal.L = c.L(4);
            opt.literal_shift = literal;
            auto rd = c.datum();
            opt.fit = {-1, std::max(1, c.N(rd, 1))};
            return emit(c, verify_reflection_compat(rd, c.idx(), opt));
        };
    });

    auto* cs = verify->add_subcommand("casimir-shift", "(T @ T)(Omega) - Omega at every odd node");
    add_common(cs, c);
    cs->callback([&] {
        action = [&] {
            auto rd = c.datum();
            auto nodes = c.index.empty() ? odd_nodes(rd) : c.index;
            return emit(c, verify_casimir_shift(rd, nodes, {c.height_cutoff, c.N(rd, 2)}));
        };
    });

    auto* cr = verify->add_subcommand("correspondence", "(Delta - Delta^op)(h(i,1)) against the cobracket");
    add_common(cr, c);
    cr->callback([&] {
        action = [&] {
            auto rd = c.datum();
            auto nodes = c.index.empty() ? rd.node_labels() : c.index;
            return emit(c, verify_correspondence(rd, nodes, {c.height_cutoff, c.N(rd, 2)}));
        };
    });

    auto* ca = verify->add_subcommand("coassoc", "coassociativity on level-0 letters and h(i,1)");
    add_common(ca, c);
    ca->callback([&] {
        action = [&] {
            auto rd = c.datum();
            std::vector<Gen> gens;
            for (int l : c.index.empty() ? rd.node_labels() : c.index) {
                gens.push_back(hgen(l, 0));
                gens.push_back(xgen(rd, 1, l, 0));
                gens.push_back(xgen(rd, -1, l, 0));
                gens.push_back(hgen(l, 1));
            }
            Report rep = verify_coassoc(rd, gens, c.height_cutoff < 0 ? 2 : c.height_cutoff);
            rep.append(verify_counit(rd));
            return emit(c, rep);
        };
    });

    int rs_max = 2;
    auto* dl = verify->add_subcommand("drinfeld-lift", "Drinfeld relations under the generator lift");
    add_common(dl, c);
    dl->add_option("--rs-max", rs_max, "largest r + s among relation levels");
    dl->callback([&] {
        action = [&] { return emit(c, verify_drinfeld_lift(c.datum(), std::max(2, rs_max), rs_max, c.L(5), c.jobs)); };
    });

    std::string expr;
    auto* norm = app.add_subcommand("normalize", "reduce an expression modulo the minimalistic relations");
    add_common(norm, c);
    norm->add_option("expr", expr, "expression")->required();
    norm->callback([&] { action = [&] { return cmd_normalize(c, expr); }; });

    std::vector<int> rows;
    auto* serre = app.add_subcommand("serre-block", "3x3 Cartan block around --index");
    add_common(serre, c);
    serre->add_option("--rows", rows, "three row labels")->expected(3);
    serre->callback([&] { action = [&] { return cmd_serre(c, rows.empty() ? std::vector<int>{} : rows); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }
    try {
        if (rows.empty() && serre->parsed()) {
            auto rd = c.datum();
            int j = c.idx();
            rows = {rd.prev_node(j), j, rd.next_node(j)};
        }
        return action();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
