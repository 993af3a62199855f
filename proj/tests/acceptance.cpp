// Acceptance suite: one PASS/FAIL line per criterion, supplementary lines indented below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "syang/hopf.hpp"
#include "syang/idealcheck.hpp"
#include "syang/matrixrep.hpp"
#include "syang/presentations.hpp"
#include "syang/suites.hpp"
#include "syang/weyl.hpp"

using namespace syang;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes;  // supplementary lines
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::vector<std::string> words_of(int m, int n) {
    std::string s = std::string(m, 'E') + std::string(n, 'D');
    std::sort(s.begin(), s.end());
    std::vector<std::string> out;
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

std::string count_line(const Report& r) {
    return r.name + " " + std::to_string(r.count_ok()) + "/" + std::to_string(r.entries.size());
}

std::string first_bad(const Report& r) {
    for (auto& e : r.entries)
        if (!e.ok()) return e.label + " " + e.verdict;
    return "";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome c1_cartan() {
    Outcome o;
    size_t checked = 0;
    auto check = [&](const RootDatum& rd) {
        auto cm = cartan_matrix(rd);
        size_t k = cm.labels.size();
        for (size_t p = 0; p < k; ++p) {
            o.require((cm.entries[p][p] == 0) == (cm.parity[p] == 1), rd.word + " diagonal at " + std::to_string(p));
            for (size_t q = 0; q < k; ++q)
                o.require(cm.entries[p][q] == cm.entries[q][p], rd.word + " not symmetric");
        }
        for (int l : rd.node_labels()) {
            int nx = rd.next_node(l);
            if (nx < 0) continue;
            int a = rd.pair(l, nx);
            o.require(a == 1 || a == -1, rd.word + " consecutive entry " + std::to_string(a));
        }
        ++checked;
    };
    for (int S = 1; S <= 6; ++S)
        for (int m = 0; m <= S; ++m)
            for (auto& w : words_of(m, S - m)) check(build_root_datum(w, false));
    for (int m = 0; m <= 5; ++m)
        for (auto& w : words_of(m, 5 - m)) check(build_root_datum(w, true));
    // distinguished words: chain, and the affine node closing the cycle
    for (int S = 2; S <= 6; ++S)
        for (int m = 0; m <= S; ++m) {
            std::string w = std::string(m, 'E') + std::string(S - m, 'D');
            for (bool aff : {false, true}) {
                if (aff && S < 3) continue;
                auto rd = build_root_datum(w, aff);
                std::set<std::pair<int, int>> got, want;
                for (auto [a, b] : dynkin_diagram(rd).edges) got.insert({std::min(a, b), std::max(a, b)});
                for (int l = 1; l + 1 < S; ++l) want.insert({l, l + 1});
                if (aff) {
                    want.insert({0, 1});
                    want.insert({0, S - 1});
                }
                o.require(got == want, w + (aff ? " affine" : "") + " diagram adjacency");
            }
        }
    if (o.pass) o.detail = std::to_string(checked) + " data";
    return o;
}

Outcome c2_kac_moody() {
    Outcome o;
    size_t n = 0;
    for (int S = 2; S <= 5; ++S)
        for (int m = 0; m <= S; ++m)
            for (auto& w : words_of(m, S - m)) {
                auto r = verify_kac_moody(build_root_datum(w, false), 0);
                o.require(r.all_ok(), w + " " + first_bad(r));
                n += r.entries.size();
            }
    for (auto w : {"EEEDD", "EEDED"}) {
        auto r = verify_kac_moody(build_root_datum(w, true), 3);
        o.require(r.all_ok(), std::string(w) + " affine " + first_bad(r));
        n += r.entries.size();
    }
    if (o.pass) o.detail = std::to_string(n) + " relations";
    return o;
}

Outcome c3_orbits() {
    Outcome o;
    std::string d;
    for (auto [m, n] : {std::pair{2, 1}, {2, 2}, {3, 2}}) {
        auto g = orbit(m, n, false);
        auto ws = words_of(m, n);
        long binom = 1;
        for (int k = 1; k <= n; ++k) binom = binom * (m + k) / k;
        o.require(static_cast<long>(g.nodes.size()) == binom, "orbit size");
        o.require(std::set<std::string>(g.nodes.begin(), g.nodes.end()) == std::set<std::string>(ws.begin(), ws.end()),
                  "orbit differs from word enumeration");
        d += "(" + std::to_string(m) + "," + std::to_string(n) + ")=" + std::to_string(g.nodes.size()) + " ";
    }
    if (o.pass) o.detail = d;
    return o;
}

Outcome c4_classical(int L, int jobs) {
    Outcome o;
    std::string d;
    auto fin = build_root_datum("EEEDD", false);
    auto aff = build_root_datum("EEEDD", true);
    std::vector<std::pair<RootDatum, int>> cases;
    for (auto* rd : {&fin, &aff})
        for (int i : rd->node_labels())
            if (rd->root_parity(i) == 1) cases.push_back({*rd, i});
    for (auto& [rd, i] : cases) {
        auto r = verify_classical_reflection(rd, i, L, jobs);
        bool zero = true;
        for (auto& e : r.entries) zero = zero && e.verdict != "fail" && e.verdict != "overflow";
        o.require(zero, "matrix image nonzero");
        o.require(r.all_ok(), (rd.affine ? "affine " : "finite ") + count_line(r) + " first " + first_bad(r));
        d += (rd.affine ? "affine " : "finite ") + count_line(r) + " ";
    }
    if (o.pass) o.detail = d;
    return o;
}

Outcome c5_lemma_families(int jobs) {
    Outcome o;
    auto rd = build_root_datum("EEEDD", true);
    std::string d;
    for (int i : rd.node_labels()) {
        if (rd.root_parity(i) != 1) continue;
        auto r = verify_quantum_reflection(rd, i, {"xpxm1a", "xpxm1b", "shift+", "shift-"}, 5, jobs);
        o.require(r.all_ok(), count_line(r) + " first " + first_bad(r));
        d += count_line(r) + " ";
    }
    if (o.pass) o.detail = d;
    return o;
}

Outcome c6_even(int L, int jobs) {
    Outcome o;
    auto rd = build_root_datum("EEEDD", true);
    std::string d;
    for (int i : rd.node_labels()) {
        if (rd.root_parity(i) != 0) continue;
        auto r = verify_quantum_reflection(rd, i, {}, L, jobs);
        o.require(r.all_ok(), count_line(r) + " first " + first_bad(r));
        d += count_line(r) + " ";
    }
    if (o.pass) o.detail = d;
    return o;
}

Outcome c7_correspondence() {
    Outcome o;
    auto rd = build_root_datum("EEEDD", true);
    auto r = verify_correspondence(rd, rd.node_labels(), {-1, 2});
    o.require(r.all_ok(), first_bad(r));
    o.detail = count_line(r);
    return o;
}

Outcome c8_casimir_shift() {
    Outcome o;
    auto rd = build_root_datum("EEEDD", true);
    bool symmetric = true;
    std::string d;
    for (int i : rd.node_labels()) {
        if (rd.root_parity(i) != 1) continue;
        auto s = casimir_shift(quantum_reflection(rd, i), i, {-1, 2});
        std::string ab = s.fitted ? "a=" + s.a.get_str() + " b=" + s.b.get_str() : "unfitted";
        d += "i=" + std::to_string(i) + " " + ab + " ";
        o.require(s.fitted && s.a == 1 && s.b == -1, "i=" + std::to_string(i) + " " + ab);
        symmetric = symmetric && s.fitted && s.a == -1 && s.b == -1;
    }
    if (o.pass) o.detail = d;
    o.notes.push_back(std::string(symmetric ? "PASS" : "FAIL") +
                      " shift equals -(x+ (x) x- + x- (x) x+) for each odd i: " + d);
    return o;
}

Outcome c9_compat(int L) {
    Outcome o;
    auto rd = build_root_datum("EEEDD", true);
    std::string d;
    for (int i : rd.node_labels()) {
        if (rd.root_parity(i) != 1) continue;
        CompatOptions opt;
        opt.ideal.L = L;
        std::vector<Residual> res;
        auto r = verify_reflection_compat(rd, i, opt, &res);
        o.require(r.all_ok(), "i=" + std::to_string(i) + " " + first_bad(r));
        size_t matched = 0, with_expected = 0;
        for (auto& p : res) {
            if (!p.has_expected) continue;
            ++with_expected;
            bool ok = rewrite_h1(p.p) == rewrite_h1(p.expected);
            matched += ok;
            o.require(ok, "i=" + std::to_string(i) + " residual " + p.g.to_string() + " = " + p.p.to_string());
            if (i == 3 && (p.g == htilde(2) || p.g == htilde(3) || p.g == xgen(rd, 1, 3, 1)))
                o.notes.push_back("p(" + p.g.to_string() + ") = " + (p.p.is_zero() ? "0" : p.p.to_string()));
        }
        d += "i=" + std::to_string(i) + " " + std::to_string(r.count_ok()) + "/" + std::to_string(r.entries.size()) +
             " members, residuals " + std::to_string(matched) + "/" + std::to_string(with_expected) + " ";
        if (i == 3) {
            CompatOptions lit = opt;
            lit.literal_shift = true;
            auto rl = verify_reflection_compat(rd, i, lit);
            o.notes.push_back(std::string(rl.all_ok() ? "PASS" : "FAIL") +
                              " literal antisymmetric shift substituted for the computed one, i=3: " +
                              std::to_string(rl.count_ok()) + "/" + std::to_string(rl.entries.size()));
        }
    }
    if (o.pass) o.detail = d;
    return o;
}

Outcome c10_drinfeld(int jobs) {
    Outcome o;
    auto rd = build_root_datum("EEEDD", true);
    auto r = verify_drinfeld_lift(rd, 2, 2, 5, jobs);
    std::map<std::string, int> bad;
    for (auto& e : r.entries)
        if (!e.ok()) bad[e.label.substr(0, e.label.find('(')) + " " + e.verdict]++;
    o.require(r.all_ok(), count_line(r));
    if (o.pass) o.detail = count_line(r);
    for (auto& [k, v] : bad) o.notes.push_back(k + ": " + std::to_string(v));
    return o;
}

Outcome c11_properties() {
    Outcome o;
    // double odd reflection
    for (int S = 3; S <= 5; ++S)
        for (int m = 0; m <= S; ++m)
            for (auto& w : words_of(m, S - m))
                for (bool aff : {false, true}) {
                    auto rd = build_root_datum(w, aff);
                    for (int i : rd.node_labels())
                        if (rd.root_parity(i) == 1) {
                            auto res = apply_word({rd, {i, i}});
                            o.require(res.datum == rd && res.root_images == rd.simple_roots, "involution " + w);
                        }
                }
    // super Jacobi on random homogeneous triples
    auto rd = build_root_datum("EED", true);
    std::vector<Gen> letters;
    for (int l : rd.node_labels())
        for (int lev : {0, 1}) letters.insert(letters.end(), {hgen(l, lev), xgen(rd, 1, l, lev), xgen(rd, -1, l, lev)});
    std::mt19937 rng(4242);
    auto rnd = [&](int parity, int terms) {
        Element e;
        while (static_cast<int>(e.size()) < terms) {
            Word w;
            int len = 1 + static_cast<int>(rng() % 2);
            for (int k = 0; k < len; ++k) w.push_back(letters[rng() % letters.size()]);
            if (word_parity(w) != parity) continue;
            int c = static_cast<int>(rng() % 9) - 4;
            if (c) e += Element(w, Coeff::hbar(static_cast<int>(rng() % 2), Q(c)));
        }
        return e;
    };
    int jac = 0;
    for (int k = 0; k < 1000; ++k) {
        int pa = rng() % 2, pb = rng() % 2, pc = rng() % 2;
        Element a = rnd(pa, 2), b = rnd(pb, 2), c = rnd(pc, 1);
        Element lhs = super_bracket(a, super_bracket(b, c));
        Element rhs = super_bracket(super_bracket(a, b), c) + super_bracket(b, super_bracket(a, c)).scaled(pa && pb ? -1 : 1);
        jac += lhs == rhs;
    }
    o.require(jac == 1000, "super Jacobi " + std::to_string(jac) + "/1000");
    // witness re-expansion and span monotonicity
    auto mini = minimalistic_relations(rd);
    IdealEngine eng(mini);
    IdealOptions opt;
    opt.L = 4;
    size_t members = 0, reexpanded = 0;
    auto q = quantum_reflection(rd, 2);
    IdealEngine teng(minimalistic_relations(q.target));
    for (auto& r : mini.relations) {
        for (auto* e : {&eng, &teng}) {
            Element a = e == &eng ? r.element : substitute(q.map, r.element);
            auto v = e->is_member(a, opt);
            if (!v.member()) continue;
            ++members;
            reexpanded += e->expand(v.witness) == rewrite_h1(a);
        }
    }
    o.require(members == reexpanded, "witness re-expansion " + std::to_string(reexpanded) + "/" + std::to_string(members));
    size_t prev = 0;
    for (int L = 2; L <= 4; ++L) {
        size_t dim = eng.span_dimension(eng.node_letters({1, 2}), L, 2);
        o.require(dim >= prev, "span dimension decreased at L=" + std::to_string(L));
        prev = dim;
    }
    // sigma^2 = id
    int flips = 0;
    for (int k = 0; k < 200; ++k) {
        TensorElement t = tensor(rnd(rng() % 2, 2), rnd(rng() % 2, 2)) + tensor(rnd(rng() % 2, 1), rnd(rng() % 2, 1));
        flips += flip(flip(t)) == t;
    }
    o.require(flips == 200, "flip involution");
    auto cu = verify_counit(build_root_datum("EEEDD", true));
    o.require(cu.all_ok(), "counit " + first_bad(cu));
    if (o.pass)
        o.detail = "jacobi 1000/1000, witnesses " + std::to_string(reexpanded) + "/" + std::to_string(members) +
                   ", counit " + std::to_string(cu.count_ok()) + "/" + std::to_string(cu.entries.size());
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::vector<int> only, expect_fail;
    int jobs = 1;
    app.add_option("--only", only, "criteria to run");
    app.add_option("--expect-fail", expect_fail, "criteria whose FAIL does not change the exit status")->delimiter(',');
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        std::string name;
        double limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> crit = {
        {1, "cartan and diagram suite", 5, c1_cartan},
        {2, "Kac-Moody realization", 10, c2_kac_moody},
        {3, "odd reflection orbit counts", 5, c3_orbits},
        {4, "classical reflection images at L=4", 60, [&] { return c4_classical(4, jobs); }},
        {5, "odd quantum reflection, shift and level-one bracket families, L<=5", 600,
         [&] { return c5_lemma_families(jobs); }},
        {6, "even quantum reflection, all minimalistic relations, L<=4", 600, [&] { return c6_even(4, jobs); }},
        {7, "correspondence principle, EEEDD affine, N=2", 30, c7_correspondence},
        {8, "Casimir shift equals x+ (x) x- - x- (x) x+", 30, c8_casimir_shift},
        {9, "coproduct compatibility residuals, L=4", 900, [] { return c9_compat(4); }},
        {10, "Drinfeld lift, r+s<=2, L<=5", 1200, [&] { return c10_drinfeld(jobs); }},
        {11, "property suites", 60, c11_properties},
    };

    int unexpected = 0;
    for (auto& c : crit) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double s = seconds_since(t0);
        if (s >= c.limit) o.require(false, "time limit " + std::to_string(int(c.limit)) + " s exceeded");
        std::printf("%s criterion %d: %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), s,
                    o.detail.c_str());
        for (auto& n : o.notes) std::printf("    %s\n", n.c_str());
        // supplementary runs at bounds that hold the relation images
        if (c.id == 4) {
            auto t1 = std::chrono::steady_clock::now();
            auto s6 = c4_classical(6, jobs);
            std::printf("    %s same check at L=6 (%.1f s) %s\n", s6.pass ? "PASS" : "FAIL", seconds_since(t1),
                        s6.detail.c_str());
        }
        if (c.id == 6) {
            auto t1 = std::chrono::steady_clock::now();
            auto s6 = c6_even(6, jobs);
            std::printf("    %s same check at L=6 (%.1f s) %s\n", s6.pass ? "PASS" : "FAIL", seconds_since(t1),
                        s6.detail.c_str());
        }
        std::fflush(stdout);
        if (!o.pass && std::find(expect_fail.begin(), expect_fail.end(), c.id) == expect_fail.end()) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
