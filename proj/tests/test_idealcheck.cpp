#include "doctest.h"
#include "support.hpp"
#include "syang/errors.hpp"
#include "syang/idealcheck.hpp"
#include "syang/presentations.hpp"

using namespace syang;
using testsupport::P;

namespace {

// Rank over Q of a list of elements with constant coefficients.
size_t rank_oracle(const std::vector<Element>& rows) {
    std::vector<std::map<Word, Q>> m;
    for (auto& e : rows) {
        std::map<Word, Q> r;
        for (auto& [w, c] : e.terms()) r[w] = c.at(0);
        m.push_back(r);
    }
    size_t rank = 0;
    for (size_t col = 0; col < m.size(); ++col) {
        // pick any remaining nonzero row, eliminate its leading word from the rest
        size_t p = rank;
        while (p < m.size() && m[p].empty()) ++p;
        if (p == m.size()) break;
        std::swap(m[rank], m[p]);
        auto [lead, lc] = *m[rank].begin();
        for (size_t r = rank + 1; r < m.size(); ++r) {
            auto it = m[r].find(lead);
            if (it == m[r].end()) continue;
            Q f = it->second / lc;
            for (auto& [w, c] : m[rank]) {
                m[r][w] -= f * c;
                if (m[r][w] == 0) m[r].erase(w);
            }
        }
        ++rank;
    }
    return rank;
}

struct Eed {
    RootDatum rd = build_root_datum("EED", true);
    RelationSet mini = minimalistic_relations(rd);
};

}  // namespace

TEST_CASE("span of a single commutator matches brute force") {
    auto rd = build_root_datum("EED", true);
    RelationSet rs{"hh", rd, minimalistic_catalog(rd), {{"hh", super_bracket(Hc(1), Hc(2))}}};
    IdealEngine eng(rs);
    std::vector<Gen> supp{hgen(1, 0), hgen(2, 0)};
    Element rel = rs.relations[0].element;
    std::vector<Element> rows{rel};
    for (auto& g : supp) {
        rows.push_back(Element(g) * rel);
        rows.push_back(rel * Element(g));
    }
    CHECK(eng.span_dimension(supp, 3, 0) == rank_oracle(rows));
    CHECK(eng.span_dimension(supp, 2, 0) == 1);
}

TEST_CASE("span dimension is monotone in the length bound") {
    Eed e;
    IdealEngine eng(e.mini);
    auto supp = eng.node_letters({1, 2});
    size_t prev = 0;
    for (int L = 2; L <= 4; ++L) {
        size_t d = eng.span_dimension(supp, L, 2);
        CHECK(d >= prev);
        prev = d;
    }
    CHECK(prev > 0);
}

TEST_CASE("relations are members of their own ideal") {
    Eed e;
    IdealEngine eng(e.mini);
    IdealOptions opt;
    opt.L = 4;
    for (auto& r : e.mini.relations) {
        auto v = eng.is_member(r.element, opt);
        REQUIRE_MESSAGE(v.member(), r.label);
        REQUIRE(eng.expand(v.witness) == rewrite_h1(r.element));
    }
}

TEST_CASE("known member and a non-member") {
    Eed e;
    IdealEngine eng(e.mini);
    IdealOptions opt;
    opt.L = 3;
    Element a = P(e.rd, "h(2,0)*x+(1,1) - x+(1,1)*h(2,0) + x+(1,1)");
    auto v = eng.is_member(a, opt);
    CHECK(v.member());
    CHECK(eng.expand(v.witness) == rewrite_h1(a));
    auto n = eng.is_member(X(e.rd, 1, 1), opt);
    CHECK(n.verdict == "not-found-at-bound");
    CHECK(n.L == 3);
    CHECK_FALSE(n.support.empty());
}

TEST_CASE("consequences need longer words") {
    Eed e;
    IdealEngine eng(e.mini);
    // [x+(1,0),[h(1,0),x-(1,0)]] = -2[x+(1,0),x-(1,0)] = -2 h(1,0) in the quotient
    Element a = super_bracket(X(e.rd, 1, 1), super_bracket(Hc(1), X(e.rd, -1, 1))) + Hc(1).scaled(2);
    CHECK(eng.is_member(a, eng.node_letters({1}), 3).member());
    CHECK_FALSE(eng.is_member(a, eng.node_letters({1}), 2).member());
}

TEST_CASE("rewrite of level one Cartan letters") {
    Element r = rewrite_h1(Hc(1, 1));
    CHECK(r == Ht(1) + (Hc(1) * Hc(1)).scaled(Coeff::hbar(1, Q(1, 2))));
}

TEST_CASE("length bound is validated") {
    Eed e;
    IdealEngine eng(e.mini);
    CHECK_THROWS_AS(eng.is_member(Hc(1), eng.node_letters({1}), 0), Error);
}

TEST_CASE("reflection images of shift relations are members") {
    auto rd = build_root_datum("EEEDD", true);
    auto q = quantum_reflection(rd, 3);
    auto src = minimalistic_relations(rd);
    IdealEngine eng(minimalistic_relations(q.target));
    IdealOptions opt;
    opt.L = 4;
    for (auto lab : {"shift+(1,2)", "xpxm1a(1,1)", "shift-(3,4)"}) {
        auto v = eng.is_member(substitute(q.map, src.find(lab)->element), opt);
        REQUIRE_MESSAGE(v.member(), lab);
        CHECK(eng.expand(v.witness) == rewrite_h1(substitute(q.map, src.find(lab)->element)));
    }
    GeneratorMap bad = q.map;
    bad.images[xgen(rd, 1, 2, 1)] = -bad.images[xgen(rd, 1, 2, 1)];
    RelationSet one = src;
    one.relations = {*src.find("shift+(1,2)")};
    auto rep = verify_hom(bad, one, eng, opt);
    CHECK(rep.entries[0].verdict == "not-found-at-bound");
    CHECK(rep.exit_code() == 2);
}

TEST_CASE("tensor ideal membership") {
    Eed e;
    IdealEngine eng(e.mini);
    IdealOptions opt;
    opt.L = 3;
    Element rho = e.mini.find("xpxm1a(1,1)")->element;
    auto v = eng.tensor_member(tensor(rho, X(e.rd, 1, 2)), opt);
    CHECK(v.member());
    CHECK(eng.expand(v.witness, 2) == rewrite_h1(tensor(rho, X(e.rd, 1, 2))));
    auto b = eng.tensor_member(boxed(rho), opt);
    CHECK(b.member());
    CHECK(eng.expand(b.witness, 2) == rewrite_h1(boxed(rho)));
    CHECK_FALSE(eng.tensor_member(tensor(Hc(1), X(e.rd, 1, 2)), opt).member());
}
