#include <random>

#include "doctest.h"
#include "support.hpp"
#include "syang/errors.hpp"
#include "syang/matrixrep.hpp"
#include "syang/presentations.hpp"

using namespace syang;
using testsupport::P;

TEST_CASE("Cartan images in the supermatrix realization") {
    auto rd = build_root_datum("EED", false);
    auto real = realize(rd, 0);
    CHECK(real.images.at(hgen(2, 0)) == real.unit(1, 1) + real.unit(2, 2));
    CHECK(real.images.at(hgen(1, 0)) == real.unit(0, 0) - real.unit(1, 1));
    auto rd2 = build_root_datum("EDDE", false);
    auto r2 = realize(rd2, 0);
    CHECK(r2.images.at(hgen(2, 0)) == r2.unit(2, 2) - r2.unit(1, 1));
    auto x = r2.images.at(xgen(rd2, 1, 2, 0));
    CHECK(super_commutator(r2.images.at(hgen(2, 0)), x) == x.scaled(-2));
}

TEST_CASE("affine node zero carries the loop variable") {
    auto rd = build_root_datum("EEEDD", true);
    auto real = realize(rd, 2);
    CHECK(real.images.at(xgen(rd, 1, 0, 0)) == real.unit(4, 0, 1));
    CHECK(eval(real, super_bracket(X(rd, 1, 0), X(rd, -1, 0))) == real.images.at(hgen(0, 0)));
}

TEST_CASE("evaluation of brackets and relations") {
    auto rd = build_root_datum("EED", false);
    auto real = realize(rd, 0);
    CHECK(eval(real, super_bracket(X(rd, 1, 1), X(rd, -1, 1))) == real.images.at(hgen(1, 0)));
    CHECK(eval(real, super_bracket(X(rd, 1, 2), X(rd, 1, 2))).is_zero());
    CHECK_THROWS_AS(eval(real, X(rd, 1, 1).scaled(Coeff::hbar())), Error);
    CHECK_THROWS_AS(eval(real, X(rd, 1, 1, 1)), Error);
}

TEST_CASE("Cartan matrix recovered from eigenvalues") {
    for (int S = 2; S <= 5; ++S)
        for (int m = 0; m <= S; ++m)
            for (auto& w : testsupport::shuffles(m, S - m)) {
                auto rd = build_root_datum(w, false);
                auto real = realize(rd, 0);
                for (int i : rd.node_labels())
                    for (int j : rd.node_labels()) {
                        auto x = real.images.at(xgen(rd, 1, j, 0));
                        auto hx = super_commutator(real.images.at(hgen(i, 0)), x);
                        REQUIRE(hx == x.scaled(rd.pair(i, j)));
                    }
            }
}

TEST_CASE("brackets of positive root vectors are nonzero when the sum is a root") {
    for (auto w : {"EED", "EEDD", "EDED", "EEEDD", "DEDED"}) {
        auto rd = build_root_datum(w, false);
        auto real = realize(rd, 0);
        auto pairs = root_vectors(real);
        for (auto& a : pairs)
            for (auto& b : pairs)
                if (is_real_root(rd, a.weight + b.weight))
                    REQUIRE_FALSE(super_commutator(a.pos, b.pos).is_zero());
    }
}

TEST_CASE("Kac-Moody relations hold in the realization") {
    auto rd = build_root_datum("EED", false);
    auto rep = check_relations(realize(rd, 0), kac_moody_relations(rd));
    CHECK(rep.all_ok());
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("a corrupted relation is reported by label") {
    auto rd = build_root_datum("EED", false);
    auto rs = kac_moody_relations(rd);
    RelationSet bad = rs;
    bad.relations = {{"corrupt", super_bracket(X(rd, 1, 1), X(rd, -1, 1)) + Hc(1)}};
    auto rep = check_relations(realize(rd, 0), bad);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].label == "corrupt");
    CHECK(rep.entries[0].verdict == "fail");
    CHECK(rep.exit_code() == 1);
}

TEST_CASE("loop degrees past the cutoff are reported as overflow") {
    auto rd = build_root_datum("EEEDD", true);
    RelationSet rs = kac_moody_relations(rd);
    rs.relations = {{"long", P(rd, "x+(0,0)*x+(1,0)*x+(2,0)*x+(3,0)*x+(4,0)*x+(0,0)")}};
    auto rep = check_relations(realize(rd, 1), rs);
    CHECK(rep.entries[0].verdict == "overflow");
    CHECK(rep.exit_code() == 2);
    CHECK(check_relations(realize(rd, 2), rs).entries[0].verdict == "fail");
}

TEST_CASE("even reflection conjugator on an sl2 block") {
    auto rd = build_root_datum("EED", false);
    auto real = realize(rd, 0);
    auto c = even_reflection_conjugator(real, 1);
    CHECK(c.s == real.unit(0, 1, 0, -1) + real.unit(1, 0) + real.unit(2, 2));
    CHECK(c.s * c.s_inv == SuperMatrixPoly::identity(real.position_parity, 0));
    CHECK(c.conjugate(real.unit(0, 1)) == real.unit(1, 0).scaled(-1));
    auto rd4 = build_root_datum("EEEDD", false);
    auto r4 = realize(rd4, 0);
    auto c4 = even_reflection_conjugator(r4, 1);
    CHECK(c4.conjugate(r4.images.at(hgen(3, 0))) == r4.images.at(hgen(3, 0)));
    CHECK_THROWS_AS(even_reflection_conjugator(real, 2), Error);
}

TEST_CASE("conjugation preserves the supertrace form") {
    auto rd = build_root_datum("EEEDD", true);
    auto real = realize(rd, 1);
    auto c = even_reflection_conjugator(real, 2);
    std::mt19937 rng(9);
    auto rnd = [&] {
        auto m = real.zero();
        for (int k = 0; k < 6; ++k) {
            int a = rng() % 5, b = rng() % 5;
            m = m + real.unit(a, b, 0, Q(int(rng() % 7) - 3));
        }
        return m;
    };
    for (int k = 0; k < 50; ++k) {
        auto x = rnd(), y = rnd();
        REQUIRE((c.conjugate(x) * c.conjugate(y)).supertrace() == (x * y).supertrace());
    }
}

TEST_CASE("root vectors are dual pairs") {
    auto rd = build_root_datum("EED", false);
    auto real = realize(rd, 0);
    auto pairs = root_vectors(real);
    CHECK(pairs.size() == positive_roots(rd, 0).size());
    for (auto& p : pairs) CHECK(pairing(p.pos, p.neg) == 1);
    CHECK(pairing(real.unit(0, 1), real.unit(1, 0)) == 1);
    CHECK(pairing(real.unit(1, 2), real.unit(2, 1)) == 1);
    auto aff = realize(build_root_datum("EED", true), 2);
    CHECK(root_vectors(aff, -1, 1).size() > pairs.size());
}

TEST_CASE("matrices print as entry strings") {
    auto rd = build_root_datum("EED", true);
    auto real = realize(rd, 1);
    auto j = real.images.at(xgen(rd, 1, 0, 0)).to_json();
    CHECK(j.find("t") != std::string::npos);
}
