#include "doctest.h"
#include "support.hpp"
#include "syang/hopf.hpp"
#include "syang/idealcheck.hpp"

using namespace syang;

namespace {

bool only_root_letters(const TensorElement& t) {
    for (auto& [tw, c] : t.terms())
        for (auto& w : tw)
            for (auto& g : w)
                if (!g.is_x()) return false;
    return true;
}

}  // namespace

TEST_CASE("half Casimir of EED") {
    auto rd = build_root_datum("EED", false);
    auto om = omega_plus(rd, {-1, 0});
    CHECK(om.summands() == 5);
    auto cart = omega_plus(rd, {0, 0});
    CHECK(cart.summands() == 2);
}

TEST_CASE("full Casimir is symmetric") {
    auto rd = build_root_datum("EED", true);
    auto om = omega_full(rd, {-1, 1});
    CHECK(flip(om.terms) == om.terms);
    auto half = omega_plus(rd, {-1, 1});
    CHECK((half.terms + flip(half.terms)).size() >= half.terms.size());
}

TEST_CASE("full Casimir commutes with the diagonal action") {
    auto rd = build_root_datum("EEEDD", false);
    auto om = omega_full(rd, {-1, 0});
    auto M = om.eval();
    auto real = realize(rd, 0);
    for (auto& [g, x] : real.images) {
        if (g.level != 0) continue;
        auto one = SuperMatrixPoly::identity(real.position_parity, 0);
        auto dx = TensorMatrix::outer(x, one) + TensorMatrix::outer(one, x);
        CHECK(commutator(dx, M).is_zero());
    }
}

TEST_CASE("level zero coproduct is primitive") {
    auto rd = build_root_datum("EED", true);
    for (auto g : {xgen(rd, 1, 1, 0), xgen(rd, -1, 2, 0), hgen(1, 0)}) {
        CHECK(coproduct(rd, g, {-1, 1}) == boxed(Element(g)));
        CHECK(coproduct_op(rd, g, {-1, 1}) == boxed(Element(g)));
    }
}

TEST_CASE("level one Cartan coproduct") {
    auto rd = build_root_datum("EED", true);
    for (int i : rd.node_labels()) {
        auto d = coproduct(rd, hgen(i, 1), {-1, 1});
        CHECK(d.coefficient({{hgen(i, 0)}, {hgen(i, 0)}}) == Coeff::hbar());
        CHECK(d.coefficient({{}, {}}).is_zero());
        CHECK(coproduct_op(rd, hgen(i, 1), {-1, 1}) == flip(d));
        CHECK(rewrite_h1(counit_left(d)) == rewrite_h1(Hc(i, 1)));
        CHECK(rewrite_h1(counit_right(d)) == rewrite_h1(Hc(i, 1)));
    }
}

TEST_CASE("correspondence principle on EEEDD") {
    auto rd = build_root_datum("EEEDD", true);
    auto rep = verify_correspondence(rd, rd.node_labels(), {-1, 2});
    CHECK(rep.all_ok());
    CHECK(rep.entries.size() >= rd.node_labels().size());
}

TEST_CASE("classical cobracket of a Cartan element has no Cartan part") {
    auto rd = build_root_datum("EEEDD", false);
    for (int i : rd.node_labels()) CHECK(only_root_letters(classical_cobracket(rd, hgen(i, 0), {-1, 0})));
}

TEST_CASE("classical cobracket matches the matrix commutator") {
    auto rd = build_root_datum("EED", true);
    Cutoffs cut{-1, 1};
    auto real = realize(rd, 1);
    auto om = omega_full(rd, cut);
    auto M = om.eval();
    auto one = SuperMatrixPoly::identity(real.position_parity, 1);
    auto h = TensorMatrix::outer(real.images.at(hgen(1, 0)), one);
    CHECK(eval_tensor(real, classical_cobracket(rd, hgen(1, 0), cut)) == commutator(h, M));
}

TEST_CASE("Casimir shift under an odd reflection") {
    for (auto [w, i] : {std::pair{"EED", 2}, {"EEEDD", 3}, {"EEEDD", 0}}) {
        auto rd = build_root_datum(w, true);
        auto s = casimir_shift(quantum_reflection(rd, i), i, {-1, 1});
        REQUIRE(s.fitted);
        CHECK(s.a == -1);
        CHECK(s.b == -1);
    }
}

TEST_CASE("counit axiom on every generator") {
    for (auto w : {"EED", "EEEDD"}) CHECK(verify_counit(build_root_datum(w, true)).all_ok());
    CHECK(counit_of(Element::one()) == Coeff(1));
    CHECK(counit_of(Element(hgen(1, 1))).is_zero());
}

TEST_CASE("coassociativity") {
    auto rd = build_root_datum("EED", true);
    auto rep = verify_coassoc(rd, {xgen(rd, 1, 1, 0), hgen(1, 1), hgen(2, 1)}, 2);
    CHECK(rep.all_ok());
    auto starved = verify_coassoc(rd, {hgen(1, 1)}, 0);
    CHECK(starved.exit_code() == 2);
}

TEST_CASE("reflection compatibility residuals on EED") {
    auto rd = build_root_datum("EED", true);
    CompatOptions opt;
    opt.ideal.L = 4;
    std::vector<Residual> res;
    auto rep = verify_reflection_compat(rd, 2, opt, &res);
    CHECK(rep.all_ok());
    auto tgt = reflect_simple(rd, 2).new_datum;
    Element xp = X(tgt, 1, 2), xm = X(tgt, -1, 2);
    for (auto& r : res) {
        if (r.g == htilde(2)) CHECK(r.p.is_zero());
        if (r.g == xgen(rd, 1, 2, 1))
            CHECK(rewrite_h1(r.p) == anti_bracket(Hc(2), xm).scaled(Coeff::hbar(1, Q(1, 2))));
        if (r.g == htilde(1))
            CHECK(r.p == anti_bracket(xm, xp).scaled(Coeff::hbar(1, Q(-rd.pair(2, 1), 2))));
    }
}
