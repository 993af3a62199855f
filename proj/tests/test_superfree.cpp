#include <random>

#include "doctest.h"
#include "support.hpp"
#include "syang/errors.hpp"
#include "syang/presentations.hpp"
#include "syang/superfree.hpp"

using namespace syang;
using testsupport::P;

namespace {

const RootDatum& eed() {
    static RootDatum rd = build_root_datum("EED", false);
    return rd;
}

// Random parity-homogeneous element over the level-0/1 letters of EED.
struct RandomElements {
    std::mt19937 rng;
    std::vector<Gen> letters;
    explicit RandomElements(unsigned seed) : rng(seed) {
        for (int l : {1, 2})
            for (int lev : {0, 1}) {
                letters.push_back(hgen(l, lev));
                letters.push_back(xgen(eed(), 1, l, lev));
                letters.push_back(xgen(eed(), -1, l, lev));
            }
    }
    Word word(int maxlen) {
        int len = std::uniform_int_distribution<int>(1, maxlen)(rng);
        Word w;
        for (int k = 0; k < len; ++k)
            w.push_back(letters[std::uniform_int_distribution<size_t>(0, letters.size() - 1)(rng)]);
        return w;
    }
    Element homogeneous(int parity, int terms, int maxlen) {
        Element e;
        while (static_cast<int>(e.size()) < terms) {
            Word w = word(maxlen);
            if (word_parity(w) != parity) continue;
            int num = std::uniform_int_distribution<int>(-5, 5)(rng);
            int hb = std::uniform_int_distribution<int>(0, 1)(rng);
            if (num == 0) continue;
            e += Element(w, Coeff::hbar(hb, Q(num, 3)));
        }
        return e;
    }
    int bit() { return std::uniform_int_distribution<int>(0, 1)(rng); }
};

}  // namespace

TEST_CASE("coefficients are hbar polynomials") {
    Coeff a = Coeff(2) + Coeff::hbar();
    CHECK(a.degree() == 1);
    CHECK((a - a).is_zero());
    CHECK((a * a).at(2) == 1);
    CHECK((a * a).at(1) == 4);
    CHECK(Coeff::hbar(2).shifted(-1) == Coeff::hbar());
    CHECK(a.eval(Q(1, 2)) == Q(5, 2));
}

TEST_CASE("multiplication distributes over the hbar coefficient") {
    Element w1(hgen(1, 0)), w2(hgen(2, 0));
    Element lhs = (Element(Coeff(2)) + Element(Word{hgen(1, 0)}, Coeff::hbar())) * w2;
    Element rhs = w2.scaled(2) + Element(Word{hgen(1, 0), hgen(2, 0)}, Coeff::hbar());
    CHECK(lhs == rhs);
    CHECK(Element::one() * w1 == w1);
    CHECK(w1 * Element::one() == w1);
}

TEST_CASE("word parity is the xor of letter parities") {
    Gen a = xgen(eed(), 1, 2, 0), b = xgen(eed(), -1, 2, 0), c = xgen(eed(), 1, 1, 0);
    CHECK(word_parity({a}) == 1);
    CHECK(word_parity({a, b}) == 0);
    CHECK(word_parity({a, c}) == 1);
    CHECK((Element(a) * Element(c)).parity() == 1);
    CHECK((Element(a) + Element(c)).parity() == -1);
}

TEST_CASE("super bracket and anti bracket signs") {
    auto& rd = eed();
    CHECK(super_bracket(X(rd, 1, 1), X(rd, -1, 1)) == P(rd, "x+(1,0)*x-(1,0) - x-(1,0)*x+(1,0)"));
    CHECK(super_bracket(X(rd, 1, 2), X(rd, 1, 2)) == P(rd, "2*x+(2,0)*x+(2,0)"));
    CHECK(super_bracket(Hc(1), Hc(2)) == P(rd, "h(1,0)*h(2,0) - h(2,0)*h(1,0)"));
    CHECK(anti_bracket(X(rd, 1, 2), X(rd, -1, 2)) == P(rd, "x+(2,0)*x-(2,0) - x-(2,0)*x+(2,0)"));
    CHECK(anti_bracket(Hc(1), Hc(1)) == P(rd, "2*h(1,0)^2"));
    CHECK(anti_bracket(Hc(1), X(rd, 1, 1)) == P(rd, "h(1,0)*x+(1,0) + x+(1,0)*h(1,0)"));
}

TEST_CASE("iterated adjoint action") {
    auto& rd = eed();
    Element a = X(rd, 1, 1), b = X(rd, 1, 2);
    CHECK(ad_pow(a, 0, b) == b);
    CHECK(ad_pow(a, 1, b) == super_bracket(a, b));
    CHECK(ad_pow(a, 2, b) == a * a * b - (a * b * a).scaled(2) + b * a * a);
    CHECK_THROWS(ad_pow(a, -1, b));
}

TEST_CASE("mixed parity brackets split into homogeneous parts") {
    auto& rd = eed();
    Element a = X(rd, 1, 1) + X(rd, 1, 2);
    Element b = X(rd, -1, 2);
    CHECK(super_bracket(a, b) == super_bracket(X(rd, 1, 1), b) + super_bracket(X(rd, 1, 2), b));
}

TEST_CASE("tensor sign rule") {
    auto& rd = eed();
    Element x = X(rd, 1, 2), y = X(rd, -1, 2);
    TensorElement lhs = tensor(Element::one(), x) * tensor(y, Element::one());
    CHECK(lhs == -tensor(y, x));
    CHECK(boxed(Hc(1)) == tensor(Hc(1), Element::one()) + tensor(Element::one(), Hc(1)));
    CHECK(tensor(x.scaled(Coeff::hbar()), y) == tensor(x, y).scaled(Coeff::hbar()));
    CHECK(tensor(x + Hc(1), y) == tensor(x, y) + tensor(Hc(1), y));
}

TEST_CASE("flip is an involution with the odd sign") {
    auto& rd = eed();
    Element x = X(rd, 1, 2), y = X(rd, -1, 2);
    CHECK(flip(tensor(x, y)) == -tensor(y, x));
    CHECK(flip(tensor(Hc(1), x)) == tensor(x, Hc(1)));
    RandomElements gen(7);
    for (int k = 0; k < 200; ++k) {
        TensorElement t = tensor(gen.homogeneous(gen.bit(), 2, 3), gen.homogeneous(gen.bit(), 2, 3));
        REQUIRE(flip(flip(t)) == t);
    }
}

TEST_CASE("substitute is an algebra homomorphism") {
    auto q = quantum_reflection(build_root_datum("EEEDD", true), 1);
    auto& tg = q.source;
    // even reflection at 1 fixes x(3,0) since a_13 = 0
    CHECK(substitute(q.map, X(tg, 1, 3)) == X(q.target, 1, 3));
    Element w1 = X(tg, 1, 1), w2 = X(tg, -1, 2) * Hc(3);
    CHECK(substitute(q.map, w1 * w2) == substitute(q.map, w1) * substitute(q.map, w2));
    GeneratorMap partial;
    partial.images[hgen(1, 0)] = Hc(1);
    CHECK_THROWS_AS(substitute(partial, Element(hgen(3, 1))), Error);
}

TEST_CASE("canonical form drops cancelled terms") {
    RandomElements gen(11);
    for (int k = 0; k < 200; ++k) {
        Element a = gen.homogeneous(gen.bit(), 3, 4);
        REQUIRE((a - a).is_zero());
        REQUIRE((a - a).terms().empty());
        Element b = gen.homogeneous(gen.bit(), 3, 4);
        Element sum = a + b - a.scaled(Coeff::hbar());
        for (auto& [w, c] : sum.terms()) REQUIRE_FALSE(c.is_zero());
    }
}

TEST_CASE("super antisymmetry on random pairs") {
    RandomElements gen(3);
    for (int k = 0; k < 100; ++k) {
        int pa = gen.bit(), pb = gen.bit();
        Element a = gen.homogeneous(pa, 2, 3), b = gen.homogeneous(pb, 2, 3);
        Element rhs = super_bracket(b, a).scaled(pa && pb ? 1 : -1);
        REQUIRE(super_bracket(a, b) == rhs);
    }
}

TEST_CASE("super Jacobi identity on 1000 random triples") {
    RandomElements gen(2024);
    for (int k = 0; k < 1000; ++k) {
        int pa = gen.bit(), pb = gen.bit(), pc = gen.bit();
        Element a = gen.homogeneous(pa, 2, 2), b = gen.homogeneous(pb, 2, 2), c = gen.homogeneous(pc, 1, 2);
        Element lhs = super_bracket(a, super_bracket(b, c));
        Element rhs = super_bracket(super_bracket(a, b), c) +
                      super_bracket(b, super_bracket(a, c)).scaled(pa && pb ? -1 : 1);
        INFO(a.to_string(), " | ", b.to_string(), " | ", c.to_string(), " | ", (lhs - rhs).to_string());
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("substitute commutes with brackets on random elements") {
    auto q = quantum_reflection(build_root_datum("EEEDD", true), 3);
    std::mt19937 rng(5);
    std::vector<Gen> letters;
    for (auto& [g, img] : q.map.images)
        if (g.kind != Kind::Htilde) letters.push_back(g);
    auto pick = [&] { return Element(letters[std::uniform_int_distribution<size_t>(0, letters.size() - 1)(rng)]); };
    for (int k = 0; k < 50; ++k) {
        Element a = pick() * pick(), b = pick();
        REQUIRE(substitute(q.map, super_bracket(a, b)) ==
                super_bracket(substitute(q.map, a), substitute(q.map, b)));
    }
}

TEST_CASE("counit kills generators") {
    auto& rd = eed();
    CHECK(counit(Element::one()) == Coeff(1));
    CHECK(counit(X(rd, 1, 1, 1)).is_zero());
    CHECK(counit(Element(Coeff::hbar()) + Hc(1)) == Coeff::hbar());
    CHECK(counit_left(tensor(Hc(1), X(rd, 1, 2)) + tensor(Element::one(), Hc(2))) == Hc(2));
}
