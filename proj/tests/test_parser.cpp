#include <random>

#include "doctest.h"
#include "support.hpp"
#include "syang/errors.hpp"
#include "syang/parser.hpp"
#include "syang/presentations.hpp"

using namespace syang;

TEST_CASE("brackets parse to the free-algebra expansion") {
    auto rd = build_root_datum("EED", false);
    CHECK(parse_element("[x+(1,0),x-(1,0)]", rd) == super_bracket(X(rd, 1, 1), X(rd, -1, 1)));
    CHECK(parse_element("(1/2)*hbar*{h(1,0),x+(1,0)}", rd) ==
          anti_bracket(Hc(1), X(rd, 1, 1)).scaled(Coeff::hbar(1, Q(1, 2))));
    CHECK(parse_element(" h(1,0) ^ 2 - 3 ", rd) == Hc(1) * Hc(1) - Element(Coeff(3)));
    CHECK(parse_element("ht(2,1)", rd) == Ht(2));
}

TEST_CASE("unfinished input reports the end offset") {
    auto rd = build_root_datum("EED", false);
    try {
        parse_element("[x+(1,0),", rd);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 10);
    }
}

TEST_CASE("bad input is rejected") {
    auto rd = build_root_datum("EED", false);
    CHECK_THROWS_AS(parse_element("x+(7,0)", rd), Error);
    CHECK_THROWS_AS(parse_element("x*(1,0)", rd), ParseError);
    CHECK_THROWS_AS(parse_element("h(1,0) @ h(2,0)", rd), Error);
    CHECK_THROWS_AS(parse_element("(1/0)", rd), Error);
}

TEST_CASE("tensor expressions") {
    auto rd = build_root_datum("EED", false);
    auto t = parse_tensor("h(1,0) @ x+(2,0) - 1 @ h(2,0)", rd);
    CHECK(t == tensor(Hc(1), X(rd, 1, 2)) - tensor(Element::one(), Hc(2)));
    CHECK(std::holds_alternative<TensorElement>(parse_expression("h(1,0)@1", rd)));
    CHECK(std::holds_alternative<Element>(parse_expression("h(1,0)", rd)));
}

TEST_CASE("printing round trips through the parser") {
    auto rd = build_root_datum("EEEDD", true);
    auto rs = minimalistic_relations(rd);
    for (auto& r : rs.relations) REQUIRE(parse_element(r.element.to_string(), rd) == r.element);
    auto t = tensor(X(rd, 1, 3), X(rd, -1, 0, 1).scaled(Coeff::hbar(1, Q(-2, 3))));
    CHECK(parse_tensor(t.to_string(), rd) == t);
}
