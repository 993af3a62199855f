#include <set>

#include "doctest.h"
#include "support.hpp"
#include "syang/errors.hpp"
#include "syang/weyl.hpp"

using namespace syang;
using testsupport::eps_delta;

TEST_CASE("odd reflection swaps the letters around the node") {
    auto rd = build_root_datum("EED", false);
    auto r = reflect_simple(rd, 2);
    CHECK(r.kind == ReflectionKind::Odd);
    CHECK(r.new_datum.word == "EDE");
    REQUIRE(r.root_images.size() == 2);
    CHECK(r.root_images[0] == eps_delta(2, 1, {{'e', 1}}, {{'d', 1}}));
    CHECK(r.root_images[1] == eps_delta(2, 1, {{'d', 1}}, {{'e', 2}}));
}

TEST_CASE("even reflection keeps the word") {
    auto rd = build_root_datum("EED", false);
    auto r = reflect_simple(rd, 1);
    CHECK(r.kind == ReflectionKind::Even);
    CHECK(r.new_datum.word == "EED");
    CHECK(r.root_images[0] == -rd.root(1));
    CHECK(r.root_images[1] == rd.root(1) + rd.root(2));
}

TEST_CASE("reflection words compose") {
    auto res = apply_word({build_root_datum("EED", false), {2, 1}});
    CHECK(res.datum.word == "DEE");
}

TEST_CASE("double odd reflection is the identity") {
    for (auto w : {"EED", "EDE", "EEDD", "EDED"})
        for (bool aff : {false, true}) {
            auto rd = build_root_datum(w, aff);
            for (int i : rd.node_labels()) {
                if (rd.root_parity(i) != 1) continue;
                auto res = apply_word({rd, {i, i}});
                CHECK(res.datum == rd);
                CHECK(res.root_images == rd.simple_roots);
            }
        }
}

TEST_CASE("reflection images lie in the root lattice of the target") {
    auto rd = build_root_datum("EEEDD", true);
    for (int i : rd.node_labels()) {
        auto r = reflect_simple(rd, i);
        for (auto& w : r.root_images) {
            auto c = simple_root_coordinates(r.new_datum, w);
            CHECK(from_simple_root_coordinates(r.new_datum, c) == w);
        }
    }
}

TEST_CASE("orbit sizes match word enumeration") {
    for (auto [m, n] : {std::pair{2, 1}, {2, 2}, {3, 2}, {1, 3}}) {
        auto g = orbit(m, n, false);
        auto words = testsupport::shuffles(m, n);
        CHECK(g.nodes.size() == words.size());
        CHECK(std::set<std::string>(g.nodes.begin(), g.nodes.end()) ==
              std::set<std::string>(words.begin(), words.end()));
    }
    CHECK(orbit(2, 1, false).nodes.size() == 3);
    CHECK(orbit(2, 2, false).nodes.size() == 6);
}

TEST_CASE("orbit depth zero is the start word") {
    auto g = orbit(3, 2, false, 0);
    CHECK(g.nodes == std::vector<std::string>{"EEEDD"});
    CHECK(g.edges.empty());
}

TEST_CASE("orbit edges are odd reflections") {
    auto g = orbit(2, 2, true);
    for (auto& e : g.edges) {
        auto rd = build_root_datum(g.nodes[e.from], true);
        CHECK(rd.root_parity(e.index) == 1);
        CHECK(reflect_simple(rd, e.index).new_datum.word == g.nodes[e.to]);
    }
    CHECK(g.to_dot().find("->") != std::string::npos);
}
