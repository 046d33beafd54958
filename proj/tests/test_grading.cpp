#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace gdga;

TEST_CASE("energy is a homomorphism") {
    ClassGroup g(1, {}, {Q(3, 2)}, {0}, 1);
    CHECK(g.energy_of(g.zero()) == 0);
    CHECK(g.energy_of(g.make({2})) == 3);

    ClassGroup h(3, {4}, {Q(1, 3), Q(-2), Q(5, 7)}, {2, 0, -4}, 2);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> u(-9, 9);
    for (int t = 0; t < 50; ++t) {
        auto a = h.make({u(rng), u(rng), u(rng)}, {u(rng)});
        auto b = h.make({u(rng), u(rng), u(rng)}, {u(rng)});
        CHECK(h.energy_of(h.add(a, b)) == h.energy_of(a) + h.energy_of(b));
        CHECK(h.maslov_of(h.add(a, b)) == h.maslov_of(a) + h.maslov_of(b));
        CHECK(parity(h.maslov_of(a)) == 0);
    }
}

TEST_CASE("maslov index") {
    ClassGroup g(2, {}, {Q(1), Q(1)}, {2, -4}, 1);
    CHECK(g.maslov_of(g.zero()) == 0);
    CHECK(g.maslov_of(g.make({1, 1})) == -2);
    CHECK_THROWS_AS(ClassGroup(1, {}, {Q(1)}, {1}, 1), std::invalid_argument);
}

TEST_CASE("torsion classes reduce and carry no energy") {
    ClassGroup g(1, {3}, {Q(1)}, {0}, 1);
    auto t = g.make({0}, {1});
    CHECK(g.add(g.add(t, t), t) == g.zero());
    CHECK(g.energy_of(t) == 0);
    CHECK(g.make({0}, {-1}) == g.make({0}, {2}));
}

TEST_CASE("filtration level") {
    ClassGroup g(1, {}, {Q(3, 4)}, {0}, 1);
    Element x(Sector::Open, 0);
    x.add(Cell{g.zero(), 0}, 0, Q(1));
    x.add(Cell{g.make({2}), 0}, 0, Q(5));
    CHECK(same_terms(filtration_level(g, x, Q(-1)), x));
    CHECK(filtration_level(g, x, Q(3, 2)).is_zero());
    Element only = filtration_level(g, x, Q(1));
    REQUIRE(only.classes().size() == 1);
    CHECK(*only.classes().begin() == g.make({2}));
}

TEST_CASE("rationals parse in lowest terms and reject zero denominators") {
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK_THROWS_AS(parse_rational("6/-4"), ParseError);
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    json bad = json::array({"1/0"});
    try {
        rational_from_json(bad[0], "group.energy[0]");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("group.energy[0]") != std::string::npos);
    }
}

TEST_CASE("serialization round trip") {
    ClassGroup g(2, {2}, {Q(1, 2), Q(3)}, {2, 0}, 2);
    auto g2 = group_from_json(group_to_json(g));
    CHECK(g2 == g);
    Element x(Sector::Closed, -1);
    x.add(Cell{g.make({1, 0}, {1}), 2}, 3, Q(-7, 3));
    x.valid_upto = Q(5, 2);
    Element y = element_from_json(element_to_json(g, x), g);
    CHECK(same_terms(x, y));
    CHECK(y.valid_upto == x.valid_upto);
    CHECK(canonical_dump(element_to_json(g, y)) == canonical_dump(element_to_json(g, x)));
}
