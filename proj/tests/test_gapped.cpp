#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"

using namespace gdga;

TEST_CASE("monoid generated by one positive class") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid m = make_monoid(g, {g.make({1})}, Q(3));
    Report r = validate_monoid(g, m);
    CHECK(r.ok());
    REQUIRE(m.enumerated.size() == 4);
    for (long long i = 0; i < 4; ++i) CHECK(m.enumerated[i] == g.make({i}));
}

TEST_CASE("monoid validation rejects non-positive generators") {
    ClassGroup g = fx::rank1(Q(-1));
    CHECK_FALSE(fx::passed(validate_monoid(g, make_monoid(g, {g.make({1})}, Q(3))), "energy positive away from zero"));
    ClassGroup z(2, {}, {Q(1), Q(0)}, {0, 0}, 1);
    Report r = validate_monoid(z, make_monoid(z, {z.make({1, 0}), z.make({0, 1})}, Q(2)));
    CHECK_FALSE(fx::passed(r, "energy positive away from zero"));
}

TEST_CASE("module closure and floor") {
    ClassGroup g(2, {}, {Q(1), Q(-1, 2)}, {0, 0}, 1);
    CurveMonoid m = make_monoid(g, {g.make({1, 0})}, Q(2));
    CHECK(validate_module(g, make_module(g, m, {}, Q(0))).ok());

    PerturbedClassModule n = make_module(g, m, {g.make({0, 1})}, Q(1));
    CHECK(validate_module(g, n).ok());
    for (long long j = 0; j <= 2; ++j) CHECK(n.contains(g.make({j, 1})));
    CHECK_FALSE(n.contains(g.make({0, 2})));
    // eta + j*beta with energy <= 2: j = 0, 1, 2
    CHECK(n.enumerated.size() == m.enumerated.size() + 3);

    PerturbedClassModule low = make_module(g, m, {g.make({0, 4})}, Q(1));
    CHECK_FALSE(fx::passed(validate_module(g, low), "energy bounded below by the floor"));
}

TEST_CASE("energy levels") {
    ClassGroup g(3, {}, {Q(1), Q(1), Q(2)}, {0, 0, 0}, 1);
    EnergyLevels one = sort_energy_levels(g, {g.zero()});
    CHECK(one.levels.size() == 1);
    CHECK(one.levels[0] == 0);

    std::vector<ClassVector> cs = {g.zero(), g.make({1, 0, 0}), g.make({0, 1, 0}), g.make({0, 0, 1})};
    EnergyLevels lv = sort_energy_levels(g, cs);
    REQUIRE(lv.levels.size() == 3);
    CHECK(lv.levels == std::vector<Q>{0, 1, 2});
    CHECK(lv.last_index[1] == 2);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto p = cs;
        std::shuffle(p.begin(), p.end(), rng);
        EnergyLevels q = sort_energy_levels(g, p);
        CHECK(q.classes == lv.classes);
        CHECK(q.last_index == lv.last_index);
    }
}

TEST_CASE("gapped arithmetic") {
    ClassGroup g = fx::rank1(Q(1, 2));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-4, 4), cls(0, 4), idx(0, 2);
    auto random = [&] {
        Element x(Sector::Open, 0);
        for (int t = 0; t < 6; ++t) x.add(Cell{g.make({cls(rng)}), 0}, idx(rng), Q(c(rng)));
        return x;
    };
    for (int t = 0; t < 20; ++t) {
        Element x = random(), y = random();
        CHECK(same_terms(gapped_add(x, Element(Sector::Open, 0)), x));
        Element s = gapped_add(x, y);
        // brute-force merge classwise
        for (long long a = 0; a <= 4; ++a) {
            auto cv = g.make({a});
            Element want = x.component(cv) + y.component(cv);
            CHECK(same_terms(s.component(cv), want));
        }
        Element z = gapped_truncate(g, x, Q(0));
        for (const auto& a : z.classes()) CHECK(g.energy_of(a) == 0);
        CHECK(same_terms(z, x.component(g.zero())));
        CHECK(same_terms(gapped_scale(Q(0), x), Element(Sector::Open, 0)));
    }
    Element t = gapped_truncate(g, random(), Q(1));
    REQUIRE(t.valid_upto);
    CHECK(*t.valid_upto == 1);
}

TEST_CASE("gapping violations") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid m = make_monoid(g, {g.make({1})}, Q(2));
    Element x(Sector::Closed, -1);
    x.add(Cell{g.make({1}), 2}, 0, Q(1));
    x.add(Cell{g.make({-1}), 2}, 0, Q(1));
    auto v = gapping_violations(x, m.enumerated);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == g.make({-1}));
}
