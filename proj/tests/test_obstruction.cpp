#include <doctest.h>

#include "fixtures.hpp"

using namespace gdga;

namespace {

struct Staged {
    Project p;
    CurvedDeformation defo;
    BoundingResult sol;
    DisplacedTwist disp;

    explicit Staged(const std::string& name)
        : p(fx::example(name)),
          defo(make_deformation(*p.algebra, p.mc->M, p.convention)),
          sol(solve_bounding_chain(defo, p.monoid)),
          disp(displaced_twist(defo, sol.b, p.monoid, p.module, *p.mc)) {}

    EliminationInput input() const {
        EliminationInput in;
        in.defo = &defo;
        in.b = sol.b;
        in.N_geq0 = disp.N_geq0;
        in.N0 = disp.N0;
        return in;
    }
};

}  // namespace

TEST_CASE("degree-one homology per class") {
    ClassGroup g = fx::rank1(Q(1));
    auto T = fx::algebra(fx::torus(g), Q(2));
    for (const auto& [a, b] : h1_components(*T, {g.zero(), g.make({1}), g.make({2})})) CHECK(b == 0);
    CHECK(h1_components(*T, {}).empty());

    auto S = fx::example("groupring_sphere");
    auto h = h1_components(*S.algebra, S.module.enumerated);
    CHECK(h.at(S.group.make({0, 1})) == 1);
    gdga::LinearOp dop = [&](const Element& x) { return S.algebra->d(x); };
    for (const auto& [a, b] : h) CHECK(b == oracle::betti(*S.algebra, Sector::Open, {a}, 1, dop));
}

TEST_CASE("elimination outcomes") {
    SUBCASE("nothing below zero energy") {
        Staged s("torus");
        REQUIRE(s.sol.solved);
        auto st = eliminate(s.input(), s.p.monoid, s.p.module);
        CHECK(st.status == EliminationStatus::ContradictionCertified);
        CHECK(st.steps.empty());
        CHECK(st.witness["pairing"] != "0");
    }
    SUBCASE("acyclic fiber") {
        Staged s("groupring_acyclic");
        auto st = eliminate(s.input(), s.p.monoid, s.p.module);
        REQUIRE(st.status == EliminationStatus::ContradictionCertified);
        CHECK(st.steps.size() == 1);
        CHECK(st.steps[0]["level"] == "-1/2");
        for (const auto& a : st.N.classes()) CHECK(s.p.group.energy_of(a) >= 0);
        // the recorded primitive bounds minus the eliminated term
        Element chi = element_from_json(st.steps[0]["chi"], s.p.group);
        chi.degree = 2;
        Element v = s.disp.N_geq0.component(s.p.group.make({0, 1}));
        v.valid_upto.reset();
        CHECK((s.p.algebra->d(chi) + v).is_zero());
    }
    SUBCASE("sphere fiber") {
        Staged s("groupring_sphere");
        auto st = eliminate(s.input(), s.p.monoid, s.p.module);
        REQUIRE(st.status == EliminationStatus::SurvivingClass);
        CHECK(st.witness["class"] == json::array({0, 1}));
        CHECK(st.witness["level"] == "-1/2");
        CHECK(st.witness["betti"] == 1);
    }
    SUBCASE("unit is a boundary") {
        Staged s("groupring_contractible");
        auto st = eliminate(s.input(), s.p.monoid, s.p.module);
        CHECK(st.status == EliminationStatus::PreconditionFailed);
        CHECK_FALSE(fx::passed(st.report, "unit class is nonzero"));
    }
}

TEST_CASE("certificates replay and detect tampering") {
    for (const char* name : {"torus", "groupring_acyclic", "groupring_sphere"}) {
        Staged s(name);
        auto st = eliminate(s.input(), s.p.monoid, s.p.module);
        json cert = certify(*s.p.algebra, st);
        INFO(name);
        CHECK(replay_certificate(s.input(), s.p.monoid, s.p.module, cert).ok());
        CHECK(canonical_dump(cert) == canonical_dump(certify(*s.p.algebra, eliminate(s.input(), s.p.monoid, s.p.module))));

        json bad = cert;
        bad["cutoff"] = "7";
        CHECK_FALSE(fx::passed(replay_certificate(s.input(), s.p.monoid, s.p.module, bad), "certificate matches the instance"));
        bad = cert;
        bad["witness"]["functional"] = json::array();
        CHECK_FALSE(replay_certificate(s.input(), s.p.monoid, s.p.module, bad).ok());
        if (!cert["steps"].empty()) {
            bad = cert;
            bad["steps"][0]["chi"] = element_to_json(s.p.group, Element(Sector::Open, 2));
            Report r = replay_certificate(s.input(), s.p.monoid, s.p.module, bad);
            const Check* c = r.find("recorded primitives eliminate their terms");
            REQUIRE(c);
            CHECK_FALSE(c->passed);
            CHECK(c->witness["level"] == "-1/2");
        }
    }
}

TEST_CASE("energy spectral sequence") {
    ClassGroup g = fx::rank1(Q(1));
    auto T = fx::algebra(fx::torus(g), Q(3));
    std::vector<ClassVector> cls{g.zero(), g.make({1}), g.make({2}), g.make({3})};
    gdga::LinearOp d = [&](const Element& x) { return T->d(x); };
    auto ss = spectral_sequence(*T, d, cls, Q(1, 2), 3, -3, 2);
    CHECK(ss.report.ok());
    // undeformed: d preserves the class, every page equals E1
    for (std::size_t r = 2; r < ss.pages.size(); ++r)
        for (const auto& [k, dim] : ss.pages[1].dims) CHECK(ss.pages[r].dims.at(k) == dim);
    for (long long s = -3; s <= 2; ++s) {
        std::size_t tot = 0;
        for (const auto& [k, dim] : ss.infinity.dims)
            if (k.second == s) tot += dim;
        CHECK(tot == oracle::betti(*T, Sector::Open, cls, s, d));
        CHECK(tot == ss.homology_total.at(s));
    }

    // deformed torus: E_inf against the oracle homology of m1^b
    auto S = fx::example("torus");
    CurvedDeformation D = make_deformation(*S.algebra, S.mc->M, S.convention);
    auto sol = solve_bounding_chain(D, S.monoid);
    REQUIRE(sol.solved);
    gdga::LinearOp m1b = m1_twisted(D, sol.b);
    auto sd = spectral_sequence(*S.algebra, m1b, S.module.enumerated, Q(1, 2), 4, -2, 2);
    CHECK(sd.report.ok());
    for (long long s = -2; s <= 2; ++s) {
        std::size_t tot = 0;
        for (const auto& [k, dim] : sd.infinity.dims)
            if (k.second == s) tot += dim;
        CHECK(tot == oracle::betti(*S.algebra, Sector::Open, S.module.enumerated, s, m1b));
    }

    // single class: the sequence collapses at E1
    auto one = spectral_sequence(*T, d, {g.zero()}, Q(1), 2, -1, 1);
    CHECK(one.pmin == one.pmax);
    CHECK(one.pages.back().dims == one.pages[1].dims);

    CHECK_THROWS_AS(spectral_sequence(*T, d, cls, Q(2), 2, -1, 1), std::domain_error);
    CHECK_THROWS_AS(spectral_sequence(*T, d, cls, Q(0), 2, -1, 1), std::domain_error);
    CHECK(min_energy_gap(g, cls) == Q(1));
    CHECK_FALSE(min_energy_gap(g, {g.zero()}).has_value());
    CHECK(filtration_index(Q(3, 2), Q(1, 2)) == 2);
    CHECK(filtration_index(Q(2), Q(1, 2)) == 3);
    CHECK(filtration_index(Q(0), Q(1, 2)) == -1);
}
