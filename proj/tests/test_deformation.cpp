#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace gdga;

namespace {

// One closed generator m at (b,1) with m o_1 m = w at (2b,1); with `exact` the cell
// (2b,1) also holds y with dy = w.
std::shared_ptr<StateAlgebra> bracket_table(const ClassGroup& g, bool exact) {
    json c2 = exact ? json{{"sector", "closed"}, {"class", {2}}, {"k", 1}, {"degrees", {-1, 0}},
                           {"d", json::array({json::array({0, 1, "1"})})}}
                    : json{{"sector", "closed"}, {"class", {2}}, {"k", 1}, {"degrees", {-1}}};
    json spec{{"kind", "table"},
              {"cells", json::array({json{{"sector", "closed"}, {"class", {1}}, {"k", 1}, {"degrees", {0}}}, c2})},
              {"circL", json::array({json{{"pos", 1},
                                          {"a1", {1}}, {"k1", 1}, {"i1", 0},
                                          {"a2", {1}}, {"k2", 1}, {"i2", 0},
                                          {"out", json::array({json::array({0, "1"})})}}})}};
    return fx::algebra(load_backend(spec, g), Q(2));
}

Element closed(const ClassGroup& g, long long a, int k, int i, Q c, long long deg) {
    Element x(Sector::Closed, deg);
    x.add(Cell{g.make({a}), k}, i, c);
    return x;
}

}  // namespace

TEST_CASE("Maurer-Cartan check") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid G = make_monoid(g, {g.make({1})}, Q(2));
    auto T = fx::algebra(fx::torus(g), Q(2));
    CHECK(mc_check_closed(*T, G, Element(Sector::Closed, -1), Convention::Theorem).ok());

    auto A = bracket_table(g, false);
    Element M = closed(g, 1, 1, 0, Q(1), -1);
    CHECK_FALSE(A->bracket(M, M).is_zero());
    Report bad = mc_check_closed(*A, G, M, Convention::Theorem);
    const Check* eq = bad.find("Maurer-Cartan equation");
    REQUIRE(eq);
    CHECK_FALSE(eq->passed);
    CHECK(eq->witness["level"] == "2");
    CHECK(eq->witness.contains("residual"));

    // d y = -1/2 [M,M] solved by the dense oracle
    auto B = bracket_table(g, true);
    std::mt19937_64 rng(61);
    auto built = oracle::construct_mc(*B, G, rng);
    REQUIRE(built);
    Element Mc = M + built->component(g.make({2}));
    Mc.degree = -1;
    CHECK(mc_check_closed(*B, G, Mc, Convention::Theorem).ok());
    // the other sign convention needs the opposite correction
    CHECK_FALSE(mc_check_closed(*B, G, Mc, Convention::Lie).ok());
    Element Ml = M - built->component(g.make({2}));
    Ml.degree = -1;
    CHECK(mc_check_closed(*B, G, Ml, Convention::Lie).ok());
}

TEST_CASE("Maurer-Cartan check on the acyclic group ring") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid G = make_monoid(g, {g.make({1})}, Q(2));
    auto A = fx::algebra(fx::groupring(g, "acyclic"), Q(2));
    gdga::LinearOp dop = [&A](const Element& x) { return A->d(x); };
    ClassVector b1 = g.make({1}), b2 = g.make({2});
    auto src = oracle::basis_of(*A, Sector::Closed, {b1}, -1), dst = oracle::basis_of(*A, Sector::Closed, {b1}, -2);
    auto ker = oracle::dense_kernel(oracle::matrix_of(dop, src, dst));
    REQUIRE(ker.size() == 2);
    Element M = src.element(ker[0]) + src.element(ker[1]);
    M.degree = -1;
    Element r = A->bracket(M, M).component(b2);
    CHECK_FALSE(r.is_zero());
    Report bad = mc_check_closed(*A, G, M, Convention::Theorem);
    const Check* eq = bad.find("Maurer-Cartan equation");
    REQUIRE(eq);
    CHECK_FALSE(eq->passed);
    CHECK(eq->witness["level"] == "2");

    // add the level-2 primitive of -1/2 [M,M]
    auto s2 = oracle::basis_of(*A, Sector::Closed, {b2}, -1), d2 = oracle::basis_of(*A, Sector::Closed, {b2}, -2);
    auto rhs = d2.coords(Q(-1, 2) * r);
    auto y = oracle::dense_solve(oracle::matrix_of(dop, s2, d2), rhs);
    REQUIRE(y);
    Element fixed = M + s2.element(*y);
    fixed.degree = -1;
    CHECK(mc_check_closed(*A, G, fixed, Convention::Theorem).ok());
}

TEST_CASE("displacement data") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid G = make_monoid(g, {g.make({1})}, Q(2));
    PerturbedClassModule Nm = make_module(g, G, {}, Q(0));
    auto S = fx::algebra(fx::groupring(g, "sphere"), Q(2));
    MCData none;
    Report r = mc_check_displacement(*S, G, Nm, none, Convention::Theorem);
    CHECK_FALSE(fx::passed(r, "N0 at zero energy is homologous to the fundamental class"));

    auto C = fx::algebra(fx::groupring(g, "contractible"), Q(2));
    MCData mc;
    mc.N0 = C->loop0();
    mc.N_geq0 = closed(g, 0, 0, 1, Q(1), 2);
    mc.has_displacement = true;
    CHECK(mc_check_displacement(*C, G, Nm, mc, Convention::Theorem).ok());
    // N0(0) = L0 + d(z), N>=0 shifted by z
    Element z = closed(g, 1, 0, 1, Q(3), 2);
    MCData shifted = mc;
    shifted.N0 = mc.N0 + C->d(z);
    shifted.N0.degree = 1;
    shifted.N_geq0 = mc.N_geq0 + z;
    shifted.N_geq0.degree = 2;
    CHECK(mc_check_displacement(*C, G, Nm, shifted, Convention::Theorem).ok());

    ClassGroup h(2, {}, {Q(1), Q(-1, 2)}, {0, 0}, 1);
    CurveMonoid H = make_monoid(h, {h.make({1, 0})}, Q(2));
    PerturbedClassModule Hm = make_module(h, H, {h.make({0, 1})}, Q(1));
    auto CH = fx::algebra(fx::groupring(h, "contractible"), Q(2));
    MCData off;
    off.N0 = CH->loop0();
    off.N0.add(Cell{h.make({0, 1}), 0}, 0, Q(1));
    off.N_geq0 = Element(Sector::Closed, 2);
    off.has_displacement = true;
    CHECK_FALSE(fx::passed(mc_check_displacement(*CH, H, Hm, off, Convention::Theorem), "N0 is supported on monoid classes"));
}

TEST_CASE("deformation from an MC element") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid G = make_monoid(g, {g.make({1})}, Q(3));
    auto T = fx::algebra(fx::torus(g), Q(3));
    OpenBasis B = open_basis(*T, G.enumerated, 3);

    auto zero = deform_from_mc(*T, G, Element(Sector::Closed, -1), Convention::Theorem, B);
    CHECK(zero.report.ok());
    CHECK(zero.defo.m0.is_zero());
    for (const auto& a : B.elems) CHECK(same_terms(zero.defo.m1(a), T->d(a)));

    auto bad = deform_from_mc(*T, G, T->loop_tilde(), Convention::Theorem, B);
    CHECK_FALSE(fx::passed(bad.report, "MC element is gapped by positive monoid classes"));

    std::mt19937_64 rng(67);
    for (int t = 0; t < 5; ++t) {
        auto M = oracle::construct_mc(*T, G, rng);
        REQUIRE(M);
        auto d = deform_from_mc(*T, G, *M, Convention::Theorem, B);
        for (const auto& c : d.report.checks) {
            INFO(c.label);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("twisted differentials") {
    for (int n : {1, 2}) {
        ClassGroup g = fx::rank1(Q(1), 0, n);
        auto A = fx::algebra(fx::groupring(g, "sphere"), Q(2));
        std::vector<ClassVector> cls{g.zero(), g.make({1})};
        OpenBasis C = window_basis(*A, Sector::Closed, cls, 3);
        auto lie = twist_lie(*A, A->loop_tilde(), [&A](const Element& x) { return A->d0(x); });
        for (const auto& x : C.elems) CHECK(same_terms(lie(x), A->d(x)));
        OpenBasis O = open_basis(*A, cls, 3);
        auto assoc = twist_assoc(*A, A->star1_tilde(), [&A](const Element& x) { return A->dint(x); });
        for (const auto& a : O.elems) CHECK(same_terms(assoc(a), A->d(a)));
        auto id = twist_assoc(*A, Element(Sector::Open, -1));
        for (const auto& a : O.elems) CHECK(same_terms(id(a), A->d(a)));
        Check sq;
        check_square_zero(sq, *A, assoc, O);
        CHECK(sq.passed);
    }
}

TEST_CASE("bounding chains") {
    ClassGroup g(2, {}, {Q(1), Q(3, 2)}, {0, 0}, 1);
    CurveMonoid G = make_monoid(g, {g.make({1, 0}), g.make({0, 1})}, Q(3));
    auto T = fx::algebra(fx::torus(g), Q(3));
    OpenBasis B = open_basis(*T, G.enumerated, 2);

    auto flat = solve_bounding_chain(make_deformation(*T, Element(Sector::Closed, -1), Convention::Theorem), G);
    CHECK(flat.solved);
    CHECK(flat.b.is_zero());

    std::mt19937_64 rng(71);
    for (int t = 0; t < 4; ++t) {
        auto M = oracle::construct_mc(*T, G, rng);
        REQUIRE(M);
        CurvedDeformation D = make_deformation(*T, *M, Convention::Theorem);
        auto s = solve_bounding_chain(D, G);
        CHECK(s.solved);
        Check sq;
        check_square_zero(sq, *T, m1_twisted(D, s.b), B);
        CHECK(sq.passed);
        // m1^b is a derivation of the product
        auto m1b = m1_twisted(D, s.b);
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j) {
                const auto& a = B.elems[i];
                const auto& b = B.elems[j];
                Element diff = m1b(T->pont(a, b)) - T->pont(m1b(a), b) - Q(sign_of(a.degree)) * T->pont(a, m1b(b));
                for (const auto& cl : diff.classes()) CHECK_FALSE(trusted(g, diff, cl));
            }
        for (const auto& a : B.elems) CHECK(same_terms(m1_twisted(D, Element(Sector::Open, -1))(a), D.m1(a)));
    }

    // H_-2 obstruction on the point group ring with Maslov index 2
    ClassGroup p = fx::rank1(Q(1), 2);
    CurveMonoid P = make_monoid(p, {p.make({1})}, Q(2));
    auto A = fx::algebra(fx::groupring(p, "point"), Q(2));
    Element M = closed(p, 1, 0, 0, Q(1), -1);
    REQUIRE(mc_check_closed(*A, P, M, Convention::Theorem).ok());
    CurvedDeformation D = make_deformation(*A, M, Convention::Theorem);
    auto s = solve_bounding_chain(D, P);
    CHECK_FALSE(s.solved);
    REQUIRE_FALSE(s.certificate.is_null());
    CHECK(s.certificate["class"] == json::array({1}));
    Element o = element_from_json(s.certificate["obstruction"], p);
    gdga::LinearOp dop = [&A](const Element& x) { return A->d(x); };
    oracle::Basis lo = oracle::basis_of(*A, Sector::Open, {p.make({1})}, -2);
    oracle::Basis hi = oracle::basis_of(*A, Sector::Open, {p.make({1})}, -1);
    CHECK_FALSE(oracle::dense_solve(oracle::matrix_of(dop, hi, lo), lo.coords(o)).has_value());
    CHECK(oracle::betti(*A, Sector::Open, {p.make({1})}, -2, dop) == s.certificate["betti"].get<std::size_t>());
}

TEST_CASE("displaced twist") {
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid G = make_monoid(g, {g.make({1})}, Q(2));
    PerturbedClassModule Nm = make_module(g, G, {}, Q(0));
    auto C = fx::algebra(fx::groupring(g, "contractible"), Q(2));
    MCData mc;
    mc.N0 = C->loop0();
    mc.N_geq0 = closed(g, 0, 0, 1, Q(1), 2);
    mc.has_displacement = true;
    CurvedDeformation D = make_deformation(*C, Element(Sector::Closed, -1), Convention::Theorem);
    auto dt = displaced_twist(D, Element(Sector::Open, -1), G, Nm, mc);
    CHECK(dt.report.ok());
    CHECK(dt.notes["identity_at_nonnegative_energy"]["holds"] == true);
    CHECK(same_terms(C->d(dt.N_geq0), dt.N0));
    CHECK(same_terms(dt.N0, -C->unit()));

    // torus: the identity cannot hold at zero energy, where N*0(0) is the signed unit
    auto T = fx::algebra(fx::torus(g), Q(2));
    std::mt19937_64 rng(73);
    auto M = oracle::construct_mc(*T, G, rng);
    REQUIRE(M);
    CurvedDeformation DT = make_deformation(*T, *M, Convention::Theorem);
    auto s = solve_bounding_chain(DT, G);
    REQUIRE(s.solved);
    MCData tm;
    tm.M = *M;
    tm.N0 = T->loop0();
    tm.has_displacement = true;
    auto tt = displaced_twist(DT, s.b, G, Nm, tm);
    CHECK(tt.report.ok());
    CHECK(tt.notes["identity_at_nonnegative_energy"]["holds"] == false);

    // a zero-energy term outside the monoid is flagged
    ClassGroup h(2, {}, {Q(1), Q(0)}, {0, 0}, 1);
    CurveMonoid H = make_monoid(h, {h.make({1, 0})}, Q(2));
    PerturbedClassModule Hm = make_module(h, H, {h.make({0, 1})}, Q(0));
    auto CH = fx::algebra(fx::groupring(h, "contractible"), Q(2));
    MCData off;
    off.N0 = CH->loop0();
    off.N0.add(Cell{h.make({0, 1}), 0}, 0, Q(1));
    off.has_displacement = true;
    auto bad = displaced_twist(make_deformation(*CH, Element(Sector::Closed, -1), Convention::Theorem),
                               Element(Sector::Open, -1), H, Hm, off);
    CHECK_FALSE(fx::passed(bad.report, "displaced N0 is supported on the monoid"));
}

TEST_CASE("convention parsing") {
    CHECK(parse_convention("thm") == Convention::Theorem);
    CHECK(parse_convention("lie") == Convention::Lie);
    CHECK_THROWS_AS(parse_convention("other"), std::invalid_argument);
}
