// Acceptance battery: one line per criterion, exit status 1 if any line fails.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"

using namespace gdga;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) detail << "FIRST FAILURE: " << what << "; ";
            ok = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string failed_labels(const CommandResult& r) {
    std::string s;
    for (const auto& rep : r.reports)
        for (const auto& c : rep.checks)
            if (!c.passed) s += c.label + ";";
    return s;
}

// ---------------------------------------------------------------- AC-1

void axiom_suite(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"torus", "torus_m2", "groupring_sphere", "groupring_acyclic", "groupring_point"}) {
        Project p = fx::example(name, ProjectOverrides{});
        if (std::string(name).rfind("torus", 0) == 0) {
            o.require(p.kmax == 5 && p.monoid.cutoff == Q(3), std::string(name) + " window is E <= 3, K = 5");
        }
        CommandResult r = cmd_validate(p);
        std::size_t n = 0;
        for (const auto& rep : r.reports)
            for (const auto& c : rep.checks) n += c.evaluated;
        o.require(r.exit == kOk, std::string(name) + ": " + failed_labels(r));
        o.detail << name << " " << n << " instances; ";
    }
    double s = seconds_since(t0);
    o.detail << "total " << static_cast<int>(s) << " s";
    o.require(s <= 120, "suite exceeded 120 s");
}

// ---------------------------------------------------------------- AC-2

void special_elements(Outcome& o) {
    std::size_t n = 0;
    auto run = [&](const StateAlgebra& A, const std::vector<ClassVector>& cls, int kmax, const std::string& tag) {
        Element L = A.loop_tilde();
        Element r1 = A.d0(L) - Q(1, 2) * A.bracket(L, L);
        o.require(r1.is_zero(), tag + ": d L~ - 1/2 [L~,L~]");
        for (const auto& x : window_basis(A, Sector::Closed, cls, kmax).elems) {
            ++n;
            o.require((A.d1(x) + A.bracket(L, x)).is_zero(), tag + ": -[L~,x] = d1 x");
        }
        Element S = A.star1_tilde();
        o.require((A.dint(S) - A.pont(S, S)).is_zero(), tag + ": dint *1~ - *1~ . *1~");
        o.require(same_terms(A.co0(A.loop0()), Q(sign_of(A.n())) * A.unit()), tag + ": CO0(L0) = (-1)^n unit");
    };
    for (int m : {1, 2}) {
        ClassGroup g(m, {}, std::vector<Q>(m, Q(1)), std::vector<long long>(m, 0), m);
        auto A = fx::algebra(fx::torus(g), Q(2));
        run(*A, make_monoid(g, [&] {
                    std::vector<ClassVector> gen;
                    for (int i = 0; i < m; ++i) {
                        std::vector<long long> v(m, 0);
                        v[i] = 1;
                        gen.push_back(g.make(v));
                    }
                    return gen;
                }(), Q(2)).enumerated,
            m == 1 ? 5 : 3, "torus m=" + std::to_string(m));
    }
    for (int dim : {1, 2})
        for (const char* fiber : {"point", "sphere", "acyclic"}) {
            ClassGroup g = fx::rank1(Q(1), 0, dim);
            auto A = fx::algebra(fx::groupring(g, fiber), Q(2));
            run(*A, {g.zero(), g.make({1}), g.make({2})}, 3, std::string("group ring ") + fiber);
        }
    o.detail << n << " window elements";
}

// ---------------------------------------------------------------- AC-3

void co_homomorphism(Outcome& o) {
    std::size_t n = 0;
    auto run = [&](const StateAlgebra& A, const std::vector<ClassVector>& cls, int kmax, const std::string& tag) {
        OpenBasis B = open_basis(A, cls, kmax);
        OpenBasis C = window_basis(A, Sector::Closed, cls, kmax);
        Report r = check_dgla_hom(A, [&](const Element& x) { return co_map(A, x); }, C.elems, C.refs, B);
        for (const auto& c : r.checks) {
            n += c.evaluated;
            o.require(c.passed, tag + ": " + c.label);
        }
        // CO has no components of arity >= 2
        for (const auto& x : C.elems) {
            auto phi = co_map(A, x);
            for (const auto& a : B.elems)
                for (const auto& b : B.elems) o.require(phi->eval({a, b}).is_zero(), tag + ": CO arity 2 vanishes");
        }
    };
    ClassGroup g = fx::rank1(Q(1));
    auto T = fx::algebra(fx::torus(g), Q(2));
    run(*T, {g.zero(), g.make({1}), g.make({2})}, 2, "torus");
    ClassGroup g2(2, {}, {Q(1), Q(1)}, {0, 0}, 2);
    auto T2 = fx::algebra(fx::torus(g2), Q(1));
    run(*T2, {g2.zero(), g2.make({1, 0}), g2.make({0, 1})}, 1, "torus m=2");
    auto S = fx::algebra(fx::groupring(g, "sphere"), Q(1));
    run(*S, {g.zero(), g.make({1})}, 2, "group ring");
    o.detail << n << " identity instances";
}

// ---------------------------------------------------------------- AC-4

void hochschild_structure(Outcome& o) {
    ClassGroup g = fx::rank1(Q(1));
    auto A = fx::algebra(fx::groupring(g, "point"), Q(1));
    std::vector<ClassVector> cls{g.zero(), g.make({1})};
    OpenBasis B = open_basis(*A, cls, 2);
    auto cochains = basis_cochains(*A, B, 2);
    std::vector<std::size_t> inputs;
    oracle::Expansion X(*A, cls, 10);
    for (const auto& k : B.keys) inputs.push_back(X.index(k.first, k.second));
    std::size_t compared = 0;
    for (std::size_t c = 0; c < cochains.size(); ++c) {
        auto phi = cochains[c];
        Check sq;
        compare_cochains(sq, *A, *hochschild_diff(*A, hochschild_diff(*A, phi)), *zero_cochain(phi->degree() - 2), B, 4);
        o.require(sq.passed, "delta^2 = 0 on basis cochain " + std::to_string(c));
    }
    // oracle agreement on the differential, term by term up to arity 3
    for (std::size_t c = 0; c < cochains.size(); ++c) {
        auto phi = cochains[c];
        auto lib = hochschild_diff(*A, phi);
        oracle::Op dphi = oracle::delta(X, oracle::Op{phi->degree(), 2, [&X, phi](const std::vector<std::size_t>& k) {
                                                          std::vector<Element> args;
                                                          for (auto i : k) args.push_back(X.to(X.basis(i)));
                                                          return X.from(phi->eval(args));
                                                      }});
        for (int l = 0; l <= 3; ++l)
            oracle::for_tuples(inputs, l, [&](const std::vector<std::size_t>& t) {
                std::vector<Element> args;
                std::vector<oracle::HV> hv;
                for (auto i : t) {
                    args.push_back(X.to(X.basis(i)));
                    hv.push_back(X.basis(i));
                }
                Element a = lib->eval(args);
                o.require(same_terms(a, X.to(oracle::eval_op(dphi, hv))), "oracle disagrees with delta");
                if (!a.is_zero()) ++compared;
            });
    }
    // graded Jacobi on every triple of basis cochains over the zero class, K = 1
    OpenBasis B0 = open_basis(*A, {g.zero()}, 1);
    auto small = basis_cochains(*A, B0, 2);
    std::size_t triples = 0;
    auto br = [&](CochainPtr x, CochainPtr y) { return gerstenhaber(*A, x, y); };
    for (const auto& a : small)
        for (const auto& b : small)
            for (const auto& c : small) {
                long long p = a->degree(), q = b->degree(), r = c->degree();
                auto jac = lincomb(p + q + r, {{Q(sign_of(p * r)), br(a, br(b, c))},
                                               {Q(sign_of(q * p)), br(b, br(c, a))},
                                               {Q(sign_of(r * q)), br(c, br(a, b))}});
                Check j;
                compare_cochains(j, *A, *jac, *zero_cochain(p + q + r), B0, 2);
                o.require(j.passed, "graded Jacobi");
                ++triples;
            }
    o.detail << cochains.size() << " basis cochains, " << compared << " nonzero values matched, " << triples
             << " Jacobi triples";
}

// ---------------------------------------------------------------- AC-5

void curved_identities(Outcome& o) {
    std::mt19937_64 rng(11);
    std::size_t n = 0;
    for (int m : {1, 2}) {
        ClassGroup g(m, {}, m == 1 ? std::vector<Q>{Q(1)} : std::vector<Q>{Q(1), Q(3, 2)}, std::vector<long long>(m, 0), m);
        std::vector<ClassVector> gen;
        for (int i = 0; i < m; ++i) {
            std::vector<long long> v(m, 0);
            v[i] = 1;
            gen.push_back(g.make(v));
        }
        CurveMonoid G = make_monoid(g, gen, Q(3));
        auto A = fx::algebra(fx::torus(g), Q(3));
        OpenBasis B = open_basis(*A, G.enumerated, m == 1 ? 3 : 2);
        for (int t = 0; t < 3; ++t) {
            auto M = oracle::construct_mc(*A, G, rng);
            o.require(M.has_value(), "level-consistent M exists");
            if (!M) continue;
            o.require(mc_check_closed(*A, G, *M, Convention::Theorem).ok(), "constructed M is Maurer-Cartan");
            auto d = deform_from_mc(*A, G, *M, Convention::Theorem, B);
            for (const auto& c : d.report.checks) {
                n += c.evaluated;
                o.require(c.passed, "torus m=" + std::to_string(m) + ": " + c.label);
            }
        }
    }
    o.detail << n << " level instances over 6 MC elements";
}

// ---------------------------------------------------------------- AC-6

void bounding_chains(Outcome& o) {
    std::mt19937_64 rng(13);
    int solved = 0, total = 0;
    ClassGroup g = fx::rank1(Q(1));
    CurveMonoid G = make_monoid(g, {g.make({1})}, Q(3));
    auto A = fx::algebra(fx::torus(g), Q(3));
    OpenBasis B = open_basis(*A, G.enumerated, 3);
    ClassGroup g2(2, {}, {Q(1), Q(3, 2)}, {0, 0}, 2);
    CurveMonoid G2 = make_monoid(g2, {g2.make({1, 0}), g2.make({0, 1})}, Q(3));
    auto A2 = fx::algebra(fx::torus(g2), Q(3));
    OpenBasis B2 = open_basis(*A2, G2.enumerated, 2);
    for (int t = 0; t < 24; ++t) {
        bool two = t % 3 == 2;
        const auto& AA = two ? *A2 : *A;
        const auto& GG = two ? G2 : G;
        auto M = oracle::construct_mc(AA, GG, rng);
        if (!M) continue;
        ++total;
        auto D = make_deformation(AA, *M, Convention::Theorem);
        auto s = solve_bounding_chain(D, GG);
        if (!s.solved) continue;
        Check sq;
        check_square_zero(sq, AA, m1_twisted(D, s.b), two ? B2 : B);
        Check flat;
        expect_zero(flat, AA.group(), curvature(D, s.b), GG.enumerated);
        if (sq.passed && flat.passed) ++solved;
    }
    o.require(total >= 20 && solved == total, "every deformation in the battery is unobstructed");

    Project p = fx::example("groupring_point");
    CurvedDeformation D = make_deformation(*p.algebra, p.mc->M, p.convention);
    auto s = solve_bounding_chain(D, p.monoid);
    o.require(!s.solved && !s.certificate.is_null(), "obstructed instance emits a certificate");
    if (!s.certificate.is_null()) {
        ClassVector a = class_from_json(s.certificate["class"], p.group);
        Element ob = element_from_json(s.certificate["obstruction"], p.group);
        LinearOp dop = [&](const Element& x) { return p.algebra->d(x); };
        auto lo = oracle::basis_of(*p.algebra, Sector::Open, {a}, -2);
        auto hi = oracle::basis_of(*p.algebra, Sector::Open, {a}, -1);
        auto lower = oracle::basis_of(*p.algebra, Sector::Open, {a}, -3);
        auto coords = lo.coords(ob);
        bool cycle = true;
        auto dm = oracle::matrix_of(dop, lo, lower);
        for (std::size_t i = 0; i < dm.rows; ++i) {
            Q v = 0;
            for (std::size_t j = 0; j < coords.size(); ++j) v += dm.a[i][j] * coords[j];
            cycle = cycle && v == 0;
        }
        o.require(cycle, "obstruction is a cycle");
        o.require(!oracle::dense_solve(oracle::matrix_of(dop, hi, lo), coords), "obstruction class is nonzero");
        o.detail << "obstructed class " << s.certificate["class"].dump() << "; ";
    }
    o.detail << solved << "/" << total << " randomized deformations solved";
}

// ---------------------------------------------------------------- AC-7

void elimination(Outcome& o) {
    Project t = fx::example("torus");
    CommandResult r = cmd_pipeline(t);
    o.require(r.status == "contradiction-certified" && r.exit == kOk, "torus pipeline: " + r.status);
    CommandResult rp = cmd_replay(t, r.certificate);
    o.require(rp.exit == kOk, "torus certificate replay");

    Project a = fx::example("groupring_acyclic");
    CommandResult ra = cmd_pipeline(a);
    o.require(ra.status == "contradiction-certified", "acyclic fiber pipeline: " + ra.status);
    o.require(cmd_replay(a, ra.certificate).exit == kOk, "acyclic certificate replay");

    Project s = fx::example("groupring_sphere");
    CommandResult rs = cmd_pipeline(s);
    o.require(rs.status == "surviving-class" && rs.exit == kObstructed, "sphere pipeline: " + rs.status);
    o.require(rs.data.value("surviving_class", json()) == json::array({0, 1}), "surviving class is the H1 component");
    if (!rs.certificate.is_null()) {
        o.require(rs.certificate["witness"]["level"] == "-1/2", "surviving term sits at the first negative level");
        o.require(h1_components(*s.algebra, {s.group.make({0, 1})}).at(s.group.make({0, 1})) == 1,
                  "the named class has nonzero H1");
    }
    o.detail << "torus " << r.status << ", acyclic " << ra.status << ", sphere " << rs.status << " at "
             << rs.data.value("surviving_class", json()).dump();
}

// ---------------------------------------------------------------- AC-8

std::size_t total_dim(const SpectralPage& pg, long long s) {
    std::size_t n = 0;
    for (const auto& [k, d] : pg.dims)
        if (k.second == s) n += d;
    return n;
}

void spectral(Outcome& o) {
    int projects = 0;
    for (const char* name : {"torus", "torus_m2", "groupring_sphere", "groupring_acyclic", "groupring_point",
                             "groupring_contractible"}) {
        Project p = fx::example(name);
        const auto& A = *p.algebra;
        const auto& g = p.group;
        auto cls = p.module.enumerated;
        Q lambda0 = p.spectral.lambda0 ? *p.spectral.lambda0
                                       : (min_energy_gap(g, cls) ? *min_energy_gap(g, cls) / 2 : Q(1));
        long long smin = p.spectral.smin, smax = p.spectral.smax;
        LinearOp d = [&A](const Element& x) { return A.d(x); };
        auto und = spectral_sequence(A, d, cls, lambda0, p.spectral.r_max, smin, smax);
        o.require(und.report.ok(), std::string(name) + ": page identities");
        for (long long s = smin; s <= smax; ++s) {
            std::map<int, std::size_t> want;
            for (const auto& a : cls) want[filtration_index(g.energy_of(a), lambda0)] += oracle::betti(A, Sector::Open, {a}, s, d);
            for (int pp = und.pmin; pp <= und.pmax; ++pp) {
                std::size_t got = und.pages.size() > 1 ? und.pages[1].dims[{pp, s}] : 0;
                o.require(got == want[pp], std::string(name) + ": E1 equals the per-class oracle");
                o.require(und.infinity.dims[{pp, s}] == got, std::string(name) + ": undeformed E1 = E_inf");
            }
        }
        ++projects;
        if (p.mc) {
            CurvedDeformation D = make_deformation(A, p.mc->M, p.convention);
            auto sol = solve_bounding_chain(D, p.monoid);
            if (!sol.solved) continue;
            LinearOp op = m1_twisted(D, sol.b);
            auto def = spectral_sequence(A, op, cls, lambda0, p.spectral.r_max, smin, smax);
            o.require(def.report.ok(), std::string(name) + ": deformed page identities");
            for (long long s = smin; s <= smax; ++s)
                o.require(total_dim(def.infinity, s) == oracle::betti(A, Sector::Open, cls, s, op),
                          std::string(name) + ": E_inf total equals m1 homology");
        }
    }
    o.detail << projects << " projects";
}

// ---------------------------------------------------------------- AC-9

void determinism(Outcome& o) {
    for (const char* name : {"torus", "groupring_acyclic", "groupring_sphere", "groupring_point"}) {
        auto once = [&] {
            Project p = fx::example(name);
            CommandResult r = cmd_pipeline(p);
            return canonical_dump(r.to_json()) + canonical_dump(r.certificate);
        };
        o.require(once() == once(), std::string(name) + ": reports differ between runs");
    }
    o.detail << "4 projects, two runs each";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) ::setenv("GDGA_EXAMPLES", argv[1], 1);
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"AC-1 axiom suite", axiom_suite},
        {"AC-2 special elements", special_elements},
        {"AC-3 closed-open homomorphism", co_homomorphism},
        {"AC-4 Hochschild structure", hochschild_structure},
        {"AC-5 curved deformation", curved_identities},
        {"AC-6 bounding chains", bounding_chains},
        {"AC-7 elimination engine", elimination},
        {"AC-8 spectral sequence", spectral},
        {"AC-9 determinism", determinism},
    };
    int failures = 0;
    for (const auto& [label, fn] : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.ok ? "PASS " : "FAIL ") << label << " (" << o.detail.str() << ") [" << static_cast<int>(seconds_since(t0))
                  << " s]" << std::endl;
        if (!o.ok) ++failures;
    }
    return failures ? 1 : 0;
}
