#include "gdga/deformation.hpp"

#include <stdexcept>

#include "gdga/io.hpp"
#include "gdga/parallel.hpp"
#include "gdga/validate.hpp"

namespace gdga {

Convention parse_convention(const std::string& s) {
    if (s == "thm" || s == "theorem") return Convention::Theorem;
    if (s == "lie") return Convention::Lie;
    throw std::invalid_argument("unknown convention '" + s + "' (expected thm or lie)");
}

std::string to_string(Convention c) { return c == Convention::Theorem ? "thm" : "lie"; }

Element lie_element(const Element& M, Convention c) { return c == Convention::Theorem ? -M : M; }

bool trusted(const ClassGroup& g, const Element& x, const ClassVector& a) {
    return !x.valid_upto || g.energy_of(a) <= *x.valid_upto;
}

namespace {

// Lowest trusted class carrying a nonzero term.
std::optional<ClassVector> trusted_nonzero(const ClassGroup& g, const Element& x) {
    std::optional<ClassVector> best;
    for (const auto& a : x.classes())
        if (trusted(g, x, a) && (!best || g.canonical_less(a, *best))) best = a;
    return best;
}

json level_json(const ClassGroup& g, const ClassVector& a) {
    return json{{"level", rational_to_json(g.energy_of(a))}, {"class", class_to_json(a)}};
}

}  // namespace

void expect_zero(Check& c, const ClassGroup& g, const Element& x, const std::vector<ClassVector>& classes) {
    for (const auto& a : classes) {
        if (!trusted(g, x, a)) {
            ++c.skipped;
            continue;
        }
        ++c.evaluated;
        Element comp = x.component(a);
        if (!comp.is_zero()) {
            json w = level_json(g, a);
            w["residual"] = element_to_json(g, comp);
            c.fail("nonzero residual at energy " + to_string(g.energy_of(a)), w);
        }
    }
}

Report mc_check_closed(const StateAlgebra& A, const CurveMonoid& G, const Element& M, Convention conv) {
    const auto& g = A.group();
    Report r;
    r.title = "Maurer-Cartan equation (closed string)";
    auto& deg = r.add("MC element has degree -1");
    deg.evaluated = 1;
    if (M.sector != Sector::Closed || (M.degree != -1 && !M.is_zero()))
        deg.fail("expected a closed element of degree -1");
    auto& gap = r.add("MC element is gapped by positive monoid classes");
    for (const auto& a : M.classes()) {
        ++gap.evaluated;
        if (!G.contains_positive(a)) gap.fail("term outside the positive monoid", json{{"class", class_to_json(a)}});
    }
    auto& eq = r.add("Maurer-Cartan equation");
    Element R = conv == Convention::Theorem ? A.d(M) + Q(1, 2) * A.bracket(M, M) : A.d(M) - Q(1, 2) * A.bracket(M, M);
    expect_zero(eq, g, R, G.enumerated);
    return r;
}

Report mc_check_displacement(const StateAlgebra& A, const CurveMonoid& G, const PerturbedClassModule& Nm,
                             const MCData& mc, Convention conv, std::optional<Q> below) {
    const auto& g = A.group();
    Report r;
    r.title = "displacement data";
    auto& deg = r.add("displacement elements have degrees 2 and 1");
    deg.evaluated = 2;
    if (mc.N_geq0.sector != Sector::Closed || (mc.N_geq0.degree != 2 && !mc.N_geq0.is_zero()))
        deg.fail("N>=0 must be a closed element of degree 2");
    if (mc.N0.sector != Sector::Closed || (mc.N0.degree != 1 && !mc.N0.is_zero()))
        deg.fail("N0 must be a closed element of degree 1");

    auto& gap = r.add("displacement elements are gapped by the module");
    for (const Element* e : {&mc.N_geq0, &mc.N0})
        for (const auto& a : e->classes()) {
            ++gap.evaluated;
            if (!Nm.contains(a)) gap.fail("term outside the module", json{{"class", class_to_json(a)}});
        }
    auto& sup = r.add("N0 is supported on monoid classes");
    for (const auto& a : mc.N0.classes()) {
        ++sup.evaluated;
        if (!G.contains(a)) sup.fail("N0 has a term outside the monoid", json{{"class", class_to_json(a)}});
    }

    auto& eq = r.add(below ? "displacement identity below energy " + to_string(*below) : "displacement identity");
    Element x = lie_element(mc.M, conv);
    Element R = A.d(mc.N_geq0) - A.bracket(x, mc.N_geq0) - mc.N0;
    std::vector<ClassVector> classes;
    for (const auto& a : Nm.enumerated)
        if (!below || g.energy_of(a) < *below) classes.push_back(a);
    expect_zero(eq, g, R, classes);

    auto& hom = r.add("N0 at zero energy is homologous to the fundamental class");
    hom.evaluated = 1;
    Homology h = homology(A, Sector::Closed, g.zero(), 1);
    Element diff = mc.N0.component(g.zero()) - A.loop0();
    diff.degree = 1;
    if (!h.is_boundary(diff)) {
        json w;
        if (auto phi = h.witness(diff)) w["functional"] = svec_to_json(*phi);
        hom.fail("[N0(0)] != [L0]", w);
    }
    return r;
}

Element CurvedDeformation::m1(const Element& alpha) const { return A->d(alpha) - A->co1(x, alpha); }

CurvedDeformation make_deformation(const StateAlgebra& A, const Element& M, Convention conv) {
    CurvedDeformation D;
    D.A = &A;
    D.x = lie_element(M, conv);
    D.m0 = -A.co0(D.x);
    D.m0.degree = -2;
    return D;
}

Report check_curved_identities(const CurvedDeformation& D, const CurveMonoid& G, const OpenBasis& B) {
    const StateAlgebra& A = *D.A;
    const auto& g = A.group();
    Report r;
    r.title = "curved deformation identities";
    auto& st = r.add("zero-energy part is the undeformed algebra");
    st.evaluated = 1;
    if (!D.x.component(g.zero()).is_zero()) st.fail("MC element has a zero-energy term");
    if (!D.m0.component(g.zero()).is_zero()) st.fail("m0 has a zero-energy term");

    auto& a4 = r.add("(4a) m1 m0 = 0");
    expect_zero(a4, g, D.m1(D.m0), G.enumerated);

    auto& b4 = r.add("(4b) m1 m1 = m0 . - - . m0");
    run_check(b4, B.size(), [&](std::size_t i, Check& c) {
        const Element& a = B.elems[i];
        Element diff = D.m1(D.m1(a)) - (A.pont(D.m0, a) - A.pont(a, D.m0));
        ++c.evaluated;
        if (auto bad = trusted_nonzero(g, diff)) {
            json w = level_json(g, g.sub(*bad, B.keys[i].first.a));
            w["input"] = B.refs[i];
            w["residual"] = element_to_json(g, diff.component(*bad));
            c.fail("m1 m1 != [m0, -]", w);
        }
    });

    auto& c4 = r.add("(4c) m1 is a derivation of the product");
    run_check(c4, B.size(), [&](std::size_t i, Check& c) {
        const Element& a = B.elems[i];
        for (std::size_t j = 0; j < B.size(); ++j) {
            const Element& b = B.elems[j];
            if (g.energy_of(B.keys[i].first.a) + g.energy_of(B.keys[j].first.a) > A.cutoff()) {
                ++c.skipped;
                continue;
            }
            ++c.evaluated;
            Element diff = D.m1(A.pont(a, b)) - A.pont(D.m1(a), b) - Q(sign_of(a.degree)) * A.pont(a, D.m1(b));
            if (auto bad = trusted_nonzero(g, diff)) {
                ClassVector in = g.add(B.keys[i].first.a, B.keys[j].first.a);
                json w = level_json(g, g.sub(*bad, in));
                w["inputs"] = json::array({B.refs[i], B.refs[j]});
                w["residual"] = element_to_json(g, diff.component(*bad));
                c.fail("Leibniz rule fails", w);
            }
        }
    });
    return r;
}

DeformationResult deform_from_mc(const StateAlgebra& A, const CurveMonoid& G, const Element& M, Convention conv,
                                 const OpenBasis& B) {
    DeformationResult out;
    out.report = mc_check_closed(A, G, M, conv);
    out.report.title = "deformation";
    out.defo = make_deformation(A, M, conv);
    out.report.merge(check_curved_identities(out.defo, G, B));
    return out;
}

LinearOp twist_lie(const StateAlgebra& A, const Element& x, LinearOp base) {
    if (!base) base = [&A](const Element& y) { return A.d(y); };
    return [&A, x, base](const Element& y) { return base(y) - A.bracket(x, y); };
}

LinearOp twist_assoc(const StateAlgebra& A, const Element& alpha, LinearOp base) {
    if (!base) base = [&A](const Element& y) { return A.d(y); };
    return [&A, alpha, base](const Element& b) {
        return base(b) - A.pont(alpha, b) + Q(sign_of(b.degree)) * A.pont(b, alpha);
    };
}

LinearOp twist_hochschild(const StateAlgebra& A, CochainPtr phi, LinearOp base) {
    if (!base) base = [&A](const Element& y) { return A.d(y); };
    return [phi, base](const Element& a) { return base(a) - phi->eval({a}); };
}

void check_square_zero(Check& c, const StateAlgebra& A, const LinearOp& op, const OpenBasis& B) {
    const auto& g = A.group();
    run_check(c, B.size(), [&](std::size_t i, Check& local) {
        ++local.evaluated;
        Element sq = op(op(B.elems[i]));
        if (auto bad = trusted_nonzero(g, sq)) {
            json w = level_json(g, g.sub(*bad, B.keys[i].first.a));
            w["input"] = B.refs[i];
            w["residual"] = element_to_json(g, sq.component(*bad));
            local.fail("operator does not square to zero", w);
        }
    });
}

LinearOp m1_twisted(const CurvedDeformation& D, const Element& b) {
    return [D, b](const Element& a) {
        return D.m1(a) + D.A->pont(b, a) - Q(sign_of(a.degree)) * D.A->pont(a, b);
    };
}

Element curvature(const CurvedDeformation& D, const Element& b) {
    Element r = D.m0 + D.m1(b) + D.A->pont(b, b);
    r.degree = -2;
    return r;
}

BoundingResult solve_bounding_chain(const CurvedDeformation& D, const CurveMonoid& G) {
    const StateAlgebra& A = *D.A;
    const auto& g = A.group();
    BoundingResult out;
    out.b.valid_upto = A.cutoff();
    out.report.title = "bounding chain";
    auto& cyc = out.report.add("obstruction cycles are closed");
    auto& vanish = out.report.add("obstruction classes vanish");
    EnergyLevels lv = sort_energy_levels(g, G.enumerated);
    json levels = json::array();
    std::size_t start = 0;
    for (std::size_t li = 0; li < lv.levels.size(); ++li) {
        std::size_t end = static_cast<std::size_t>(lv.last_index[li]) + 1;
        if (lv.levels[li] <= 0) {
            start = end;
            continue;
        }
        Element R = curvature(D, out.b);
        for (std::size_t ci = start; ci < end; ++ci) {
            const ClassVector& beta = lv.classes[ci];
            Element o = R.component(beta);
            o.valid_upto.reset();
            o.degree = -2;
            if (o.is_zero()) continue;
            ++cyc.evaluated;
            ++vanish.evaluated;
            Homology h = homology(A, Sector::Open, beta, -2);
            if (!h.is_cycle(o)) {
                cyc.fail("obstruction is not a cycle", level_json(g, beta));
                out.report.title = "bounding chain";
                return out;
            }
            auto prim = h.primitive(-o);
            if (!prim) {
                json cert = level_json(g, beta);
                cert["level_index"] = li;
                cert["obstruction"] = element_to_json(g, o);
                cert["betti"] = h.betti;
                json basis = json::array();
                for (const auto& [c, i] : h.chains.elems) basis.push_back(basis_ref(Sector::Open, c, i));
                cert["chains"] = basis;
                cert["functional"] = svec_to_json(*h.witness(o));
                out.certificate = cert;
                vanish.fail("obstruction class is nonzero in degree -2", cert);
                return out;
            }
            levels.push_back(json{{"level", rational_to_json(lv.levels[li])},
                                  {"class", class_to_json(beta)},
                                  {"primitive", element_to_json(g, *prim)}});
            Element p = *prim;
            p.degree = -1;
            out.b.add(p);
            out.b.degree = -1;
        }
        start = end;
    }
    auto& res = out.report.add("curvature vanishes through the cutoff");
    expect_zero(res, g, curvature(D, out.b), G.enumerated);
    out.solved = out.report.ok();
    return out;
}

DisplacedTwist displaced_twist(const CurvedDeformation& D, const Element& b, const CurveMonoid& G,
                               const PerturbedClassModule& Nm, const MCData& mc) {
    const StateAlgebra& A = *D.A;
    const auto& g = A.group();
    DisplacedTwist out;
    out.report.title = "displaced twist";
    auto psi_ge = co_map(A, mc.N_geq0), psi0 = co_map(A, mc.N0);
    out.N_geq0 = psi_ge->eval({}) + psi_ge->eval({b});
    out.N0 = psi0->eval({}) + psi0->eval({b});
    out.N_geq0.degree = 1;
    out.N0.degree = 0;

    Element R = m1_twisted(D, b)(out.N_geq0) - out.N0;
    std::vector<ClassVector> neg, nonneg;
    for (const auto& a : Nm.enumerated) (g.energy_of(a) < 0 ? neg : nonneg).push_back(a);
    auto& id = out.report.add("displaced identity at negative energy");
    expect_zero(id, g, R, neg);
    Check rest;
    expect_zero(rest, g, R, nonneg);
    out.notes["identity_at_nonnegative_energy"] =
        rest.passed ? json{{"holds", true}} : json{{"holds", false}, {"first_failure", rest.witness}};

    auto& sup = out.report.add("displaced N0 is supported on the monoid");
    for (const auto& a : out.N0.classes()) {
        ++sup.evaluated;
        if (trusted(g, out.N0, a) && !G.contains(a))
            sup.fail("displaced N0 has a term outside the monoid", json{{"class", class_to_json(a)}});
    }
    auto& unit = out.report.add("displaced N0 at zero energy represents the signed unit");
    unit.evaluated = 1;
    Homology h = homology(A, Sector::Open, g.zero(), 0);
    Element diff = out.N0.component(g.zero()) - Q(sign_of(A.n())) * A.unit();
    diff.degree = 0;
    diff.valid_upto.reset();
    if (!h.is_boundary(diff)) {
        json w;
        if (auto phi = h.witness(diff)) w["functional"] = svec_to_json(*phi);
        unit.fail("[N*0(0)] != (-1)^n [unit]", w);
    }
    return out;
}

}  // namespace gdga
