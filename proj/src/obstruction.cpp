#include "gdga/obstruction.hpp"

#include <stdexcept>

#include "gdga/io.hpp"
#include "gdga/validate.hpp"

namespace gdga {

std::map<ClassVector, std::size_t> h1_components(const StateAlgebra& A, const std::vector<ClassVector>& classes) {
    std::map<ClassVector, std::size_t> out;
    for (const auto& a : classes) out[a] = homology(A, Sector::Open, a, 1).betti;
    return out;
}

std::string to_string(EliminationStatus s) {
    switch (s) {
        case EliminationStatus::Running: return "running";
        case EliminationStatus::ContradictionCertified: return "contradiction-certified";
        case EliminationStatus::SurvivingClass: return "surviving-class";
        case EliminationStatus::PreconditionFailed: return "precondition-failed";
    }
    return "unknown";
}

namespace {

json chains_json(const StateBasis& B) {
    json out = json::array();
    for (const auto& [c, i] : B.elems) out.push_back(basis_ref(B.sector, c, i));
    return out;
}

std::vector<ClassVector> negative_classes(const ClassGroup& g, const PerturbedClassModule& Nm) {
    std::vector<ClassVector> out;
    for (const auto& a : sort_energy_levels(g, Nm.enumerated).classes)
        if (g.energy_of(a) < 0) out.push_back(a);
    return out;
}

// Functional on the zero-energy open chains of degree 0 that kills boundaries and is
// 1 on z, or nullopt when z is a boundary.
std::optional<SVec> unit_functional(const Homology& h, const Element& z) { return h.witness(z); }

}  // namespace

EliminationState eliminate(const EliminationInput& in, const CurveMonoid& G, const PerturbedClassModule& Nm) {
    const CurvedDeformation& D = *in.defo;
    const StateAlgebra& A = *D.A;
    const auto& g = A.group();
    EliminationState st;
    st.report.title = "elimination";
    st.N = in.N_geq0;
    st.N.degree = 1;
    LinearOp m1b = m1_twisted(D, in.b);

    auto& flat = st.report.add("curvature vanishes after twisting");
    expect_zero(flat, g, curvature(D, in.b), G.enumerated);
    auto neg = negative_classes(g, Nm);
    auto& ident = st.report.add("displaced identity at negative energy");
    expect_zero(ident, g, m1b(st.N) - in.N0, neg);
    auto& sup = st.report.add("displaced N0 is supported on the monoid");
    for (const auto& a : in.N0.classes()) {
        ++sup.evaluated;
        if (trusted(g, in.N0, a) && !G.contains(a))
            sup.fail("displaced N0 has a term outside the monoid", json{{"class", class_to_json(a)}});
    }
    auto& unit = st.report.add("displaced N0 at zero energy represents the signed unit");
    unit.evaluated = 1;
    Homology h0 = homology(A, Sector::Open, g.zero(), 0);
    Element z0 = in.N0.component(g.zero());
    z0.degree = 0;
    z0.valid_upto.reset();
    Element diff = z0 - Q(sign_of(A.n())) * A.unit();
    diff.degree = 0;
    if (!h0.is_boundary(diff)) unit.fail("[N*0(0)] != (-1)^n [unit]");
    auto unit_phi = unit_functional(h0, z0);
    auto& nz = st.report.add("unit class is nonzero");
    nz.evaluated = 1;
    if (!unit_phi) nz.fail("the signed unit is a boundary at zero energy");
    if (!st.report.ok()) {
        st.status = EliminationStatus::PreconditionFailed;
        return st;
    }

    auto& cyc = st.report.add("eliminated terms are cycles");
    auto& mono = st.report.add("minimum energy increases at each step");
    for (const auto& eta : neg) {
        Element v = st.N.component(eta);
        v.valid_upto.reset();
        v.degree = 1;
        if (v.is_zero()) continue;
        ++cyc.evaluated;
        Homology h = homology(A, Sector::Open, eta, 1);
        if (!h.is_cycle(v)) {
            cyc.fail("N(eta) is not a cycle", json{{"class", class_to_json(eta)}});
            st.status = EliminationStatus::PreconditionFailed;
            return st;
        }
        auto chi = h.primitive(-v);
        if (!chi) {
            st.status = EliminationStatus::SurvivingClass;
            st.witness = json{{"level", rational_to_json(g.energy_of(eta))},
                              {"class", class_to_json(eta)},
                              {"cycle", element_to_json(g, v)},
                              {"betti", h.betti},
                              {"chains", chains_json(h.chains)},
                              {"functional", svec_to_json(*h.witness(v))}};
            return st;
        }
        Element c = *chi;
        c.degree = 2;
        Q before = g.energy_of(eta);
        st.N = st.N + m1b(c);
        st.N.degree = 1;
        ++mono.evaluated;
        if (!st.N.component(eta).is_zero()) mono.fail("term survived its elimination", json{{"class", class_to_json(eta)}});
        for (const auto& a : st.N.classes())
            if (g.energy_of(a) < before && !st.N.component(a).is_zero())
                mono.fail("a lower-energy term reappeared", json{{"class", class_to_json(a)}});
        st.steps.push_back(json{{"level", rational_to_json(before)},
                                {"class", class_to_json(eta)},
                                {"chi", element_to_json(g, c)}});
    }
    st.status = EliminationStatus::ContradictionCertified;
    Element final0 = st.N.component(g.zero());
    final0.degree = 1;
    st.witness = json{{"chains", chains_json(h0.chains)},
                      {"functional", svec_to_json(*unit_phi)},
                      {"unit_representative", element_to_json(g, z0)},
                      {"pairing", rational_to_json(pair(*unit_phi, h0.chains.coords(z0)))},
                      {"boundary_of_final_N", element_to_json(g, A.d(final0).component(g.zero()))}};
    return st;
}

json certify(const StateAlgebra& A, const EliminationState& s) {
    if (s.status != EliminationStatus::ContradictionCertified && s.status != EliminationStatus::SurvivingClass)
        throw std::logic_error("elimination has not finished");
    const auto& g = A.group();
    Horizon low = min_energy(g, s.N);
    json j;
    j["status"] = to_string(s.status);
    j["dim_l"] = A.n();
    j["cutoff"] = rational_to_json(A.cutoff());
    j["steps"] = s.steps;
    j["final_N"] = element_to_json(g, s.N);
    j["final_energy_bound"] = low ? rational_to_json(*low) : json(nullptr);
    j["witness"] = s.witness;
    return j;
}

Report replay_certificate(const EliminationInput& in, const CurveMonoid& G, const PerturbedClassModule& Nm,
                          const json& cert) {
    const CurvedDeformation& D = *in.defo;
    const StateAlgebra& A = *D.A;
    const auto& g = A.group();
    Report r;
    r.title = "certificate replay";
    auto& hdr = r.add("certificate matches the instance");
    hdr.evaluated = 1;
    if (cert.value("dim_l", -1) != A.n() || rational_from_json(cert.at("cutoff")) != A.cutoff())
        hdr.fail("dimension or cutoff differ");

    LinearOp m1b = m1_twisted(D, in.b);
    Element N = in.N_geq0;
    N.degree = 1;
    auto& steps = r.add("recorded primitives eliminate their terms");
    auto neg = negative_classes(g, Nm);
    std::size_t idx = 0;
    for (const auto& step : cert.at("steps")) {
        ++steps.evaluated;
        ClassVector eta = class_from_json(step.at("class"), g);
        Element chi = element_from_json(step.at("chi"), g);
        chi.degree = 2;
        Element v = N.component(eta);
        v.valid_upto.reset();
        Element lhs = A.d(chi) + v;
        if (!lhs.is_zero()) {
            steps.fail("primitive does not bound the recorded term",
                       json{{"step", idx}, {"level", step.at("level")}, {"class", step.at("class")}});
            return r;
        }
        N = N + m1b(chi);
        N.degree = 1;
        ++idx;
    }
    const std::string status = cert.at("status").get<std::string>();
    const json& w = cert.at("witness");
    auto& fin = r.add("final state matches the certificate");
    fin.evaluated = 1;
    if (!same_terms(N, element_from_json(cert.at("final_N"), g))) fin.fail("replayed N differs from the recorded one");

    auto& wit = r.add("witness functional separates the recorded class");
    wit.evaluated = 1;
    ClassVector where = status == "surviving-class" ? class_from_json(w.at("class"), g) : g.zero();
    long long deg = status == "surviving-class" ? 1 : 0;
    Homology h = homology(A, Sector::Open, where, deg);
    if (chains_json(h.chains) != w.at("chains")) {
        wit.fail("chain basis differs");
        return r;
    }
    SVec phi = svec_from_json(w.at("functional"));
    for (const auto& col : h.d_in.cols)
        if (pair(phi, col) != 0) {
            wit.fail("functional does not vanish on boundaries");
            return r;
        }
    if (status == "surviving-class") {
        auto& lv = r.add("lower levels are eliminated");
        for (const auto& a : neg) {
            if (g.energy_of(a) >= g.energy_of(where)) break;
            ++lv.evaluated;
            if (!N.component(a).is_zero()) lv.fail("term below the surviving level", json{{"class", class_to_json(a)}});
        }
        Element v = N.component(where);
        v.valid_upto.reset();
        v.degree = 1;
        if (!h.is_cycle(v)) wit.fail("recorded term is not a cycle");
        if (pair(phi, h.chains.coords(v)) == 0) wit.fail("functional vanishes on the surviving term");
    } else {
        auto& lv = r.add("no negative-energy terms remain");
        for (const auto& a : neg) {
            ++lv.evaluated;
            if (!N.component(a).is_zero()) lv.fail("negative-energy term remains", json{{"class", class_to_json(a)}});
        }
        Element z0 = in.N0.component(g.zero());
        z0.valid_upto.reset();
        z0.degree = 0;
        if (pair(phi, h.chains.coords(z0)) == 0) wit.fail("functional vanishes on the unit representative");
    }
    return r;
}

// ---------------------------------------------------------------- spectral sequence

std::optional<Q> min_energy_gap(const ClassGroup& g, const std::vector<ClassVector>& classes) {
    auto lv = sort_energy_levels(g, classes);
    std::optional<Q> gap;
    for (std::size_t i = 1; i < lv.levels.size(); ++i) {
        Q d = lv.levels[i] - lv.levels[i - 1];
        if (!gap || d < *gap) gap = d;
    }
    return gap;
}

int filtration_index(const Q& energy, const Q& lambda0) {
    Q t = energy / lambda0;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return static_cast<int>(c.get_si()) - 1;
}

namespace {

using Space = std::vector<SVec>;

struct Graded {
    StateBasis basis;
    std::vector<int> p;   // filtration index per basis element
    ColMatrix D;          // to degree - 1
};

Space coordinate_subspace(const Graded& V, int p) {
    Space out;
    for (int i = 0; i < V.basis.size(); ++i)
        if (V.p[i] >= p) out.push_back(SVec{{i, Q(1)}});
    return out;
}

// {x in F^p : D x in F^{p+r}} on one degree.
Space cycles(const Graded& V, const Graded& W, int p, int r) {
    Space F = coordinate_subspace(V, p);
    ColMatrix m;
    m.rows = W.basis.size();
    for (const auto& f : F) {
        SVec img = V.D.apply(f), low;
        for (const auto& [i, q] : img)
            if (W.p[i] < p + r) low.emplace(i, q);
        m.cols.push_back(low);
    }
    Space out;
    for (const auto& k : kernel(m)) {
        SVec v;
        for (const auto& [j, q] : k) axpy(v, q, F[j]);
        out.push_back(v);
    }
    return out;
}

std::size_t span_dim(const Space& s) {
    Echelon e;
    for (const auto& v : s) e.insert(v);
    return e.rank();
}

struct Quotient {
    Space reps;
    Echelon ech{true};
    static constexpr int kDen = 1 << 28;
};

void build_quotient(Quotient& q, const Space& num, const Space& den) {
    int t = 0;
    for (const auto& v : den) q.ech.insert(v, Quotient::kDen + t++);
    for (const auto& v : num)
        if (q.ech.insert(v, static_cast<int>(q.reps.size()))) q.reps.push_back(v);
}

SVec quotient_coords(const Quotient& q, const SVec& v, bool* ok) {
    auto combo = q.ech.express(v);
    SVec out;
    if (!combo) {
        *ok = false;
        return out;
    }
    for (const auto& [tag, c] : *combo)
        if (tag < Quotient::kDen) out.emplace(tag, c);
    return out;
}

}  // namespace

json SpectralSequence::to_json() const {
    auto page_json = [&](const SpectralPage& pg) {
        json rows = json::array();
        for (const auto& [key, dim] : pg.dims)
            if (key.second >= smin && key.second <= smax && dim > 0)
                rows.push_back(json{{"p", key.first}, {"degree", key.second}, {"dim", dim}});
        return json{{"r", pg.r}, {"entries", rows}};
    };
    json pj = json::array();
    for (const auto& pg : pages) pj.push_back(page_json(pg));
    json tot = json::object();
    for (const auto& [s, d] : homology_total) tot[std::to_string(s)] = d;
    return json{{"lambda0", rational_to_json(lambda0)},
                {"p_range", json::array({pmin, pmax})},
                {"degrees", json::array({smin, smax})},
                {"pages", pj},
                {"infinity", page_json(infinity)},
                {"homology", tot}};
}

SpectralSequence spectral_sequence(const StateAlgebra& A, const LinearOp& D, const std::vector<ClassVector>& classes,
                                   const Q& lambda0, int r_max, long long smin, long long smax) {
    const auto& g = A.group();
    if (lambda0 <= 0) throw std::domain_error("lambda0 must be positive");
    if (auto gap = min_energy_gap(g, classes); gap && lambda0 > *gap)
        throw std::domain_error("lambda0 = " + to_string(lambda0) + " exceeds the energy gap " + to_string(*gap));
    SpectralSequence ss;
    ss.lambda0 = lambda0;
    ss.smin = smin;
    ss.smax = smax;
    bool first = true;
    for (const auto& a : classes) {
        int p = filtration_index(g.energy_of(a), lambda0);
        ss.pmin = first ? p : std::min(ss.pmin, p);
        ss.pmax = first ? p : std::max(ss.pmax, p);
        first = false;
    }
    // chain spaces on [smin-2, smax+2], pages on [smin-1, smax+1]
    std::map<long long, Graded> V;
    for (long long s = smin - 2; s <= smax + 2; ++s) {
        Graded G;
        G.basis = state_basis(A, Sector::Open, classes, s);
        for (const auto& [c, i] : G.basis.elems) G.p.push_back(filtration_index(g.energy_of(c.a), lambda0));
        V[s] = std::move(G);
    }
    for (long long s = smin - 1; s <= smax + 2; ++s)
        V[s].D = operator_matrix(A, D, V[s].basis, V[s - 1].basis);
    V[smin - 2].D.rows = 0;
    V[smin - 2].D.cols.assign(V[smin - 2].basis.size(), SVec{});

    auto& dsq = ss.report.add("page differentials square to zero");
    auto& next = ss.report.add("each page is the homology of the previous one");

    const int span = ss.pmax - ss.pmin + 2;
    const int r_stop = std::max(r_max, span) + 1;
    std::map<std::pair<int, long long>, std::size_t> prev_h;  // predicted dims of E_r
    for (int r = 0; r <= r_stop; ++r) {
        SpectralPage pg;
        pg.r = r;
        std::map<std::pair<int, long long>, Quotient> Q_;
        auto Z = [&](long long s, int p, int rr) {
            if (rr < 0) return coordinate_subspace(V[s], p);
            return cycles(V[s], V[s - 1], p, rr);
        };
        for (long long s = smin - 1; s <= smax + 1; ++s)
            for (int p = ss.pmin; p <= ss.pmax; ++p) {
                Space num = Z(s, p, r);
                Space den = Z(s, p + 1, r - 1);
                for (const auto& z : Z(s + 1, p - r + 1, r - 1)) den.push_back(V[s + 1].D.apply(z));
                auto& q = Q_[{p, s}];
                build_quotient(q, num, den);
                pg.dims[{p, s}] = q.reps.size();
            }
        // d_r : E_r^{p}(s) -> E_r^{p+r}(s-1)
        std::map<std::pair<int, long long>, ColMatrix> dr;
        for (long long s = smin; s <= smax + 1; ++s)
            for (int p = ss.pmin; p <= ss.pmax; ++p) {
                ColMatrix m;
                auto tgt = Q_.find({p + r, s - 1});
                m.rows = tgt == Q_.end() ? 0 : static_cast<int>(tgt->second.reps.size());
                for (const auto& rep : Q_[{p, s}].reps) {
                    SVec img = V[s].D.apply(rep);
                    bool ok = true;
                    SVec c = tgt == Q_.end() ? SVec{} : quotient_coords(tgt->second, img, &ok);
                    if (tgt == Q_.end() && !img.empty()) {
                        for (const auto& [i, q] : img)
                            if (V[s - 1].p[i] <= ss.pmax) ok = false;
                    }
                    if (!ok) dsq.fail("image of a page element is not a page cycle", json{{"r", r}, {"p", p}, {"degree", s}});
                    m.cols.push_back(c);
                }
                pg.rank_dr += rank(m);
                dr[{p, s}] = std::move(m);
            }
        for (long long s = smin + 1; s <= smax + 1; ++s)
            for (int p = ss.pmin; p <= ss.pmax; ++p) {
                auto b = dr.find({p + r, s - 1});
                if (b == dr.end()) continue;
                ++dsq.evaluated;
                const auto& a = dr[{p, s}];
                for (const auto& col : a.cols)
                    if (!b->second.apply(col).empty()) {
                        dsq.fail("d_r d_r != 0", json{{"r", r}, {"p", p}, {"degree", s}});
                        break;
                    }
            }
        if (r > 0) {
            for (long long s = smin; s <= smax; ++s)
                for (int p = ss.pmin; p <= ss.pmax; ++p) {
                    ++next.evaluated;
                    if (prev_h.at({p, s}) != pg.dims[{p, s}])
                        next.fail("dim E_{r} differs from the homology of E_{r-1}",
                                  json{{"r", r}, {"p", p}, {"degree", s},
                                       {"expected", prev_h.at({p, s})}, {"found", pg.dims[{p, s}]}});
                }
        }
        prev_h.clear();
        for (long long s = smin; s <= smax; ++s)
            for (int p = ss.pmin; p <= ss.pmax; ++p) {
                std::size_t out = dr.count({p, s}) ? rank(dr[{p, s}]) : 0;
                std::size_t in = dr.count({p - r, s + 1}) ? rank(dr[{p - r, s + 1}]) : 0;
                prev_h[{p, s}] = pg.dims[{p, s}] - out - in;
            }
        if (r <= r_max) ss.pages.push_back(pg);
        if (r == r_stop) ss.infinity = pg;
    }

    auto& e1 = ss.report.add("E1 equals the per-class homology");
    if (ss.pages.size() > 1) {
        std::map<std::pair<int, long long>, std::size_t> oracle;
        for (long long s = smin; s <= smax; ++s)
            for (const auto& a : classes)
                oracle[{filtration_index(g.energy_of(a), lambda0), s}] += homology(A, Sector::Open, a, s).betti;
        for (long long s = smin; s <= smax; ++s)
            for (int p = ss.pmin; p <= ss.pmax; ++p) {
                ++e1.evaluated;
                std::size_t want = oracle.count({p, s}) ? oracle[{p, s}] : 0;
                if (ss.pages[1].dims[{p, s}] != want)
                    e1.fail("E1 differs from the homology oracle",
                            json{{"p", p}, {"degree", s}, {"E1", ss.pages[1].dims[{p, s}]}, {"oracle", want}});
            }
    }
    auto& inf = ss.report.add("E-infinity total equals the homology of the truncated complex");
    for (long long s = smin; s <= smax; ++s) {
        std::size_t h = V[s].basis.size() - rank(V[s].D) - rank(V[s + 1].D);
        ss.homology_total[s] = h;
        std::size_t tot = 0;
        for (int p = ss.pmin; p <= ss.pmax; ++p) tot += ss.infinity.dims[{p, s}];
        ++inf.evaluated;
        if (tot != h) inf.fail("total dimension mismatch", json{{"degree", s}, {"E_inf", tot}, {"homology", h}});
    }
    return ss;
}

}  // namespace gdga
