#include "gdga/state.hpp"

#include <stdexcept>

namespace gdga {

StateAlgebra::StateAlgebra(BackendPtr b, Q cutoff) : backend_(std::move(b)), cutoff_(std::move(cutoff)) {}

long long StateAlgebra::state_degree(Sector s, const Cell& c, int i) const {
    long long D = backend_->degree(s, c.a, c.k, i);
    long long mu = group().maslov_of(c.a);
    return s == Sector::Closed ? closed_state_degree(D, n(), mu, c.k) : open_state_degree(D, mu, c.k);
}

Element StateAlgebra::basis(Sector s, const Cell& c, int i) const {
    Element x(s, state_degree(s, c, i));
    x.add(c, i, 1);
    return x;
}

Element StateAlgebra::zero(Sector s, long long degree) const { return Element(s, degree); }

Element StateAlgebra::truncated(Element x) const {
    bool dropped = false;
    for (auto it = x.terms.begin(); it != x.terms.end();) {
        if (group().energy_of(it->first.a) > cutoff_) {
            it = x.terms.erase(it);
            dropped = true;
        } else {
            ++it;
        }
    }
    if (dropped) x.valid_upto = min_horizon(x.valid_upto, Horizon(cutoff_));
    return x;
}

Horizon StateAlgebra::product_horizon(const Element& x, const Element& y) const {
    Horizon h;
    auto lx = min_energy(group(), x), ly = min_energy(group(), y);
    if (x.valid_upto && ly) h = min_horizon(h, Horizon(*x.valid_upto + *ly));
    if (y.valid_upto && lx) h = min_horizon(h, Horizon(*y.valid_upto + *lx));
    return h;
}

Element StateAlgebra::d0(const Element& x) const {
    Element r(x.sector, x.degree - 1);
    r.valid_upto = x.valid_upto;
    for (const auto& [c, v] : x.terms)
        for (const auto& [i, q] : v) r.add(c, q, backend_->d(x.sector, c.a, c.k, i));
    return r;
}

Element StateAlgebra::faces(const Element& x, bool interior) const {
    Element r(x.sector, x.degree - 1);
    r.valid_upto = x.valid_upto;
    Q sign = sign_of(n() + x.degree);
    for (const auto& [c, v] : x.terms) {
        Cell out{c.a, c.k + 1};
        int k = out.k;
        for (int j = interior ? 1 : 0; j <= (interior ? k - 1 : k); ++j) {
            Q s = sign * sign_of(j);
            for (const auto& [i, q] : v) r.add(out, s * q, backend_->face(x.sector, c.a, k, j, i));
        }
    }
    return r;
}

Element StateAlgebra::d1(const Element& x) const { return faces(x, false); }

Element StateAlgebra::d(const Element& x) const { return d0(x) + d1(x); }

Element StateAlgebra::d1_int(const Element& alpha) const {
    if (alpha.sector != Sector::Open) throw std::invalid_argument("interior faces act on the open sector");
    return faces(alpha, true);
}

Element StateAlgebra::dint(const Element& alpha) const { return d0(alpha) + d1_int(alpha); }

Element StateAlgebra::pont(const Element& alpha, const Element& beta) const {
    if (alpha.sector != Sector::Open || beta.sector != Sector::Open)
        throw std::invalid_argument("Pontryagin product takes open elements");
    Element r(Sector::Open, alpha.degree + beta.degree);
    r.valid_upto = product_horizon(alpha, beta);
    for (const auto& [c1, v1] : alpha.terms)
        for (const auto& [c2, v2] : beta.terms) {
            Cell out{group().add(c1.a, c2.a), c1.k + c2.k};
            if (group().energy_of(out.a) > cutoff_) {
                r.valid_upto = min_horizon(r.valid_upto, Horizon(cutoff_));
                continue;
            }
            Q s = sign_of(static_cast<long long>(c1.k) * beta.degree);
            for (const auto& [i1, q1] : v1)
                for (const auto& [i2, q2] : v2) r.add(out, s * q1 * q2, backend_->pont(c1, i1, c2, i2));
        }
    return r;
}

Element StateAlgebra::pre(const Element& x, const Element& y) const {
    if (x.sector != Sector::Closed || y.sector != Sector::Closed)
        throw std::invalid_argument("pre-Lie product takes closed elements");
    Element r(Sector::Closed, x.degree + y.degree);
    r.valid_upto = product_horizon(x, y);
    for (const auto& [c1, v1] : x.terms)
        for (const auto& [c2, v2] : y.terms) {
            if (c1.k == 0) continue;
            Cell out{group().add(c1.a, c2.a), c1.k + c2.k - 1};
            if (group().energy_of(out.a) > cutoff_) {
                r.valid_upto = min_horizon(r.valid_upto, Horizon(cutoff_));
                continue;
            }
            long long k1 = c1.k, k2 = c2.k;
            for (int pos = 1; pos <= c1.k; ++pos) {
                Q s = sign_of((pos - 1) * (k2 - 1) + (k1 - 1) * (y.degree + 1 + k2));
                for (const auto& [i1, q1] : v1)
                    for (const auto& [i2, q2] : v2)
                        r.add(out, s * q1 * q2, backend_->circ_closed(pos, c1, i1, c2, i2));
            }
        }
    return r;
}

Element StateAlgebra::bracket(const Element& x, const Element& y) const {
    return pre(x, y) - Q(sign_of(x.degree * y.degree)) * pre(y, x);
}

Element StateAlgebra::oc(const Element& alpha, const Element& x) const {
    if (alpha.sector != Sector::Open || x.sector != Sector::Closed)
        throw std::invalid_argument("open-closed product takes an open and a closed element");
    Element r(Sector::Open, alpha.degree + x.degree);
    r.valid_upto = product_horizon(alpha, x);
    for (const auto& [c1, v1] : alpha.terms)
        for (const auto& [c2, v2] : x.terms) {
            if (c1.k == 0) continue;
            Cell out{group().add(c1.a, c2.a), c1.k + c2.k - 1};
            if (group().energy_of(out.a) > cutoff_) {
                r.valid_upto = min_horizon(r.valid_upto, Horizon(cutoff_));
                continue;
            }
            long long k1 = c1.k, k2 = c2.k;
            for (int pos = 1; pos <= c1.k; ++pos) {
                Q s = sign_of((pos - 1) * (k2 - 1) + k1 * (x.degree + 1 + k2));
                for (const auto& [i1, q1] : v1)
                    for (const auto& [i2, q2] : v2)
                        r.add(out, s * q1 * q2, backend_->circ_open(pos, c1, i1, c2, i2));
            }
        }
    return r;
}

Element StateAlgebra::anomaly(const Element& x) const {
    if (x.sector != Sector::Closed) throw std::invalid_argument("anomaly map takes a closed element");
    Element r(Sector::Open, x.degree - 1);
    r.valid_upto = x.valid_upto;
    for (const auto& [c, v] : x.terms)
        for (const auto& [i, q] : v) r.add(c, q, backend_->anomaly(c, i));
    return r;
}

Element StateAlgebra::co0(const Element& x) const { return Q(sign_of(x.degree)) * anomaly(x); }

Element StateAlgebra::co1(const Element& x, const Element& alpha) const {
    return Q(sign_of(alpha.degree * x.degree + 1)) * oc(alpha, x);
}

namespace {

Element special(Sector s, long long degree, int k, const ClassGroup& g, const SVec& v) {
    Element x(s, degree);
    x.add(Cell{g.zero(), k}, 1, v);
    return x;
}

}  // namespace

Element StateAlgebra::unit() const { return special(Sector::Open, 0, 0, group(), backend_->unit()); }
Element StateAlgebra::star1() const { return special(Sector::Open, -1, 1, group(), backend_->star1()); }
Element StateAlgebra::star1_tilde() const { return Q(sign_of(n() + 1)) * star1(); }
Element StateAlgebra::loop() const { return special(Sector::Closed, -1, 2, group(), backend_->loop2()); }
Element StateAlgebra::loop_tilde() const { return Q(sign_of(n() + 1)) * loop(); }
Element StateAlgebra::loop0() const {
    return special(Sector::Closed, 1, 0, group(), backend_->fundamental());
}

// ---------------------------------------------------------------- bases and homology

SVec StateBasis::coords(const Element& x) const {
    SVec v;
    for (const auto& [c, chain] : x.terms)
        for (const auto& [i, q] : chain) {
            auto it = index.find({c, i});
            if (it == index.end()) throw std::out_of_range("element has a term outside the basis");
            v[it->second] += q;
        }
    return v;
}

Element StateBasis::element(const SVec& v) const {
    Element x(sector, degree);
    for (const auto& [j, q] : v) x.add(elems.at(j).first, elems.at(j).second, q);
    return x;
}

StateBasis state_basis(const StateAlgebra& A, Sector s, const std::vector<ClassVector>& classes,
                       long long degree) {
    StateBasis B;
    B.sector = s;
    B.degree = degree;
    for (const auto& a : classes)
        for (int k : A.backend().k_candidates(s, a, degree)) {
            Cell c{a, k};
            for (int i = 0; i < A.backend().dim(s, a, k); ++i)
                if (A.state_degree(s, c, i) == degree) {
                    B.index[{c, i}] = B.size();
                    B.elems.push_back({c, i});
                }
        }
    return B;
}

ColMatrix operator_matrix(const StateAlgebra& A, const LinearOp& op, const StateBasis& src,
                          const StateBasis& dst, bool* outside) {
    ColMatrix m;
    m.rows = dst.size();
    for (const auto& [c, i] : src.elems) {
        Element y = op(A.basis(src.sector, c, i));
        SVec col;
        for (const auto& [cell, chain] : y.terms)
            for (const auto& [j, q] : chain) {
                auto it = dst.index.find({cell, j});
                if (it == dst.index.end()) {
                    if (outside) *outside = true;
                    continue;
                }
                col[it->second] += q;
            }
        m.cols.push_back(std::move(col));
    }
    return m;
}

bool Homology::is_cycle(const Element& z) const { return d_out.apply(chains.coords(z)).empty(); }

bool Homology::is_boundary(const Element& z) const { return solve(d_in, chains.coords(z)).has_value(); }

std::optional<Element> Homology::primitive(const Element& z) const {
    auto sol = solve(d_in, chains.coords(z));
    if (!sol) return std::nullopt;
    return upper.element(*sol);
}

std::optional<SVec> Homology::witness(const Element& z) const {
    return separating_functional(d_in, chains.coords(z));
}

Homology homology(const StateAlgebra& A, Sector s, const std::vector<ClassVector>& classes,
                  long long degree, const LinearOp& op) {
    Homology h;
    h.chains = state_basis(A, s, classes, degree);
    h.lower = state_basis(A, s, classes, degree - 1);
    h.upper = state_basis(A, s, classes, degree + 1);
    h.d_out = operator_matrix(A, op, h.chains, h.lower);
    h.d_in = operator_matrix(A, op, h.upper, h.chains);
    h.betti = h.chains.size() - rank(h.d_out) - rank(h.d_in);
    return h;
}

Homology homology(const StateAlgebra& A, Sector s, const ClassVector& a, long long degree) {
    return homology(A, s, std::vector<ClassVector>{a}, degree,
                    [&A](const Element& x) { return A.d(x); });
}

}  // namespace gdga
