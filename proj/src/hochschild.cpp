#include "gdga/hochschild.hpp"

#include <stdexcept>

#include "gdga/io.hpp"
#include "gdga/parallel.hpp"
#include "gdga/validate.hpp"

namespace gdga {

long long output_degree(long long cochain_degree, const std::vector<Element>& args) {
    long long s = cochain_degree + static_cast<long long>(args.size()) - 1;
    for (const auto& a : args) s += a.degree;
    return s;
}

namespace {

long long prefix_degree(const std::vector<Element>& args, std::size_t upto) {
    long long s = 0;
    for (std::size_t j = 0; j < upto && j < args.size(); ++j) s += args[j].degree;
    return s;
}

class ZeroCochain final : public Cochain {
public:
    explicit ZeroCochain(long long d) : d_(d) {}
    long long degree() const override { return d_; }
    int max_arity() const override { return -1; }
    Element eval(const std::vector<Element>& args) const override {
        return Element(Sector::Open, output_degree(d_, args));
    }

private:
    long long d_;
};

class TableCochain final : public Cochain {
public:
    TableCochain(const StateAlgebra& A, long long d, std::map<BasisTuple, Element> e)
        : A_(&A), d_(d), entries_(std::move(e)) {
        for (const auto& [k, v] : entries_) max_ = std::max<int>(max_, static_cast<int>(k.size()));
    }
    long long degree() const override { return d_; }
    int max_arity() const override { return max_; }
    Element eval(const std::vector<Element>& args) const override {
        Element r(Sector::Open, output_degree(d_, args));
        for (const auto& [key, out] : entries_) {
            if (key.size() != args.size()) continue;
            Q coef = 1;
            for (std::size_t i = 0; i < key.size() && coef != 0; ++i) {
                auto t = args[i].terms.find(key[i].first);
                if (t == args[i].terms.end()) {
                    coef = 0;
                    break;
                }
                auto v = t->second.find(key[i].second);
                coef = v == t->second.end() ? Q(0) : coef * v->second;
            }
            if (coef != 0) r.add(out, coef);
        }
        return A_->truncated(r);
    }

private:
    const StateAlgebra* A_;
    long long d_;
    std::map<BasisTuple, Element> entries_;
    int max_ = -1;
};

class COCochain final : public Cochain {
public:
    COCochain(const StateAlgebra& A, Element x, bool flip) : A_(&A), x_(std::move(x)), flip_(flip) {}
    long long degree() const override { return x_.degree; }
    int max_arity() const override { return 1; }
    Element eval(const std::vector<Element>& args) const override {
        if (args.empty()) return A_->co0(x_);
        if (args.size() == 1) {
            Element r = A_->co1(x_, args[0]);
            return flip_ ? -r : r;
        }
        return Element(Sector::Open, output_degree(degree(), args));
    }

private:
    const StateAlgebra* A_;
    Element x_;
    bool flip_;
};

class LinComb final : public Cochain {
public:
    LinComb(long long d, std::vector<std::pair<Q, CochainPtr>> t) : d_(d), terms_(std::move(t)) {
        for (const auto& [c, p] : terms_) {
            if (p->degree() != d_) throw std::invalid_argument("linear combination of cochains of different degrees");
            max_ = std::max(max_, p->max_arity());
        }
    }
    long long degree() const override { return d_; }
    int max_arity() const override { return max_; }
    Element eval(const std::vector<Element>& args) const override {
        Element r(Sector::Open, output_degree(d_, args));
        if (static_cast<int>(args.size()) > max_) return r;
        for (const auto& [c, p] : terms_) r.add(p->eval(args), c);
        return r;
    }

private:
    long long d_;
    std::vector<std::pair<Q, CochainPtr>> terms_;
    int max_ = -1;
};

class Unary final : public Cochain {
public:
    Unary(LinearOp D, long long d) : D_(std::move(D)), d_(d) {}
    long long degree() const override { return d_; }
    int max_arity() const override { return 1; }
    Element eval(const std::vector<Element>& args) const override {
        if (args.size() == 1) return D_(args[0]);
        return Element(Sector::Open, output_degree(d_, args));
    }

private:
    LinearOp D_;
    long long d_;
};

class Delta final : public Cochain {
public:
    Delta(const StateAlgebra& A, CochainPtr phi, LinearOp D) : A_(&A), phi_(std::move(phi)), D_(std::move(D)) {
        if (!D_) D_ = [a = A_](const Element& x) { return a->d(x); };
    }
    long long degree() const override { return phi_->degree() - 1; }
    int max_arity() const override { return phi_->max_arity() < 0 ? -1 : phi_->max_arity() + 1; }

    Element eval(const std::vector<Element>& args) const override {
        const long long ell = static_cast<long long>(args.size());
        Element r(Sector::Open, output_degree(degree(), args));
        const long long P = phi_->degree();
        if (ell <= phi_->max_arity()) {
            r.add(D_(phi_->eval(args)));
            Q pre = -sign_of(P + ell - 1);
            for (long long i = 0; i < ell; ++i) {
                auto mod = args;
                mod[i] = D_(args[i]);
                if (mod[i].is_zero()) continue;
                r.add(phi_->eval(mod), pre * sign_of(prefix_degree(args, i)));
            }
        }
        if (ell >= 1 && ell - 1 <= phi_->max_arity()) {
            const long long dg = P + ell - 2;
            const Q pre = sign_of(dg + ell - 1);
            std::vector<Element> tail(args.begin() + 1, args.end());
            r.add(A_->pont(args[0], phi_->eval(tail)), pre * sign_of(args[0].degree * dg));
            for (long long i = 1; i <= ell - 1; ++i) {
                std::vector<Element> mod;
                for (long long j = 0; j < ell; ++j) {
                    if (j == i) continue;
                    mod.push_back(j == i - 1 ? A_->pont(args[i - 1], args[i]) : args[j]);
                }
                if (mod[i - 1].is_zero()) continue;
                r.add(phi_->eval(mod), pre * sign_of(i));
            }
            std::vector<Element> head(args.begin(), args.end() - 1);
            r.add(A_->pont(phi_->eval(head), args.back()), pre * sign_of(ell));
        }
        return r;
    }

private:
    const StateAlgebra* A_;
    CochainPtr phi_;
    LinearOp D_;
};

class PreLie final : public Cochain {
public:
    PreLie(CochainPtr phi, CochainPtr psi) : phi_(std::move(phi)), psi_(std::move(psi)) {}
    long long degree() const override { return phi_->degree() + psi_->degree(); }
    int max_arity() const override {
        if (phi_->max_arity() < 1 || psi_->max_arity() < 0) return -1;
        return phi_->max_arity() + psi_->max_arity() - 1;
    }
    Element eval(const std::vector<Element>& args) const override {
        const long long ell = static_cast<long long>(args.size());
        Element r(Sector::Open, output_degree(degree(), args));
        const long long S = psi_->degree();
        for (long long l2 = 0; l2 <= std::min<long long>(ell, psi_->max_arity()); ++l2) {
            long long l1 = ell + 1 - l2;
            if (l1 < 1 || l1 > phi_->max_arity()) continue;
            for (long long i = 1; i <= l1; ++i) {
                std::vector<Element> inner(args.begin() + (i - 1), args.begin() + (i - 1 + l2));
                Element in = psi_->eval(inner);
                if (in.is_zero()) continue;
                std::vector<Element> outer(args.begin(), args.begin() + (i - 1));
                outer.push_back(std::move(in));
                outer.insert(outer.end(), args.begin() + (i - 1 + l2), args.end());
                long long dagger = (i - 1) * (l2 - 1) + (S + l2 + 1) * (prefix_degree(args, i - 1) + l1 - 1);
                r.add(phi_->eval(outer), sign_of(dagger));
            }
        }
        return r;
    }

private:
    CochainPtr phi_, psi_;
};

}  // namespace

CochainPtr zero_cochain(long long degree) { return std::make_shared<ZeroCochain>(degree); }

CochainPtr table_cochain(const StateAlgebra& A, long long degree, std::map<BasisTuple, Element> entries) {
    return std::make_shared<TableCochain>(A, degree, std::move(entries));
}

CochainPtr co_map(const StateAlgebra& A, const Element& x, bool flip_co1) {
    if (x.sector != Sector::Closed) throw std::invalid_argument("CO takes a closed element");
    return std::make_shared<COCochain>(A, x, flip_co1);
}

CochainPtr lincomb(long long degree, std::vector<std::pair<Q, CochainPtr>> terms) {
    return std::make_shared<LinComb>(degree, std::move(terms));
}

CochainPtr unary_cochain(const StateAlgebra&, LinearOp D, long long degree) {
    return std::make_shared<Unary>(std::move(D), degree);
}

CochainPtr hochschild_diff(const StateAlgebra& A, CochainPtr phi, LinearOp D) {
    return std::make_shared<Delta>(A, std::move(phi), std::move(D));
}

CochainPtr pre_lie(const StateAlgebra&, CochainPtr phi, CochainPtr psi) {
    return std::make_shared<PreLie>(std::move(phi), std::move(psi));
}

CochainPtr gerstenhaber(const StateAlgebra& A, CochainPtr phi, CochainPtr psi) {
    long long d = phi->degree() + psi->degree();
    Q s = -sign_of(phi->degree() * psi->degree());
    return lincomb(d, {{Q(1), pre_lie(A, phi, psi)}, {s, pre_lie(A, psi, phi)}});
}

OpenBasis window_basis(const StateAlgebra& A, Sector s, const std::vector<ClassVector>& classes, int kmax) {
    OpenBasis B;
    for (const auto& a : classes)
        for (int k = 0; k <= kmax; ++k)
            for (int i = 0; i < A.backend().dim(s, a, k); ++i) {
                Cell c{a, k};
                B.elems.push_back(A.basis(s, c, i));
                B.keys.push_back({c, i});
                B.refs.push_back(basis_ref(s, c, i));
            }
    return B;
}

OpenBasis open_basis(const StateAlgebra& A, const std::vector<ClassVector>& classes, int kmax) {
    return window_basis(A, Sector::Open, classes, kmax);
}

namespace {

template <class F>
void for_each_tuple(const StateAlgebra& A, const OpenBasis& B, int arity, F&& f) {
    std::vector<std::size_t> idx(arity, 0);
    const auto& g = A.group();
    while (true) {
        Q e = 0;
        for (auto i : idx) e += g.energy_of(B.keys[i].first.a);
        f(idx, e <= A.cutoff());
        int p = arity - 1;
        while (p >= 0 && ++idx[p] == B.size()) idx[p--] = 0;
        if (p < 0) break;
    }
}

}  // namespace

void compare_cochains(Check& c, const StateAlgebra& A, const Cochain& lhs, const Cochain& rhs, const OpenBasis& B,
                      int max_arity) {
    if (B.size() == 0) return;
    for (int ell = 0; ell <= max_arity; ++ell) {
        std::vector<std::vector<std::size_t>> tuples;
        for_each_tuple(A, B, ell, [&](const std::vector<std::size_t>& t, bool inside) {
            if (inside)
                tuples.push_back(t);
            else
                ++c.skipped;
        });
        run_check(c, tuples.size(), [&](std::size_t t, Check& local) {
            std::vector<Element> args;
            for (auto i : tuples[t]) args.push_back(B.elems[i]);
            ++local.evaluated;
            Element l = lhs.eval(args), r = rhs.eval(args);
            if (!same_terms(l, r)) {
                json in = json::array();
                for (auto i : tuples[t]) in.push_back(B.refs[i]);
                local.fail("cochains differ at arity " + std::to_string(ell),
                           json{{"inputs", in},
                                {"lhs", element_to_json(A.group(), l)},
                                {"rhs", element_to_json(A.group(), r)}});
            }
        });
    }
}

std::vector<CochainPtr> basis_cochains(const StateAlgebra& A, const OpenBasis& B, int max_arity,
                                       std::vector<json>* refs) {
    std::vector<CochainPtr> out;
    for (int ell = 0; ell <= max_arity; ++ell)
        for_each_tuple(A, B, ell, [&](const std::vector<std::size_t>& t, bool inside) {
            if (!inside) return;
            BasisTuple key;
            std::vector<Element> args;
            for (auto i : t) {
                key.push_back(B.keys[i]);
                args.push_back(B.elems[i]);
            }
            for (std::size_t o = 0; o < B.size(); ++o) {
                long long d = B.elems[o].degree - output_degree(0, args);
                std::map<BasisTuple, Element> e{{key, B.elems[o]}};
                out.push_back(table_cochain(A, d, std::move(e)));
                if (refs) {
                    json in = json::array();
                    for (auto i : t) in.push_back(B.refs[i]);
                    refs->push_back(json{{"inputs", in}, {"output", B.refs[o]}});
                }
            }
        });
    return out;
}

Report check_dgla_hom(const StateAlgebra& A, const ClosedToCochain& f, const std::vector<Element>& closed,
                      const std::vector<json>& refs, const OpenBasis& B, int max_arity) {
    Report r;
    r.title = "closed-open homomorphism";
    auto& dc = r.add("intertwines differentials");
    for (std::size_t i = 0; i < closed.size(); ++i) {
        Check local;
        compare_cochains(local, A, *hochschild_diff(A, f(closed[i])), *f(A.d(closed[i])), B, max_arity);
        dc.evaluated += local.evaluated;
        dc.skipped += local.skipped;
        if (!local.passed) dc.fail(local.detail, json{{"x", refs[i]}, {"at", local.witness}});
    }
    auto& bc = r.add("intertwines brackets");
    for (std::size_t i = 0; i < closed.size(); ++i)
        for (std::size_t j = 0; j < closed.size(); ++j) {
            Element xy = A.bracket(closed[i], closed[j]);
            Check local;
            compare_cochains(local, A, *gerstenhaber(A, f(closed[i]), f(closed[j])), *f(xy), B, max_arity);
            bc.evaluated += local.evaluated;
            bc.skipped += local.skipped;
            if (!local.passed) bc.fail(local.detail, json{{"x", refs[i]}, {"y", refs[j]}, {"at", local.witness}});
        }
    return r;
}

json cochain_to_json(const StateAlgebra& A, const Cochain& phi, const OpenBasis& B, int max_arity) {
    json entries = json::array();
    for (int ell = 0; ell <= std::min(max_arity, phi.max_arity()); ++ell)
        for_each_tuple(A, B, ell, [&](const std::vector<std::size_t>& t, bool inside) {
            if (!inside) return;
            std::vector<Element> args;
            json in = json::array();
            for (auto i : t) {
                args.push_back(B.elems[i]);
                in.push_back(B.refs[i]);
            }
            Element out = phi.eval(args);
            if (!out.is_zero()) entries.push_back(json{{"inputs", in}, {"out", element_to_json(A.group(), out)}});
        });
    return json{{"degree", phi.degree()}, {"entries", entries}};
}

CochainPtr cochain_from_json(const StateAlgebra& A, const json& j) {
    long long d = j.at("degree").get<long long>();
    std::map<BasisTuple, Element> entries;
    for (const auto& e : j.at("entries")) {
        BasisTuple key;
        for (const auto& ref : e.at("inputs"))
            key.push_back({Cell{class_from_json(ref.at("class"), A.group()), ref.at("k").get<int>()},
                           ref.at("index").get<int>()});
        entries[key].add(element_from_json(e.at("out"), A.group()));
    }
    return table_cochain(A, d, std::move(entries));
}

}  // namespace gdga
