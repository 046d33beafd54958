#include "gdga/validate.hpp"

#include <set>

#include "gdga/io.hpp"
#include "gdga/parallel.hpp"

namespace gdga {

json basis_ref(Sector s, const Cell& c, int i) {
    return json{{"sector", to_string(s)}, {"class", class_to_json(c.a)}, {"k", c.k}, {"index", i}};
}

namespace {

struct Ref {
    Sector s;
    Cell c;
    int i;
    long long deg;
    SVec v() const { return {{i, Q(1)}}; }
    json j() const { return basis_ref(s, c, i); }
};

SVec operator+(SVec a, const SVec& b) {
    axpy(a, 1, b);
    return a;
}
SVec operator*(const Q& c, const SVec& a) { return scaled(a, c); }
SVec operator-(const SVec& a) { return scaled(a, -1); }

class Ctx {
public:
    Ctx(const Backend& b, const Window& w)
        : b(b), g(b.group()), n(b.dim_l()), kmax(w.kmax), classes(w.classes.begin(), w.classes.end()) {
        for (Sector s : {Sector::Closed, Sector::Open})
            for (const auto& a : w.classes)
                for (int k = 0; k <= kmax; ++k)
                    for (int i = 0; i < b.dim(s, a, k); ++i)
                        (s == Sector::Closed ? closed : open).push_back(Ref{s, Cell{a, k}, i, b.degree(s, a, k, i)});
        all = closed;
        all.insert(all.end(), open.begin(), open.end());
    }

    bool ok(const ClassVector& a, int k) const {
        return k >= 0 && k <= kmax && classes.count(a) && b.covers(a, k);
    }
    Cell sum(const Cell& c1, const Cell& c2, int dk) const { return Cell{g.add(c1.a, c2.a), c1.k + c2.k + dk}; }

    SVec d(Sector s, const Cell& c, const SVec& v) const {
        SVec r;
        for (const auto& [i, q] : v) axpy(r, q, b.d(s, c.a, c.k, i));
        return r;
    }
    // v lives in C(target.k - 1)
    SVec face(Sector s, const Cell& target, int j, const SVec& v) const {
        SVec r;
        for (const auto& [i, q] : v) axpy(r, q, b.face(s, target.a, target.k, j, i));
        return r;
    }
    SVec pont(const Cell& c1, const SVec& v1, const Cell& c2, const SVec& v2) const {
        SVec r;
        for (const auto& [i1, q1] : v1)
            for (const auto& [i2, q2] : v2) axpy(r, q1 * q2, b.pont(c1, i1, c2, i2));
        return r;
    }
    SVec circL(int pos, const Cell& c1, const SVec& v1, const Cell& c2, const SVec& v2) const {
        SVec r;
        for (const auto& [i1, q1] : v1)
            for (const auto& [i2, q2] : v2) axpy(r, q1 * q2, b.circ_closed(pos, c1, i1, c2, i2));
        return r;
    }
    SVec circO(int pos, const Cell& c1, const SVec& v1, const Cell& c2, const SVec& v2) const {
        SVec r;
        for (const auto& [i1, q1] : v1)
            for (const auto& [i2, q2] : v2) axpy(r, q1 * q2, b.circ_open(pos, c1, i1, c2, i2));
        return r;
    }
    SVec anom(const Cell& c, const SVec& v) const {
        SVec r;
        for (const auto& [i, q] : v) axpy(r, q, b.anomaly(c, i));
        return r;
    }
    bool degrees_ok(Sector s, const Cell& c, const SVec& v, long long expect) const {
        int dim = b.dim(s, c.a, c.k);
        for (const auto& [j, q] : v)
            if (j >= dim || b.degree(s, c.a, c.k, j) != expect) return false;
        return true;
    }

    const Backend& b;
    const ClassGroup& g;
    int n;
    int kmax;
    std::set<ClassVector> classes;
    std::vector<Ref> closed, open, all;
};

json chain_json(const SVec& v) { return svec_to_json(v); }

void cell_checks(Report& r, const Ctx& X) {
    auto& deg = r.add("differential has degree -1");
    auto& sq = r.add("differential squares to zero");
    for (const auto& e : X.all) {
        SVec de = X.d(e.s, e.c, e.v());
        ++deg.evaluated;
        ++sq.evaluated;
        if (!X.degrees_ok(e.s, e.c, de, e.deg - 1)) deg.fail("d leaves the degree -1 part", json{{"x", e.j()}});
        if (!X.d(e.s, e.c, de).empty()) sq.fail("d(d x) != 0", json{{"x", e.j()}, {"ddx", chain_json(X.d(e.s, e.c, de))}});
    }

    auto& ch = r.add("faces are chain maps of degree 0");
    auto& cos = r.add("cosimplicial face identities");
    run_check(ch, X.all.size(), [&](std::size_t t, Check& c) {
        const auto& e = X.all[t];
        Cell tgt{e.c.a, e.c.k + 1};
        if (!X.ok(tgt.a, tgt.k)) {
            ++c.skipped;
            return;
        }
        for (int j = 0; j <= tgt.k; ++j) {
            ++c.evaluated;
            SVec f = X.face(e.s, tgt, j, e.v());
            if (!X.degrees_ok(e.s, tgt, f, e.deg)) c.fail("face changes degree", json{{"x", e.j()}, {"face", j}});
            if (X.d(e.s, tgt, f) != X.face(e.s, tgt, j, X.d(e.s, e.c, e.v())))
                c.fail("d face != face d", json{{"x", e.j()}, {"face", j}});
        }
    });
    run_check(cos, X.all.size(), [&](std::size_t t, Check& c) {
        const auto& e = X.all[t];
        Cell mid{e.c.a, e.c.k + 1}, top{e.c.a, e.c.k + 2};
        if (!X.ok(top.a, top.k)) {
            ++c.skipped;
            return;
        }
        for (int j = 1; j <= top.k; ++j)
            for (int i = 0; i < j; ++i) {
                ++c.evaluated;
                SVec lhs = X.face(e.s, top, j, X.face(e.s, mid, i, e.v()));
                SVec rhs = X.face(e.s, top, i, X.face(e.s, mid, j - 1, e.v()));
                if (lhs != rhs)
                    c.fail("delta_j delta_i != delta_i delta_{j-1}", json{{"x", e.j()}, {"i", i}, {"j", j}});
            }
    });
}

void pont_checks(Report& r, const Ctx& X) {
    auto& deg = r.add("Pontryagin product has degree 0");
    auto& leib = r.add("Pontryagin Leibniz rule");
    auto& assoc = r.add("Pontryagin associativity");
    const auto& O = X.open;
    Check dummy;
    run_check(leib, O.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = O[t];
        for (const auto& e2 : O) {
            Cell out = X.sum(e1.c, e2.c, 0);
            if (!X.ok(out.a, out.k)) continue;
            ++c.evaluated;
            SVec p = X.pont(e1.c, e1.v(), e2.c, e2.v());
            if (!X.degrees_ok(Sector::Open, out, p, e1.deg + e2.deg))
                c.fail("degree mismatch", json{{"alpha", e1.j()}, {"beta", e2.j()}, {"degree", true}});
            SVec lhs = X.d(Sector::Open, out, p);
            SVec rhs = X.pont(e1.c, X.d(Sector::Open, e1.c, e1.v()), e2.c, e2.v()) +
                       Q(sign_of(e1.deg)) * X.pont(e1.c, e1.v(), e2.c, X.d(Sector::Open, e2.c, e2.v()));
            if (lhs != rhs) c.fail("d(a.b) != da.b + (-1)^deg a a.db", json{{"alpha", e1.j()}, {"beta", e2.j()}});
        }
    });
    // degree failures are recorded inside the Leibniz sweep; split them out here
    for (auto* c : {&leib}) {
        if (!c->passed && c->witness.is_object() && c->witness.contains("degree")) {
            deg.fail(c->detail, c->witness);
            c->passed = true;
            c->detail.clear();
            c->witness = nullptr;
        }
    }
    deg.evaluated = leib.evaluated;
    run_check(assoc, O.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = O[t];
        for (const auto& e2 : O) {
            Cell c12 = X.sum(e1.c, e2.c, 0);
            if (!X.ok(c12.a, c12.k)) continue;
            SVec p12 = X.pont(e1.c, e1.v(), e2.c, e2.v());
            for (const auto& e3 : O) {
                Cell c23 = X.sum(e2.c, e3.c, 0), top = X.sum(c12, e3.c, 0);
                if (!X.ok(top.a, top.k) || !X.ok(c23.a, c23.k)) continue;
                ++c.evaluated;
                SVec lhs = X.pont(c12, p12, e3.c, e3.v());
                SVec rhs = X.pont(e1.c, e1.v(), c23, X.pont(e2.c, e2.v(), e3.c, e3.v()));
                if (lhs != rhs)
                    c.fail("(a.b).c != a.(b.c)", json{{"a", e1.j()}, {"b", e2.j()}, {"c", e3.j()}});
            }
        }
    });
}

void circ_closed_checks(Report& r, const Ctx& X) {
    auto& deg = r.add("loop product has degree -n");
    auto& leib = r.add("loop product Leibniz rule");
    auto& disj = r.add("loop product associativity (disjoint insertions)");
    auto& nest = r.add("loop product associativity (nested insertions)");
    const auto& C = X.closed;
    const int n = X.n;
    run_check(deg, C.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = C[t];
        for (const auto& e2 : C) {
            Cell out = X.sum(e1.c, e2.c, -1);
            if (!X.ok(out.a, out.k)) continue;
            for (int pos = 1; pos <= e1.c.k; ++pos) {
                ++c.evaluated;
                SVec p = X.circL(pos, e1.c, e1.v(), e2.c, e2.v());
                if (!X.degrees_ok(Sector::Closed, out, p, e1.deg + e2.deg - n))
                    c.fail("degree mismatch", json{{"x", e1.j()}, {"y", e2.j()}, {"pos", pos}});
            }
        }
    });
    run_check(leib, C.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = C[t];
        for (const auto& e2 : C) {
            Cell out = X.sum(e1.c, e2.c, -1);
            if (!X.ok(out.a, out.k)) continue;
            for (int pos = 1; pos <= e1.c.k; ++pos) {
                ++c.evaluated;
                SVec lhs = X.d(Sector::Closed, out, X.circL(pos, e1.c, e1.v(), e2.c, e2.v()));
                SVec rhs = X.circL(pos, e1.c, X.d(Sector::Closed, e1.c, e1.v()), e2.c, e2.v()) +
                           Q(sign_of(e1.deg - n)) *
                               X.circL(pos, e1.c, e1.v(), e2.c, X.d(Sector::Closed, e2.c, e2.v()));
                if (lhs != rhs) c.fail("Leibniz rule fails", json{{"x", e1.j()}, {"y", e2.j()}, {"pos", pos}});
            }
        }
    });
    run_check(disj, C.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = C[t];
        if (e1.c.k < 2) return;
        for (const auto& e2 : C) {
            Cell c12 = X.sum(e1.c, e2.c, -1);
            if (!X.ok(c12.a, c12.k)) continue;
            for (const auto& e3 : C) {
                Cell c13 = X.sum(e1.c, e3.c, -1), top = X.sum(c12, e3.c, -1);
                if (!X.ok(c13.a, c13.k) || !X.ok(top.a, top.k)) continue;
                Q s = sign_of((e2.deg - n) * (e3.deg - n));
                for (int i2 = 2; i2 <= e1.c.k; ++i2)
                    for (int i1 = 1; i1 < i2; ++i1) {
                        ++c.evaluated;
                        SVec lhs = X.circL(e2.c.k + i2 - 1, c12, X.circL(i1, e1.c, e1.v(), e2.c, e2.v()), e3.c, e3.v());
                        SVec rhs = s * X.circL(i1, c13, X.circL(i2, e1.c, e1.v(), e3.c, e3.v()), e2.c, e2.v());
                        if (lhs != rhs)
                            c.fail("disjoint insertions do not commute with the expected sign",
                                   json{{"x1", e1.j()}, {"x2", e2.j()}, {"x3", e3.j()}, {"i1", i1}, {"i2", i2}});
                    }
            }
        }
    });
    run_check(nest, C.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = C[t];
        for (const auto& e2 : C) {
            Cell c12 = X.sum(e1.c, e2.c, -1);
            if (!X.ok(c12.a, c12.k)) continue;
            for (const auto& e3 : C) {
                Cell c23 = X.sum(e2.c, e3.c, -1), top = X.sum(c12, e3.c, -1);
                if (!X.ok(c23.a, c23.k) || !X.ok(top.a, top.k)) continue;
                for (int i1 = 1; i1 <= e1.c.k; ++i1)
                    for (int i2 = 1; i2 <= e2.c.k; ++i2) {
                        ++c.evaluated;
                        SVec lhs = X.circL(i1 + i2 - 1, c12, X.circL(i1, e1.c, e1.v(), e2.c, e2.v()), e3.c, e3.v());
                        SVec rhs = X.circL(i1, e1.c, e1.v(), c23, X.circL(i2, e2.c, e2.v(), e3.c, e3.v()));
                        if (lhs != rhs)
                            c.fail("nested insertions disagree",
                                   json{{"x1", e1.j()}, {"x2", e2.j()}, {"x3", e3.j()}, {"i1", i1}, {"i2", i2}});
                    }
            }
        }
    });
}

void circ_open_checks(Report& r, const Ctx& X) {
    auto& deg = r.add("open-closed product has degree -n");
    auto& leib = r.add("open-closed Leibniz rule");
    auto& disj = r.add("open-closed associativity (disjoint insertions)");
    auto& nest = r.add("open-closed associativity (nested insertions)");
    auto& comp = r.add("open-closed product compatible with Pontryagin product");
    const auto& O = X.open;
    const auto& C = X.closed;
    const int n = X.n;
    run_check(leib, O.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = O[t];
        for (const auto& e2 : C) {
            Cell out = X.sum(e1.c, e2.c, -1);
            if (!X.ok(out.a, out.k)) continue;
            for (int pos = 1; pos <= e1.c.k; ++pos) {
                ++c.evaluated;
                SVec p = X.circO(pos, e1.c, e1.v(), e2.c, e2.v());
                if (!X.degrees_ok(Sector::Open, out, p, e1.deg + e2.deg - n))
                    deg.fail("degree mismatch", json{{"alpha", e1.j()}, {"x", e2.j()}, {"pos", pos}});
                SVec lhs = X.d(Sector::Open, out, p);
                SVec rhs = X.circO(pos, e1.c, X.d(Sector::Open, e1.c, e1.v()), e2.c, e2.v()) +
                           Q(sign_of(e1.deg)) * X.circO(pos, e1.c, e1.v(), e2.c, X.d(Sector::Closed, e2.c, e2.v()));
                if (lhs != rhs) c.fail("Leibniz rule fails", json{{"alpha", e1.j()}, {"x", e2.j()}, {"pos", pos}});
            }
        }
    });
    deg.evaluated = leib.evaluated;
    run_check(disj, O.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = O[t];
        if (e1.c.k < 2) return;
        for (const auto& e2 : C) {
            Cell c12 = X.sum(e1.c, e2.c, -1);
            if (!X.ok(c12.a, c12.k)) continue;
            for (const auto& e3 : C) {
                Cell c13 = X.sum(e1.c, e3.c, -1), top = X.sum(c12, e3.c, -1);
                if (!X.ok(c13.a, c13.k) || !X.ok(top.a, top.k)) continue;
                Q s = sign_of((e2.deg - n) * (e3.deg - n));
                for (int i2 = 2; i2 <= e1.c.k; ++i2)
                    for (int i1 = 1; i1 < i2; ++i1) {
                        ++c.evaluated;
                        SVec lhs = X.circO(e2.c.k + i2 - 1, c12, X.circO(i1, e1.c, e1.v(), e2.c, e2.v()), e3.c, e3.v());
                        SVec rhs = s * X.circO(i1, c13, X.circO(i2, e1.c, e1.v(), e3.c, e3.v()), e2.c, e2.v());
                        if (lhs != rhs)
                            c.fail("disjoint insertions do not commute with the expected sign",
                                   json{{"alpha", e1.j()}, {"x", e2.j()}, {"y", e3.j()}, {"i1", i1}, {"i2", i2}});
                    }
            }
        }
    });
    run_check(nest, O.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = O[t];
        for (const auto& e2 : C) {
            Cell c12 = X.sum(e1.c, e2.c, -1);
            if (!X.ok(c12.a, c12.k)) continue;
            for (const auto& e3 : C) {
                Cell c23 = X.sum(e2.c, e3.c, -1), top = X.sum(c12, e3.c, -1);
                if (!X.ok(c23.a, c23.k) || !X.ok(top.a, top.k)) continue;
                for (int i1 = 1; i1 <= e1.c.k; ++i1)
                    for (int i2 = 1; i2 <= e2.c.k; ++i2) {
                        ++c.evaluated;
                        SVec lhs = X.circO(i1 + i2 - 1, c12, X.circO(i1, e1.c, e1.v(), e2.c, e2.v()), e3.c, e3.v());
                        SVec rhs = X.circO(i1, e1.c, e1.v(), c23, X.circL(i2, e2.c, e2.v(), e3.c, e3.v()));
                        if (lhs != rhs)
                            c.fail("nested insertions disagree",
                                   json{{"alpha", e1.j()}, {"x", e2.j()}, {"y", e3.j()}, {"i1", i1}, {"i2", i2}});
                    }
            }
        }
    });
    run_check(comp, O.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = O[t];
        for (const auto& e2 : O) {
            Cell c12 = X.sum(e1.c, e2.c, 0);
            if (!X.ok(c12.a, c12.k)) continue;
            SVec ab = X.pont(e1.c, e1.v(), e2.c, e2.v());
            for (const auto& e3 : C) {
                Cell top = X.sum(c12, e3.c, -1);
                if (!X.ok(top.a, top.k)) continue;
                for (int i = 1; i <= c12.k; ++i) {
                    SVec lhs = X.circO(i, c12, ab, e3.c, e3.v());
                    SVec rhs;
                    if (i <= e1.c.k) {
                        Cell c13 = X.sum(e1.c, e3.c, -1);
                        if (!X.ok(c13.a, c13.k)) continue;
                        rhs = Q(sign_of(e2.deg * (e3.deg - n))) *
                              X.pont(c13, X.circO(i, e1.c, e1.v(), e3.c, e3.v()), e2.c, e2.v());
                    } else {
                        Cell c23 = X.sum(e2.c, e3.c, -1);
                        if (!X.ok(c23.a, c23.k)) continue;
                        rhs = X.pont(e1.c, e1.v(), c23, X.circO(i - e1.c.k, e2.c, e2.v(), e3.c, e3.v()));
                    }
                    ++c.evaluated;
                    if (lhs != rhs)
                        c.fail("(a.b) o_i x disagrees with the split insertion",
                               json{{"alpha", e1.j()}, {"beta", e2.j()}, {"x", e3.j()}, {"i", i}});
                }
            }
        }
    });
}

void anomaly_checks(Report& r, const Ctx& X) {
    auto& deg = r.add("anomaly has degree -n");
    auto& dcomp = r.add("anomaly anticommutes with d");
    auto& fcomp = r.add("anomaly commutes with faces");
    auto& prod = r.add("anomaly intertwines loop and open-closed products");
    const auto& C = X.closed;
    const int n = X.n;
    for (const auto& e : C) {
        ++deg.evaluated;
        ++dcomp.evaluated;
        SVec o = X.anom(e.c, e.v());
        if (!X.degrees_ok(Sector::Open, e.c, o, e.deg - n)) deg.fail("degree mismatch", json{{"x", e.j()}});
        if (X.d(Sector::Open, e.c, o) != -X.anom(e.c, X.d(Sector::Closed, e.c, e.v())))
            dcomp.fail("d o(x) != -o(d x)", json{{"x", e.j()}});
        Cell tgt{e.c.a, e.c.k + 1};
        if (!X.ok(tgt.a, tgt.k)) {
            ++fcomp.skipped;
            continue;
        }
        for (int j = 0; j <= tgt.k; ++j) {
            ++fcomp.evaluated;
            if (X.anom(tgt, X.face(Sector::Closed, tgt, j, e.v())) != X.face(Sector::Open, tgt, j, o))
                fcomp.fail("o delta_j != delta_j o", json{{"x", e.j()}, {"face", j}});
        }
    }
    run_check(prod, C.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = C[t];
        for (const auto& e2 : C) {
            Cell out = X.sum(e1.c, e2.c, -1);
            if (!X.ok(out.a, out.k)) continue;
            for (int pos = 1; pos <= e1.c.k; ++pos) {
                ++c.evaluated;
                SVec lhs = X.anom(out, X.circL(pos, e1.c, e1.v(), e2.c, e2.v()));
                SVec rhs = Q(sign_of(e2.deg - n)) * X.circO(pos, e1.c, X.anom(e1.c, e1.v()), e2.c, e2.v());
                if (lhs != rhs) c.fail("o(x o_i y) != (-1)^(deg y - n) o(x) o_i y", json{{"x", e1.j()}, {"y", e2.j()}, {"pos", pos}});
            }
        }
    });
}

void special_checks(Report& r, const Ctx& X) {
    const auto& b = X.b;
    const int n = X.n;
    Cell c00{X.g.zero(), 0}, c01{X.g.zero(), 1}, c02{X.g.zero(), 2};
    SVec u = b.unit(), s1 = b.star1(), L = b.loop2(), F = b.fundamental();

    auto& cyc = r.add("special elements are cycles of the expected degree");
    auto chk = [&](const char* name, Sector s, const Cell& c, const SVec& v, long long d) {
        ++cyc.evaluated;
        if (v.empty()) cyc.fail(std::string(name) + " is zero", json{{"element", name}});
        if (!X.degrees_ok(s, c, v, d)) cyc.fail(std::string(name) + " has the wrong degree", json{{"element", name}});
        if (!X.d(s, c, v).empty()) cyc.fail(std::string(name) + " is not a cycle", json{{"element", name}});
    };
    chk("unit", Sector::Open, c00, u, 0);
    chk("star1", Sector::Open, c01, s1, 0);
    chk("loop2", Sector::Closed, c02, L, n);
    chk("fundamental", Sector::Closed, c00, F, n);

    auto& fund = r.add("anomaly of the fundamental class");
    fund.evaluated = 1;
    if (X.anom(c00, F) != Q(sign_of(n + 1)) * u) fund.fail("o(F) != (-1)^(n+1) unit");

    auto& unit = r.add("strict unit");
    for (const auto& e : X.open) {
        ++unit.evaluated;
        if (X.pont(c00, u, e.c, e.v()) != e.v() || X.pont(e.c, e.v(), c00, u) != e.v())
            unit.fail("unit.a != a or a.unit != a", json{{"alpha", e.j()}});
    }

    auto& outer = r.add("loop element realizes the outer faces");
    auto& inner = r.add("loop element realizes the interior faces");
    for (const auto& e : X.closed) {
        Cell tgt{e.c.a, e.c.k + 1};
        if (!X.ok(tgt.a, tgt.k)) {
            ++outer.skipped;
            continue;
        }
        ++outer.evaluated;
        if (X.circL(1, c02, L, e.c, e.v()) != X.face(Sector::Closed, tgt, tgt.k, e.v()))
            outer.fail("L o_1 x != last face of x", json{{"x", e.j()}});
        if (X.circL(2, c02, L, e.c, e.v()) != X.face(Sector::Closed, tgt, 0, e.v()))
            outer.fail("L o_2 x != first face of x", json{{"x", e.j()}});
        for (int i = 1; i <= e.c.k; ++i) {
            ++inner.evaluated;
            if (X.circL(i, e.c, e.v(), c02, L) != X.face(Sector::Closed, tgt, i, e.v()))
                inner.fail("x o_i L != delta_i x", json{{"x", e.j()}, {"i", i}});
        }
    }
    for (const auto& e : X.open) {
        Cell tgt{e.c.a, e.c.k + 1};
        if (!X.ok(tgt.a, tgt.k)) continue;
        for (int i = 1; i <= e.c.k; ++i) {
            ++inner.evaluated;
            if (X.circO(i, e.c, e.v(), c02, L) != X.face(Sector::Open, tgt, i, e.v()))
                inner.fail("alpha o_i L != delta_i alpha", json{{"alpha", e.j()}, {"i", i}});
        }
    }

    auto& star = r.add("star element realizes the outer faces");
    for (const auto& e : X.open) {
        Cell tgt{e.c.a, e.c.k + 1};
        if (!X.ok(tgt.a, tgt.k)) {
            ++star.skipped;
            continue;
        }
        ++star.evaluated;
        if (X.pont(c01, s1, e.c, e.v()) != X.face(Sector::Open, tgt, 0, e.v()))
            star.fail("star1.alpha != first face", json{{"alpha", e.j()}});
        if (X.pont(e.c, e.v(), c01, s1) != X.face(Sector::Open, tgt, tgt.k, e.v()))
            star.fail("alpha.star1 != last face", json{{"alpha", e.j()}});
    }

    auto& sa = r.add("star element compatible with anomaly and insertions");
    run_check(sa, X.open.size(), [&](std::size_t t, Check& c) {
        const auto& e1 = X.open[t];
        for (const auto& e2 : X.closed) {
            Cell out = X.sum(e1.c, e2.c, 0);  // k1 + k2 after adding star1 and inserting
            if (!X.ok(out.a, out.k)) continue;
            Cell sa1{e1.c.a, e1.c.k + 1};
            SVec s_alpha = X.pont(c01, s1, e1.c, e1.v());
            SVec alpha_s = X.pont(e1.c, e1.v(), c01, s1);
            Cell ins = X.sum(e1.c, e2.c, -1);
            for (int i = 1; i <= e1.c.k; ++i) {
                ++c.evaluated;
                SVec ax = X.circO(i, e1.c, e1.v(), e2.c, e2.v());
                if (X.pont(c01, s1, ins, ax) != X.circO(i + 1, sa1, s_alpha, e2.c, e2.v()))
                    c.fail("star1.(alpha o_i x) != (star1.alpha) o_{i+1} x", json{{"alpha", e1.j()}, {"x", e2.j()}, {"i", i}});
                if (X.pont(ins, ax, c01, s1) != X.circO(i, sa1, alpha_s, e2.c, e2.v()))
                    c.fail("(alpha o_i x).star1 != (alpha.star1) o_i x", json{{"alpha", e1.j()}, {"x", e2.j()}, {"i", i}});
            }
            ++c.evaluated;
            SVec ox = X.anom(e2.c, e2.v());
            Q s2 = sign_of(e2.deg + (e2.deg - n) * e1.deg);
            if (s2 * X.pont(e2.c, ox, e1.c, e1.v()) != -X.circO(1, sa1, s_alpha, e2.c, e2.v()))
                c.fail("o(x).alpha does not match (star1.alpha) o_1 x", json{{"alpha", e1.j()}, {"x", e2.j()}});
            if (Q(sign_of(e2.deg)) * X.pont(e1.c, e1.v(), e2.c, ox) !=
                -X.circO(e1.c.k + 1, sa1, alpha_s, e2.c, e2.v()))
                c.fail("alpha.o(x) does not match (alpha.star1) o_{k+1} x", json{{"alpha", e1.j()}, {"x", e2.j()}});
        }
    });
}

// ---------------------------------------------------------------- state level

struct SRef {
    Element x;
    json j;
};

std::vector<SRef> state_refs(const StateAlgebra& A, const Window& w, Sector s) {
    std::vector<SRef> out;
    for (const auto& a : w.classes)
        for (int k = 0; k <= w.kmax; ++k)
            for (int i = 0; i < A.backend().dim(s, a, k); ++i)
                out.push_back(SRef{A.basis(s, Cell{a, k}, i), basis_ref(s, Cell{a, k}, i)});
    return out;
}

}  // namespace

Report validate_backend(const Backend& b, const Window& w) {
    Report r;
    r.title = "backend axioms (" + b.name() + ")";
    Ctx X(b, w);
    cell_checks(r, X);
    pont_checks(r, X);
    circ_closed_checks(r, X);
    circ_open_checks(r, X);
    anomaly_checks(r, X);
    special_checks(r, X);
    return r;
}

Report validate_state(const StateAlgebra& A, const Window& w) {
    Report r;
    r.title = "state space identities";
    const auto& g = A.group();
    std::set<ClassVector> window(w.classes.begin(), w.classes.end());
    auto L = state_refs(A, w, Sector::Closed);
    auto O = state_refs(A, w, Sector::Open);
    auto cls = [](const Element& x) { return x.terms.begin()->first.a; };
    auto in = [&](const ClassVector& a) { return window.count(a) > 0; };
    const int n = A.n();

    auto& dd = r.add("closed-string d squares to zero");
    for (const auto& e : L) {
        ++dd.evaluated;
        if (!A.d(A.d(e.x)).is_zero()) dd.fail("d d x != 0", json{{"x", e.j}});
    }
    auto& dd2 = r.add("open-string d squares to zero");
    auto& di2 = r.add("interior differential squares to zero");
    for (const auto& e : O) {
        ++dd2.evaluated;
        ++di2.evaluated;
        if (!A.d(A.d(e.x)).is_zero()) dd2.fail("d d alpha != 0", json{{"alpha", e.j}});
        if (!A.dint(A.dint(e.x)).is_zero()) di2.fail("dint dint alpha != 0", json{{"alpha", e.j}});
    }

    auto& anti = r.add("closed-string antisymmetry");
    auto& leib = r.add("closed-string Leibniz");
    run_check(leib, L.size(), [&](std::size_t t, Check& c) {
        const auto& x = L[t];
        for (const auto& y : L) {
            if (!in(g.add(cls(x.x), cls(y.x)))) continue;
            ++c.evaluated;
            Element lhs = A.d(A.bracket(x.x, y.x));
            Element rhs = A.bracket(A.d(x.x), y.x) + Q(sign_of(x.x.degree)) * A.bracket(x.x, A.d(y.x));
            if (!same_terms(lhs, rhs)) c.fail("d[x,y] != [dx,y] + (-1)^|x| [x,dy]", json{{"x", x.j}, {"y", y.j}});
        }
    });
    run_check(anti, L.size(), [&](std::size_t t, Check& c) {
        const auto& x = L[t];
        for (const auto& y : L) {
            if (!in(g.add(cls(x.x), cls(y.x)))) continue;
            ++c.evaluated;
            if (!same_terms(A.bracket(x.x, y.x), Q(sign_of(x.x.degree * y.x.degree + 1)) * A.bracket(y.x, x.x)))
                c.fail("[x,y] != (-1)^(|x||y|+1) [y,x]", json{{"x", x.j}, {"y", y.j}});
        }
    });

    auto& prelie = r.add("closed-string pre-Lie identity");
    auto& jac = r.add("closed-string Jacobi");
    run_check(jac, L.size(), [&](std::size_t t, Check& c) {
        const auto& x = L[t];
        for (const auto& y : L) {
            auto axy = g.add(cls(x.x), cls(y.x));
            if (!in(axy)) continue;
            Element xy = A.bracket(x.x, y.x);
            for (const auto& z : L) {
                if (!in(g.add(axy, cls(z.x)))) continue;
                ++c.evaluated;
                long long a = x.x.degree, b = y.x.degree, d = z.x.degree;
                Element j = A.bracket(xy, z.x) + Q(sign_of((a + b) * d)) * A.bracket(A.bracket(z.x, x.x), y.x) +
                            Q(sign_of((b + d) * a)) * A.bracket(A.bracket(y.x, z.x), x.x);
                if (!j.is_zero()) c.fail("Jacobi sum is nonzero", json{{"x", x.j}, {"y", y.j}, {"z", z.j}});
            }
        }
    });
    run_check(prelie, L.size(), [&](std::size_t t, Check& c) {
        const auto& x = L[t];
        for (const auto& y : L) {
            auto axy = g.add(cls(x.x), cls(y.x));
            if (!in(axy)) continue;
            for (const auto& z : L) {
                if (!in(g.add(axy, cls(z.x)))) continue;
                ++c.evaluated;
                Element lhs = A.pre(A.pre(x.x, y.x), z.x) - A.pre(x.x, A.pre(y.x, z.x));
                Element rhs = Q(sign_of(y.x.degree * z.x.degree)) *
                              (A.pre(A.pre(x.x, z.x), y.x) - A.pre(x.x, A.pre(z.x, y.x)));
                if (!same_terms(lhs, rhs)) c.fail("pre-Lie identity fails", json{{"x", x.j}, {"y", y.j}, {"z", z.j}});
            }
        }
    });

    auto& oleib = r.add("open-string Leibniz");
    run_check(oleib, O.size(), [&](std::size_t t, Check& c) {
        const auto& a = O[t];
        for (const auto& b : O) {
            if (!in(g.add(cls(a.x), cls(b.x)))) continue;
            ++c.evaluated;
            Element lhs = A.d(A.pont(a.x, b.x));
            Element rhs = A.pont(A.d(a.x), b.x) + Q(sign_of(a.x.degree)) * A.pont(a.x, A.d(b.x));
            if (!same_terms(lhs, rhs)) c.fail("d(a.b) != da.b + (-1)^|a| a.db", json{{"alpha", a.j}, {"beta", b.j}});
        }
    });
    auto& oassoc = r.add("open-string associativity");
    run_check(oassoc, O.size(), [&](std::size_t t, Check& c) {
        const auto& a = O[t];
        for (const auto& b : O) {
            auto ab = g.add(cls(a.x), cls(b.x));
            if (!in(ab)) continue;
            Element p = A.pont(a.x, b.x);
            for (const auto& e : O) {
                if (!in(g.add(ab, cls(e.x)))) continue;
                ++c.evaluated;
                if (!same_terms(A.pont(p, e.x), A.pont(a.x, A.pont(b.x, e.x))))
                    c.fail("(a.b).c != a.(b.c)", json{{"alpha", a.j}, {"beta", b.j}, {"gamma", e.j}});
            }
        }
    });
    auto& unit = r.add("open-string strict unit");
    Element u = A.unit();
    for (const auto& a : O) {
        ++unit.evaluated;
        if (!same_terms(A.pont(u, a.x), a.x) || !same_terms(A.pont(a.x, u), a.x))
            unit.fail("unit law fails", json{{"alpha", a.j}});
    }
    auto& ucyc = r.add("unit is a cycle");
    ucyc.evaluated = 1;
    if (!A.d(u).is_zero()) ucyc.fail("d[unit] != 0");

    // special-element identities
    Element Lt = A.loop_tilde(), St = A.star1_tilde();
    auto& lmc = r.add("loop element is Maurer-Cartan for d0");
    lmc.evaluated = 1;
    Element lres = A.d0(Lt) - Q(1, 2) * A.bracket(Lt, Lt);
    if (!lres.is_zero()) lmc.fail("d0 L~ - 1/2 [L~,L~] != 0", json{{"residual", element_to_json(g, lres)}});

    auto& lgen = r.add("loop bracket generates the cosimplicial differential");
    for (const auto& x : L) {
        ++lgen.evaluated;
        if (!same_terms(-A.bracket(Lt, x.x), A.d1(x.x))) lgen.fail("-[L~,x] != d1 x", json{{"x", x.j}});
    }
    auto& smc = r.add("star element is Maurer-Cartan for the interior differential");
    smc.evaluated = 1;
    Element sres = A.dint(St) - A.pont(St, St);
    if (!sres.is_zero()) smc.fail("dint s~ - s~.s~ != 0", json{{"residual", element_to_json(g, sres)}});

    auto& stw = r.add("star twist recovers the outer faces");
    auto& co1l = r.add("CO1 of the loop element is the interior face sum");
    for (const auto& a : O) {
        ++stw.evaluated;
        ++co1l.evaluated;
        Element lhs = Q(sign_of(a.x.degree)) * A.pont(a.x, St) - A.pont(St, a.x);
        if (!same_terms(lhs, A.d(a.x) - A.dint(a.x)))
            stw.fail("-(s~.a) + (-1)^|a| (a.s~) != (d - dint) a", json{{"alpha", a.j}});
        if (!same_terms(-A.co1(Lt, a.x), A.d1_int(a.x)))
            co1l.fail("-CO1(L~)(a) != interior face sum", json{{"alpha", a.j}});
    }
    auto& co0 = r.add("CO0 of the fundamental class is the signed unit");
    co0.evaluated = 1;
    if (!same_terms(A.co0(A.loop0()), Q(sign_of(n)) * u)) co0.fail("CO0(L0) != (-1)^n [unit]");

    auto& an = r.add("anomaly anticommutes with d0");
    for (const auto& x : L) {
        ++an.evaluated;
        if (!same_terms(A.d0(A.anomaly(x.x)), -A.anomaly(A.d0(x.x)))) an.fail("d0 o(x) != -o(d0 x)", json{{"x", x.j}});
    }
    return r;
}

}  // namespace gdga
