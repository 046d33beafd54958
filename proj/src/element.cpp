#include "gdga/element.hpp"

#include <stdexcept>

namespace gdga {

std::string to_string(Sector s) { return s == Sector::Closed ? "closed" : "open"; }

void axpy(SVec& y, const Q& c, const SVec& x) {
    if (c == 0) return;
    for (const auto& [i, v] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            y.emplace(i, c * v);
        } else {
            it->second += c * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

SVec scaled(const SVec& x, const Q& c) {
    SVec r;
    if (c == 0) return r;
    for (const auto& [i, v] : x) r.emplace(i, c * v);
    return r;
}

Horizon min_horizon(const Horizon& a, const Horizon& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

Horizon shift_horizon(const Horizon& h, const Q& by) {
    if (!h) return h;
    return Q(*h + by);
}

void Element::add(const Cell& c, int idx, const Q& coef) {
    if (coef == 0) return;
    auto& v = terms[c];
    auto it = v.find(idx);
    if (it == v.end()) {
        v.emplace(idx, coef);
    } else {
        it->second += coef;
        if (it->second == 0) v.erase(it);
    }
    if (v.empty()) terms.erase(c);
}

void Element::add(const Cell& c, const Q& coef, const SVec& v) {
    if (coef == 0 || v.empty()) return;
    auto& t = terms[c];
    axpy(t, coef, v);
    if (t.empty()) terms.erase(c);
}

void Element::add(const Element& other, const Q& coef) {
    if (other.sector != sector && !other.is_zero())
        throw std::invalid_argument("adding elements of different sectors");
    if (other.degree != degree && !other.is_zero() && !is_zero())
        throw std::invalid_argument("adding elements of different degrees");
    if (is_zero() && !other.is_zero()) degree = other.degree;
    for (const auto& [c, v] : other.terms) add(c, coef, v);
    valid_upto = min_horizon(valid_upto, other.valid_upto);
}

Element Element::component(const ClassVector& a) const {
    Element r(sector, degree);
    r.valid_upto = valid_upto;
    for (const auto& [c, v] : terms)
        if (c.a == a) r.terms.emplace(c, v);
    return r;
}

std::set<ClassVector> Element::classes() const {
    std::set<ClassVector> s;
    for (const auto& [c, v] : terms) s.insert(c.a);
    return s;
}

std::size_t Element::nnz() const {
    std::size_t n = 0;
    for (const auto& [c, v] : terms) n += v.size();
    return n;
}

Element operator+(const Element& x, const Element& y) {
    Element r = x;
    r.add(y, 1);
    return r;
}

Element operator-(const Element& x, const Element& y) {
    Element r = x;
    r.add(y, -1);
    return r;
}

Element operator-(const Element& x) { return Q(-1) * x; }

Element operator*(const Q& c, const Element& x) {
    Element r(x.sector, x.degree);
    r.valid_upto = x.valid_upto;
    if (c == 0) return r;
    for (const auto& [cell, v] : x.terms) r.terms.emplace(cell, scaled(v, c));
    return r;
}

bool same_terms(const Element& x, const Element& y) { return x.terms == y.terms; }

Element filtration_level(const ClassGroup& g, const Element& x, const Q& lambda) {
    Element r(x.sector, x.degree);
    r.valid_upto = x.valid_upto;
    for (const auto& [c, v] : x.terms)
        if (g.energy_of(c.a) > lambda) r.terms.emplace(c, v);
    return r;
}

Element truncate(const ClassGroup& g, const Element& x, const Q& cutoff) {
    Element r(x.sector, x.degree);
    r.valid_upto = min_horizon(x.valid_upto, Horizon(cutoff));
    for (const auto& [c, v] : x.terms)
        if (g.energy_of(c.a) <= cutoff) r.terms.emplace(c, v);
    return r;
}

Horizon min_energy(const ClassGroup& g, const Element& x) {
    Horizon m = x.valid_upto;
    for (const auto& [c, v] : x.terms) m = min_horizon(m, Horizon(g.energy_of(c.a)));
    return m;
}

}  // namespace gdga
