#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gdga/grading.hpp"

namespace gdga {

enum class Sector { Closed, Open };

std::string to_string(Sector s);

// Sparse vector over a cell basis: basis index -> coefficient, zeros never stored.
using SVec = std::map<int, Q>;

void axpy(SVec& y, const Q& c, const SVec& x);
SVec scaled(const SVec& x, const Q& c);

struct Cell {
    ClassVector a;
    int k = 0;
    auto operator<=>(const Cell&) const = default;
    bool operator==(const Cell&) const = default;
};

// Exactness horizon: nullopt means exact in every class.
using Horizon = std::optional<Q>;
Horizon min_horizon(const Horizon& a, const Horizon& b);
Horizon shift_horizon(const Horizon& h, const Q& by);

// A homogeneous element of one of the two state spaces, stored as a finite sum of
// backend chains x(a,k).  Values in classes of energy above the horizon are not
// trustworthy (the element was truncated there or built from truncated data).
struct Element {
    Sector sector = Sector::Open;
    long long degree = 0;
    std::map<Cell, SVec> terms;
    Horizon valid_upto;

    Element() = default;
    Element(Sector s, long long deg) : sector(s), degree(deg) {}

    bool is_zero() const { return terms.empty(); }
    void add(const Cell& c, int idx, const Q& coef);
    void add(const Cell& c, const Q& coef, const SVec& v);
    void add(const Element& other, const Q& coef = 1);
    Element component(const ClassVector& a) const;
    std::set<ClassVector> classes() const;
    std::size_t nnz() const;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(const Q& c, const Element& x);
bool same_terms(const Element& x, const Element& y);

// Projection onto classes of energy strictly above lambda.
Element filtration_level(const ClassGroup& g, const Element& x, const Q& lambda);
// Drops classes of energy above cutoff and lowers the horizon accordingly.
Element truncate(const ClassGroup& g, const Element& x, const Q& cutoff);
// Lowest energy among the classes carrying a term, or among the untrusted region.
Horizon min_energy(const ClassGroup& g, const Element& x);

}  // namespace gdga
