#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gdga/backend.hpp"
#include "gdga/linalg.hpp"

namespace gdga {

// The closed- and open-string state spaces over a backend, with every output
// truncated at the energy cutoff.
class StateAlgebra {
public:
    StateAlgebra(BackendPtr b, Q cutoff);

    const Backend& backend() const { return *backend_; }
    BackendPtr backend_ptr() const { return backend_; }
    const ClassGroup& group() const { return backend_->group(); }
    int n() const { return backend_->dim_l(); }
    const Q& cutoff() const { return cutoff_; }

    long long state_degree(Sector s, const Cell& c, int i) const;
    Element basis(Sector s, const Cell& c, int i) const;

    Element d0(const Element& x) const;
    Element d1(const Element& x) const;
    Element d(const Element& x) const;
    Element d1_int(const Element& alpha) const;
    Element dint(const Element& alpha) const;

    Element pont(const Element& alpha, const Element& beta) const;
    Element pre(const Element& x, const Element& y) const;
    Element bracket(const Element& x, const Element& y) const;
    Element oc(const Element& alpha, const Element& x) const;
    Element anomaly(const Element& x) const;
    Element co0(const Element& x) const;
    Element co1(const Element& x, const Element& alpha) const;

    Element unit() const;
    Element star1() const;
    Element star1_tilde() const;
    Element loop() const;
    Element loop_tilde() const;
    Element loop0() const;

    Element zero(Sector s, long long degree) const;
    Element truncated(Element x) const;

private:
    Element faces(const Element& x, bool interior) const;
    Horizon product_horizon(const Element& x, const Element& y) const;

    BackendPtr backend_;
    Q cutoff_;
};

// Basis of the state space in one sector and state degree, over a list of classes.
struct StateBasis {
    Sector sector = Sector::Open;
    long long degree = 0;
    std::vector<std::pair<Cell, int>> elems;
    std::map<std::pair<Cell, int>, int> index;

    int size() const { return static_cast<int>(elems.size()); }
    SVec coords(const Element& x) const;
    Element element(const SVec& v) const;
};

StateBasis state_basis(const StateAlgebra& A, Sector s, const std::vector<ClassVector>& classes,
                       long long degree);

using LinearOp = std::function<Element(const Element&)>;

// Matrix of op from src into dst coordinates; terms outside dst are reported through
// `outside` when given.
ColMatrix operator_matrix(const StateAlgebra& A, const LinearOp& op, const StateBasis& src,
                          const StateBasis& dst, bool* outside = nullptr);

// Homology of (C_*(a), op) at one state degree, with solve oracles.
struct Homology {
    StateBasis chains, lower, upper;  // degrees s, s-1, s+1
    ColMatrix d_out, d_in;            // C_s -> C_{s-1} and C_{s+1} -> C_s
    std::size_t betti = 0;

    bool is_cycle(const Element& z) const;
    bool is_boundary(const Element& z) const;
    std::optional<Element> primitive(const Element& z) const;
    // Functional vanishing on boundaries and equal to 1 on z, when z is not a boundary.
    std::optional<SVec> witness(const Element& z) const;
};

Homology homology(const StateAlgebra& A, Sector s, const std::vector<ClassVector>& classes,
                  long long degree, const LinearOp& op);
Homology homology(const StateAlgebra& A, Sector s, const ClassVector& a, long long degree);

}  // namespace gdga
