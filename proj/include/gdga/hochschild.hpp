#pragma once

#include <memory>
#include <vector>

#include "gdga/report.hpp"
#include "gdga/state.hpp"

namespace gdga {

// A Hochschild cochain of the open-string algebra: multilinear maps Phi_l taking
// homogeneous open elements to an open element of degree sum|a_i| + |Phi| + l - 1.
class Cochain {
public:
    virtual ~Cochain() = default;
    virtual long long degree() const = 0;
    // Components of larger arity vanish.
    virtual int max_arity() const = 0;
    virtual Element eval(const std::vector<Element>& args) const = 0;
};

using CochainPtr = std::shared_ptr<const Cochain>;

long long output_degree(long long cochain_degree, const std::vector<Element>& args);

using BasisKey = std::pair<Cell, int>;
using BasisTuple = std::vector<BasisKey>;

CochainPtr zero_cochain(long long degree);
// Sparse extensional table: basis tuple -> output element.
CochainPtr table_cochain(const StateAlgebra& A, long long degree, std::map<BasisTuple, Element> entries);
// CO(x): arity 0 is (-1)^|x| o(x), arity 1 is a -> (-1)^(|a||x|+1) a o x.  With
// flip_co1 the arity-1 sign is negated.
CochainPtr co_map(const StateAlgebra& A, const Element& x, bool flip_co1 = false);
CochainPtr lincomb(long long degree, std::vector<std::pair<Q, CochainPtr>> terms);
// The arity-1 cochain a -> D(a), of degree -1.
CochainPtr unary_cochain(const StateAlgebra& A, LinearOp D, long long degree = -1);
// Hochschild differential relative to the open differential D (default: the total d)
// and the Pontryagin product.
CochainPtr hochschild_diff(const StateAlgebra& A, CochainPtr phi, LinearOp D = nullptr);
CochainPtr pre_lie(const StateAlgebra& A, CochainPtr phi, CochainPtr psi);
CochainPtr gerstenhaber(const StateAlgebra& A, CochainPtr phi, CochainPtr psi);

// Homogeneous basis of a state space over a window (open unless stated).
struct OpenBasis {
    std::vector<Element> elems;
    std::vector<BasisKey> keys;
    std::vector<json> refs;
    std::size_t size() const { return elems.size(); }
};
OpenBasis window_basis(const StateAlgebra& A, Sector s, const std::vector<ClassVector>& classes, int kmax);
OpenBasis open_basis(const StateAlgebra& A, const std::vector<ClassVector>& classes, int kmax);

// Compares two cochains on every basis tuple of arity <= max_arity.  Tuples whose
// input energy already exceeds the cutoff are skipped.
void compare_cochains(Check& c, const StateAlgebra& A, const Cochain& lhs, const Cochain& rhs,
                      const OpenBasis& B, int max_arity);

// Every single-entry table cochain with inputs from B of arity <= max_arity and
// output a basis element of B.
std::vector<CochainPtr> basis_cochains(const StateAlgebra& A, const OpenBasis& B, int max_arity,
                                       std::vector<json>* refs = nullptr);

// Checks that f intertwines d with the Hochschild differential and the loop bracket
// with the Gerstenhaber bracket on every closed basis element / pair.
using ClosedToCochain = std::function<CochainPtr(const Element&)>;
Report check_dgla_hom(const StateAlgebra& A, const ClosedToCochain& f, const std::vector<Element>& closed,
                      const std::vector<json>& closed_refs, const OpenBasis& B, int max_arity = 2);

json cochain_to_json(const StateAlgebra& A, const Cochain& phi, const OpenBasis& B, int max_arity);
CochainPtr cochain_from_json(const StateAlgebra& A, const json& j);

}  // namespace gdga
