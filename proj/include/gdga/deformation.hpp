#pragma once

#include <optional>
#include <string>

#include "gdga/gapped.hpp"
#include "gdga/hochschild.hpp"

namespace gdga {

// "thm":  dM + 1/2 [M,M] = 0, and the dg Lie twisting element is x = -M.
// "lie":  dx - 1/2 [x,x] = 0 with x = M.
enum class Convention { Theorem, Lie };
Convention parse_convention(const std::string& s);
std::string to_string(Convention c);
Element lie_element(const Element& M, Convention c);

// x is trusted in class a when a lies below its horizon.
bool trusted(const ClassGroup& g, const Element& x, const ClassVector& a);

// Fails c at the lowest class of `classes` (canonical order) where x is trusted and
// nonzero; untrusted classes are counted as skipped.
void expect_zero(Check& c, const ClassGroup& g, const Element& x, const std::vector<ClassVector>& classes);

struct MCData {
    Element M{Sector::Closed, -1};
    Element N_geq0{Sector::Closed, 2};
    Element N0{Sector::Closed, 1};
    bool has_displacement = false;
};

Report mc_check_closed(const StateAlgebra& A, const CurveMonoid& G, const Element& M, Convention conv);

// Checks d N - [x,N] = N0 on the module classes of energy below `below` (all classes
// when unset), the gapping of N0 and [N0(0)] = [L0].
Report mc_check_displacement(const StateAlgebra& A, const CurveMonoid& G, const PerturbedClassModule& Nm,
                             const MCData& mc, Convention conv, std::optional<Q> below = std::nullopt);

// m0 = -CO0(x), m1 = d - CO1(x), m2 = Pontryagin product.
struct CurvedDeformation {
    const StateAlgebra* A = nullptr;
    Element x{Sector::Closed, -1};
    Element m0{Sector::Open, -2};
    Element m1(const Element& alpha) const;
    Element m2(const Element& a, const Element& b) const { return A->pont(a, b); }
};

CurvedDeformation make_deformation(const StateAlgebra& A, const Element& M, Convention conv);
// Structural conditions and the curved identities (4a)-(4c) on the basis B, per class.
Report check_curved_identities(const CurvedDeformation& D, const CurveMonoid& G, const OpenBasis& B);

struct DeformationResult {
    CurvedDeformation defo;
    Report report;
};
DeformationResult deform_from_mc(const StateAlgebra& A, const CurveMonoid& G, const Element& M, Convention conv,
                                 const OpenBasis& B);

// Twisted differentials.
LinearOp twist_lie(const StateAlgebra& A, const Element& x, LinearOp base = nullptr);
LinearOp twist_assoc(const StateAlgebra& A, const Element& alpha, LinearOp base = nullptr);
LinearOp twist_hochschild(const StateAlgebra& A, CochainPtr phi, LinearOp base = nullptr);
// Checks op(op(e)) = 0 for every basis element.
void check_square_zero(Check& c, const StateAlgebra& A, const LinearOp& op, const OpenBasis& B);

struct BoundingResult {
    bool solved = false;
    Element b{Sector::Open, -1};
    Report report;
    json certificate;  // null unless an obstruction was found
};
BoundingResult solve_bounding_chain(const CurvedDeformation& D, const CurveMonoid& G);

// m1^b(a) = m1(a) + b.a - (-1)^|a| a.b
LinearOp m1_twisted(const CurvedDeformation& D, const Element& b);
Element curvature(const CurvedDeformation& D, const Element& b);

struct DisplacedTwist {
    Element N_geq0{Sector::Open, 1};
    Element N0{Sector::Open, 0};
    Report report;
    json notes = json::object();
};
// N*  = CO0(N) + CO1(N)(b) for both displacement elements.  The identity
// m1^b N*>=0 = N*0 is checked at negative energy; at non-negative energy its residual
// is recorded in `notes`.
DisplacedTwist displaced_twist(const CurvedDeformation& D, const Element& b, const CurveMonoid& G,
                               const PerturbedClassModule& Nm, const MCData& mc);

}  // namespace gdga
