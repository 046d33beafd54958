#pragma once

#include <vector>

#include "gdga/element.hpp"
#include "gdga/report.hpp"

namespace gdga {

struct CurveMonoid {
    std::vector<ClassVector> generators;
    Q cutoff = 0;
    std::vector<ClassVector> enumerated;  // canonical order, energy <= cutoff
    std::vector<ClassVector> rejected;    // nonzero generators of non-positive energy
    Q min_positive = 0;                   // 0 when the monoid is trivial
    Q hbar = 0;                           // half the minimum positive energy

    bool contains(const ClassVector& a) const;
    bool contains_positive(const ClassVector& a) const;
};

struct PerturbedClassModule {
    CurveMonoid base;
    std::vector<ClassVector> extra;
    Q floor = 0;  // the module lives at energy >= -floor
    std::vector<ClassVector> enumerated;

    bool contains(const ClassVector& a) const;
};

struct EnergyLevels {
    std::vector<ClassVector> classes;
    std::vector<Q> levels;
    std::vector<int> last_index;  // last_index[i] = largest index of a class at levels[i]
};

// All sums of the generators of energy at most bound.  Generators of non-positive
// energy are skipped (they would make the enumeration infinite).
std::vector<ClassVector> monoid_closure(const ClassGroup& g, const std::vector<ClassVector>& gens,
                                        const Q& bound);

CurveMonoid make_monoid(const ClassGroup& g, std::vector<ClassVector> generators, const Q& cutoff);
PerturbedClassModule make_module(const ClassGroup& g, const CurveMonoid& base,
                                 std::vector<ClassVector> extra, const Q& floor);

Report validate_monoid(const ClassGroup& g, const CurveMonoid& m);
Report validate_module(const ClassGroup& g, const PerturbedClassModule& m);

EnergyLevels sort_energy_levels(const ClassGroup& g, std::vector<ClassVector> classes);

Element gapped_add(const Element& x, const Element& y);
Element gapped_scale(const Q& c, const Element& x);
Element gapped_truncate(const ClassGroup& g, const Element& x, const Q& cutoff);

// Classes carrying a term that are not in the allowed set.
std::vector<ClassVector> gapping_violations(const Element& x, const std::vector<ClassVector>& allowed);

}  // namespace gdga
