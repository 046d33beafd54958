#pragma once

#include <map>

#include "gdga/deformation.hpp"

namespace gdga {

// Betti number of the open sector in state degree 1, per class.
std::map<ClassVector, std::size_t> h1_components(const StateAlgebra& A, const std::vector<ClassVector>& classes);

enum class EliminationStatus { Running, ContradictionCertified, SurvivingClass, PreconditionFailed };
std::string to_string(EliminationStatus s);

struct EliminationInput {
    const CurvedDeformation* defo = nullptr;
    Element b{Sector::Open, -1};
    Element N_geq0{Sector::Open, 1};  // displaced
    Element N0{Sector::Open, 0};      // displaced
};

struct EliminationState {
    EliminationStatus status = EliminationStatus::Running;
    Element N{Sector::Open, 1};
    json steps = json::array();  // {level, class, chi}
    json witness;
    Report report;
};

EliminationState eliminate(const EliminationInput& in, const CurveMonoid& G, const PerturbedClassModule& Nm);

// Machine-checkable record of a finished elimination.
json certify(const StateAlgebra& A, const EliminationState& s);
// Recomputes the elimination from the inputs and the recorded primitives.
Report replay_certificate(const EliminationInput& in, const CurveMonoid& G, const PerturbedClassModule& Nm,
                          const json& cert);

struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, long long>, std::size_t> dims;  // (p, degree) -> dim E_r
    std::size_t rank_dr = 0;
};

struct SpectralSequence {
    Q lambda0;
    int pmin = 0, pmax = 0;
    long long smin = 0, smax = 0;
    std::vector<SpectralPage> pages;                     // r = 0 .. r_max
    SpectralPage infinity;                               // a page past which nothing changes
    std::map<long long, std::size_t> homology_total;     // direct homology of D, per degree
    Report report;
    json to_json() const;
};

// Smallest positive difference between distinct energies of `classes`; nullopt when
// there is at most one energy.
std::optional<Q> min_energy_gap(const ClassGroup& g, const std::vector<ClassVector>& classes);
int filtration_index(const Q& energy, const Q& lambda0);

// Energy filtration spectral sequence of (open chains over `classes`, D) in the
// degree range [smin, smax].  Throws std::domain_error when lambda0 is not finer than
// every energy gap.
SpectralSequence spectral_sequence(const StateAlgebra& A, const LinearOp& D, const std::vector<ClassVector>& classes,
                                   const Q& lambda0, int r_max, long long smin, long long smax);

}  // namespace gdga
