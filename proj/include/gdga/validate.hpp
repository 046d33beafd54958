#pragma once

#include <vector>

#include "gdga/report.hpp"
#include "gdga/state.hpp"

namespace gdga {

// Cells with class in `classes` and k <= kmax.  Classes should be closed under
// addition within the energy cutoff (an enumerated monoid is).
struct Window {
    std::vector<ClassVector> classes;
    int kmax = 5;
};

json basis_ref(Sector s, const Cell& c, int i);

// Structure-map axioms of a backend: differential, cosimplicial faces, the three
// products and the anomaly map, and the special elements.
Report validate_backend(const Backend& b, const Window& w);

// Identities of the assembled state spaces over the window basis.
Report validate_state(const StateAlgebra& A, const Window& w);

}  // namespace gdga
