#pragma once

#include <memory>

#include "gdga/project.hpp"
#include "oracles.hpp"

namespace fx {

using namespace gdga;

inline Project example(const std::string& name, const ProjectOverrides& o = {}) {
    return load_project(oracle::examples_dir() + "/" + name + ".json", o);
}

inline ClassGroup rank1(Q energy, long long mu = 0, int n = 1) { return ClassGroup(1, {}, {energy}, {mu}, n); }

inline std::shared_ptr<StateAlgebra> algebra(BackendPtr b, Q cutoff) {
    return std::make_shared<StateAlgebra>(std::move(b), cutoff);
}

inline BackendPtr torus(const ClassGroup& g) { return std::make_shared<TorusBackend>(g); }
inline BackendPtr groupring(const ClassGroup& g, const std::string& fiber) {
    return std::make_shared<GroupRingBackend>(g, Fiber::by_name(fiber));
}

inline Element basis(const StateAlgebra& A, Sector s, const ClassVector& a, int k, int i) {
    return A.basis(s, Cell{a, k}, i);
}

inline bool passed(const Report& r, const std::string& label) {
    const Check* c = r.find(label);
    return c && c->passed;
}

}  // namespace fx
