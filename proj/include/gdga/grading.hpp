#pragma once

#include <compare>
#include <string>
#include <vector>

#include "gdga/rational.hpp"

namespace gdga {

struct ClassVector {
    std::vector<long long> free;
    std::vector<long long> tors;

    auto operator<=>(const ClassVector&) const = default;
    bool operator==(const ClassVector&) const = default;
    bool is_zero() const;
};

std::string to_string(const ClassVector& a);

class ClassGroup {
public:
    ClassGroup() = default;
    ClassGroup(int rank, std::vector<long long> torsion, std::vector<Q> energy,
               std::vector<long long> maslov, int dim_l);

    int rank() const { return rank_; }
    const std::vector<long long>& torsion() const { return torsion_; }
    const std::vector<Q>& energy() const { return energy_; }
    const std::vector<long long>& maslov() const { return maslov_; }
    int dim_l() const { return dim_l_; }

    ClassVector zero() const;
    ClassVector make(std::vector<long long> free, std::vector<long long> tors = {}) const;
    ClassVector generator(int i) const;
    ClassVector add(const ClassVector& a, const ClassVector& b) const;
    ClassVector neg(const ClassVector& a) const;
    ClassVector sub(const ClassVector& a, const ClassVector& b) const;
    ClassVector scale(const ClassVector& a, long long c) const;
    bool valid(const ClassVector& a) const;
    void check(const ClassVector& a) const;

    Q energy_of(const ClassVector& a) const;
    long long maslov_of(const ClassVector& a) const;

    // Energy first, then free part, then torsion part.
    bool canonical_less(const ClassVector& a, const ClassVector& b) const;

    bool operator==(const ClassGroup&) const = default;

private:
    ClassVector reduce(ClassVector a) const;

    int rank_ = 0;
    std::vector<long long> torsion_;
    std::vector<Q> energy_;
    std::vector<long long> maslov_;
    int dim_l_ = 1;
};

Q energy_of(const ClassGroup& g, const ClassVector& a);
long long maslov_of(const ClassGroup& g, const ClassVector& a);

// Backend degree of a component of a state element.
inline long long closed_backend_degree(long long state, int n, long long mu, int k) {
    return state + n + mu + k - 1;
}
inline long long open_backend_degree(long long state, long long mu, int k) { return state + mu + k; }
inline long long closed_state_degree(long long deg, int n, long long mu, int k) {
    return deg - n - mu - k + 1;
}
inline long long open_state_degree(long long deg, long long mu, int k) { return deg - mu - k; }
inline long long hochschild_map_degree(long long state, int ell) { return state + ell - 1; }

}  // namespace gdga
