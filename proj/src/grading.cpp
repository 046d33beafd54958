#include "gdga/grading.hpp"

#include <sstream>
#include <stdexcept>

namespace gdga {

bool ClassVector::is_zero() const {
    for (auto v : free)
        if (v) return false;
    for (auto v : tors)
        if (v) return false;
    return true;
}

std::string to_string(const ClassVector& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.free.size(); ++i) os << (i ? "," : "") << a.free[i];
    if (!a.tors.empty()) {
        os << ";";
        for (std::size_t i = 0; i < a.tors.size(); ++i) os << (i ? "," : "") << a.tors[i];
    }
    os << ")";
    return os.str();
}

ClassGroup::ClassGroup(int rank, std::vector<long long> torsion, std::vector<Q> energy,
                       std::vector<long long> maslov, int dim_l)
    : rank_(rank), torsion_(std::move(torsion)), energy_(std::move(energy)),
      maslov_(std::move(maslov)), dim_l_(dim_l) {
    if (rank_ < 0) throw std::invalid_argument("negative rank");
    if (static_cast<int>(energy_.size()) != rank_ || static_cast<int>(maslov_.size()) != rank_)
        throw std::invalid_argument("energy and maslov must have one entry per free generator");
    for (auto m : torsion_)
        if (m < 2) throw std::invalid_argument("torsion orders must be at least 2");
    for (auto m : maslov_)
        if (parity(m)) throw std::invalid_argument("maslov values must be even");
    if (dim_l_ < 1) throw std::invalid_argument("dim_l must be positive");
}

ClassVector ClassGroup::reduce(ClassVector a) const {
    for (std::size_t i = 0; i < a.tors.size(); ++i) {
        long long m = torsion_[i];
        a.tors[i] = ((a.tors[i] % m) + m) % m;
    }
    return a;
}

ClassVector ClassGroup::zero() const {
    return ClassVector{std::vector<long long>(rank_, 0), std::vector<long long>(torsion_.size(), 0)};
}

ClassVector ClassGroup::make(std::vector<long long> free, std::vector<long long> tors) const {
    if (tors.empty()) tors.assign(torsion_.size(), 0);
    ClassVector a{std::move(free), std::move(tors)};
    if (a.free.size() != static_cast<std::size_t>(rank_) || a.tors.size() != torsion_.size())
        throw std::invalid_argument("class vector dimension mismatch: " + to_string(a));
    return reduce(std::move(a));
}

ClassVector ClassGroup::generator(int i) const {
    auto a = zero();
    a.free.at(i) = 1;
    return a;
}

void ClassGroup::check(const ClassVector& a) const {
    if (!valid(a)) throw std::invalid_argument("class vector dimension mismatch: " + to_string(a));
}

bool ClassGroup::valid(const ClassVector& a) const {
    if (a.free.size() != static_cast<std::size_t>(rank_) || a.tors.size() != torsion_.size())
        return false;
    for (std::size_t i = 0; i < a.tors.size(); ++i)
        if (a.tors[i] < 0 || a.tors[i] >= torsion_[i]) return false;
    return true;
}

ClassVector ClassGroup::add(const ClassVector& a, const ClassVector& b) const {
    check(a);
    check(b);
    ClassVector c = a;
    for (int i = 0; i < rank_; ++i) c.free[i] += b.free[i];
    for (std::size_t i = 0; i < c.tors.size(); ++i) c.tors[i] += b.tors[i];
    return reduce(std::move(c));
}

ClassVector ClassGroup::neg(const ClassVector& a) const { return scale(a, -1); }

ClassVector ClassGroup::sub(const ClassVector& a, const ClassVector& b) const {
    return add(a, neg(b));
}

ClassVector ClassGroup::scale(const ClassVector& a, long long c) const {
    check(a);
    ClassVector r = a;
    for (auto& v : r.free) v *= c;
    for (auto& v : r.tors) v *= c;
    return reduce(std::move(r));
}

Q ClassGroup::energy_of(const ClassVector& a) const {
    check(a);
    Q e = 0;
    for (int i = 0; i < rank_; ++i) e += energy_[i] * Q(static_cast<long>(a.free[i]));
    return e;
}

long long ClassGroup::maslov_of(const ClassVector& a) const {
    check(a);
    long long m = 0;
    for (int i = 0; i < rank_; ++i) m += maslov_[i] * a.free[i];
    return m;
}

bool ClassGroup::canonical_less(const ClassVector& a, const ClassVector& b) const {
    Q ea = energy_of(a), eb = energy_of(b);
    if (ea != eb) return ea < eb;
    if (a.free != b.free) return a.free < b.free;
    return a.tors < b.tors;
}

Q energy_of(const ClassGroup& g, const ClassVector& a) { return g.energy_of(a); }
long long maslov_of(const ClassGroup& g, const ClassVector& a) { return g.maslov_of(a); }

}  // namespace gdga
