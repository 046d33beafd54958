#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gdga/element.hpp"
#include "gdga/report.hpp"

namespace gdga {

// Finite free chain complexes C(a,k) for both sectors together with signed structure
// maps.  All products take basis indices and return sparse vectors in the target cell:
//   face(j)     C(a,k-1) -> C(a,k),                 j = 0..k
//   pont        C^O(a1,k1) x C^O(a2,k2) -> C^O(a1+a2,k1+k2)
//   circ_closed C^L(a1,k1) x C^L(a2,k2) -> C^L(a1+a2,k1+k2-1),  pos = 1..k1
//   circ_open   C^O(a1,k1) x C^L(a2,k2) -> C^O(a1+a2,k1+k2-1),  pos = 1..k1
//   anomaly     C^L(a,k) -> C^O(a,k)
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::string name() const = 0;
    virtual const ClassGroup& group() const = 0;
    int dim_l() const { return group().dim_l(); }

    virtual int dim(Sector s, const ClassVector& a, int k) const = 0;
    virtual int degree(Sector s, const ClassVector& a, int k, int i) const = 0;
    // Marked-point counts k at which C(a,k) may contain basis elements of the
    // given state degree.
    virtual std::vector<int> k_candidates(Sector s, const ClassVector& a, long long state) const = 0;

    virtual SVec d(Sector s, const ClassVector& a, int k, int i) const = 0;
    virtual SVec face(Sector s, const ClassVector& a, int k, int j, int i) const = 0;
    virtual SVec pont(const Cell& c1, int i1, const Cell& c2, int i2) const = 0;
    virtual SVec circ_closed(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const = 0;
    virtual SVec circ_open(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const = 0;
    virtual SVec anomaly(const Cell& c, int i) const = 0;

    virtual SVec unit() const = 0;         // open (0,0)
    virtual SVec star1() const = 0;        // open (0,1)
    virtual SVec loop2() const = 0;        // closed (0,2)
    virtual SVec fundamental() const = 0;  // closed (0,0)

    virtual json describe() const = 0;
    // False for cells a finite table cannot speak about; identities touching them are skipped.
    virtual bool covers(const ClassVector&, int) const { return true; }
};

using BackendPtr = std::shared_ptr<const Backend>;

// Backends whose cells do not depend on (a,k): every C(a,k) is a copy of a fixed
// graded fiber in each sector.
class UniformBackend : public Backend {
public:
    explicit UniformBackend(ClassGroup g) : group_(std::move(g)) {}
    const ClassGroup& group() const override { return group_; }
    int dim(Sector s, const ClassVector& a, int k) const override;
    int degree(Sector s, const ClassVector& a, int k, int i) const override;
    std::vector<int> k_candidates(Sector s, const ClassVector& a, long long state) const override;
    SVec face(Sector s, const ClassVector& a, int k, int j, int i) const override;

protected:
    virtual const std::vector<int>& fiber_degrees(Sector s) const = 0;
    ClassGroup group_;
};

// Exterior algebra model of the torus T^m (requires dim_l = m).
class TorusBackend final : public UniformBackend {
public:
    explicit TorusBackend(ClassGroup g);
    std::string name() const override { return "torus"; }
    SVec d(Sector s, const ClassVector& a, int k, int i) const override;
    SVec pont(const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_closed(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_open(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec anomaly(const Cell& c, int i) const override;
    SVec unit() const override;
    SVec star1() const override;
    SVec loop2() const override;
    SVec fundamental() const override;
    json describe() const override;

private:
    const std::vector<int>& fiber_degrees(Sector s) const override;
    int m_;
    int top_;
    std::vector<int> closed_deg_, open_deg_;
};

// A graded-commutative dg algebra used as the fiber of the group-ring backend.
struct Fiber {
    std::string name;
    std::vector<int> degrees;
    std::vector<SVec> d;
    std::map<std::pair<int, int>, SVec> mult;  // missing entries are zero; index 0 is the unit

    SVec product(int i, int j) const;
    static Fiber point();
    static Fiber sphere();
    static Fiber acyclic();
    static Fiber contractible();
    static Fiber by_name(const std::string& name);
};

// Both sectors are the fiber in every (a,k) (the closed one shifted up by dim_l);
// every product is fiber multiplication and every face is the identity.
class GroupRingBackend final : public UniformBackend {
public:
    GroupRingBackend(ClassGroup g, Fiber fiber);
    std::string name() const override { return "groupring"; }
    const Fiber& fiber() const { return fiber_; }
    SVec d(Sector s, const ClassVector& a, int k, int i) const override;
    SVec pont(const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_closed(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_open(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec anomaly(const Cell& c, int i) const override;
    SVec unit() const override;
    SVec star1() const override;
    SVec loop2() const override;
    SVec fundamental() const override;
    json describe() const override;

private:
    const std::vector<int>& fiber_degrees(Sector s) const override;
    Fiber fiber_;
    std::vector<int> closed_deg_;
};

// Wraps another backend and negates a single Pontryagin structure constant.
class SignFlipBackend final : public Backend {
public:
    SignFlipBackend(BackendPtr base, Cell c1, int i1, Cell c2, int i2);
    std::string name() const override { return "signflip"; }
    const ClassGroup& group() const override { return base_->group(); }
    int dim(Sector s, const ClassVector& a, int k) const override { return base_->dim(s, a, k); }
    int degree(Sector s, const ClassVector& a, int k, int i) const override {
        return base_->degree(s, a, k, i);
    }
    std::vector<int> k_candidates(Sector s, const ClassVector& a, long long st) const override {
        return base_->k_candidates(s, a, st);
    }
    SVec d(Sector s, const ClassVector& a, int k, int i) const override { return base_->d(s, a, k, i); }
    SVec face(Sector s, const ClassVector& a, int k, int j, int i) const override {
        return base_->face(s, a, k, j, i);
    }
    SVec pont(const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_closed(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override {
        return base_->circ_closed(pos, c1, i1, c2, i2);
    }
    SVec circ_open(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override {
        return base_->circ_open(pos, c1, i1, c2, i2);
    }
    SVec anomaly(const Cell& c, int i) const override { return base_->anomaly(c, i); }
    SVec unit() const override { return base_->unit(); }
    SVec star1() const override { return base_->star1(); }
    SVec loop2() const override { return base_->loop2(); }
    SVec fundamental() const override { return base_->fundamental(); }
    json describe() const override;
    bool covers(const ClassVector& a, int k) const override { return base_->covers(a, k); }

private:
    BackendPtr base_;
    Cell c1_, c2_;
    int i1_, i2_;
};

// Explicit sparse structure constants; cells not listed are zero.
class TableBackend final : public Backend {
public:
    TableBackend(ClassGroup g, const json& spec);
    std::string name() const override { return "table"; }
    const ClassGroup& group() const override { return group_; }
    int dim(Sector s, const ClassVector& a, int k) const override;
    int degree(Sector s, const ClassVector& a, int k, int i) const override;
    std::vector<int> k_candidates(Sector s, const ClassVector& a, long long state) const override;
    SVec d(Sector s, const ClassVector& a, int k, int i) const override;
    SVec face(Sector s, const ClassVector& a, int k, int j, int i) const override;
    SVec pont(const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_closed(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec circ_open(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const override;
    SVec anomaly(const Cell& c, int i) const override;
    SVec unit() const override { return unit_; }
    SVec star1() const override { return star1_; }
    SVec loop2() const override { return loop2_; }
    SVec fundamental() const override { return fundamental_; }
    json describe() const override { return spec_; }
    bool covers(const ClassVector& a, int k) const override;

private:
    struct CellData {
        std::vector<int> degrees;
        std::vector<SVec> d;
        std::vector<std::vector<SVec>> faces;  // faces[j][i]
    };
    using Key = std::tuple<Sector, ClassVector, int>;
    using BiKey = std::tuple<int, ClassVector, int, int, ClassVector, int, int>;
    const CellData* cell(Sector s, const ClassVector& a, int k) const;

    ClassGroup group_;
    json spec_;
    std::map<Key, CellData> cells_;
    std::map<BiKey, SVec> pont_, circ_closed_, circ_open_;
    std::map<std::tuple<ClassVector, int, int>, SVec> anomaly_;
    SVec unit_, star1_, loop2_, fundamental_;
    std::set<ClassVector> classes_;
    int kmax_ = -1;
};

// JSON descriptors: {"kind": "torus"} | {"kind": "groupring", "fiber": "sphere"} |
// {"kind": "signflip", "base": {...}, "entry": {...}} | {"kind": "table", ...}.
BackendPtr load_backend(const json& spec, const ClassGroup& g);

// Tabulates a backend on the cells with class in `classes` and k <= kmax.
json export_table(const Backend& b, const std::vector<ClassVector>& classes, int kmax);

}  // namespace gdga
