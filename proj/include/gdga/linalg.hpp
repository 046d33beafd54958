#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gdga/element.hpp"

namespace gdga {

// Incremental row-echelon span.  Rows are keyed by their lowest nonzero index; a
// vector lies in the span iff lead elimination takes it to zero.  With tracking on,
// every row remembers which inserted vectors (by tag) it is a combination of.
class Echelon {
public:
    explicit Echelon(bool track = false) : track_(track) {}

    bool insert(const SVec& v, int tag = -1);
    bool contains(const SVec& v) const;
    std::optional<SVec> express(const SVec& v) const;
    SVec reduce(const SVec& v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        SVec vec;
        SVec combo;
    };
    bool eliminate(SVec& v, SVec* combo) const;

    bool track_;
    std::map<int, Row> rows_;
};

// A linear map stored column by column: column j is the image of source basis j.
struct ColMatrix {
    int rows = 0;
    std::vector<SVec> cols;

    int ncols() const { return static_cast<int>(cols.size()); }
    ColMatrix transpose() const;
    SVec apply(const SVec& x) const;
};

std::size_t rank(const ColMatrix& a);
// Solution supported on the pivot columns (earliest independent columns).
std::optional<SVec> solve(const ColMatrix& a, const SVec& y);
std::vector<SVec> kernel(const ColMatrix& a);
// A row functional phi with phi(col) = 0 for every column and phi(v) = 1, if v is
// not in the column span.
std::optional<SVec> separating_functional(const ColMatrix& a, const SVec& v);
Q pair(const SVec& phi, const SVec& v);

}  // namespace gdga
