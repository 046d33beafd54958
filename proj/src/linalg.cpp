#include "gdga/linalg.hpp"

namespace gdga {

bool Echelon::eliminate(SVec& v, SVec* combo) const {
    while (!v.empty()) {
        auto lead = v.begin()->first;
        auto it = rows_.find(lead);
        if (it == rows_.end()) return false;
        Q f = v.begin()->second / it->second.vec.begin()->second;
        axpy(v, -f, it->second.vec);
        if (combo) axpy(*combo, f, it->second.combo);
    }
    return true;
}

bool Echelon::insert(const SVec& v, int tag) {
    SVec w = v;
    SVec combo;
    if (eliminate(w, track_ ? &combo : nullptr)) return false;
    Row row;
    if (track_) {
        row.combo = scaled(combo, -1);
        axpy(row.combo, 1, SVec{{tag, Q(1)}});
    }
    auto lead = w.begin()->first;
    row.vec = std::move(w);
    rows_.emplace(lead, std::move(row));
    return true;
}

bool Echelon::contains(const SVec& v) const {
    SVec w = v;
    return eliminate(w, nullptr);
}

SVec Echelon::reduce(const SVec& v) const {
    SVec w = v;
    eliminate(w, nullptr);
    return w;
}

std::optional<SVec> Echelon::express(const SVec& v) const {
    SVec w = v;
    SVec combo;
    if (!eliminate(w, &combo)) return std::nullopt;
    return combo;
}

ColMatrix ColMatrix::transpose() const {
    ColMatrix t;
    t.rows = ncols();
    t.cols.assign(rows, SVec{});
    for (int j = 0; j < ncols(); ++j)
        for (const auto& [i, v] : cols[j]) t.cols[i].emplace(j, v);
    return t;
}

SVec ColMatrix::apply(const SVec& x) const {
    SVec y;
    for (const auto& [j, c] : x) axpy(y, c, cols.at(j));
    return y;
}

std::size_t rank(const ColMatrix& a) {
    Echelon e;
    for (const auto& c : a.cols) e.insert(c);
    return e.rank();
}

std::optional<SVec> solve(const ColMatrix& a, const SVec& y) {
    Echelon e(true);
    for (int j = 0; j < a.ncols(); ++j) e.insert(a.cols[j], j);
    return e.express(y);
}

std::vector<SVec> kernel(const ColMatrix& a) {
    Echelon e(true);
    std::vector<SVec> ker;
    for (int j = 0; j < a.ncols(); ++j) {
        if (auto combo = e.express(a.cols[j])) {
            SVec k = scaled(*combo, -1);
            axpy(k, 1, SVec{{j, Q(1)}});
            ker.push_back(std::move(k));
        } else {
            e.insert(a.cols[j], j);
        }
    }
    return ker;
}

std::optional<SVec> separating_functional(const ColMatrix& a, const SVec& v) {
    ColMatrix ext = a;
    ext.cols.push_back(v);
    ColMatrix t = ext.transpose();
    t.rows = ext.ncols();
    SVec target{{ext.ncols() - 1, Q(1)}};
    return solve(t, target);
}

Q pair(const SVec& phi, const SVec& v) {
    Q s = 0;
    for (const auto& [i, c] : v) {
        auto it = phi.find(i);
        if (it != phi.end()) s += it->second * c;
    }
    return s;
}

}  // namespace gdga
