#include "gdga/backend.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "gdga/io.hpp"

namespace gdga {

int UniformBackend::dim(Sector s, const ClassVector&, int k) const {
    return k < 0 ? 0 : static_cast<int>(fiber_degrees(s).size());
}

int UniformBackend::degree(Sector s, const ClassVector&, int, int i) const {
    return fiber_degrees(s).at(i);
}

std::vector<int> UniformBackend::k_candidates(Sector s, const ClassVector& a, long long state) const {
    std::set<int> ks;
    long long mu = group_.maslov_of(a);
    for (int D : fiber_degrees(s)) {
        long long k = s == Sector::Closed ? D - state - dim_l() - mu + 1 : D - state - mu;
        if (k >= 0) ks.insert(static_cast<int>(k));
    }
    return {ks.begin(), ks.end()};
}

SVec UniformBackend::face(Sector, const ClassVector&, int, int, int i) const { return {{i, Q(1)}}; }

// ---------------------------------------------------------------- torus

TorusBackend::TorusBackend(ClassGroup g) : UniformBackend(std::move(g)) {
    m_ = group_.dim_l();
    if (m_ > 16) throw std::invalid_argument("torus backend supports m <= 16");
    top_ = (1 << m_) - 1;
    for (int S = 0; S <= top_; ++S) closed_deg_.push_back(std::popcount(static_cast<unsigned>(S)));
    open_deg_ = {0};
}

const std::vector<int>& TorusBackend::fiber_degrees(Sector s) const {
    return s == Sector::Closed ? closed_deg_ : open_deg_;
}

SVec TorusBackend::d(Sector, const ClassVector&, int, int) const { return {}; }

SVec TorusBackend::pont(const Cell&, int, const Cell&, int) const { return {{0, Q(1)}}; }

// theta_S is Poincare dual to omega_{S^c}; the product is the wedge of the duals.
SVec TorusBackend::circ_closed(int, const Cell&, int S, const Cell&, int T) const {
    int A = ~S & top_, B = ~T & top_;
    if (A & B) return {};
    int inversions = 0;
    for (int a = 0; a < m_; ++a)
        if (A >> a & 1)
            for (int b = 0; b < a; ++b)
                if (B >> b & 1) ++inversions;
    return {{S & T, Q(sign_of(inversions))}};
}

SVec TorusBackend::circ_open(int, const Cell&, int, const Cell&, int T) const {
    if (T != top_) return {};
    return {{0, Q(1)}};
}

SVec TorusBackend::anomaly(const Cell&, int S) const {
    if (S != top_) return {};
    return {{0, Q(sign_of(m_ + 1))}};
}

SVec TorusBackend::unit() const { return {{0, Q(1)}}; }
SVec TorusBackend::star1() const { return {{0, Q(1)}}; }
SVec TorusBackend::loop2() const { return {{top_, Q(1)}}; }
SVec TorusBackend::fundamental() const { return {{top_, Q(1)}}; }

json TorusBackend::describe() const { return json{{"kind", "torus"}, {"m", m_}}; }

// ---------------------------------------------------------------- fibers

SVec Fiber::product(int i, int j) const {
    if (i == 0) return {{j, Q(1)}};
    if (j == 0) return {{i, Q(1)}};
    auto it = mult.find({i, j});
    return it == mult.end() ? SVec{} : it->second;
}

Fiber Fiber::point() { return Fiber{"point", {0}, {SVec{}}, {}}; }

Fiber Fiber::sphere() { return Fiber{"sphere", {0, 1}, {SVec{}, SVec{}}, {}}; }

Fiber Fiber::acyclic() {
    return Fiber{"acyclic", {0, 1, 2}, {SVec{}, SVec{}, SVec{{1, Q(1)}}}, {}};
}

Fiber Fiber::contractible() { return Fiber{"contractible", {0, 1}, {SVec{}, SVec{{0, Q(1)}}}, {}}; }

Fiber Fiber::by_name(const std::string& name) {
    if (name == "point") return point();
    if (name == "sphere") return sphere();
    if (name == "acyclic") return acyclic();
    if (name == "contractible") return contractible();
    throw std::invalid_argument("unknown fiber \"" + name + "\"");
}

// ---------------------------------------------------------------- group ring

GroupRingBackend::GroupRingBackend(ClassGroup g, Fiber fiber)
    : UniformBackend(std::move(g)), fiber_(std::move(fiber)) {
    for (int D : fiber_.degrees) closed_deg_.push_back(D + group_.dim_l());
}

const std::vector<int>& GroupRingBackend::fiber_degrees(Sector s) const {
    return s == Sector::Closed ? closed_deg_ : fiber_.degrees;
}

SVec GroupRingBackend::d(Sector, const ClassVector&, int, int i) const { return fiber_.d.at(i); }

SVec GroupRingBackend::pont(const Cell&, int i, const Cell&, int j) const {
    return fiber_.product(i, j);
}

SVec GroupRingBackend::circ_closed(int, const Cell&, int i, const Cell&, int j) const {
    return fiber_.product(i, j);
}

SVec GroupRingBackend::circ_open(int, const Cell&, int i, const Cell&, int j) const {
    return fiber_.product(i, j);
}

SVec GroupRingBackend::anomaly(const Cell&, int i) const {
    return {{i, Q(sign_of(closed_deg_.at(i) + 1))}};
}

SVec GroupRingBackend::unit() const { return {{0, Q(1)}}; }
SVec GroupRingBackend::star1() const { return {{0, Q(1)}}; }
SVec GroupRingBackend::loop2() const { return {{0, Q(1)}}; }
SVec GroupRingBackend::fundamental() const { return {{0, Q(1)}}; }

json GroupRingBackend::describe() const { return json{{"kind", "groupring"}, {"fiber", fiber_.name}}; }

// ---------------------------------------------------------------- sign flip

SignFlipBackend::SignFlipBackend(BackendPtr base, Cell c1, int i1, Cell c2, int i2)
    : base_(std::move(base)), c1_(std::move(c1)), c2_(std::move(c2)), i1_(i1), i2_(i2) {}

SVec SignFlipBackend::pont(const Cell& c1, int i1, const Cell& c2, int i2) const {
    SVec r = base_->pont(c1, i1, c2, i2);
    if (c1 == c1_ && i1 == i1_ && c2 == c2_ && i2 == i2_) r = scaled(r, -1);
    return r;
}

json SignFlipBackend::describe() const {
    return json{{"kind", "signflip"},
                {"base", base_->describe()},
                {"entry", {{"a1", class_to_json(c1_.a)}, {"k1", c1_.k}, {"i1", i1_},
                           {"a2", class_to_json(c2_.a)}, {"k2", c2_.k}, {"i2", i2_}}}};
}

// ---------------------------------------------------------------- table

namespace {

Sector sector_from(const json& j, const std::string& path) {
    if (j == "closed") return Sector::Closed;
    if (j == "open") return Sector::Open;
    throw ParseError(path + ": expected \"closed\" or \"open\"");
}

std::vector<SVec> columns_from_triplets(const json& j, int ncols, const std::string& path) {
    std::vector<SVec> cols(ncols);
    if (!j.is_array()) throw ParseError(path + ": expected triplets [row, col, \"p/q\"]");
    for (std::size_t n = 0; n < j.size(); ++n) {
        const auto& t = j[n];
        auto p = path + "[" + std::to_string(n) + "]";
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
            throw ParseError(p + ": expected [row, col, \"p/q\"]");
        int row = t[0].get<int>(), col = t[1].get<int>();
        if (col < 0 || col >= ncols || row < 0) throw ParseError(p + ": index out of range");
        axpy(cols[col], rational_from_json(t[2], p), SVec{{row, Q(1)}});
    }
    return cols;
}

json triplets(const std::vector<SVec>& cols) {
    json t = json::array();
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) t.push_back(json::array({r, static_cast<int>(c), to_string(v)}));
    return t;
}

}  // namespace

TableBackend::TableBackend(ClassGroup g, const json& spec) : group_(std::move(g)), spec_(spec) {
    const auto& cells = spec.at("cells");
    for (std::size_t n = 0; n < cells.size(); ++n) {
        const auto& c = cells[n];
        auto p = "cells[" + std::to_string(n) + "]";
        Sector s = sector_from(c.at("sector"), p + ".sector");
        auto a = class_from_json(c.at("class"), group_, p + ".class");
        int k = c.at("k").get<int>();
        CellData data;
        for (const auto& d : c.at("degrees")) data.degrees.push_back(d.get<int>());
        int dim = static_cast<int>(data.degrees.size());
        data.d = c.contains("d") ? columns_from_triplets(c.at("d"), dim, p + ".d") : std::vector<SVec>(dim);
        cells_[{s, a, k}] = std::move(data);
        classes_.insert(a);
        kmax_ = std::max(kmax_, k);
    }
    // faces need the source cell dimension, so read them after all cells are known
    for (std::size_t n = 0; n < cells.size(); ++n) {
        const auto& c = cells[n];
        if (!c.contains("faces")) continue;
        auto p = "cells[" + std::to_string(n) + "]";
        Sector s = sector_from(c.at("sector"), p);
        auto a = class_from_json(c.at("class"), group_, p);
        int k = c.at("k").get<int>();
        int src = dim(s, a, k - 1);
        auto& data = cells_[{s, a, k}];
        for (std::size_t j = 0; j < c.at("faces").size(); ++j)
            data.faces.push_back(
                columns_from_triplets(c.at("faces")[j], src, p + ".faces[" + std::to_string(j) + "]"));
    }
    auto read_bi = [&](const char* key, std::map<BiKey, SVec>& into, bool has_pos) {
        if (!spec.contains(key)) return;
        const auto& arr = spec.at(key);
        for (std::size_t n = 0; n < arr.size(); ++n) {
            const auto& e = arr[n];
            auto p = std::string(key) + "[" + std::to_string(n) + "]";
            BiKey bk{has_pos ? e.at("pos").get<int>() : 0,
                     class_from_json(e.at("a1"), group_, p + ".a1"),
                     e.at("k1").get<int>(),
                     e.at("i1").get<int>(),
                     class_from_json(e.at("a2"), group_, p + ".a2"),
                     e.at("k2").get<int>(),
                     e.at("i2").get<int>()};
            into[bk] = svec_from_json(e.at("out"), p + ".out");
        }
    };
    read_bi("pont", pont_, false);
    read_bi("circL", circ_closed_, true);
    read_bi("circO", circ_open_, true);
    if (spec.contains("anomaly"))
        for (std::size_t n = 0; n < spec.at("anomaly").size(); ++n) {
            const auto& e = spec.at("anomaly")[n];
            auto p = "anomaly[" + std::to_string(n) + "]";
            anomaly_[{class_from_json(e.at("class"), group_, p + ".class"), e.at("k").get<int>(),
                      e.at("i").get<int>()}] = svec_from_json(e.at("out"), p + ".out");
        }
    auto special = [&](const char* key) {
        return spec.contains(key) ? svec_from_json(spec.at(key), key) : SVec{};
    };
    unit_ = special("unit");
    star1_ = special("star1");
    loop2_ = special("loop2");
    fundamental_ = special("fundamental");
}

bool TableBackend::covers(const ClassVector& a, int k) const {
    return classes_.count(a) && k <= kmax_;
}

const TableBackend::CellData* TableBackend::cell(Sector s, const ClassVector& a, int k) const {
    auto it = cells_.find({s, a, k});
    return it == cells_.end() ? nullptr : &it->second;
}

int TableBackend::dim(Sector s, const ClassVector& a, int k) const {
    auto c = cell(s, a, k);
    return c ? static_cast<int>(c->degrees.size()) : 0;
}

int TableBackend::degree(Sector s, const ClassVector& a, int k, int i) const {
    return cell(s, a, k)->degrees.at(i);
}

std::vector<int> TableBackend::k_candidates(Sector s, const ClassVector& a, long long state) const {
    std::vector<int> ks;
    long long mu = group_.maslov_of(a);
    for (const auto& [key, data] : cells_) {
        if (std::get<0>(key) != s || std::get<1>(key) != a) continue;
        int k = std::get<2>(key);
        long long D = s == Sector::Closed ? closed_backend_degree(state, dim_l(), mu, k)
                                          : open_backend_degree(state, mu, k);
        if (std::find(data.degrees.begin(), data.degrees.end(), D) != data.degrees.end())
            ks.push_back(k);
    }
    return ks;
}

SVec TableBackend::d(Sector s, const ClassVector& a, int k, int i) const {
    auto c = cell(s, a, k);
    return c ? c->d.at(i) : SVec{};
}

SVec TableBackend::face(Sector s, const ClassVector& a, int k, int j, int i) const {
    auto c = cell(s, a, k);
    if (!c || j >= static_cast<int>(c->faces.size())) return {};
    return c->faces[j].at(i);
}

SVec TableBackend::pont(const Cell& c1, int i1, const Cell& c2, int i2) const {
    auto it = pont_.find({0, c1.a, c1.k, i1, c2.a, c2.k, i2});
    return it == pont_.end() ? SVec{} : it->second;
}

SVec TableBackend::circ_closed(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const {
    auto it = circ_closed_.find({pos, c1.a, c1.k, i1, c2.a, c2.k, i2});
    return it == circ_closed_.end() ? SVec{} : it->second;
}

SVec TableBackend::circ_open(int pos, const Cell& c1, int i1, const Cell& c2, int i2) const {
    auto it = circ_open_.find({pos, c1.a, c1.k, i1, c2.a, c2.k, i2});
    return it == circ_open_.end() ? SVec{} : it->second;
}

SVec TableBackend::anomaly(const Cell& c, int i) const {
    auto it = anomaly_.find({c.a, c.k, i});
    return it == anomaly_.end() ? SVec{} : it->second;
}

// ---------------------------------------------------------------- loading

BackendPtr load_backend(const json& spec, const ClassGroup& g) {
    if (!spec.is_object() || !spec.contains("kind")) throw ParseError("backend: missing field \"kind\"");
    auto kind = spec.at("kind").get<std::string>();
    if (kind == "torus") {
        if (spec.contains("m") && spec.at("m").get<int>() != g.dim_l())
            throw ParseError("backend.m: torus dimension must equal dim_l");
        return std::make_shared<TorusBackend>(g);
    }
    if (kind == "groupring")
        return std::make_shared<GroupRingBackend>(g, Fiber::by_name(spec.value("fiber", "point")));
    if (kind == "signflip") {
        auto base = load_backend(spec.at("base"), g);
        const auto& e = spec.at("entry");
        return std::make_shared<SignFlipBackend>(
            base, Cell{class_from_json(e.at("a1"), g, "entry.a1"), e.at("k1").get<int>()},
            e.at("i1").get<int>(), Cell{class_from_json(e.at("a2"), g, "entry.a2"), e.at("k2").get<int>()},
            e.at("i2").get<int>());
    }
    if (kind == "table") return std::make_shared<TableBackend>(g, spec);
    throw ParseError("backend.kind: unknown backend kind \"" + kind + "\"");
}

json export_table(const Backend& b, const std::vector<ClassVector>& classes, int kmax) {
    std::set<ClassVector> inside(classes.begin(), classes.end());
    const auto& g = b.group();
    auto in_window = [&](const ClassVector& a, int k) { return inside.count(a) && k >= 0 && k <= kmax; };
    json j{{"kind", "table"}};
    json cells = json::array();
    std::vector<std::pair<Sector, Cell>> all;
    for (Sector s : {Sector::Closed, Sector::Open})
        for (const auto& a : classes)
            for (int k = 0; k <= kmax; ++k) {
                int n = b.dim(s, a, k);
                if (!n) continue;
                all.push_back({s, Cell{a, k}});
                json c{{"sector", to_string(s)}, {"class", class_to_json(a)}, {"k", k}};
                json deg = json::array();
                std::vector<SVec> d;
                for (int i = 0; i < n; ++i) {
                    deg.push_back(b.degree(s, a, k, i));
                    d.push_back(b.d(s, a, k, i));
                }
                c["degrees"] = deg;
                c["d"] = triplets(d);
                if (k >= 1) {
                    json faces = json::array();
                    for (int f = 0; f <= k; ++f) {
                        std::vector<SVec> cols;
                        for (int i = 0; i < b.dim(s, a, k - 1); ++i) cols.push_back(b.face(s, a, k, f, i));
                        faces.push_back(triplets(cols));
                    }
                    c["faces"] = faces;
                }
                cells.push_back(c);
            }
    j["cells"] = cells;
    json pont = json::array(), circL = json::array(), circO = json::array(), anomaly = json::array();
    auto entry = [&](const Cell& c1, int i1, const Cell& c2, int i2, const SVec& out) {
        return json{{"a1", class_to_json(c1.a)}, {"k1", c1.k}, {"i1", i1},
                    {"a2", class_to_json(c2.a)}, {"k2", c2.k}, {"i2", i2}, {"out", svec_to_json(out)}};
    };
    for (const auto& [s1, c1] : all)
        for (const auto& [s2, c2] : all) {
            auto a = g.add(c1.a, c2.a);
            int n1 = b.dim(s1, c1.a, c1.k), n2 = b.dim(s2, c2.a, c2.k);
            if (s1 == Sector::Open && s2 == Sector::Open && in_window(a, c1.k + c2.k))
                for (int i1 = 0; i1 < n1; ++i1)
                    for (int i2 = 0; i2 < n2; ++i2)
                        if (auto out = b.pont(c1, i1, c2, i2); !out.empty())
                            pont.push_back(entry(c1, i1, c2, i2, out));
            if (s2 != Sector::Closed || !in_window(a, c1.k + c2.k - 1)) continue;
            for (int pos = 1; pos <= c1.k; ++pos)
                for (int i1 = 0; i1 < n1; ++i1)
                    for (int i2 = 0; i2 < n2; ++i2) {
                        auto out = s1 == Sector::Closed ? b.circ_closed(pos, c1, i1, c2, i2)
                                                        : b.circ_open(pos, c1, i1, c2, i2);
                        if (out.empty()) continue;
                        auto e = entry(c1, i1, c2, i2, out);
                        e["pos"] = pos;
                        (s1 == Sector::Closed ? circL : circO).push_back(e);
                    }
        }
    for (const auto& [s, c] : all) {
        if (s != Sector::Closed) continue;
        for (int i = 0; i < b.dim(s, c.a, c.k); ++i)
            if (auto out = b.anomaly(c, i); !out.empty())
                anomaly.push_back(json{{"class", class_to_json(c.a)}, {"k", c.k}, {"i", i}, {"out", svec_to_json(out)}});
    }
    j["pont"] = pont;
    j["circL"] = circL;
    j["circO"] = circO;
    j["anomaly"] = anomaly;
    j["unit"] = svec_to_json(b.unit());
    j["star1"] = svec_to_json(b.star1());
    j["loop2"] = svec_to_json(b.loop2());
    j["fundamental"] = svec_to_json(b.fundamental());
    return j;
}

}  // namespace gdga
