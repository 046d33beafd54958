#include "gdga/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gdga {

namespace {

std::string at(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError((path.empty() ? std::string("<root>") : path) + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path, "missing field \"" + key + "\"");
    return j.at(key);
}

long long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

std::vector<long long> int_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an integer array");
    std::vector<long long> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], at(path, i)));
    return v;
}

}  // namespace

Q rational_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Q(j.get<long>());
    if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(path, e.what());
    }
}

json rational_to_json(const Q& q) { return to_string(q); }

json class_to_json(const ClassVector& a) {
    if (a.tors.empty()) return a.free;
    return json{{"free", a.free}, {"torsion", a.tors}};
}

ClassVector class_from_json(const json& j, const ClassGroup& g, const std::string& path) {
    std::vector<long long> free, tors;
    if (j.is_array()) {
        free = int_array(j, path);
    } else if (j.is_object()) {
        free = int_array(field(j, "free", path), at(path, "free"));
        if (j.contains("torsion")) tors = int_array(j.at("torsion"), at(path, "torsion"));
    } else {
        fail(path, "expected a class vector");
    }
    try {
        return g.make(free, tors);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

json svec_to_json(const SVec& v) {
    json a = json::array();
    for (const auto& [i, c] : v) a.push_back(json::array({i, to_string(c)}));
    return a;
}

SVec svec_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected a sparse vector [[index, \"p/q\"], ...]");
    SVec v;
    for (std::size_t n = 0; n < j.size(); ++n) {
        const auto& e = j[n];
        if (!e.is_array() || e.size() != 2) fail(at(path, n), "expected [index, \"p/q\"]");
        int idx = static_cast<int>(integer(e[0], at(path, n)));
        if (idx < 0) fail(at(path, n), "negative basis index");
        axpy(v, rational_from_json(e[1], at(path, n)), SVec{{idx, Q(1)}});
    }
    return v;
}

json group_to_json(const ClassGroup& g) {
    json e = json::array();
    for (const auto& q : g.energy()) e.push_back(to_string(q));
    return json{{"rank", g.rank()}, {"torsion", g.torsion()}, {"energy", e},
                {"maslov", g.maslov()}, {"dim_l", g.dim_l()}};
}

ClassGroup group_from_json(const json& j, const std::string& path) {
    int rank = static_cast<int>(integer(field(j, "rank", path), at(path, "rank")));
    std::vector<long long> torsion;
    if (j.contains("torsion")) torsion = int_array(j.at("torsion"), at(path, "torsion"));
    const auto& ej = field(j, "energy", path);
    if (!ej.is_array()) fail(at(path, "energy"), "expected an array");
    std::vector<Q> energy;
    for (std::size_t i = 0; i < ej.size(); ++i)
        energy.push_back(rational_from_json(ej[i], at(at(path, "energy"), i)));
    auto maslov = int_array(field(j, "maslov", path), at(path, "maslov"));
    int dim_l = static_cast<int>(integer(field(j, "dim_l", path), at(path, "dim_l")));
    try {
        return ClassGroup(rank, torsion, energy, maslov, dim_l);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

json element_to_json(const ClassGroup& g, const Element& x) {
    std::vector<std::pair<Cell, SVec>> terms(x.terms.begin(), x.terms.end());
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& p, const auto& q) {
        if (p.first.a != q.first.a) return g.canonical_less(p.first.a, q.first.a);
        return p.first.k < q.first.k;
    });
    json t = json::array();
    for (const auto& [c, v] : terms)
        t.push_back(json{{"class", class_to_json(c.a)}, {"k", c.k}, {"chain", svec_to_json(v)}});
    json j{{"sector", to_string(x.sector)}, {"degree", x.degree}, {"terms", t}};
    if (x.valid_upto) j["valid_upto"] = to_string(*x.valid_upto);
    return j;
}

Element element_from_json(const json& j, const ClassGroup& g, const std::string& path) {
    const auto& s = field(j, "sector", path);
    Element x;
    if (s == "closed") x.sector = Sector::Closed;
    else if (s == "open") x.sector = Sector::Open;
    else fail(at(path, "sector"), "expected \"closed\" or \"open\"");
    x.degree = integer(field(j, "degree", path), at(path, "degree"));
    const auto& t = field(j, "terms", path);
    if (!t.is_array()) fail(at(path, "terms"), "expected an array");
    for (std::size_t n = 0; n < t.size(); ++n) {
        auto p = at(at(path, "terms"), n);
        Cell c{class_from_json(field(t[n], "class", p), g, at(p, "class")),
               static_cast<int>(integer(field(t[n], "k", p), at(p, "k")))};
        if (c.k < 0) fail(at(p, "k"), "negative marked-point count");
        x.add(c, 1, svec_from_json(field(t[n], "chain", p), at(p, "chain")));
    }
    if (j.contains("valid_upto")) x.valid_upto = rational_from_json(j.at("valid_upto"), at(path, "valid_upto"));
    return x;
}

CurveMonoid monoid_from_json(const json& j, const ClassGroup& g, const std::string& path) {
    std::vector<ClassVector> gens;
    const auto& gj = field(j, "generators", path);
    for (std::size_t i = 0; i < gj.size(); ++i)
        gens.push_back(class_from_json(gj[i], g, at(at(path, "generators"), i)));
    return make_monoid(g, gens, rational_from_json(field(j, "cutoff", path), at(path, "cutoff")));
}

json monoid_to_json(const CurveMonoid& m) {
    json gens = json::array();
    for (const auto& a : m.generators) gens.push_back(class_to_json(a));
    return json{{"generators", gens}, {"cutoff", to_string(m.cutoff)}};
}

PerturbedClassModule module_from_json(const json& j, const ClassGroup& g, const CurveMonoid& base,
                                      const std::string& path) {
    std::vector<ClassVector> extra;
    if (j.contains("extra")) {
        const auto& ej = j.at("extra");
        for (std::size_t i = 0; i < ej.size(); ++i)
            extra.push_back(class_from_json(ej[i], g, at(at(path, "extra"), i)));
    }
    Q floor = j.contains("floor") ? rational_from_json(j.at("floor"), at(path, "floor")) : Q(0);
    return make_module(g, base, extra, floor);
}

json module_to_json(const PerturbedClassModule& n) {
    json e = json::array();
    for (const auto& a : n.extra) e.push_back(class_to_json(a));
    return json{{"extra", e}, {"floor", to_string(n.floor)}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write file");
    out << canonical_dump(j) << "\n";
}

std::string canonical_dump(const json& j) { return j.dump(2); }

}  // namespace gdga
