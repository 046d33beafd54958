#include "gdga/gapped.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gdga {

namespace {

void canonical_sort(const ClassGroup& g, std::vector<ClassVector>& v) {
    std::sort(v.begin(), v.end(),
              [&](const ClassVector& a, const ClassVector& b) { return g.canonical_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_contains(const std::vector<ClassVector>& v, const ClassVector& a) {
    return std::find(v.begin(), v.end(), a) != v.end();
}

json class_json(const ClassVector& a) {
    json j = a.free;
    if (!a.tors.empty()) j = json{{"free", a.free}, {"torsion", a.tors}};
    return j;
}

}  // namespace

bool CurveMonoid::contains(const ClassVector& a) const { return sorted_contains(enumerated, a); }

bool CurveMonoid::contains_positive(const ClassVector& a) const {
    return !a.is_zero() && contains(a);
}

bool PerturbedClassModule::contains(const ClassVector& a) const {
    return sorted_contains(enumerated, a);
}

std::vector<ClassVector> monoid_closure(const ClassGroup& g, const std::vector<ClassVector>& gens,
                                        const Q& bound) {
    std::set<ClassVector> seen{g.zero()};
    std::vector<ClassVector> frontier{g.zero()};
    std::vector<ClassVector> usable;
    for (const auto& x : gens)
        if (!x.is_zero() && g.energy_of(x) > 0) usable.push_back(x);
    while (!frontier.empty()) {
        std::vector<ClassVector> next;
        for (const auto& a : frontier)
            for (const auto& x : usable) {
                auto b = g.add(a, x);
                if (g.energy_of(b) <= bound && seen.insert(b).second) next.push_back(b);
            }
        frontier = std::move(next);
    }
    std::vector<ClassVector> out(seen.begin(), seen.end());
    if (bound < 0) out.clear();
    canonical_sort(g, out);
    return out;
}

CurveMonoid make_monoid(const ClassGroup& g, std::vector<ClassVector> generators, const Q& cutoff) {
    CurveMonoid m;
    for (const auto& x : generators) g.check(x);
    m.generators = std::move(generators);
    m.cutoff = cutoff;
    for (const auto& x : m.generators)
        if (!x.is_zero() && g.energy_of(x) <= 0) m.rejected.push_back(x);
    m.enumerated = monoid_closure(g, m.generators, cutoff);
    bool first = true;
    for (const auto& x : m.generators) {
        if (x.is_zero()) continue;
        Q e = g.energy_of(x);
        if (e > 0 && (first || e < m.min_positive)) {
            m.min_positive = e;
            first = false;
        }
    }
    m.hbar = m.min_positive / 2;
    return m;
}

PerturbedClassModule make_module(const ClassGroup& g, const CurveMonoid& base,
                                 std::vector<ClassVector> extra, const Q& floor) {
    PerturbedClassModule n;
    n.base = base;
    n.extra = std::move(extra);
    n.floor = floor;
    std::vector<ClassVector> all = base.enumerated;
    for (const auto& eta : n.extra) {
        g.check(eta);
        Q e = g.energy_of(eta);
        if (e > base.cutoff) continue;
        for (const auto& b : monoid_closure(g, base.generators, base.cutoff - e))
            all.push_back(g.add(eta, b));
    }
    canonical_sort(g, all);
    n.enumerated = std::move(all);
    return n;
}

Report validate_monoid(const ClassGroup& g, const CurveMonoid& m) {
    Report r;
    r.title = "curve monoid";
    auto& c1 = r.add("contains zero");
    c1.evaluated = 1;
    if (!m.contains(g.zero())) c1.fail("0 missing from the enumeration");

    auto& c2 = r.add("closed under addition");
    for (const auto& a : m.enumerated)
        for (const auto& b : m.enumerated) {
            auto s = g.add(a, b);
            if (g.energy_of(s) > m.cutoff) continue;
            ++c2.evaluated;
            if (!m.contains(s))
                c2.fail("sum missing from the enumeration",
                        json{{"a", class_json(a)}, {"b", class_json(b)}});
        }

    auto& c3 = r.add("energy positive away from zero");
    for (const auto& x : m.generators) {
        ++c3.evaluated;
        if (x.is_zero()) continue;
        Q e = g.energy_of(x);
        if (e < 0)
            c3.fail("generator of negative energy",
                    json{{"class", class_json(x)}, {"energy", to_string(e)}});
        else if (e == 0)
            c3.fail("nonzero class of zero energy", json{{"class", class_json(x)}});
    }
    for (const auto& a : m.enumerated) {
        ++c3.evaluated;
        Q e = g.energy_of(a);
        if (e < 0 || (e == 0 && !a.is_zero()))
            c3.fail("enumerated class violates positivity", json{{"class", class_json(a)}});
    }

    auto& c4 = r.add("finitely many classes per energy level");
    std::map<Q, int> per_level;
    for (const auto& a : m.enumerated) ++per_level[g.energy_of(a)];
    c4.evaluated = static_cast<long long>(per_level.size());
    if (!m.rejected.empty())
        c4.fail("non-positive generators make some level infinite",
                json{{"generator", class_json(m.rejected.front())}});
    return r;
}

Report validate_module(const ClassGroup& g, const PerturbedClassModule& n) {
    Report r = validate_monoid(g, n.base);
    r.title = "perturbed class module";
    auto& c0 = r.add("module contains the monoid");
    for (const auto& b : n.base.enumerated) {
        ++c0.evaluated;
        if (!n.contains(b)) c0.fail("monoid class missing", json{{"class", class_json(b)}});
    }
    auto& c1 = r.add("closed under adding monoid classes");
    for (const auto& eta : n.enumerated)
        for (const auto& b : n.base.enumerated) {
            auto s = g.add(eta, b);
            if (g.energy_of(s) > n.base.cutoff) continue;
            ++c1.evaluated;
            if (!n.contains(s))
                c1.fail("sum missing from the enumeration",
                        json{{"eta", class_json(eta)}, {"beta", class_json(b)}});
        }
    auto& c2 = r.add("energy bounded below by the floor");
    for (const auto& eta : n.extra) {
        ++c2.evaluated;
        Q e = g.energy_of(eta);
        if (e < -n.floor)
            c2.fail("extra generator below the floor",
                    json{{"class", class_json(eta)}, {"energy", to_string(e)},
                         {"floor", to_string(-n.floor)}});
    }
    for (const auto& eta : n.enumerated) {
        ++c2.evaluated;
        if (g.energy_of(eta) < -n.floor)
            c2.fail("enumerated class below the floor", json{{"class", class_json(eta)}});
    }
    return r;
}

EnergyLevels sort_energy_levels(const ClassGroup& g, std::vector<ClassVector> classes) {
    canonical_sort(g, classes);
    EnergyLevels out;
    out.classes = std::move(classes);
    for (std::size_t i = 0; i < out.classes.size(); ++i) {
        Q e = g.energy_of(out.classes[i]);
        if (out.levels.empty() || out.levels.back() != e) {
            out.levels.push_back(e);
            out.last_index.push_back(static_cast<int>(i));
        } else {
            out.last_index.back() = static_cast<int>(i);
        }
    }
    return out;
}

Element gapped_add(const Element& x, const Element& y) {
    if (x.degree != y.degree && !x.is_zero() && !y.is_zero())
        throw std::invalid_argument("gapped_add: degree mismatch");
    return x + y;
}

Element gapped_scale(const Q& c, const Element& x) { return c * x; }

Element gapped_truncate(const ClassGroup& g, const Element& x, const Q& cutoff) {
    return truncate(g, x, cutoff);
}

std::vector<ClassVector> gapping_violations(const Element& x,
                                            const std::vector<ClassVector>& allowed) {
    std::vector<ClassVector> bad;
    for (const auto& a : x.classes())
        if (!sorted_contains(allowed, a)) bad.push_back(a);
    return bad;
}

}  // namespace gdga
