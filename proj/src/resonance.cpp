#include "qav/resonance.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace qav {

namespace {

std::string basis_key(const std::vector<std::vector<Rat>>& basis) {
    std::ostringstream os;
    os << basis.size() << ":";
    for (const auto& v : basis) {
        for (const auto& x : v) os << rat_str(x) << ",";
        os << "|";
    }
    return os.str();
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<Rat> sigma_row(const Incidence& inc, int vi, int r) {
    std::vector<Rat> row(r, Rat(0));
    for (int j : inc.vertices[vi].branch_comps) row[j] = 1;
    return row;
}

// Rows of the exact condition "a wedge b = 0" in the Orlik-Solomon degree-2
// part: for each vertex P and line j through P, sigma_P(a) b_j - a_j sigma_P(b).
QMatrix wedge_matrix(const Incidence& inc, int r, const std::vector<Rat>& a) {
    QMatrix m;
    for (const Vertex& v : inc.vertices) {
        Rat sa = 0;
        for (int i : v.branch_comps) sa += a[i];
        for (int j : v.branch_comps) {
            std::vector<Rat> row(r, Rat(0));
            for (int i : v.branch_comps) row[i] -= a[j];
            row[j] += sa;
            m.push_back(std::move(row));
        }
    }
    return m;
}

void check_arrangement(const Curve& curve) {
    if (curve.mode != CurveMode::Lines)
        throw UnsupportedError("resonance computations require a line arrangement");
}

// Echelon span with membership tests, used by the (L, T) sweep.
struct Span {
    int r = 0;
    std::vector<std::vector<Rat>> rows;  // echelon, unit pivots, sorted by pivot
    std::vector<int> piv;

    int rank() const { return static_cast<int>(rows.size()); }

    std::vector<Rat> reduce(std::vector<Rat> v) const {
        for (size_t i = 0; i < rows.size(); ++i) {
            Rat f = v[piv[i]];
            if (f == 0) continue;
            for (int j = piv[i]; j < r; ++j) v[j] -= f * rows[i][j];
        }
        return v;
    }

    static bool is_zero(const std::vector<Rat>& v) {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }

    // inserts an already-reduced nonzero vector; returns the insert position
    size_t insert_reduced(std::vector<Rat> red) {
        int lead = 0;
        while (red[lead] == 0) ++lead;
        Rat inv = 1 / red[lead];
        for (int j = lead; j < r; ++j) red[j] *= inv;
        size_t pos = 0;
        while (pos < rows.size() && piv[pos] < lead) ++pos;
        rows.insert(rows.begin() + pos, std::move(red));
        piv.insert(piv.begin() + pos, lead);
        return pos;
    }

    void erase_at(size_t pos) {
        rows.erase(rows.begin() + pos);
        piv.erase(piv.begin() + pos);
    }
};

struct Candidate {
    std::vector<int> lines;     // L
    std::vector<int> excluded;  // eligible vertices outside T
    std::vector<std::vector<Rat>> basis;
    std::string key;
};

struct Sweep {
    const Incidence& inc;
    int r;
    std::vector<int> lset;  // current L
    std::vector<int> vl;    // eligible vertices of L
    Span span;
    std::vector<int> excl;
    std::set<std::string> seen;
    std::vector<Candidate> out;

    void leaf() {
        // saturation: no coordinate or sigma functional outside the defining
        // set may vanish identically on W
        for (int j : lset) {
            std::vector<Rat> e(r, Rat(0));
            e[j] = 1;
            if (Span::is_zero(span.reduce(std::move(e)))) return;
        }
        for (int q : excl)
            if (Span::is_zero(span.reduce(sigma_row(inc, q, r)))) return;

        std::vector<std::vector<Rat>> basis;
        if (span.rank() == 0) {
            for (int j = 0; j < r; ++j) {
                std::vector<Rat> e(r, Rat(0));
                e[j] = 1;
                basis.push_back(std::move(e));
            }
        } else {
            basis = rank_nullspace(span.rows).nullspace;
        }
        std::string key = basis_key(basis);
        if (!seen.insert(key).second) return;
        out.push_back({lset, excl, std::move(basis), std::move(key)});
    }

    void rec(size_t idx) {
        if (r - span.rank() < 2) return;
        if (idx == vl.size()) {
            leaf();
            return;
        }
        std::vector<Rat> red = span.reduce(sigma_row(inc, vl[idx], r));
        if (Span::is_zero(red)) {
            // already vanishing on W: forced into T
            rec(idx + 1);
            return;
        }
        excl.push_back(vl[idx]);
        rec(idx + 1);
        excl.pop_back();
        size_t pos = span.insert_reduced(std::move(red));
        rec(idx + 1);
        span.erase_at(pos);
    }
};

}  // namespace

long aomoto_h1(const Curve& curve, const Incidence& inc, const std::vector<Rat>& a) {
    check_arrangement(curve);
    const int r = curve.r();
    if (static_cast<int>(a.size()) != r)
        throw ValidationError("weight vector must have one entry per line");
    bool zero = true;
    for (const auto& x : a) zero = zero && x == 0;
    if (zero) throw ValidationError("aomoto_h1 requires a nonzero weight vector");
    if (inc.vertices.empty()) return 0;
    auto rn = rank_nullspace(wedge_matrix(inc, r, a));
    return static_cast<long>(rn.nullspace.size()) - 1;
}

std::vector<ResonanceComponent> resonance_components(const Curve& curve, const Incidence& inc,
                                                     uint64_t seed) {
    check_arrangement(curve);
    const int r = curve.r();
    if (r > 16) throw UnsupportedError("resonance sweep limited to 16 lines");

    std::vector<Candidate> candidates;
    {
        Sweep sw{inc, r, {}, {}, Span{r, {}, {}}, {}, {}, {}};
        for (uint32_t mask = 0; mask < (1u << r); ++mask) {
            if (std::popcount(mask) < 2) continue;
            sw.lset = mask_components(mask);
            sw.vl.clear();
            for (size_t vi = 0; vi < inc.vertices.size(); ++vi)
                if (inc.vertices[vi].induced_mult(mask) >= 2)
                    sw.vl.push_back(static_cast<int>(vi));
            sw.span = Span{r, {}, {}};
            for (int j = 0; j < r; ++j) {
                if (mask >> j & 1u) continue;
                std::vector<Rat> e(r, Rat(0));
                e[j] = 1;
                sw.span.insert_reduced(std::move(e));
            }
            sw.excl.clear();
            sw.rec(0);
        }
        candidates = std::move(sw.out);
    }

    std::map<std::string, ResonanceComponent> comps;
    for (const Candidate& cand : candidates) {
        // seeded generic sample a in W avoiding the functionals that are not
        // identically zero on W
        std::mt19937_64 rng(seed ^ fnv1a(cand.key));
        std::uniform_int_distribution<long> dist(-(1l << 20), 1l << 20);
        std::vector<Rat> a;
        bool found = false;
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
            a.assign(r, Rat(0));
            for (const auto& v : cand.basis) {
                long c = 0;
                while (c == 0) c = dist(rng);
                for (int j = 0; j < r; ++j) a[j] += Rat(c) * v[j];
            }
            found = true;
            for (int j : cand.lines) found = found && a[j] != 0;
            for (int q : cand.excluded) {
                Rat s = 0;
                for (int i : inc.vertices[q].branch_comps) s += a[i];
                found = found && s != 0;
            }
        }
        if (!found) throw std::logic_error("resonance sampling exhausted its retries");

        QMatrix m = wedge_matrix(inc, r, a);
        if (m.empty()) continue;
        bool isotropic = true;
        for (const auto& w : cand.basis)
            for (const auto& row : m) {
                Rat v = 0;
                for (int j = 0; j < r; ++j) v += row[j] * w[j];
                isotropic = isotropic && v == 0;
            }
        if (!isotropic) continue;

        auto rn = rank_nullspace(std::move(m));
        if (rn.nullspace.size() < 2) continue;
        ResonanceComponent c;
        c.basis = std::move(rn.nullspace);
        c.dim = static_cast<int>(c.basis.size());
        c.canon = basis_key(c.basis);
        for (int j = 0; j < r; ++j) {
            bool nz = false;
            for (const auto& v : c.basis) nz = nz || v[j] != 0;
            if (nz) c.lines.push_back(j);
        }
        for (size_t vi = 0; vi < inc.vertices.size(); ++vi) {
            bool vanish = true;
            for (const auto& v : c.basis) {
                Rat s = 0;
                for (int i : inc.vertices[vi].branch_comps) s += v[i];
                vanish = vanish && s == 0;
            }
            if (vanish) c.vertices.push_back(static_cast<int>(vi));
        }
        comps.emplace(c.canon, std::move(c));
    }

    // drop any subspace contained in another (distinct components only meet
    // at the origin, so this is a guard, not an expected case)
    std::vector<ResonanceComponent> result;
    for (auto& [key, c] : comps) {
        bool maximal = true;
        for (auto& [okey, o] : comps) {
            if (okey == key || o.dim < c.dim) continue;
            Span sp{static_cast<int>(c.basis[0].size()), {}, {}};
            for (const auto& v : o.basis) {
                auto red = sp.reduce(v);
                if (!Span::is_zero(red)) sp.insert_reduced(std::move(red));
            }
            bool inside = true;
            for (const auto& v : c.basis) inside = inside && Span::is_zero(sp.reduce(v));
            if (inside && o.dim > c.dim) maximal = false;
        }
        if (maximal) result.push_back(std::move(c));
    }
    std::sort(result.begin(), result.end(), [](const ResonanceComponent& x,
                                               const ResonanceComponent& y) {
        if (x.dim != y.dim) return x.dim > y.dim;
        return x.canon < y.canon;
    });
    return result;
}

Thm54Report verify_thm54(const Analysis& an, uint64_t seed) {
    check_arrangement(an.curve);
    Thm54Report rep;
    std::vector<ResonanceComponent> rcomps = resonance_components(an.curve, an.inc, seed);
    rep.n_resonance = static_cast<int>(rcomps.size());
    std::map<std::string, const ResonanceComponent*> by_key;
    for (const auto& c : rcomps) by_key.emplace(c.canon, &c);

    std::set<std::string> matched;
    for (const TorusComponent& comp : an.components) {
        bool at_identity = true;
        for (const auto& b : comp.beta) at_identity = at_identity && mod1(b) == 0;
        if (!at_identity || comp.dim < 2) continue;
        // only irreducible components of the variety count: skip subtori that
        // another listed component absorbs
        bool maximal = true;
        for (const TorusComponent& other : an.components)
            if (other.canon != comp.canon && other.dim > comp.dim &&
                component_contains_subtorus(other, comp))
                maximal = false;
        if (!maximal) continue;
        ++rep.n_char;

        QMatrix rows(comp.rows.rows, std::vector<Rat>(comp.r));
        for (int i = 0; i < comp.rows.rows; ++i)
            for (int j = 0; j < comp.r; ++j) rows[i][j] = Rat(comp.rows.at(i, j));
        auto tangent = rank_nullspace(std::move(rows));
        std::string key = basis_key(tangent.nullspace);

        std::ostringstream who;
        who << "component " << comp.canon;
        if (comp.depth != comp.dim - 1) {
            rep.ok = false;
            rep.details.push_back(who.str() + ": depth " + std::to_string(comp.depth) +
                                  " != dim - 1 = " + std::to_string(comp.dim - 1));
        }
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            rep.ok = false;
            rep.details.push_back(who.str() + ": tangent space is not a resonance component");
        } else {
            matched.insert(key);
        }
    }
    for (const auto& c : rcomps)
        if (!matched.count(c.canon)) {
            rep.ok = false;
            rep.details.push_back("resonance component " + c.canon +
                                  " has no characteristic component through the identity");
        }
    return rep;
}

}  // namespace qav
