#include "qav/charvariety.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qav {

std::string component_canonical_key(const IntMatrix& rows, const std::vector<Rat>& beta) {
    auto [h, u] = hermite_row(rows);
    std::vector<Rat> hb(rows.rows, Rat(0));
    for (int i = 0; i < rows.rows; ++i) {
        for (int j = 0; j < rows.rows; ++j) hb[i] += Rat(u.at(i, j)) * beta[j];
        hb[i] = mod1(hb[i]);
    }
    std::ostringstream os;
    os << rows.rows << "x" << rows.cols << ":";
    for (int i = 0; i < h.rows; ++i)
        for (int j = 0; j < h.cols; ++j) os << h.at(i, j).get_str() << ",";
    os << "|";
    for (const auto& x : hb) os << rat_str(x) << ",";
    return os.str();
}

TorusComponent component_from_face(const Curve& curve, const QFace& face, int h1) {
    if (h1 < 1) throw std::invalid_argument("component_from_face requires h1 >= 1");
    const int r = curve.r();
    const int rp = static_cast<int>(face.comps.size());

    // integerize and saturate the coefficient rows
    IntMatrix a(static_cast<int>(face.a.size()), rp);
    for (size_t i = 0; i < face.a.size(); ++i) {
        Int l = 1;
        for (int j = 0; j < rp; ++j) l = lcm_int(l, face.a[i][j].get_den());
        for (int j = 0; j < rp; ++j) a.at(static_cast<int>(i), j) = Int(face.a[i][j] * Rat(l));
    }
    IntMatrix sat = saturate_row_lattice(a);

    TorusComponent comp;
    comp.r = r;
    comp.support = face.comps;
    comp.prov_mask = face.mask;
    comp.dim = face.dim;
    comp.depth = h1;
    {
        std::ostringstream os;
        for (auto& [v, c] : face.s) os << v << ":" << c << ";";
        comp.prov_face = os.str();
    }

    const int offrows = r - rp;
    comp.rows = IntMatrix(sat.rows + offrows, r);
    comp.beta.assign(sat.rows + offrows, Rat(0));
    for (int i = 0; i < sat.rows; ++i) {
        Rat bsum = 0;
        for (int j = 0; j < rp; ++j) {
            comp.rows.at(i, face.comps[j]) = sat.at(i, j);
            bsum += Rat(sat.at(i, j)) * face.witness[j];
        }
        comp.beta[i] = mod1(bsum);
    }
    int row = sat.rows;
    for (int j = 0; j < r; ++j) {
        if (face.mask >> j & 1u) continue;
        comp.rows.at(row, j) = 1;
        comp.beta[row] = 0;
        ++row;
    }
    comp.canon = component_canonical_key(comp.rows, comp.beta);
    return comp;
}

bool component_contains(const TorusComponent& comp, const CharacterExp& omega) {
    for (int s = 0; s < comp.rows.rows; ++s) {
        Rat v = -comp.beta[s];
        for (int j = 0; j < comp.r; ++j)
            if (comp.rows.at(s, j) != 0) v += Rat(comp.rows.at(s, j)) * omega[j];
        if (v.get_den() != 1) return false;  // not an integer => congruence fails
    }
    return true;
}

bool component_contains_subtorus(const TorusComponent& outer, const TorusComponent& inner) {
    if (outer.r != inner.r) return false;
    // the outer congruence rows must vanish on the inner coset's direction
    // space, i.e. lie in the rational row span of the inner rows
    QMatrix rows(inner.rows.rows, std::vector<Rat>(inner.r));
    std::vector<Rat> beta(inner.rows.rows);
    for (int i = 0; i < inner.rows.rows; ++i) {
        for (int j = 0; j < inner.r; ++j) rows[i][j] = Rat(inner.rows.at(i, j));
        beta[i] = inner.beta[i];
    }
    QMatrix red = rows;
    std::vector<int> pivots = rref(red);
    for (int s = 0; s < outer.rows.rows; ++s) {
        std::vector<Rat> v(outer.r);
        for (int j = 0; j < outer.r; ++j) v[j] = Rat(outer.rows.at(s, j));
        for (size_t i = 0; i < pivots.size(); ++i) {
            Rat f = v[pivots[i]];
            if (f == 0) continue;
            for (int j = 0; j < outer.r; ++j) v[j] -= f * red[i][j];
        }
        for (const Rat& x : v)
            if (x != 0) return false;
    }
    // and the outer congruences must hold at one (hence every) inner point
    auto sol = solve_affine(rows, beta, inner.r);
    if (!sol) return false;
    return component_contains(outer, sol->particular);
}

namespace {

CharacterExp conjugate_character(const CharacterExp& omega) {
    CharacterExp conj(omega.size());
    for (size_t j = 0; j < omega.size(); ++j) conj[j] = mod1(Rat(0) - omega[j]);
    return conj;
}

}  // namespace

long depth_at(const std::vector<TorusComponent>& comps, const CharacterExp& omega) {
    bool trivial = true;
    for (const auto& w : omega) trivial = trivial && mod1(w) == 0;
    if (trivial)
        throw ValidationError("depth of the trivial character is excluded by the formulas");
    // max{i : omega in Char_i}; conjugate characters have equal depth, so a
    // character on (the conjugate of) a component inherits its stratum
    CharacterExp conj = conjugate_character(omega);
    long d = 0;
    for (const auto& c : comps)
        if (c.depth > d && (component_contains(c, omega) || component_contains(c, conj)))
            d = c.depth;
    return d;
}

long depth_branched(const std::vector<TorusComponent>& comps, const CharacterExp& omega) {
    std::vector<int> supp;
    for (size_t j = 0; j < omega.size(); ++j)
        if (mod1(omega[j]) != 0) supp.push_back(static_cast<int>(j));
    CharacterExp conj = conjugate_character(omega);
    long d = 0;
    for (const auto& c : comps)
        if (c.support == supp && c.depth > d &&
            (component_contains(c, omega) || component_contains(c, conj)))
            d = c.depth;
    return d;
}

namespace {

// characters k in prod Z/m_j with rows.k/m = beta mod 1 and k_j = 0 for j in `zero`
Int count_congruence(const TorusComponent& comp, const std::vector<Int>& orders,
                     const std::vector<bool>& zero) {
    std::vector<int> cols;
    for (int j = 0; j < comp.r; ++j)
        if (!zero[j]) cols.push_back(j);
    const int k = comp.rows.rows;

    Int l = 1;
    for (int j : cols) l = lcm_int(l, orders[j]);
    for (const auto& b : comp.beta) l = lcm_int(l, b.get_den());

    // with all k_j = 0: solvable iff beta integral
    if (cols.empty()) {
        for (const auto& b : comp.beta)
            if (mod1(b) != 0) return 0;
        return 1;
    }

    IntMatrix bl(k, static_cast<int>(cols.size()) + k);
    std::vector<Int> c(k);
    for (int s = 0; s < k; ++s) {
        for (size_t t = 0; t < cols.size(); ++t)
            bl.at(s, static_cast<int>(t)) = comp.rows.at(s, cols[t]) * (l / orders[cols[t]]);
        bl.at(s, static_cast<int>(cols.size()) + s) = l;
        c[s] = Int(comp.beta[s] * Rat(l));
    }
    if (!solve_integer(bl, c)) return 0;
    SmithResult snf = smith_normal_form(bl);
    Int index = 1;  // index of B Z^r + L Z^k in Z^k
    for (int i = 0; i < snf.rank; ++i) index *= snf.divisors[i];
    if (snf.rank != k) throw std::logic_error("count_congruence: lattice not full rank");
    Int total = 1;
    for (int j : cols) total *= orders[j];
    Int lk = 1;
    for (int i = 0; i < k; ++i) lk *= l;
    Int count = total * index / lk;
    if (count * lk != total * index) throw std::logic_error("count_congruence: inexact count");
    return count;
}

}  // namespace

Int count_torsion_points(const TorusComponent& comp, const std::vector<Int>& orders,
                         CountPredicate pred) {
    if (static_cast<int>(orders.size()) != comp.r)
        throw std::invalid_argument("count_torsion_points: orders size mismatch");
    for (const Int& m : orders)
        if (m < 1) throw std::invalid_argument("orders must be >= 1");

    std::vector<bool> zero(comp.r, false);
    if (pred == CountPredicate::All || pred == CountPredicate::Nontrivial) {
        Int n = count_congruence(comp, orders, zero);
        if (pred == CountPredicate::Nontrivial) {
            bool trivial_on = true;
            for (const auto& b : comp.beta) trivial_on = trivial_on && mod1(b) == 0;
            if (trivial_on) n -= 1;
        }
        return n;
    }

    // full support: inclusion-exclusion over support coordinates forced to 1
    const int s = static_cast<int>(comp.support.size());
    if (s > 24) throw UnsupportedError("support too large for inclusion-exclusion");
    Int total = 0;
    for (uint32_t sub = 0; sub < (1u << s); ++sub) {
        std::vector<bool> z(comp.r, false);
        for (int i = 0; i < s; ++i)
            if (sub >> i & 1u) z[comp.support[i]] = true;
        Int n = count_congruence(comp, orders, z);
        if (std::popcount(sub) % 2 == 0)
            total += n;
        else
            total -= n;
    }
    return total;
}

Analysis analyze_curve(const Curve& curve, bool fast) {
    validate_curve(curve);
    Analysis an;
    an.curve = curve;
    an.inc = build_incidence(curve);
    an.fast = fast;
    an.masks = enumerate_subcurves(curve);

    SheafCache cache;
    std::map<std::string, size_t> by_canon;
    std::vector<TorusComponent> comps;

    for (uint32_t mask : an.masks) {
        long dsub = 0;
        for (int c : mask_components(mask)) dsub += curve.degrees[c];
        std::vector<FaceResult> results;
        for (QFace& face : enumerate_faces(curve, an.inc, mask, fast)) {
            FaceResult fr;
            fr.face = std::move(face);
            if (fr.face.contributing) {
                fr.twist = static_cast<int>(dsub - 3 - fr.face.level.get_num().get_si());
                FatPointScheme scheme;
                for (auto& [vi, expo] : fr.face.scheme) {
                    const Vertex& v = an.inc.vertices[vi];
                    FieldElement zinv = v.point[2].inv();
                    scheme.points.push_back({v.point[0] * zinv, v.point[1] * zinv, expo});
                }
                fr.coh = cache.get(fr.twist, scheme);
                fr.has_coh = true;
                if (fr.coh.h1 >= 1) {
                    TorusComponent comp =
                        component_from_face(curve, fr.face, static_cast<int>(fr.coh.h1));
                    comp.essential = mask == (1u << curve.r()) - 1;
                    auto it = by_canon.find(comp.canon);
                    if (it == by_canon.end()) {
                        by_canon.emplace(comp.canon, comps.size());
                        comps.push_back(std::move(comp));
                    } else {
                        TorusComponent& old = comps[it->second];
                        old.depth = std::max(old.depth, comp.depth);
                        old.essential = old.essential || comp.essential;
                    }
                }
            }
            results.push_back(std::move(fr));
        }
        an.faces.emplace(mask, std::move(results));
    }

    std::sort(comps.begin(), comps.end(),
              [](const TorusComponent& a, const TorusComponent& b) { return a.canon < b.canon; });
    an.components = std::move(comps);
    return an;
}

}  // namespace qav
