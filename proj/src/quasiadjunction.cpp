#include "qav/quasiadjunction.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace qav {

std::vector<int> mask_components(uint32_t mask) {
    std::vector<int> comps;
    for (int c = 0; c < 32; ++c)
        if (mask >> c & 1u) comps.push_back(c);
    return comps;
}

std::vector<LocalFaceDescriptor> local_faces(const SingularPointSpec& spec) {
    const int m = static_cast<int>(spec.branches.size());
    std::vector<LocalFaceDescriptor> out;
    switch (spec.type) {
        case SingType::Ordinary:
            for (int s = 1; s <= m - 2; ++s) {
                LocalFaceDescriptor f;
                f.equations.push_back(std::vector<Rat>(m, Rat(1)));
                f.rhs.push_back(Rat(s));
                f.exponent = m - 1 - s;
                out.push_back(std::move(f));
            }
            break;
        case SingType::Cusp: {
            LocalFaceDescriptor f;
            f.equations.push_back({Rat(1)});
            f.rhs.push_back(make_rat(1, 6));
            f.exponent = 1;
            out.push_back(std::move(f));
            break;
        }
        case SingType::Tacnode: {
            LocalFaceDescriptor f;
            f.equations.push_back({Rat(1), Rat(1)});
            f.rhs.push_back(make_rat(1, 2));
            f.exponent = 1;
            out.push_back(std::move(f));
            break;
        }
        case SingType::Custom:
            out = spec.custom_faces;
            break;
    }
    return out;
}

std::vector<LocalFaceDescriptor> induced_local_faces(const Curve& curve, const Vertex& v,
                                                     uint32_t mask,
                                                     const std::vector<int>& comps) {
    const int rp = static_cast<int>(comps.size());
    std::vector<int> col_of(curve.r(), -1);
    for (int i = 0; i < rp; ++i) col_of[comps[i]] = i;

    // branch count of each component of the subcurve at this vertex
    std::vector<int> present;  // per branch: local column or -1
    int inside = 0;
    for (int bc : v.branch_comps) {
        int col = (mask >> bc & 1u) ? col_of[bc] : -1;
        present.push_back(col);
        if (col >= 0) ++inside;
    }

    std::vector<LocalFaceDescriptor> out;
    if (v.spec_index < 0 || curve.sing.empty() ||
        (v.spec_index >= 0 && curve.sing[v.spec_index].type == SingType::Ordinary)) {
        // ordinary point: the induced singularity is ordinary(inside)
        for (int s = 1; s <= inside - 2; ++s) {
            LocalFaceDescriptor f;
            std::vector<Rat> row(rp, Rat(0));
            for (int col : present)
                if (col >= 0) row[col] += 1;
            f.equations.push_back(std::move(row));
            f.rhs.push_back(Rat(s));
            f.exponent = inside - 1 - s;
            out.push_back(std::move(f));
        }
        return out;
    }

    // catalog/custom types survive only when every branch lies in the subcurve
    const auto& spec = curve.sing[v.spec_index];
    if (inside != static_cast<int>(v.branch_comps.size())) {
        if (spec.type == SingType::Tacnode || inside <= 1) return {};
        return {};  // partial catalog singularities degenerate to nothing we model
    }
    for (const auto& lf : local_faces(spec)) {
        LocalFaceDescriptor f;
        f.exponent = lf.exponent;
        for (size_t e = 0; e < lf.equations.size(); ++e) {
            std::vector<Rat> row(rp, Rat(0));
            for (size_t br = 0; br < spec.branches.size(); ++br)
                row[col_of[spec.branches[br]]] += lf.equations[e][br];
            f.equations.push_back(std::move(row));
            f.rhs.push_back(lf.rhs[e]);
        }
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

struct EligibleVertex {
    int vertex;                             // index into incidence
    std::vector<LocalFaceDescriptor> faces; // induced, in subcurve variables
    bool ordinary;
    long mult2;                             // induced multiplicity squared (ordinary only)
};

bool holds_identically(const LocalFaceDescriptor& f, const std::vector<Rat>& w,
                       const std::vector<std::vector<Rat>>& basis) {
    const int n = static_cast<int>(w.size());
    for (size_t e = 0; e < f.equations.size(); ++e) {
        Rat v = -f.rhs[e];
        for (int j = 0; j < n; ++j) v += f.equations[e][j] * w[j];
        if (v != 0) return false;
        for (const auto& dir : basis) {
            Rat dv = 0;
            for (int j = 0; j < n; ++j) dv += f.equations[e][j] * dir[j];
            if (dv != 0) return false;
        }
    }
    return true;
}

std::string skey(const std::vector<std::pair<int, int>>& s) {
    std::ostringstream os;
    for (auto& [v, c] : s) os << v << ":" << c << ";";
    return os.str();
}

}  // namespace

Int face_order(const QMatrix& a, const std::vector<Rat>& b) {
    const int k = static_cast<int>(a.size());
    const int n = k ? static_cast<int>(a[0].size()) : 0;
    // normalize every equation to a primitive integer row of [A|b], then take
    // the gcd of rank-order minors of the coefficient part
    IntMatrix coeff(k, n);
    for (int i = 0; i < k; ++i) {
        Int l = b[i].get_den();
        for (int j = 0; j < n; ++j) l = lcm_int(l, a[i][j].get_den());
        Int g = Int(b[i] * Rat(l));
        std::vector<Int> row(n);
        for (int j = 0; j < n; ++j) {
            row[j] = Int(a[i][j] * Rat(l));
            g = gcd_int(g, row[j]);
        }
        if (g == 0) g = 1;
        for (int j = 0; j < n; ++j) coeff.at(i, j) = row[j] / g;
    }
    SmithResult snf = smith_normal_form(coeff);
    return snf.minor_gcd_rank();
}

std::vector<QFace> enumerate_faces(const Curve& curve, const Incidence& inc, uint32_t mask,
                                   bool fast) {
    const std::vector<int> comps = mask_components(mask);
    const int rp = static_cast<int>(comps.size());
    long dsub = 0;
    for (int c : comps) dsub += curve.degrees[c];

    std::vector<EligibleVertex> elig;
    for (size_t vi = 0; vi < inc.vertices.size(); ++vi) {
        auto faces = induced_local_faces(curve, inc.vertices[vi], mask, comps);
        if (faces.empty()) continue;
        EligibleVertex ev;
        ev.vertex = static_cast<int>(vi);
        ev.faces = std::move(faces);
        ev.ordinary = inc.vertices[vi].spec_index < 0 ||
                      curve.sing[inc.vertices[vi].spec_index].type == SingType::Ordinary;
        long im = inc.vertices[vi].induced_mult(mask);
        ev.mult2 = im * im;
        elig.push_back(std::move(ev));
    }
    const int ne = static_cast<int>(elig.size());
    if (ne > 24) throw UnsupportedError("too many eligible singular points on one subcurve");

    // subsets ordered by size then lexicographic on sorted vertex lists
    std::vector<uint32_t> subsets;
    for (uint32_t s = 1; s < (1u << ne); ++s) subsets.push_back(s);
    std::sort(subsets.begin(), subsets.end(), [](uint32_t x, uint32_t y) {
        int px = std::popcount(x), py = std::popcount(y);
        if (px != py) return px < py;
        return x < y;  // bit i = i-th eligible vertex; lex on sorted index lists
    });

    const Box cube = Box::open_unit_cube(rp);
    std::vector<Rat> degrow(rp);
    for (int i = 0; i < rp; ++i) degrow[i] = Rat(curve.degrees[comps[i]]);

    // all non-identical equations are avoided by generic witnesses
    std::vector<QFace> out;
    std::set<std::string> seen;

    for (uint32_t sub : subsets) {
        std::vector<int> members;
        for (int i = 0; i < ne; ++i)
            if (sub >> i & 1u) members.push_back(i);

        if (fast) {
            // Cor 4.1: superabundance vanishes when d'^2 exceeds the summed
            // squared multiplicities of the selected ordinary points.
            bool all_ord = true;
            long msum = 0;
            for (int i : members) {
                all_ord = all_ord && elig[i].ordinary;
                msum += elig[i].mult2;
            }
            if (all_ord && dsub * dsub > msum) continue;
        }

        // product over choices, lexicographic
        std::vector<int> choice(members.size(), 0);
        while (true) {
            QMatrix a;
            std::vector<Rat> b;
            for (size_t m = 0; m < members.size(); ++m) {
                const auto& f = elig[members[m]].faces[choice[m]];
                for (size_t e = 0; e < f.equations.size(); ++e) {
                    a.push_back(f.equations[e]);
                    b.push_back(f.rhs[e]);
                }
            }

            auto sol = solve_affine(a, b, rp);
            std::optional<std::vector<Rat>> wit;
            if (sol) {
                // cheap symmetric-point shortcut before the LP
                static const int cands[][2] = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4},
                                               {1, 6}, {5, 6}, {1, 5}, {2, 5}};
                for (auto& [p, q] : cands) {
                    Rat cval = make_rat(p, q);
                    bool okpt = true;
                    for (size_t i = 0; i < a.size() && okpt; ++i) {
                        Rat v = -b[i];
                        for (int j = 0; j < rp; ++j) v += a[i][j] * cval;
                        okpt = v == 0;
                    }
                    if (okpt) {
                        wit = std::vector<Rat>(rp, cval);
                        break;
                    }
                }
                if (!wit) wit = interior_feasible(a, b, cube);
            }
            if (wit) {
                // saturate S with every local face holding identically
                std::vector<std::pair<int, int>> ssat;
                for (int i = 0; i < ne; ++i)
                    for (size_t c = 0; c < elig[i].faces.size(); ++c)
                        if (holds_identically(elig[i].faces[c], *wit, sol->basis))
                            ssat.emplace_back(elig[i].vertex, static_cast<int>(c));
                std::string key = skey(ssat);
                if (seen.insert(key).second) {
                    QFace face;
                    face.mask = mask;
                    face.comps = comps;
                    face.s = ssat;
                    // rebuild the saturated system (same solution set, canonical rows)
                    std::map<int, int> eidx;  // vertex -> eligible index
                    for (int i = 0; i < ne; ++i) eidx[elig[i].vertex] = i;
                    for (auto& [v, c] : ssat) {
                        const auto& f = elig[eidx[v]].faces[c];
                        for (size_t e = 0; e < f.equations.size(); ++e) {
                            face.a.push_back(f.equations[e]);
                            face.b.push_back(f.rhs[e]);
                        }
                    }
                    face.basis = sol->basis;
                    face.dim = sol->dim();

                    // generic witness: avoid every non-identical local equation
                    std::vector<AvoidFunctional> avoid;
                    for (int i = 0; i < ne; ++i)
                        for (const auto& f : elig[i].faces)
                            for (size_t e = 0; e < f.equations.size(); ++e)
                                avoid.push_back({f.equations[e], f.rhs[e]});
                    face.witness = genericize_witness(*wit, face.basis, cube, avoid);

                    // level
                    face.level_constant = true;
                    for (const auto& dir : face.basis) {
                        Rat dv = 0;
                        for (int j = 0; j < rp; ++j) dv += degrow[j] * dir[j];
                        if (dv != 0) face.level_constant = false;
                    }
                    if (face.level_constant) {
                        Rat l = 0;
                        for (int j = 0; j < rp; ++j) l += degrow[j] * face.witness[j];
                        face.level = l;
                        face.contributing = l.get_den() == 1;
                    }

                    face.order = face_order(face.a, face.b);

                    // stalk exponents: a wall contributes only when the whole
                    // face lies inside the corresponding local polytope, i.e.
                    // the wall functional stays <= rhs on the face closure
                    QMatrix lpg;
                    std::vector<Rat> lph;
                    const int fdim = face.dim;
                    for (int j = 0; j < rp; ++j) {
                        std::vector<Rat> up(fdim), down(fdim);
                        for (int t = 0; t < fdim; ++t) {
                            up[t] = face.basis[t][j];
                            down[t] = -face.basis[t][j];
                        }
                        lpg.push_back(std::move(up));
                        lph.push_back(Rat(1) - face.witness[j]);
                        lpg.push_back(std::move(down));
                        lph.push_back(face.witness[j]);
                    }
                    auto face_max = [&](const std::vector<Rat>& sigma) {
                        Rat base = 0;
                        for (int j = 0; j < rp; ++j) base += sigma[j] * face.witness[j];
                        if (fdim == 0) return base;
                        std::vector<Rat> obj(fdim, Rat(0));
                        for (int t = 0; t < fdim; ++t)
                            for (int j = 0; j < rp; ++j)
                                obj[t] += sigma[j] * face.basis[t][j];
                        return Rat(base + lp_maximize(lpg, lph, obj).optimum);
                    };
                    for (int i = 0; i < ne; ++i) {
                        long expo = 0;
                        for (const auto& f : elig[i].faces) {
                            bool below = true;
                            for (size_t e = 0; e < f.equations.size() && below; ++e)
                                below = face_max(f.equations[e]) <= f.rhs[e];
                            if (below && f.exponent > expo) expo = f.exponent;
                        }
                        if (expo > 0) face.scheme.emplace_back(elig[i].vertex, expo);
                    }
                    out.push_back(std::move(face));
                }
            }

            // next choice tuple
            size_t pos = 0;
            while (pos < members.size()) {
                if (++choice[pos] < static_cast<int>(elig[members[pos]].faces.size())) break;
                choice[pos] = 0;
                ++pos;
            }
            if (pos == members.size()) break;
        }
    }
    return out;
}

}  // namespace qav
