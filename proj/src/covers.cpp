#include "qav/covers.hpp"

#include <algorithm>

#include "qav/lattice.hpp"

namespace qav {

namespace {

void check_orders(const Analysis& an, const std::vector<Int>& orders) {
    if (static_cast<int>(orders.size()) != an.curve.r())
        throw ValidationError("orders must list one modulus per component");
    for (const Int& m : orders)
        if (m < 1) throw ValidationError("orders must be >= 1");
}

// Exact Sum over characters of max{depth of a component containing the
// character or its conjugate}. `cols` lists the coordinates allowed to be
// nonzero; with `full_support` every listed coordinate must be nonzero.
// Scaled integer arithmetic: row . omega = sum rows_sj k_j / m_j tested mod 1.
Int sum_max_depth(const std::vector<const TorusComponent*>& group, const std::vector<Int>& orders,
                  const std::vector<int>& cols, bool full_support) {
    Int big = 1;
    for (int j : cols) big *= orders[j];
    if (big > 2000000) throw UnsupportedError("abelian cover too large to enumerate");

    Int lint = 1;
    for (int j : cols) lint = lcm_int(lint, orders[j]);
    for (const TorusComponent* c : group)
        for (const auto& b : c->beta) lint = lcm_int(lint, b.get_den());
    if (!lint.fits_slong_p()) throw UnsupportedError("branching orders too large");
    const long l = lint.get_si();

    // per component: scaled row coefficients over `cols` and scaled beta
    struct Scaled {
        std::vector<std::vector<long>> rows;  // per row, one entry per col
        std::vector<long> rhs;
        int depth;
    };
    std::vector<Scaled> sc;
    for (const TorusComponent* c : group) {
        Scaled s;
        s.depth = c->depth;
        bool fits = true;
        for (int i = 0; i < c->rows.rows; ++i) {
            std::vector<long> row(cols.size());
            for (size_t t = 0; t < cols.size(); ++t) {
                Int w = c->rows.at(i, cols[t]) * (lint / orders[cols[t]]);
                fits = fits && w.fits_slong_p();
                if (fits) row[t] = ((w.get_si() % l) + l) % l;
            }
            s.rows.push_back(std::move(row));
            Rat b = mod1(c->beta[i]);
            s.rhs.push_back(Int(b * Rat(lint)).get_si() % l);
        }
        if (!fits) throw UnsupportedError("component exponents too large");
        // rows acting on the dropped coordinates must vanish there: characters
        // off `cols` are zero, so those columns never contribute
        sc.push_back(std::move(s));
    }

    const int nc = static_cast<int>(cols.size());
    std::vector<long> m(nc), k(nc, full_support ? 1 : 0);
    for (int t = 0; t < nc; ++t) {
        m[t] = orders[cols[t]].get_si();
        if (full_support && m[t] < 2) return 0;
    }

    Int total = 0;
    while (true) {
        bool nonzero = false;
        for (int t = 0; t < nc; ++t) nonzero = nonzero || k[t] != 0;
        if (nonzero) {
            long best = 0;
            for (const Scaled& s : sc) {
                if (s.depth <= best) continue;
                bool direct = true, conj = true;
                for (size_t i = 0; i < s.rows.size() && (direct || conj); ++i) {
                    long dot = 0;
                    for (int t = 0; t < nc; ++t) dot = (dot + s.rows[i][t] * k[t]) % l;
                    direct = direct && dot == s.rhs[i];
                    conj = conj && (l - dot) % l == s.rhs[i];
                }
                if (direct || conj) best = s.depth;
            }
            total += best;
        }
        int t = nc - 1;
        const long lo = full_support ? 1 : 0;
        while (t >= 0 && ++k[t] == m[t]) k[t--] = lo;
        if (t < 0) break;
    }
    return total;
}

bool self_conjugate(const TorusComponent& c) {
    for (const auto& b : c.beta)
        if (mod1(b + b) != 0) return false;
    return true;
}

}  // namespace

Int face_point_count(const Analysis& an, const FaceResult& fr, const std::vector<Int>& orders) {
    check_orders(an, orders);
    const QFace& face = fr.face;
    const int rp = static_cast<int>(face.comps.size());

    AffineLatticePointSet set;
    set.a = face.a;
    set.b = face.b;
    set.box = Box::open_unit_cube(rp);
    for (int c : face.comps) set.denominators.push_back(orders[c]);

    std::vector<std::pair<int, int>> want = face.s;
    std::sort(want.begin(), want.end());

    Int n = 0;
    for (const auto& p : enumerate_affine_lattice_points(set)) {
        // relative interior: the satisfied local faces are exactly the
        // saturated set of this face
        std::vector<std::pair<int, int>> sat;
        for (size_t vi = 0; vi < an.inc.vertices.size(); ++vi) {
            auto lfs = induced_local_faces(an.curve, an.inc.vertices[vi], face.mask, face.comps);
            for (size_t c = 0; c < lfs.size(); ++c) {
                bool holds = true;
                for (size_t e = 0; holds && e < lfs[c].equations.size(); ++e) {
                    Rat v = -lfs[c].rhs[e];
                    for (int j = 0; j < rp; ++j) v += lfs[c].equations[e][j] * p[j];
                    holds = v == 0;
                }
                if (holds) sat.emplace_back(static_cast<int>(vi), static_cast<int>(c));
            }
        }
        std::sort(sat.begin(), sat.end());
        if (sat == want) n += 1;
    }
    return n;
}

Int irregularity(const Analysis& an, const std::vector<Int>& orders) {
    check_orders(an, orders);
    Int q = 0;
    for (const auto& [mask, results] : an.faces)
        for (const FaceResult& fr : results)
            if (fr.has_coh && fr.coh.h1 > 0) q += face_point_count(an, fr, orders) * fr.coh.h1;
    return q;
}

Int betti_branched(const Analysis& an, const std::vector<Int>& orders) {
    check_orders(an, orders);
    // characters grouped by support; each contributes its maximal stratum
    std::map<std::vector<int>, std::vector<const TorusComponent*>> groups;
    for (const TorusComponent& comp : an.components) groups[comp.support].push_back(&comp);

    Int b = 0;
    for (const auto& [supp, group] : groups) {
        if (group.size() == 1) {
            // a lone coset never overlaps anything: count directly, adding the
            // (disjoint) conjugate coset when the component is not its own
            const TorusComponent& c = *group[0];
            Int n = count_torsion_points(c, orders, CountPredicate::FullSupport);
            if (!self_conjugate(c)) {
                TorusComponent cc = c;
                for (auto& x : cc.beta) x = mod1(Rat(0) - x);
                n += count_torsion_points(cc, orders, CountPredicate::FullSupport);
            }
            b += n * c.depth;
        } else {
            b += sum_max_depth(group, orders, supp, true);
        }
    }
    return b;
}

Int betti_unbranched(const Analysis& an, const std::vector<Int>& orders) {
    check_orders(an, orders);
    std::vector<const TorusComponent*> all;
    for (const TorusComponent& comp : an.components) all.push_back(&comp);
    std::vector<int> cols(an.curve.r());
    for (int j = 0; j < an.curve.r(); ++j) cols[j] = j;
    return an.curve.r() + sum_max_depth(all, orders, cols, false);
}

Int milnor_b1(const Analysis& an) {
    const long d = an.curve.total_degree();
    Int b = an.curve.r() - 1;
    for (long i = 1; i < d; ++i) {
        CharacterExp omega(an.curve.r(), make_rat(Int(i), Int(d)));
        b += depth_at(an.components, omega);
    }
    return b;
}

Int quotient_betti_branched(const Analysis& an, const QuotientCover& cover,
                            std::vector<std::string>* warnings) {
    const int r = an.curve.r();
    const int q = static_cast<int>(cover.orders.size());
    if (cover.q.rows != q || cover.q.cols != r)
        throw ValidationError("quotient matrix must be (#orders) x r");
    Int total = 1;
    for (const Int& n : cover.orders) {
        if (n < 1) throw ValidationError("quotient orders must be >= 1");
        total *= n;
    }
    if (total > 1000000) throw UnsupportedError("quotient group too large to enumerate");

    if (warnings) {
        // surjectivity of Z^r -> prod Z/n_s: cokernel of [Q | diag(n)] trivial
        IntMatrix ext(q, r + q);
        for (int s = 0; s < q; ++s) {
            for (int j = 0; j < r; ++j) ext.at(s, j) = cover.q.at(s, j);
            ext.at(s, r + s) = cover.orders[s];
        }
        SmithResult snf = smith_normal_form(ext);
        bool onto = snf.rank == q;
        for (int i = 0; onto && i < snf.rank; ++i) onto = snf.divisors[i] == 1;
        if (!onto) warnings->push_back("quotient map is not surjective; cover is disconnected");
    }

    Int b = 0;
    std::vector<Int> k(q, 0);
    while (true) {
        bool nonzero = false;
        for (const Int& ks : k) nonzero = nonzero || ks != 0;
        if (nonzero) {
            CharacterExp omega(r, Rat(0));
            for (int i = 0; i < r; ++i) {
                for (int s = 0; s < q; ++s)
                    omega[i] += make_rat(k[s] * cover.q.at(s, i), cover.orders[s]);
                omega[i] = mod1(omega[i]);
            }
            b += depth_branched(an.components, omega);
        }
        int pos = q - 1;
        while (pos >= 0) {
            k[pos] += 1;
            if (k[pos] < cover.orders[pos]) break;
            k[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return b;
}

}  // namespace qav
