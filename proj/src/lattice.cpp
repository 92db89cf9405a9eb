#include "qav/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace qav {

bool Box::contains(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != size()) return false;
    for (int j = 0; j < size(); ++j) {
        if (open[j]) {
            if (!(x[j] > lo[j] && x[j] < hi[j])) return false;
        } else {
            if (!(x[j] >= lo[j] && x[j] <= hi[j])) return false;
        }
    }
    return true;
}

// ---------------- lattice point enumeration ----------------

namespace {

// Integer bounds for k = m * x with x in [lo, hi] (strict when open).
bool scaled_bounds(const Rat& lo, const Rat& hi, const Int& m, bool open, Int& kmin, Int& kmax) {
    Rat a = Rat(m) * lo, b = Rat(m) * hi;
    if (a.get_den() == 1)
        kmin = open ? a.get_num() + 1 : a.get_num();
    else
        kmin = ceil_rat(a);
    if (b.get_den() == 1)
        kmax = open ? b.get_num() - 1 : b.get_num();
    else
        kmax = floor_rat(b);
    return kmin <= kmax;
}

struct Enumerator {
    int n = 0;
    std::vector<Int> kmin, kmax;
    std::vector<Int> k0;                  // particular solution
    std::vector<std::vector<Int>> basis;  // kernel lattice basis, echelon by pivot
    std::vector<int> pivot;               // pivot coordinate of each basis vector
    std::vector<std::vector<Int>> out;

    void recurse(int depth, std::vector<Int>& acc) {
        if (depth == static_cast<int>(basis.size())) {
            for (int j = 0; j < n; ++j)
                if (acc[j] < kmin[j] || acc[j] > kmax[j]) return;
            out.push_back(acc);
            return;
        }
        const int p = pivot[depth];
        const Int& step = basis[depth][p];  // positive HNF pivot
        // kmin[p] <= acc[p] + y*step <= kmax[p]
        Int ylo, yhi;
        {
            Rat lo = Rat(kmin[p] - acc[p]) / Rat(step);
            Rat hi = Rat(kmax[p] - acc[p]) / Rat(step);
            ylo = ceil_rat(lo);
            yhi = floor_rat(hi);
        }
        for (Int y = ylo; y <= yhi; ++y) {
            std::vector<Int> next = acc;
            for (int j = 0; j < n; ++j) next[j] += y * basis[depth][j];
            recurse(depth + 1, next);
        }
    }
};

}  // namespace

std::vector<std::vector<Rat>> enumerate_affine_lattice_points(const AffineLatticePointSet& set) {
    const int n = static_cast<int>(set.denominators.size());
    if (set.box.size() != n) throw std::invalid_argument("lattice: box/denominator mismatch");
    for (const Int& m : set.denominators)
        if (m < 1) throw std::invalid_argument("lattice: denominators must be >= 1");

    Enumerator e;
    e.n = n;
    e.kmin.resize(n);
    e.kmax.resize(n);
    for (int j = 0; j < n; ++j)
        if (!scaled_bounds(set.box.lo[j], set.box.hi[j], set.denominators[j], set.box.open[j],
                           e.kmin[j], e.kmax[j]))
            return {};

    // Scale to an integer system in k_j = m_j x_j.
    const int rows = static_cast<int>(set.a.size());
    IntMatrix bmat(rows, n);
    std::vector<Int> c(rows);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(set.a[i].size()) != n)
            throw std::invalid_argument("lattice: ragged system");
        Int l = set.b[i].get_den();
        for (int j = 0; j < n; ++j) {
            Rat q = set.a[i][j] / Rat(set.denominators[j]);
            l = lcm_int(l, q.get_den());
        }
        for (int j = 0; j < n; ++j) {
            Rat q = set.a[i][j] * Rat(l) / Rat(set.denominators[j]);
            bmat.at(i, j) = q.get_num();
        }
        c[i] = Int(set.b[i] * Rat(l));
    }

    if (rows == 0) {
        // unconstrained: kernel = identity lattice
        IntAffineSolution sol;
        sol.particular.assign(n, Int(0));
        sol.kernel = IntMatrix(n, n);
        for (int j = 0; j < n; ++j) sol.kernel.at(j, j) = 1;
        e.k0 = sol.particular;
        IntMatrix kt(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) kt.at(i, j) = sol.kernel.at(j, i);
        auto [h, u] = hermite_row(kt);
        (void)u;
        for (int i = 0; i < n; ++i) {
            std::vector<Int> v(n);
            int p = -1;
            for (int j = 0; j < n; ++j) {
                v[j] = h.at(i, j);
                if (p < 0 && v[j] != 0) p = j;
            }
            if (p < 0) continue;
            e.basis.push_back(std::move(v));
            e.pivot.push_back(p);
        }
    } else {
        auto sol = solve_integer(bmat, c);
        if (!sol) return {};
        e.k0 = sol->particular;
        const int t = sol->kernel.cols;
        if (t > 0) {
            IntMatrix kt(t, n);  // transpose: rows = kernel vectors
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < n; ++j) kt.at(i, j) = sol->kernel.at(j, i);
            auto [h, u] = hermite_row(kt);
            (void)u;
            for (int i = 0; i < t; ++i) {
                std::vector<Int> v(n);
                int p = -1;
                for (int j = 0; j < n; ++j) {
                    v[j] = h.at(i, j);
                    if (p < 0 && v[j] != 0) p = j;
                }
                if (p < 0) continue;
                e.basis.push_back(std::move(v));
                e.pivot.push_back(p);
            }
        }
    }

    std::vector<Int> acc = e.k0;
    e.recurse(0, acc);

    std::vector<std::vector<Rat>> pts;
    pts.reserve(e.out.size());
    for (const auto& k : e.out) {
        std::vector<Rat> x(n);
        for (int j = 0; j < n; ++j) x[j] = make_rat(k[j], set.denominators[j]);
        pts.push_back(std::move(x));
    }
    std::sort(pts.begin(), pts.end(),
              [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
                  for (size_t i = 0; i < a.size(); ++i) {
                      int c = cmp(a[i], b[i]);
                      if (c != 0) return c < 0;
                  }
                  return false;
              });
    return pts;
}

// ---------------- exact simplex ----------------

namespace {

// minimize cost . x over A x = rhs, x >= 0, rhs >= 0, starting from the given
// basic feasible basis. Tableau t is m x (n+1) holding B^-1 A | B^-1 rhs.
// Bland's rule; returns false on unboundedness.
bool simplex_core(QMatrix& t, std::vector<int>& basis, const std::vector<Rat>& cost) {
    const int m = static_cast<int>(t.size());
    const int n = static_cast<int>(cost.size());
    while (true) {
        // reduced costs
        int enter = -1;
        for (int j = 0; j < n && enter < 0; ++j) {
            Rat rc = cost[j];
            for (int i = 0; i < m; ++i)
                if (cost[basis[i]] != 0) rc -= cost[basis[i]] * t[i][j];
            if (rc < 0) enter = j;  // Bland: first improving index
        }
        if (enter < 0) return true;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][n] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return false;  // unbounded
        // pivot
        Rat piv = t[leave][enter];
        for (int j = 0; j <= n; ++j) t[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j <= n; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
}

}  // namespace

LPResult lp_maximize(const QMatrix& g, const std::vector<Rat>& h, const std::vector<Rat>& c) {
    const int m = static_cast<int>(g.size());
    const int d = static_cast<int>(c.size());
    // standard form: z = u - v, slack s: [G -G I] (u v s)^T = h, all vars >= 0
    const int nv = 2 * d + m;
    QMatrix t(m, std::vector<Rat>(nv + m + 1, Rat(0)));  // + artificial block
    std::vector<int> basis(m, -1);
    std::vector<int> art;  // artificial column per row or -1
    int n_art = 0;
    for (int i = 0; i < m; ++i) {
        int sgn = h[i] < 0 ? -1 : 1;
        for (int j = 0; j < d; ++j) {
            t[i][j] = Rat(sgn) * g[i][j];
            t[i][d + j] = Rat(-sgn) * g[i][j];
        }
        t[i][2 * d + i] = Rat(sgn);
        t[i][nv + m] = Rat(sgn) * h[i];
        if (sgn == 1) {
            basis[i] = 2 * d + i;  // slack is basic
        } else {
            t[i][nv + n_art] = 1;
            basis[i] = nv + n_art;
            ++n_art;
        }
        art.push_back(basis[i] >= nv ? basis[i] : -1);
    }
    const int total = nv + n_art;
    // shrink rows to total + 1 columns (rhs currently at nv + m)
    for (int i = 0; i < m; ++i) {
        Rat rhs = t[i][nv + m];
        t[i].resize(total + 1);
        t[i][total] = rhs;
    }

    if (n_art > 0) {
        std::vector<Rat> cost1(total, Rat(0));
        for (int j = nv; j < total; ++j) cost1[j] = 1;
        if (!simplex_core(t, basis, cost1))
            throw std::logic_error("phase-1 simplex unbounded");
        Rat obj = 0;
        for (int i = 0; i < m; ++i)
            if (cost1[basis[i]] != 0) obj += t[i][total];
        if (obj > 0) return {LPStatus::Infeasible, Rat(0), {}};
        // pivot artificials out of the basis
        for (int i = 0; i < m; ++i) {
            if (basis[i] < nv) continue;
            int j = 0;
            for (; j < nv; ++j)
                if (t[i][j] != 0) break;
            if (j == nv) continue;  // redundant row; harmless to keep
            Rat piv = t[i][j];
            for (int k2 = 0; k2 <= total; ++k2) t[i][k2] /= piv;
            for (int i2 = 0; i2 < m; ++i2) {
                if (i2 == i || t[i2][j] == 0) continue;
                Rat f = t[i2][j];
                for (int k2 = 0; k2 <= total; ++k2) t[i2][k2] -= f * t[i][k2];
            }
            basis[i] = j;
        }
        // freeze artificial columns at zero
        for (int i = 0; i < m; ++i)
            for (int j = nv; j < total; ++j) t[i][j] = 0;
    }

    std::vector<Rat> cost2(total, Rat(0));
    for (int j = 0; j < d; ++j) {
        cost2[j] = -c[j];
        cost2[d + j] = c[j];
    }
    if (!simplex_core(t, basis, cost2)) return {LPStatus::Unbounded, Rat(0), {}};

    std::vector<Rat> xval(total, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < total) xval[basis[i]] = t[i][total];
    std::vector<Rat> z(d);
    Rat opt = 0;
    for (int j = 0; j < d; ++j) {
        z[j] = xval[j] - xval[d + j];
        opt += c[j] * z[j];
    }
    return {LPStatus::Optimal, opt, z};
}

std::optional<std::vector<Rat>> interior_feasible(const QMatrix& a, const std::vector<Rat>& b,
                                                  const Box& box) {
    const int n = box.size();
    auto sol = solve_affine(a, b, n);
    if (!sol) return std::nullopt;
    const int f = sol->dim();
    if (f == 0) {
        if (box.contains(sol->particular)) return sol->particular;
        return std::nullopt;
    }

    bool any_open = false;
    for (int j = 0; j < n; ++j) any_open = any_open || box.open[j];

    QMatrix g;
    std::vector<Rat> h;
    for (int j = 0; j < n; ++j) {
        const bool slacked = box.open[j] || !any_open;
        std::vector<Rat> lo_row(f + 1, Rat(0)), hi_row(f + 1, Rat(0));
        for (int i = 0; i < f; ++i) {
            lo_row[i] = -sol->basis[i][j];
            hi_row[i] = sol->basis[i][j];
        }
        if (slacked) lo_row[f] = hi_row[f] = 1;  // coefficient of t
        g.push_back(std::move(lo_row));
        h.push_back(sol->particular[j] - box.lo[j]);
        g.push_back(std::move(hi_row));
        h.push_back(box.hi[j] - sol->particular[j]);
    }
    std::vector<Rat> c(f + 1, Rat(0));
    c[f] = 1;
    LPResult lp = lp_maximize(g, h, c);
    if (lp.status != LPStatus::Optimal) return std::nullopt;
    if (any_open ? !(lp.optimum > 0) : !(lp.optimum >= 0)) return std::nullopt;

    std::vector<Rat> x = sol->particular;
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < n; ++j) x[j] += lp.point[i] * sol->basis[i][j];
    if (!box.contains(x)) throw std::logic_error("interior_feasible: witness escaped the box");
    return x;
}

std::vector<Rat> genericize_witness(std::vector<Rat> w, const std::vector<std::vector<Rat>>& basis,
                                    const Box& box, const std::vector<AvoidFunctional>& avoid) {
    const int n = box.size();
    // Functionals identically satisfied on the affine span cannot be avoided.
    auto identically = [&](const AvoidFunctional& f) {
        Rat v = -f.c;
        for (int j = 0; j < n; ++j) v += f.g[j] * w[j];
        if (v != 0) return false;
        for (const auto& dirv : basis) {
            Rat dv = 0;
            for (int j = 0; j < n; ++j) dv += f.g[j] * dirv[j];
            if (dv != 0) return false;
        }
        return true;
    };
    std::vector<const AvoidFunctional*> active;
    for (const auto& f : avoid)
        if (!identically(f)) active.push_back(&f);
    auto ok = [&](const std::vector<Rat>& x) {
        if (!box.contains(x)) return false;
        for (const auto* f : active) {
            Rat v = -f->c;
            for (int j = 0; j < n; ++j) v += f->g[j] * x[j];
            if (v == 0) return false;
        }
        return true;
    };
    if (ok(w)) return w;
    if (basis.empty())
        throw std::logic_error("genericize_witness: zero-dimensional witness on avoided plane");

    // margin of w to the box boundary and total basis magnitude
    Rat margin;
    bool first = true;
    for (int j = 0; j < n; ++j) {
        Rat m1 = w[j] - box.lo[j], m2 = box.hi[j] - w[j];
        Rat m = m1 < m2 ? m1 : m2;
        if (first || m < margin) {
            margin = m;
            first = false;
        }
    }
    Rat mag = 1;
    for (int j = 0; j < n; ++j) {
        Rat s = 0;
        for (const auto& v : basis) s += abs(v[j]);
        if (s > mag) mag = s;
    }
    Rat eps = margin / (2 * mag);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Rat> x = w;
        Rat p = eps;
        for (const auto& v : basis) {
            for (int j = 0; j < n; ++j) x[j] += p * v[j];
            p *= eps;
        }
        if (ok(x)) return x;
        eps /= 2;
    }
    throw std::logic_error("genericize_witness: failed to escape avoided hyperplanes");
}

}  // namespace qav
