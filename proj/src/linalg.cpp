#include "qav/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qav {

std::optional<AffineSolution> solve_affine(const QMatrix& a, const std::vector<Rat>& b, int cols) {
    if (a.size() != b.size()) throw std::invalid_argument("solve_affine: size mismatch");
    if (a.empty()) {
        AffineSolution s;
        s.particular.assign(cols, Rat(0));
        for (int f = 0; f < cols; ++f) {
            std::vector<Rat> v(cols, Rat(0));
            v[f] = 1;
            s.basis.push_back(std::move(v));
        }
        return s;
    }
    QMatrix m;
    m.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (static_cast<int>(a[i].size()) != cols)
            throw std::invalid_argument("solve_affine: ragged matrix");
        std::vector<Rat> row = a[i];
        row.push_back(b[i]);
        m.push_back(std::move(row));
    }
    std::vector<int> pivots = rref(m);
    for (int p : pivots)
        if (p == cols) return std::nullopt;  // 0 = 1 row

    AffineSolution s;
    s.particular.assign(cols, Rat(0));
    std::vector<bool> is_pivot(cols, false);
    for (size_t i = 0; i < pivots.size(); ++i) {
        is_pivot[pivots[i]] = true;
        s.particular[pivots[i]] = m[i][cols];
    }
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        s.basis.push_back(std::move(v));
    }
    return s;
}

int rank_q(QMatrix m) {
    if (m.empty() || m[0].empty()) return 0;
    return static_cast<int>(rref(m).size());
}

IntMatrix int_mat_mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("int_mat_mul: shape mismatch");
    IntMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return z;
}

Int det_int(IntMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
    // Bareiss fraction-free elimination.
    const int n = m.rows;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(sw, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = t / prev;  // exact by Bareiss
            }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

namespace {

IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
    SmithResult res;
    IntMatrix d = input;
    const int r = d.rows, c = d.cols;
    res.u = identity(r);
    res.v = identity(c);
    res.vinv = identity(c);

    auto row_sub = [&](int i, int j, const Int& q) {  // row_i -= q * row_j
        for (int k = 0; k < c; ++k) d.at(i, k) -= q * d.at(j, k);
        for (int k = 0; k < r; ++k) res.u.at(i, k) -= q * res.u.at(j, k);
    };
    auto row_swap = [&](int i, int j) {
        for (int k = 0; k < c; ++k) std::swap(d.at(i, k), d.at(j, k));
        for (int k = 0; k < r; ++k) std::swap(res.u.at(i, k), res.u.at(j, k));
    };
    auto row_neg = [&](int i) {
        for (int k = 0; k < c; ++k) d.at(i, k) = -d.at(i, k);
        for (int k = 0; k < r; ++k) res.u.at(i, k) = -res.u.at(i, k);
    };
    auto col_sub = [&](int j, int i, const Int& q) {  // col_j -= q * col_i
        for (int k = 0; k < r; ++k) d.at(k, j) -= q * d.at(k, i);
        for (int k = 0; k < c; ++k) res.v.at(k, j) -= q * res.v.at(k, i);
        for (int k = 0; k < c; ++k) res.vinv.at(i, k) += q * res.vinv.at(j, k);
    };
    auto col_swap = [&](int i, int j) {
        for (int k = 0; k < r; ++k) std::swap(d.at(k, i), d.at(k, j));
        for (int k = 0; k < c; ++k) std::swap(res.v.at(k, i), res.v.at(k, j));
        for (int k = 0; k < c; ++k) std::swap(res.vinv.at(i, k), res.vinv.at(j, k));
    };

    const int n = std::min(r, c);
    int t = 0;
    while (t < n) {
        // locate a pivot: smallest nonzero magnitude in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                row_sub(i, t, q);
                if (d.at(i, t) != 0) {  // remainder smaller than pivot: promote it
                    row_swap(i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < c; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                col_sub(j, t, q);
                if (d.at(t, j) != 0) {
                    col_swap(j, t);
                    clean = false;
                }
            }
        }
        if (d.at(t, t) < 0) row_neg(t);

        // divisibility: every remaining entry must be divisible by the pivot
        bool redo = false;
        for (int i = t + 1; i < r && !redo; ++i)
            for (int j = t + 1; j < c && !redo; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    row_sub(t, i, Int(-1));  // fold row i into the pivot row
                    redo = true;
                }
        if (redo) continue;  // re-eliminate at the same t
        ++t;
    }

    res.rank = t;
    res.divisors.assign(n, Int(0));
    for (int i = 0; i < t; ++i) res.divisors[i] = d.at(i, i);
    if (t == n) {
        Int p = 1;
        for (int i = 0; i < n; ++i) p *= res.divisors[i];
        res.gcd_maximal_minors = p;
    } else {
        res.gcd_maximal_minors = 0;
    }
    return res;
}

IntMatrix saturate_row_lattice(const IntMatrix& a) {
    SmithResult s = smith_normal_form(a);
    if (s.rank == 0) throw std::domain_error("saturate_row_lattice: zero-rank input");
    IntMatrix out(s.rank, a.cols);
    for (int i = 0; i < s.rank; ++i)
        for (int j = 0; j < a.cols; ++j) out.at(i, j) = s.vinv.at(i, j);
    return out;
}

std::pair<IntMatrix, IntMatrix> hermite_row(const IntMatrix& a) {
    IntMatrix h = a;
    IntMatrix u = identity(a.rows);
    const int r = a.rows, c = a.cols;
    auto row_sub = [&](int i, int j, const Int& q) {
        for (int k = 0; k < c; ++k) h.at(i, k) -= q * h.at(j, k);
        for (int k = 0; k < r; ++k) u.at(i, k) -= q * u.at(j, k);
    };
    auto row_swap = [&](int i, int j) {
        for (int k = 0; k < c; ++k) std::swap(h.at(i, k), h.at(j, k));
        for (int k = 0; k < r; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    auto row_neg = [&](int i) {
        for (int k = 0; k < c; ++k) h.at(i, k) = -h.at(i, k);
        for (int k = 0; k < r; ++k) u.at(i, k) = -u.at(i, k);
    };

    int t = 0;
    for (int col = 0; col < c && t < r; ++col) {
        // gcd-eliminate the column below row t
        while (true) {
            int best = -1;
            for (int i = t; i < r; ++i)
                if (h.at(i, col) != 0 && (best < 0 || abs(h.at(i, col)) < abs(h.at(best, col))))
                    best = i;
            if (best < 0) break;
            if (best != t) row_swap(best, t);
            bool done = true;
            for (int i = t + 1; i < r; ++i) {
                if (h.at(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(t, col).get_mpz_t());
                row_sub(i, t, q);
                if (h.at(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (h.at(t, col) == 0) continue;
        if (h.at(t, col) < 0) row_neg(t);
        for (int i = 0; i < t; ++i) {  // reduce entries above the pivot
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(t, col).get_mpz_t());
            if (q != 0) row_sub(i, t, q);
        }
        ++t;
    }
    return {h, u};
}

std::optional<IntAffineSolution> solve_integer(const IntMatrix& b, const std::vector<Int>& c) {
    if (static_cast<int>(c.size()) != b.rows) throw std::invalid_argument("solve_integer: size");
    SmithResult s = smith_normal_form(b);
    std::vector<Int> uc(b.rows, Int(0));
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.rows; ++j) uc[i] += s.u.at(i, j) * c[j];

    std::vector<Int> w(b.cols, Int(0));
    for (int i = 0; i < b.rows; ++i) {
        if (i < s.rank) {
            if (uc[i] % s.divisors[i] != 0) return std::nullopt;
            if (i < b.cols) w[i] = uc[i] / s.divisors[i];
        } else if (uc[i] != 0) {
            return std::nullopt;
        }
    }

    IntAffineSolution sol;
    sol.particular.assign(b.cols, Int(0));
    for (int i = 0; i < b.cols; ++i)
        for (int j = 0; j < s.rank; ++j) sol.particular[i] += s.v.at(i, j) * w[j];
    const int free = b.cols - s.rank;
    sol.kernel = IntMatrix(b.cols, free);
    for (int i = 0; i < b.cols; ++i)
        for (int j = 0; j < free; ++j) sol.kernel.at(i, j) = s.v.at(i, s.rank + j);
    return sol;
}

}  // namespace qav
