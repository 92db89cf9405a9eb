#pragma once

#include <optional>
#include <vector>

#include "qav/numberfield.hpp"
#include "qav/rational.hpp"

namespace qav {

// Dense rational matrix as rows; jagged input is rejected by the consumers.
using QMatrix = std::vector<std::vector<Rat>>;

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    bool operator==(const IntMatrix& o) const = default;
};

// ---- generic exact Gaussian elimination (Rat and FieldElement) ----

template <class T>
struct RankNullspace {
    int rank = 0;
    std::vector<std::vector<T>> nullspace;  // reduced echelon basis, one vector per free column
};

namespace detail {
inline bool elt_zero(const Rat& x) { return x == 0; }
inline bool elt_zero(const FieldElement& x) { return x.is_zero(); }
inline Rat elt_inv(const Rat& x) { return 1 / x; }
inline FieldElement elt_inv(const FieldElement& x) { return x.inv(); }
inline Rat elt_zero_like(const Rat&) { return Rat(0); }
inline FieldElement elt_zero_like(const FieldElement& x) { return FieldElement::zero(x.field()); }
inline Rat elt_one_like(const Rat&) { return Rat(1); }
inline FieldElement elt_one_like(const FieldElement& x) { return FieldElement::one(x.field()); }
}  // namespace detail

// Row-reduces M in place to reduced row echelon form; returns pivot columns.
template <class T>
std::vector<int> rref(std::vector<std::vector<T>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int i = row; i < rows; ++i)
            if (!detail::elt_zero(m[i][col])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[row], m[pr]);
        T inv = detail::elt_inv(m[row][col]);
        for (int j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || detail::elt_zero(m[i][col])) continue;
            T f = m[i][col];
            for (int j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// rank + canonical nullspace basis (one vector per free column, that column's
// entry normalized to 1). Requires at least one row with at least one entry;
// callers handle the empty cases directly.
template <class T>
RankNullspace<T> rank_nullspace(std::vector<std::vector<T>> m) {
    RankNullspace<T> out;
    if (m.empty() || m[0].empty()) throw std::invalid_argument("rank_nullspace: empty matrix");
    const int cols = static_cast<int>(m[0].size());

    std::vector<int> pivots = rref(m);
    out.rank = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;

    T zero = detail::elt_zero_like(m[0][0]);
    T one = detail::elt_one_like(m[0][0]);
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(cols, zero);
        v[f] = one;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = zero - m[i][f];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

// Solution of A x = b over Q: particular point + nullspace basis of A.
struct AffineSolution {
    std::vector<Rat> particular;
    std::vector<std::vector<Rat>> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

std::optional<AffineSolution> solve_affine(const QMatrix& a, const std::vector<Rat>& b, int cols);

int rank_q(QMatrix m);

// ---- integer lattice algorithms ----

struct SmithResult {
    std::vector<Int> divisors;  // all min(rows,cols), zeros included; d1 | d2 | ...
    IntMatrix u, v;             // unimodular, u*M*v = diag(divisors)
    IntMatrix vinv;             // inverse of v, maintained alongside
    int rank = 0;
    Int gcd_maximal_minors;     // product of nonzero divisors if full min-dim rank, else 0
    Int minor_gcd_rank() const {  // gcd of rank-order minors
        Int p = 1;
        for (int i = 0; i < rank; ++i) p *= divisors[i];
        return p;
    }
};

SmithResult smith_normal_form(const IntMatrix& m);

// Basis of (Q-row-span of A) intersected with Z^cols; k rows, maximal-minor gcd 1.
IntMatrix saturate_row_lattice(const IntMatrix& a);

// Row Hermite normal form with transform: returns (H, U) with U unimodular,
// H = U*A, H in row echelon form with positive pivots and reduced entries above.
std::pair<IntMatrix, IntMatrix> hermite_row(const IntMatrix& a);

// Integer solutions of B k = c: particular solution + kernel lattice basis
// (columns of the returned matrix), or nullopt when insolvable over Z.
struct IntAffineSolution {
    std::vector<Int> particular;
    IntMatrix kernel;  // cols = lattice basis vectors
};
std::optional<IntAffineSolution> solve_integer(const IntMatrix& b, const std::vector<Int>& c);

IntMatrix int_mat_mul(const IntMatrix& x, const IntMatrix& y);
Int det_int(IntMatrix m);

}  // namespace qav
