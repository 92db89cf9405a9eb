#pragma once

#include <optional>
#include <vector>

#include "qav/linalg.hpp"
#include "qav/rational.hpp"

namespace qav {

// Rectangular box with per-coordinate open/closed bounds.
struct Box {
    std::vector<Rat> lo, hi;
    std::vector<bool> open;  // applies to both ends of the coordinate

    int size() const { return static_cast<int>(lo.size()); }
    static Box open_unit_cube(int n) {
        return Box{std::vector<Rat>(n, Rat(0)), std::vector<Rat>(n, Rat(1)),
                   std::vector<bool>(n, true)};
    }
    static Box closed_unit_cube(int n) {
        return Box{std::vector<Rat>(n, Rat(0)), std::vector<Rat>(n, Rat(1)),
                   std::vector<bool>(n, false)};
    }
    bool contains(const std::vector<Rat>& x) const;
};

struct AffineLatticePointSet {
    QMatrix a;
    std::vector<Rat> b;
    std::vector<Int> denominators;  // m_j per coordinate
    Box box;
};

// All x with A x = b, x_j in (1/m_j) Z, x in box; exact, duplicate-free,
// sorted lexicographically. Hermite-form kernel parametrization with
// per-coordinate bound propagation; no full-grid scan.
std::vector<std::vector<Rat>> enumerate_affine_lattice_points(const AffineLatticePointSet& set);

// Is {x : A x = b} ∩ box nonempty respecting open/closed bounds? Exact simplex
// maximizing the minimum slack; returns a strictly interior witness if so.
std::optional<std::vector<Rat>> interior_feasible(const QMatrix& a, const std::vector<Rat>& b,
                                                  const Box& box);

// Linear functional g . x = c to be avoided.
struct AvoidFunctional {
    std::vector<Rat> g;
    Rat c;
};

// Nudges w inside span(w + basis) ∩ box so that no avoid functional (that is
// not identically satisfied on the span) holds at the result. Deterministic.
std::vector<Rat> genericize_witness(std::vector<Rat> w,
                                    const std::vector<std::vector<Rat>>& basis, const Box& box,
                                    const std::vector<AvoidFunctional>& avoid);

// maximize c . z subject to G z <= h, z free.
enum class LPStatus { Optimal, Infeasible, Unbounded };
struct LPResult {
    LPStatus status;
    Rat optimum;
    std::vector<Rat> point;
};
LPResult lp_maximize(const QMatrix& g, const std::vector<Rat>& h, const std::vector<Rat>& c);

}  // namespace qav
