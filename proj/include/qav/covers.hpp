#pragma once

#include "qav/charvariety.hpp"

namespace qav {

// Number of interior C'-points with denominators `orders` in the relative
// interior of the face (characters counted by Thm 3.1a).
Int face_point_count(const Analysis& an, const FaceResult& fr, const std::vector<Int>& orders);

// Eq. (3.1.1): sum over subcurves and contributing faces of N(delta) * h1.
Int irregularity(const Analysis& an, const std::vector<Int>& orders);

// Eq. (1.3.2.2): branched-cover first Betti number.
Int betti_branched(const Analysis& an, const std::vector<Int>& orders);

// Eq. (1.3.2.1): unbranched b1 = r + sum of additive depths.
Int betti_unbranched(const Analysis& an, const std::vector<Int>& orders);

// Eq. (1.3.4.1): Milnor fiber b1 = r - 1 + diagonal character depths.
Int milnor_b1(const Analysis& an);

// Cover defined by a surjection H1 -> prod Z/n_s given by the q x r integer
// matrix Q (gamma_i maps to the i-th column). Returns the branched b1.
struct QuotientCover {
    IntMatrix q;              // q.rows = number of target factors, q.cols = r
    std::vector<Int> orders;  // n_1..n_q
};
Int quotient_betti_branched(const Analysis& an, const QuotientCover& cover,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace qav
