#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qav/charvariety.hpp"

namespace qav {

// Irreducible component of the degree-1 resonance variety R^1 of a line
// arrangement: a linear subspace of C^r, combinatorially determined.
struct ResonanceComponent {
    std::vector<int> lines;               // support: j with s_j not identically 0
    std::vector<int> vertices;            // vertices with sigma_P identically 0
    std::vector<std::vector<Rat>> basis;  // canonical nullspace basis
    int dim = 0;
    std::string canon;                    // serialized basis
};

// dim H^1 of the Aomoto complex at the weight vector a (a != 0):
// nullity of the wedge-condition matrix minus one.
long aomoto_h1(const Curve& curve, const Incidence& inc, const std::vector<Rat>& a);

// All components of R^1 of dimension >= 2 via the saturated (L, T) sweep with
// kernel refinement at a seeded generic sample. Deterministic for fixed seed;
// the result is seed-independent.
std::vector<ResonanceComponent> resonance_components(const Curve& curve, const Incidence& inc,
                                                     uint64_t seed);

// Checks the tangent-cone correspondence on an analyzed arrangement: the
// characteristic-variety components through the identity of dimension >= 2
// biject with the R^1 components via tangent spaces, with depth = dim - 1.
struct Thm54Report {
    bool ok = true;
    int n_char = 0;       // maximal identity components of dimension >= 2
    int n_resonance = 0;  // resonance components
    std::vector<std::string> details;  // mismatch descriptions when !ok
};
Thm54Report verify_thm54(const Analysis& an, uint64_t seed);

}  // namespace qav
