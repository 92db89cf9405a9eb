#pragma once

#include <map>
#include <string>
#include <vector>

#include "qav/errors.hpp"
#include "qav/linalg.hpp"
#include "qav/numberfield.hpp"

namespace qav {

// Fat point: affine point with an order-of-vanishing condition M^a.
struct FatPoint {
    FieldElement x, y;  // affine chart z = 1
    long order = 1;
};

struct FatPointScheme {
    std::vector<FatPoint> points;  // pairwise distinct, orders >= 1
};

struct CohomologyResult {
    int degree = 0;
    long h0 = 0;
    long chi = 0;
    long h1 = 0;
    long conditions = 0;
};

// Nullity of the exact derivative-condition matrix for plane curves of degree n.
long h0_linear_system(int n, const FatPointScheme& scheme);

// h1 = h0 - chi using vanishing of h2 for n >= -2; errors for n < -2.
CohomologyResult superabundance(int n, const FatPointScheme& scheme);

// Memoized front-end keyed by (n, canonical scheme).
class SheafCache {
  public:
    const CohomologyResult& get(int n, const FatPointScheme& scheme);

  private:
    std::map<std::string, CohomologyResult> memo_;
};

}  // namespace qav
