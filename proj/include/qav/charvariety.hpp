#pragma once

#include <map>
#include <string>
#include <vector>

#include "qav/quasiadjunction.hpp"
#include "qav/sheafcoh.hpp"

namespace qav {

// Coset of a subtorus of (C*)^r: saturated exponent rows (including the rows
// t_j = 1 off the supporting subcurve) and translation exponents beta mod 1.
struct TorusComponent {
    int r = 0;
    std::vector<int> support;  // component indices with coordinate generically != 1
    IntMatrix rows;            // k x r, embedded
    std::vector<Rat> beta;     // size k, entries in [0,1)
    int dim = 0;
    int depth = 0;
    uint32_t prov_mask = 0;
    std::string prov_face;     // saturated S of the originating face, serialized
    bool essential = false;
    std::string canon;         // canonical serialization (HNF rows + adjusted beta)
};

std::string component_canonical_key(const IntMatrix& rows, const std::vector<Rat>& beta);

TorusComponent component_from_face(const Curve& curve, const QFace& face, int h1);

// exponent vector of a torsion character, one entry per component, values mod 1
using CharacterExp = std::vector<Rat>;

bool component_contains(const TorusComponent& comp, const CharacterExp& omega);

// set containment of the cosets: inner subset of outer
bool component_contains_subtorus(const TorusComponent& outer, const TorusComponent& inner);

// Additive depth: sum of depths of the distinct components containing omega.
long depth_at(const std::vector<TorusComponent>& comps, const CharacterExp& omega);

// Sakuma-style depth against the component list of the subcurve C_omega:
// only components whose support equals the support of omega count.
long depth_branched(const std::vector<TorusComponent>& comps, const CharacterExp& omega);

enum class CountPredicate { All, FullSupport, Nontrivial };

// Number of characters of prod mu_{m_i} on the coset satisfying the predicate,
// by Smith-form solution counting.
Int count_torsion_points(const TorusComponent& comp, const std::vector<Int>& orders,
                         CountPredicate pred);

// ---- whole-curve assembly ----

struct FaceResult {
    QFace face;
    bool has_coh = false;
    CohomologyResult coh;  // valid when the face is contributing
    int twist = 0;
};

struct Analysis {
    Curve curve;
    Incidence inc;
    bool fast = false;
    std::vector<uint32_t> masks;
    std::map<uint32_t, std::vector<FaceResult>> faces;
    std::vector<TorusComponent> components;  // merged, canonical order
    std::vector<std::string> warnings;
};

Analysis analyze_curve(const Curve& curve, bool fast);

}  // namespace qav
