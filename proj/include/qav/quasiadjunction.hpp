#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qav/arrangement.hpp"
#include "qav/lattice.hpp"
#include "qav/linalg.hpp"

namespace qav {

// A global face of quasiadjunction of a subcurve, canonically saturated.
struct QFace {
    uint32_t mask = 0;                     // subcurve
    std::vector<int> comps;                // sorted component indices of mask
    std::vector<std::pair<int, int>> s;    // (vertex index, local face choice), saturated
    QMatrix a;                             // saturated system over |comps| variables
    std::vector<Rat> b;
    std::vector<Rat> witness;              // generic interior point of the solution set
    std::vector<std::vector<Rat>> basis;   // nullspace of a
    int dim = 0;
    bool level_constant = false;
    Rat level;                             // defined when level_constant
    bool contributing = false;             // level constant and integral
    Int order = 1;                         // a_delta
    std::vector<std::pair<int, long>> scheme;  // (vertex index, stalk exponent >= 1)
};

// Local faces of a catalog singularity in its own branch variables.
// ordinary(m): m-2 faces {sum = s, exponent m-1-s}; ordinary(2) -> empty;
// cusp: {x = 1/6, exponent 1}; tacnode: {x+y = 1/2, exponent 1}; custom: as given.
std::vector<LocalFaceDescriptor> local_faces(const SingularPointSpec& spec);

// Local faces of vertex v induced on the subcurve `mask`, rewritten in the
// subcurve's component variables (columns follow `comps`). Empty when the
// vertex is not eligible on this subcurve.
std::vector<LocalFaceDescriptor> induced_local_faces(const Curve& curve, const Vertex& v,
                                                     uint32_t mask,
                                                     const std::vector<int>& comps);

// All faces of quasiadjunction of the subcurve, deduplicated by saturated key.
// `fast` enables the Cor 4.1 pruning of candidate subsets.
std::vector<QFace> enumerate_faces(const Curve& curve, const Incidence& inc, uint32_t mask,
                                   bool fast);

// gcd of maximal-order minors of the coefficient part after normalizing the
// augmented system [A|b] to a saturated integer row lattice.
Int face_order(const QMatrix& a, const std::vector<Rat>& b);

std::vector<int> mask_components(uint32_t mask);

}  // namespace qav
