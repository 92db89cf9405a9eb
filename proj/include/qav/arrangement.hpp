#pragma once

#include <cstdint>
#include <vector>

#include "qav/errors.hpp"
#include "qav/linalg.hpp"
#include "qav/numberfield.hpp"

namespace qav {

enum class CurveMode { Lines, Components };
enum class SingType { Ordinary, Cusp, Tacnode, Custom };

// One face of a local polytope of quasiadjunction: linear equations in the
// branch variables plus the exponent a of the monomial stalk ideal M^a.
struct LocalFaceDescriptor {
    QMatrix equations;       // rows over the local branches
    std::vector<Rat> rhs;
    long exponent = 0;
};

struct SingularPointSpec {
    std::vector<FieldElement> point;  // projective (x:y:z), z != 0
    SingType type = SingType::Ordinary;
    std::vector<int> branches;        // component index of each local branch
    std::vector<LocalFaceDescriptor> custom_faces;  // only for SingType::Custom
};

struct ProjLine {
    std::vector<FieldElement> c;  // (a,b,c) of ax+by+cz = 0, first nonzero = 1
    bool operator==(const ProjLine& o) const { return c == o.c; }
};

struct Curve {
    CurveMode mode = CurveMode::Lines;
    FieldPtr field;
    std::vector<ProjLine> lines;          // lines mode
    std::vector<long> degrees;            // one per component; all 1 in lines mode
    std::vector<SingularPointSpec> sing;  // components mode input

    int r() const { return static_cast<int>(degrees.size()); }
    long total_degree() const {
        long d = 0;
        for (long x : degrees) d += x;
        return d;
    }
};

struct Vertex {
    std::vector<FieldElement> point;  // normalized projective coordinates
    std::vector<int> branch_comps;    // component index per branch, sorted
    int spec_index = -1;              // components mode: index into curve.sing

    int mult() const { return static_cast<int>(branch_comps.size()); }
    // branch count within a component subset
    int induced_mult(uint32_t mask) const {
        int m = 0;
        for (int c : branch_comps)
            if (mask >> c & 1u) ++m;
        return m;
    }
};

struct Incidence {
    std::vector<Vertex> vertices;
};

// Normalizes a coefficient/coordinate triple so the first nonzero entry is 1.
std::vector<FieldElement> normalize_proj(std::vector<FieldElement> v);

ProjLine make_line(const FieldPtr& field, std::vector<FieldElement> coeffs);

// Throws ValidationError / UnsupportedError per the documented rules.
void validate_curve(const Curve& curve);

Incidence build_incidence(const Curve& curve);

// Nonempty component subsets, ordered by size then numeric mask value.
std::vector<uint32_t> enumerate_subcurves(const Curve& curve);

}  // namespace qav
