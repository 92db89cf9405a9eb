#include "qav/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace qav {

std::vector<FieldElement> normalize_proj(std::vector<FieldElement> v) {
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        FieldElement inv = x.inv();
        for (auto& y : v) y = y * inv;
        return v;
    }
    throw ValidationError("zero projective triple");
}

ProjLine make_line(const FieldPtr& field, std::vector<FieldElement> coeffs) {
    if (coeffs.size() != 3) throw ValidationError("line needs exactly 3 coefficients");
    for (const auto& c : coeffs)
        if (c.field() != field) throw ValidationError("line coefficient in wrong field");
    bool all_zero = true;
    for (const auto& c : coeffs) all_zero = all_zero && c.is_zero();
    if (all_zero) throw ValidationError("line (0,0,0) is degenerate");
    return ProjLine{normalize_proj(std::move(coeffs))};
}

namespace {

std::vector<FieldElement> cross(const std::vector<FieldElement>& a,
                                const std::vector<FieldElement>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::string point_key(const std::vector<FieldElement>& p) {
    return p[0].str() + "|" + p[1].str() + "|" + p[2].str();
}

}  // namespace

void validate_curve(const Curve& curve) {
    if (!curve.field) throw ValidationError("curve has no number field");
    if (curve.degrees.empty()) throw ValidationError("curve has no components");
    if (curve.r() > 31) throw UnsupportedError("more than 31 components");

    if (curve.mode == CurveMode::Lines) {
        if (static_cast<int>(curve.lines.size()) != curve.r())
            throw ValidationError("lines/degrees mismatch");
        for (long d : curve.degrees)
            if (d != 1) throw ValidationError("lines mode requires all degrees 1");
        const FieldPtr& f = curve.field;
        const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
        for (size_t i = 0; i < curve.lines.size(); ++i) {
            const auto& li = curve.lines[i].c;
            if (li[0] == zero && li[1] == zero && li[2] == one)
                throw ValidationError("input line equals the line at infinity z=0");
            for (size_t j = 0; j < i; ++j) {
                if (curve.lines[i] == curve.lines[j])
                    throw ValidationError("non-reduced curve: duplicate line");
                auto p = cross(li, curve.lines[j].c);
                if (p[2].is_zero())
                    throw ValidationError(
                        "line at infinity not transversal: parallel input lines");
            }
        }
        return;
    }

    // components mode
    for (long d : curve.degrees)
        if (d < 1) throw ValidationError("component degree must be >= 1");
    std::map<std::string, int> seen;
    for (size_t s = 0; s < curve.sing.size(); ++s) {
        const auto& sp = curve.sing[s];
        if (sp.point.size() != 3) throw ValidationError("singular point needs 3 coordinates");
        if (sp.point[2].is_zero())
            throw ValidationError("singular point on the line at infinity z=0");
        auto key = point_key(normalize_proj(sp.point));
        if (!seen.emplace(key, static_cast<int>(s)).second)
            throw ValidationError("duplicate singular point");
        if (sp.branches.empty()) throw ValidationError("singular point without branches");
        for (int b : sp.branches)
            if (b < 0 || b >= curve.r())
                throw ValidationError("branch refers to a nonexistent component");
        switch (sp.type) {
            case SingType::Ordinary:
                if (sp.branches.size() < 2)
                    throw ValidationError("ordinary point needs multiplicity >= 2");
                break;
            case SingType::Cusp:
                if (sp.branches.size() != 1) throw ValidationError("cusp has exactly 1 branch");
                break;
            case SingType::Tacnode:
                if (sp.branches.size() != 2)
                    throw ValidationError("tacnode has exactly 2 branches");
                break;
            case SingType::Custom:
                if (sp.custom_faces.empty())
                    throw ValidationError("custom singularity without face descriptors");
                for (const auto& fd : sp.custom_faces) {
                    if (fd.equations.empty())
                        throw ValidationError("custom face with empty equation set");
                    if (fd.equations.size() != fd.rhs.size())
                        throw ValidationError("custom face equations/rhs mismatch");
                    for (const auto& row : fd.equations)
                        if (row.size() != sp.branches.size())
                            throw ValidationError("custom face equation arity mismatch");
                    if (fd.exponent < 0)
                        throw ValidationError("custom face with negative exponent");
                }
                break;
        }
    }
}

Incidence build_incidence(const Curve& curve) {
    Incidence inc;
    if (curve.mode == CurveMode::Lines) {
        std::map<std::string, Vertex> verts;
        const int r = curve.r();
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                auto p = normalize_proj(cross(curve.lines[i].c, curve.lines[j].c));
                auto& v = verts[point_key(p)];
                if (v.point.empty()) v.point = p;
                for (int k : {i, j})
                    if (std::find(v.branch_comps.begin(), v.branch_comps.end(), k) ==
                        v.branch_comps.end())
                        v.branch_comps.push_back(k);
            }
        for (auto& [key, v] : verts) {
            (void)key;
            std::sort(v.branch_comps.begin(), v.branch_comps.end());
            inc.vertices.push_back(std::move(v));
        }
    } else {
        for (size_t s = 0; s < curve.sing.size(); ++s) {
            Vertex v;
            v.point = normalize_proj(curve.sing[s].point);
            v.branch_comps = curve.sing[s].branches;
            std::sort(v.branch_comps.begin(), v.branch_comps.end());
            v.spec_index = static_cast<int>(s);
            inc.vertices.push_back(std::move(v));
        }
    }
    // deterministic order: by point coordinates
    std::sort(inc.vertices.begin(), inc.vertices.end(), [](const Vertex& a, const Vertex& b) {
        for (int i = 0; i < 3; ++i) {
            if (a.point[i] != b.point[i]) return a.point[i] < b.point[i];
        }
        return false;
    });
    return inc;
}

std::vector<uint32_t> enumerate_subcurves(const Curve& curve) {
    const uint32_t full = (1u << curve.r()) - 1;
    std::vector<uint32_t> masks;
    for (uint32_t m = 1; m <= full; ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return masks;
}

}  // namespace qav
