#include "qav/sheafcoh.hpp"

#include <algorithm>
#include <sstream>

namespace qav {

namespace {

// falling factorial u (u-1) ... (u-i+1) as an exact integer
Int falling(long u, long i) {
    Int p = 1;
    for (long k = 0; k < i; ++k) p *= Int(u - k);
    return p;
}

}  // namespace

long h0_linear_system(int n, const FatPointScheme& scheme) {
    if (n < 0) return 0;
    const long cols = static_cast<long>(n + 1) * (n + 2) / 2;
    if (scheme.points.empty()) return cols;

    const FieldPtr field = scheme.points[0].x.field();
    // monomial order: x^u y^v with u+v <= n, lexicographic in (u, v)
    std::vector<std::pair<long, long>> mono;
    for (long u = 0; u <= n; ++u)
        for (long v = 0; u + v <= n; ++v) mono.emplace_back(u, v);

    std::vector<std::vector<FieldElement>> m;
    for (const auto& p : scheme.points) {
        if (p.order < 1) throw ValidationError("fat point with order < 1");
        // powers of the coordinates
        std::vector<FieldElement> px{FieldElement::one(field)}, py{FieldElement::one(field)};
        for (int k = 1; k <= n; ++k) {
            px.push_back(px.back() * p.x);
            py.push_back(py.back() * p.y);
        }
        for (long i = 0; i < p.order; ++i)
            for (long j = 0; i + j < p.order; ++j) {
                std::vector<FieldElement> row;
                row.reserve(mono.size());
                for (auto& [u, v] : mono) {
                    if (u < i || v < j) {
                        row.push_back(FieldElement::zero(field));
                        continue;
                    }
                    Rat coef(falling(u, i) * falling(v, j));
                    row.push_back(FieldElement::from_rational(field, coef) * px[u - i] *
                                  py[v - j]);
                }
                m.push_back(std::move(row));
            }
    }
    auto rn = rank_nullspace(std::move(m));
    return cols - rn.rank;
}

CohomologyResult superabundance(int n, const FatPointScheme& scheme) {
    if (n < -2) throw UnsupportedError("h2 obstruction; unsupported twist n < -2");
    CohomologyResult res;
    res.degree = n;
    long cond = 0;
    for (const auto& p : scheme.points) cond += p.order * (p.order + 1) / 2;
    res.conditions = cond;
    const long chi_o = n >= 0 ? static_cast<long>(n + 1) * (n + 2) / 2 : 0;
    res.chi = chi_o - cond;
    res.h0 = h0_linear_system(n, scheme);
    res.h1 = res.h0 - res.chi;
    if (res.h1 < 0) throw std::logic_error("negative superabundance");
    return res;
}

const CohomologyResult& SheafCache::get(int n, const FatPointScheme& scheme) {
    std::ostringstream key;
    key << n << "#";
    std::vector<std::string> parts;
    for (const auto& p : scheme.points) {
        std::ostringstream ps;
        ps << p.x.str() << "," << p.y.str() << "," << p.order;
        parts.push_back(ps.str());
    }
    std::sort(parts.begin(), parts.end());
    for (const auto& s : parts) key << s << ";";
    auto it = memo_.find(key.str());
    if (it != memo_.end()) return it->second;
    return memo_.emplace(key.str(), superabundance(n, scheme)).first->second;
}

}  // namespace qav
