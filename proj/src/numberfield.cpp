#include "qav/numberfield.hpp"

#include <algorithm>
#include <sstream>

namespace qav {
namespace {

// --- polynomial helpers over Q, dense low-to-high coefficient vectors ---

using Poly = std::vector<Rat>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

Poly poly_scale(Poly a, const Rat& c) {
    for (auto& x : a) x *= c;
    return a;
}

// a = q*b + r with deg r < deg b; b nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Rat(0));
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat c = a.back() / b.back();
        int shift = deg(a) - deg(b);
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    return {q, a};
}

// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
std::tuple<Poly, Poly, Poly> poly_xgcd(Poly a, Poly b) {
    Poly u0{Rat(1)}, v0, u1, v1{Rat(1)};
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(a, b);
        Poly u2 = poly_sub(u0, poly_mul(q, u1));
        Poly v2 = poly_sub(v0, poly_mul(q, v1));
        a = b;
        b = r;
        u0 = u1;
        v0 = v1;
        u1 = u2;
        v1 = v2;
    }
    if (!a.empty() && a.back() != 1) {
        Rat lead = a.back();
        a = poly_scale(a, 1 / lead);
        u0 = poly_scale(u0, 1 / lead);
        v0 = poly_scale(v0, 1 / lead);
    }
    return {a, u0, v0};
}

// Divisors of |n| including both signs; |n| expected tiny-to-moderate.
std::vector<Int> signed_divisors(const Int& n) {
    std::vector<Int> out;
    Int m = abs(n);
    for (Int d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            out.push_back(-d);
            Int e = m / d;
            if (e != d) {
                out.push_back(e);
                out.push_back(-e);
            }
        }
    }
    return out;
}

bool has_rational_root(const std::vector<Int>& p) {
    // Monic integer polynomial: rational roots are integer divisors of p[0].
    if (p[0] == 0) return true;
    for (const Int& r : signed_divisors(p[0])) {
        Int v = 0;
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * r + p[i];
        if (v == 0) return true;
    }
    return false;
}

// Quartic x^4+ax^3+bx^2+cx+d: try integer factorizations into two monic
// quadratics (x^2+px+q)(x^2+rx+s). Gauss' lemma: a rational factorization of a
// monic integer polynomial implies an integer one.
bool quartic_splits_quadratic(const std::vector<Int>& p) {
    const Int a = p[3], b = p[2], c = p[1], d = p[0];
    if (d == 0) return true;
    for (const Int& q : signed_divisors(d)) {
        Int s_den = q;
        Int s = d / q;
        (void)s_den;
        // Need p + r = a, q + s + p*r = b, p*s + q*r = c.
        // Solve the linear system in p, r for each divisor pair (q, s).
        // p + r = a and p*r = b - q - s; p, r are roots of t^2 - a t + (b-q-s).
        Int pr = b - q - s;
        Int disc = a * a - 4 * pr;
        if (disc < 0) continue;
        Int sq = sqrt(disc);
        if (sq * sq != disc) continue;
        for (int sign = -1; sign <= 1; sign += 2) {
            Int two_p = a + sign * sq;
            if (two_p % 2 != 0) continue;
            Int pp = two_p / 2;
            Int rr = a - pp;
            if (pp * s + q * rr == c) return true;
        }
    }
    return false;
}

bool irreducible_checked(const std::vector<Int>& p) {
    const int k = static_cast<int>(p.size()) - 1;
    if (k == 1) return true;
    if (k <= 3) return !has_rational_root(p);
    if (k == 4) return !has_rational_root(p) && !quartic_splits_quadratic(p);
    return true;  // trusted; caller records that no check ran
}

}  // namespace

NumberField::NumberField(std::string generator, std::vector<Int> min_poly)
    : gen_(std::move(generator)), poly_(std::move(min_poly)) {
    while (poly_.size() > 1 && poly_.back() == 0) poly_.pop_back();
    if (poly_.size() < 2) throw std::invalid_argument("minimal polynomial must have degree >= 1");
    if (poly_.back() != 1) throw std::invalid_argument("minimal polynomial must be monic");
    if (degree() <= 4) {
        if (!irreducible_checked(poly_))
            throw std::invalid_argument("minimal polynomial is reducible over Q");
        checked_ = true;
    }
}

FieldPtr NumberField::rationals() {
    static const FieldPtr q = std::make_shared<NumberField>("x", std::vector<Int>{0, 1});
    return q;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("null field");
    const size_t k = static_cast<size_t>(field_->degree());
    if (c_.size() > k) {
        // reduce modulo the minimal polynomial
        const auto& mp = field_->min_poly();
        for (size_t i = c_.size(); i-- > k;) {
            Rat t = c_[i];
            if (t == 0) continue;
            c_[i] = 0;
            for (size_t j = 0; j < k; ++j) c_[i - k + j] -= t * Rat(mp[j]);
        }
    }
    c_.resize(k, Rat(0));
}

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rat& r) {
    std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
    c[0] = r;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::zero(const FieldPtr& field) { return from_rational(field, Rat(0)); }
FieldElement FieldElement::one(const FieldPtr& field) { return from_rational(field, Rat(1)); }

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (field->degree() == 1) {
        // alpha is the root of x = 0 in the degree-1 field
        return zero(field);
    }
    std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
    c[1] = 1;
    return FieldElement(field, std::move(c));
}

bool FieldElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat FieldElement::rational_value() const {
    if (!is_rational()) throw std::domain_error("field element is not rational");
    return c_[0];
}

void FieldElement::check_same(const FieldElement& o) const {
    if (field_ != o.field_) throw std::domain_error("mixed number fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    std::vector<Rat> c = c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    std::vector<Rat> c = c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c = c_;
    for (auto& x : c) x = -x;
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    std::vector<Rat> prod(2 * c_.size(), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return FieldElement(field_, std::move(prod));
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw std::domain_error("inversion of zero field element");
    Poly a(c_.begin(), c_.end());
    trim(a);
    Poly m;
    for (const Int& x : field_->min_poly()) m.emplace_back(x);
    auto [g, u, v] = poly_xgcd(a, m);
    (void)v;
    if (deg(g) != 0)
        throw std::domain_error("element not invertible (minimal polynomial reducible?)");
    return FieldElement(field_, std::vector<Rat>(u.begin(), u.end()));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

bool FieldElement::operator==(const FieldElement& o) const {
    check_same(o);
    return c_ == o.c_;
}

bool FieldElement::operator<(const FieldElement& o) const {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) {
        int cmp = ::cmp(c_[i], o.c_[i]);
        if (cmp != 0) return cmp < 0;
    }
    return false;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << rat_str(c_[i]);
    }
    os << "]";
    return os.str();
}

}  // namespace qav
