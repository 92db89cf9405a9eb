#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qav/rational.hpp"

namespace qav {

// A simple number field Q(alpha) with a monic integer minimal polynomial.
// Degree 1 (minimal polynomial x) is plain Q; towers are out of scope.
class NumberField {
  public:
    NumberField(std::string generator, std::vector<Int> min_poly);

    const std::string& generator() const { return gen_; }
    // Coefficients c_0,...,c_k of x^k + c_{k-1}x^{k-1} + ... + c_0, low to high,
    // including the leading 1.
    const std::vector<Int>& min_poly() const { return poly_; }
    int degree() const { return static_cast<int>(poly_.size()) - 1; }
    bool is_rational() const { return degree() == 1; }
    // True when irreducibility was actually verified (degree <= 4); degree >= 5
    // polynomials are trusted, which the report discloses.
    bool irreducibility_checked() const { return checked_; }

    static std::shared_ptr<const NumberField> rationals();

  private:
    std::string gen_;
    std::vector<Int> poly_;
    bool checked_ = false;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q(alpha): coefficient vector of length degree(), reduced mod the
// minimal polynomial.
class FieldElement {
  public:
    FieldElement() = default;  // invalid until assigned
    FieldElement(FieldPtr field, std::vector<Rat> coeffs);

    static FieldElement from_rational(const FieldPtr& field, const Rat& r);
    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    static FieldElement generator(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;  // all coefficients above constant term vanish
    Rat rational_value() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inv() const;
    FieldElement operator/(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // Total order on coefficient vectors; used only for deterministic sorting.
    bool operator<(const FieldElement& o) const;

    std::string str() const;

  private:
    void check_same(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<Rat> c_;
};

}  // namespace qav
