#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "tilecount/error.hpp"

namespace tilecount {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBudget = 64;

struct Interval {
  Rational lo;
  Rational hi;
};

// No refinement: the declared enclosure is all we know.
struct FixedEnclosure {};

// Nested intervals, used in order after the declared one.
struct IntervalTable {
  std::vector<Interval> levels;
};

// Unique root of a rational polynomial inside the enclosure; coefficients
// from the leading term down to the constant.
struct PolynomialRoot {
  std::vector<Rational> coeffs;
};

using RefinementRule = std::variant<FixedEnclosure, IntervalTable, PolynomialRoot>;

struct BasisSymbol {
  std::string name;
  Interval enclosure;
  RefinementRule refine = FixedEnclosure{};
  bool allow_nonpositive = false;
};

class IrrationalBasis {
 public:
  static std::shared_ptr<const IrrationalBasis> create(std::vector<BasisSymbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  const BasisSymbol& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<BasisSymbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // One refinement step; returns false when the rule cannot tighten further.
  bool refine(std::size_t i, Interval& current) const;

  bool same_as(const IrrationalBasis& other) const;

 private:
  explicit IrrationalBasis(std::vector<BasisSymbol> symbols) : symbols_(std::move(symbols)) {}
  std::vector<BasisSymbol> symbols_;
};

using BasisPtr = std::shared_ptr<const IrrationalBasis>;

Rational eval_polynomial(const std::vector<Rational>& coeffs, const Rational& x);

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

// Coordinate 0 is the rational part, coordinate j + 1 is basis symbol j.
class FieldElement {
 public:
  using Term = std::pair<std::size_t, Rational>;

  FieldElement() = default;
  FieldElement(const Rational& q);  // NOLINT(google-explicit-constructor)
  FieldElement(long q) : FieldElement(Rational(q)) {}  // NOLINT
  FieldElement(int q) : FieldElement(Rational(q)) {}   // NOLINT

  static FieldElement symbol(BasisPtr basis, std::size_t index, const Rational& coeff = 1);
  static FieldElement from_terms(BasisPtr basis, std::vector<Term> terms);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Term>& terms() const { return terms_; }
  Rational coefficient(std::size_t coord) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  Rational rational_part() const { return coefficient(0); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement scaled(const Rational& q) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  // Structural total order, used only for deterministic sorting.
  static int structural_compare(const FieldElement& a, const FieldElement& b);

  std::size_t hash() const;
  std::string to_string() const;

  // Interval containing the value, from per-symbol intervals.
  Interval enclose(const std::vector<Interval>& symbol_intervals) const;

 private:
  BasisPtr basis_;
  std::vector<Term> terms_;
};

struct FieldElementHash {
  std::size_t operator()(const FieldElement& a) const { return a.hash(); }
};

BasisPtr common_basis(const BasisPtr& a, const BasisPtr& b);

Sign fe_sign(const FieldElement& a, unsigned precision_budget = kDefaultPrecisionBudget);
// Sign of a - b.
Sign fe_compare(const FieldElement& a, const FieldElement& b,
                unsigned precision_budget = kDefaultPrecisionBudget);

Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& q);
std::size_t hash_integer(const Integer& z);

}  // namespace tilecount
