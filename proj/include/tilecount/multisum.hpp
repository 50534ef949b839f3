#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilecount/exactnum.hpp"
#include "tilecount/polyhedron.hpp"

namespace tilecount {

// coeffs . v + n_coeff * n + constant
struct AffineForm {
  std::vector<std::int64_t> coeffs;
  std::int64_t n_coeff = 0;
  std::int64_t constant = 0;

  static AffineForm var(std::size_t j, std::int64_t c = 1);
  static AffineForm n(std::int64_t c = 1);
  static AffineForm cst(std::int64_t c);

  std::int64_t coeff(std::size_t j) const { return j < coeffs.size() ? coeffs[j] : 0; }
  std::int64_t eval(const std::vector<std::int64_t>& v, std::int64_t n) const;
  // Trailing zeros trimmed; dims-insensitive equality.
  bool operator==(const AffineForm& o) const;
  bool is_constant_in_v() const;
  std::size_t last_var() const;  // one past the last nonzero coefficient

  AffineForm operator+(const AffineForm& o) const;
  AffineForm operator-(const AffineForm& o) const;
  AffineForm operator*(std::int64_t k) const;
  AffineForm operator-() const { return *this * -1; }
  AffineForm operator+(std::int64_t k) const { return *this + cst(k); }
  AffineForm operator-(std::int64_t k) const { return *this - cst(k); }

  std::string to_string() const;
};

struct BinomialFactor {
  AffineForm alpha;
  AffineForm beta;
};

// value(n) = n_coeff * n + constant
struct AffineBound {
  std::int64_t n_coeff = 0;
  std::int64_t constant = 0;
  std::int64_t at(std::int64_t n) const { return n_coeff * n + constant; }
  bool operator==(const AffineBound& o) const { return n_coeff == o.n_coeff && constant == o.constant; }
};

// Certified per-coordinate range containing the support for every n >= 0.
struct SupportHint {
  std::vector<AffineBound> lo;
  std::vector<AffineBound> hi;
  bool operator==(const SupportHint& o) const { return lo == o.lo && hi == o.hi; }
};

struct BinomialMultiSum {
  std::size_t dims = 0;
  std::vector<BinomialFactor> factors;
  std::optional<SupportHint> hint;
};

struct BalancedFactor {
  AffineForm alpha;
  AffineForm beta;
  AffineForm gamma;
};

struct PositiveMultiSum {
  std::size_t dims = 0;
  std::vector<BalancedFactor> factors;
};

struct BalancedMultiSum {
  std::vector<PositiveMultiSum> components;
};

Integer ext_binom(std::int64_t a, std::int64_t b);

struct SupportBox {
  bool unbounded = false;
  bool empty = false;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
};

SupportBox bound_support(const BinomialMultiSum& ms, std::int64_t n);

struct EvalStats {
  std::uint64_t extended_hits = 0;  // ext_binom(-1, 0) evaluations
  std::uint64_t factor_evaluations = 0;
};

Integer eval_multisum(const BinomialMultiSum& ms, std::int64_t n, EvalStats* stats = nullptr);
// Enumerates an explicit box; used to test soundness of bound_support.
Integer eval_multisum_in_box(const BinomialMultiSum& ms, std::int64_t n, const SupportBox& box,
                             EvalStats* stats = nullptr);

Integer eval_positive(const PositiveMultiSum& ps, std::int64_t n);
Integer eval_balanced(const BalancedMultiSum& bs, std::int64_t n);

// Affine bounds in n valid for every n >= n_min on the support; nullopt
// for a coordinate without one.
struct UniformBounds {
  std::vector<std::optional<AffineBound>> lo;
  std::vector<std::optional<AffineBound>> hi;
  bool empty = false;  // no support at all for n >= n_min
  bool complete() const;
};
UniformBounds uniform_bounds(const BinomialMultiSum& ms, std::int64_t n_min = 0);

// Attaches a support hint derived from uniform_bounds when none is present.
BinomialMultiSum with_hint(BinomialMultiSum ms);

BalancedMultiSum to_balanced(const BinomialMultiSum& ms);
BinomialMultiSum from_balanced(const BalancedMultiSum& bs);
BinomialMultiSum positive_to_binomial(const PositiveMultiSum& ps);
// Throws INVALID_ARGUMENT when some triple has alpha != beta + gamma.
void check_balanced(const PositiveMultiSum& ps);

BinomialMultiSum ms_sum(const BinomialMultiSum& a, const BinomialMultiSum& b);
BinomialMultiSum ms_prod(const BinomialMultiSum& a, const BinomialMultiSum& b);
BinomialMultiSum ms_scale(const BinomialMultiSum& a, std::int64_t m);
// f(n - k) for n >= k and 0 below.
BinomialMultiSum ms_shift(const BinomialMultiSum& a, std::int64_t k);
// Substitutes v = U v'; U must be unimodular. Drops the hint.
BinomialMultiSum ms_substitute(const BinomialMultiSum& a, const std::vector<std::vector<std::int64_t>>& u);
BinomialMultiSum ms_zero();

BalancedMultiSum bs_sum(const BalancedMultiSum& a, const BalancedMultiSum& b);
BalancedMultiSum bs_prod(const BalancedMultiSum& a, const BalancedMultiSum& b);

// Incremental construction with per-variable certified ranges.
class MultiSumBuilder {
 public:
  std::size_t add_var(AffineBound lo, AffineBound hi);
  AffineForm var(std::size_t j) const { return AffineForm::var(j); }
  void add_factor(const AffineForm& alpha, const AffineForm& beta);
  // [form >= 0]
  void require_nonnegative(const AffineForm& form);
  // [form == 0]
  void require_zero(const AffineForm& form);
  // base^exponent as a sum over fresh variables; the exponent must be
  // nonnegative wherever the other factors are nonzero, and at most
  // exponent_hi(n) there.
  void add_power(const Integer& base, const AffineForm& exponent, AffineBound exponent_hi);
  void add_constant(std::int64_t m);
  BinomialMultiSum build() const;

 private:
  std::vector<AffineBound> lo_;
  std::vector<AffineBound> hi_;
  std::vector<BinomialFactor> factors_;
};

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& m);
bool is_prime(const Integer& p);

}  // namespace tilecount
