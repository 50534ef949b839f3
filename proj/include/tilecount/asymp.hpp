#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tilecount/exactnum.hpp"

namespace tilecount {

enum class GrowthClass { EventuallyPolynomial, Exponential, Inconclusive };

std::string to_string(GrowthClass c);

// Fit of f(n) ~ A lambda^n n^alpha (log n + C)^beta on the class n = residue mod m.
struct ResidueFit {
  std::size_t residue = 0;
  std::size_t count = 0;
  GrowthClass growth = GrowthClass::Inconclusive;
  // Eventually polynomial: degree of the tail polynomial, -1 for the zero tail.
  int degree = 0;
  double lambda = 0;
  double lambda_ratio = 0;  // successive-ratio pre-estimate
  double alpha = 0;
  double beta = 0;
  double log_shift = 0;  // C in (log n + C)^beta
  double a = 0;  // A
  double rms_residual = 0;
  bool lambda_snapped = false;
  bool log_factor = false;
};

struct AsympReport {
  std::size_t modulus = 1;
  std::vector<ResidueFit> classes;
  GrowthClass overall = GrowthClass::Inconclusive;
};

inline constexpr std::size_t kMinClassSize = 30;

// values[i] = f(offset + i). Throws INSUFFICIENT_DATA when a class has fewer
// than kMinClassSize values.
AsympReport asymp_fit(const std::vector<Integer>& values, std::size_t modulus = 1, std::size_t offset = 0);

// Natural log of a positive integer without overflow.
double log_integer(const Integer& z);

std::string format_report(const AsympReport& r);

}  // namespace tilecount
