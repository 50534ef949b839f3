#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tilecount/exactnum.hpp"

namespace tilecount {

// coeffs . x + constant >= 0 over integer points x.
struct LinearConstraint {
  std::vector<Integer> coeffs;
  Integer constant;
};

struct CoordinateBounds {
  std::optional<Integer> lo;
  std::optional<Integer> hi;
};

inline constexpr std::size_t kDefaultFmCap = 20000;

// Fourier-Motzkin with gcd normalization and integer rounding. Returns
// nullopt when the system has no integer point detected by elimination.
// Rounding keeps it sound for integer points; infeasibility is exact over
// the reals only, so a nonempty result may still hold no lattice point.
std::optional<std::vector<CoordinateBounds>> fm_bounds(const std::vector<LinearConstraint>& system,
                                                       std::size_t vars, std::size_t cap = kDefaultFmCap);

// Projects onto the coordinates listed in `keep` (in that order).
std::optional<std::vector<LinearConstraint>> fm_project(const std::vector<LinearConstraint>& system,
                                                        std::size_t vars, const std::vector<std::size_t>& keep,
                                                        std::size_t cap = kDefaultFmCap);

bool fm_feasible(const std::vector<LinearConstraint>& system, std::size_t vars, std::size_t cap = kDefaultFmCap);

}  // namespace tilecount
