#pragma once

#include <cstddef>
#include <vector>

#include "tilecount/cycles.hpp"
#include "tilecount/gf.hpp"
#include "tilecount/lattice.hpp"
#include "tilecount/multisum.hpp"
#include "tilecount/tiles.hpp"

namespace tilecount {

struct TranslateOptions {
  unsigned precision_budget = kDefaultPrecisionBudget;
  std::size_t var_cap = variable_cap();
  std::size_t cycle_cap = kDefaultCycleCap;
  std::size_t network_cap = 20000;
  Progress progress;
};

// Solutions of c . z = n + eps as z = n * particular_n + particular_1 + kernel v.
struct LatticeSolution {
  std::vector<IntVector> kernel;
  IntVector particular_n;
  IntVector particular_1;
};

struct TileTranslation {
  WeightedGraph graph;  // transfer graph plus the unit and epsilon loops
  CycleSystem cycles;
  LatticeSolution lattice;
  BinomialMultiSum multisum;
};

TileTranslation translate_tiles(const TileSet& ts, const TranslateOptions& opt = {});
BinomialMultiSum tiles_to_multisum(const TileSet& ts, const TranslateOptions& opt = {});

// Lattice of integer vectors z with sum z_i c_i = n + eps.
LatticeSolution solve_weights(const std::vector<FieldElement>& weights, std::size_t unit_index,
                              std::optional<std::size_t> eps_index);

TileSet gf_to_tiles(const GFExpr& e, const TranslateOptions& opt = {});

struct MultisumGF {
  GFExpr quasi;                          // coefficient at (m_1 n, ..., m_k n) is f(n) for n >= 1
  std::vector<std::size_t> multipliers;  // the m_i
  GFExpr diagonal;                       // plain diagonal equals f(n) for all n >= 0
};

MultisumGF multisum_to_gf_detailed(const BinomialMultiSum& ms, const TranslateOptions& opt = {});
GFExpr multisum_to_gf(const BinomialMultiSum& ms, const TranslateOptions& opt = {});

}  // namespace tilecount
