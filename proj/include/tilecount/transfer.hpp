#pragma once

#include <cstddef>
#include <vector>

#include "tilecount/tiles.hpp"

namespace tilecount {

struct TransferEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  FieldElement weight;
  std::size_t tile = 0;
};

struct TransferGraph {
  std::vector<Profile> vertices;  // index 0 is the vertical line
  std::vector<TransferEdge> edges;
  FieldElement epsilon;

  std::size_t vertex_count() const { return vertices.size(); }
  std::vector<std::vector<std::size_t>> out_edges() const;
};

TransferGraph build_graph(const TileSet& ts, unsigned precision_budget = kDefaultPrecisionBudget);

// Number of closed walks at vertex 0 of total weight `target`.
Integer count_closed_walks(const TransferGraph& g, const FieldElement& target,
                           unsigned precision_budget = kDefaultPrecisionBudget);

Integer count_tilings(const TileSet& ts, std::size_t n, unsigned precision_budget = kDefaultPrecisionBudget);

std::vector<std::vector<std::size_t>> enumerate_tilings(const TileSet& ts, std::size_t n, std::size_t limit,
                                                        unsigned precision_budget = kDefaultPrecisionBudget);

}  // namespace tilecount
