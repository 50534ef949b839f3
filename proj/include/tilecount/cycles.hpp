#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "tilecount/transfer.hpp"

namespace tilecount {

// Called at yield points with a stage name and a running counter; may throw
// Error(ErrorCode::Cancelled) to abort the computation.
using Progress = std::function<void(std::string_view stage, std::size_t done)>;

struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  FieldElement weight;
};

struct WeightedGraph {
  std::size_t vertex_count = 1;
  std::vector<WeightedEdge> edges;
};

WeightedGraph weighted_graph(const TransferGraph& g);

struct IrreducibleCycle {
  std::vector<std::size_t> edges;
  std::size_t start = 0;
  FieldElement weight;
  std::vector<std::size_t> vertices;  // visited in order, starting at start, closing vertex omitted
};

struct CycleSystem {
  std::vector<IrreducibleCycle> cycles;
  // a[i][0] = [cycle i starts at vertex 0]; a[i][j + 1] for j < i counts the
  // visits of start(i) in cycle j.
  std::vector<std::vector<std::int64_t>> a;
};

inline constexpr std::size_t kDefaultCycleCap = 200000;

CycleSystem irreducible_cycles(const WeightedGraph& g, std::size_t cap = kDefaultCycleCap,
                               const Progress& progress = {});

std::vector<std::size_t> walk_vertices(const WeightedGraph& g, const std::vector<std::size_t>& edges);
// Closed walk that never drops below its first vertex.
bool is_positive_cycle(const WeightedGraph& g, const std::vector<std::size_t>& edges);
bool is_irreducible(const WeightedGraph& g, const std::vector<std::size_t>& edges);

// Removes contiguous irreducible subcycles one at a time until nothing is
// left; `choose(k)` picks which of the k current candidates goes next.
// Returns the number of times each cycle of the system was removed.
std::vector<std::size_t> peel_multiplicities(const WeightedGraph& g, const CycleSystem& cs,
                                             std::vector<std::size_t> walk,
                                             const std::function<std::size_t(std::size_t)>& choose);

// Closed walks at vertex 0 using cycle i exactly z[i] times.
Integer cycle_product(const CycleSystem& cs, const std::vector<std::int64_t>& z);

}  // namespace tilecount
