#include "tilecount/transfer.hpp"

#include <functional>
#include <unordered_map>

namespace tilecount {

std::vector<std::vector<std::size_t>> TransferGraph::out_edges() const {
  std::vector<std::vector<std::size_t>> out(vertices.size());
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].from].push_back(e);
  return out;
}

TransferGraph build_graph(const TileSet& ts, unsigned precision_budget) {
  validate_tile_set(ts, precision_budget);
  TransferGraph g;
  g.vertices = canonical_profiles(ts);
  g.epsilon = ts.epsilon;
  auto index_of = [&](const Profile& p) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (g.vertices[i] == p) return i;
    fail(ErrorCode::InvalidArgument, "profile missing from the vertex list");
  };
  for (std::size_t t = 0; t < ts.tiles.size(); ++t)
    g.edges.push_back({index_of(ts.tiles[t].left), index_of(ts.tiles[t].right), ts.tiles[t].area, t});
  return g;
}

namespace {

struct StateKey {
  std::size_t vertex;
  FieldElement weight;
  bool operator==(const StateKey& o) const { return vertex == o.vertex && weight == o.weight; }
};

struct StateHash {
  std::size_t operator()(const StateKey& k) const { return k.weight.hash() * 31 + k.vertex; }
};

// Shared pruning: remaining weight after taking an edge into `to`.
class WalkPruner {
 public:
  WalkPruner(const TransferGraph& g, unsigned budget) : g_(g), budget_(budget) {
    for (const TransferEdge& e : g.edges)
      if (!have_min_ || fe_compare(e.weight, min_weight_, budget) == Sign::Negative) {
        min_weight_ = e.weight;
        have_min_ = true;
      }
  }

  // True when a walk that still has `remaining` to cover at vertex `to` may close.
  bool viable(std::size_t to, const FieldElement& remaining) const {
    Sign s = fe_sign(remaining, budget_);
    if (s == Sign::Negative) return false;
    if (to == 0) return true;
    if (s == Sign::Zero) return false;
    return fe_compare(remaining, min_weight_, budget_) != Sign::Negative;
  }

 private:
  const TransferGraph& g_;
  unsigned budget_;
  FieldElement min_weight_;
  bool have_min_ = false;
};

}  // namespace

Integer count_closed_walks(const TransferGraph& g, const FieldElement& target, unsigned precision_budget) {
  if (fe_sign(target, precision_budget) == Sign::Negative) return 0;
  std::vector<std::vector<std::size_t>> out = g.out_edges();
  WalkPruner pruner(g, precision_budget);
  std::unordered_map<StateKey, Integer, StateHash> memo;

  // Walks from (vertex, remaining) back to vertex 0 using exactly `remaining`.
  std::function<Integer(std::size_t, const FieldElement&)> walks = [&](std::size_t v,
                                                                      const FieldElement& remaining) -> Integer {
    if (remaining.is_zero()) return v == 0 ? 1 : 0;
    StateKey key{v, remaining};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer total = 0;
    for (std::size_t e : out[v]) {
      const TransferEdge& edge = g.edges[e];
      FieldElement rest = remaining - edge.weight;
      if (!pruner.viable(edge.to, rest)) continue;
      total += walks(edge.to, rest);
    }
    memo.emplace(std::move(key), total);
    return total;
  };
  return walks(0, target);
}

Integer count_tilings(const TileSet& ts, std::size_t n, unsigned precision_budget) {
  TransferGraph g = build_graph(ts, precision_budget);
  FieldElement target = ts.epsilon + FieldElement(Rational(static_cast<long>(n)));
  return count_closed_walks(g, target, precision_budget);
}

std::vector<std::vector<std::size_t>> enumerate_tilings(const TileSet& ts, std::size_t n, std::size_t limit,
                                                        unsigned precision_budget) {
  TransferGraph g = build_graph(ts, precision_budget);
  FieldElement target = ts.epsilon + FieldElement(Rational(static_cast<long>(n)));
  std::vector<std::vector<std::size_t>> found;
  if (fe_sign(target, precision_budget) == Sign::Negative) return found;
  std::vector<std::vector<std::size_t>> out = g.out_edges();
  WalkPruner pruner(g, precision_budget);
  std::vector<std::size_t> path;

  std::function<void(std::size_t, const FieldElement&)> walk = [&](std::size_t v, const FieldElement& remaining) {
    if (remaining.is_zero()) {
      if (v == 0) {
        if (found.size() >= limit) fail(ErrorCode::LimitExceeded, "more than " + std::to_string(limit) + " tilings");
        found.push_back(path);
      }
      return;
    }
    for (std::size_t e : out[v]) {
      const TransferEdge& edge = g.edges[e];
      FieldElement rest = remaining - edge.weight;
      if (!pruner.viable(edge.to, rest)) continue;
      path.push_back(edge.tile);
      walk(edge.to, rest);
      path.pop_back();
    }
  };
  walk(0, target);
  return found;
}

}  // namespace tilecount
