#include "tilecount/cycles.hpp"

#include <algorithm>
#include <map>

#include "tilecount/multisum.hpp"

namespace tilecount {

WeightedGraph weighted_graph(const TransferGraph& g) {
  WeightedGraph w;
  w.vertex_count = g.vertex_count();
  for (const TransferEdge& e : g.edges) w.edges.push_back({e.from, e.to, e.weight});
  return w;
}

std::vector<std::size_t> walk_vertices(const WeightedGraph& g, const std::vector<std::size_t>& edges) {
  std::vector<std::size_t> out;
  for (std::size_t e : edges) out.push_back(g.edges.at(e).from);
  return out;
}

bool is_positive_cycle(const WeightedGraph& g, const std::vector<std::size_t>& edges) {
  if (edges.empty()) return false;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (g.edges.at(edges[i]).to != g.edges.at(edges[i + 1]).from) return false;
  std::size_t s = g.edges.at(edges.front()).from;
  if (g.edges.at(edges.back()).to != s) return false;
  for (std::size_t e : edges)
    if (g.edges[e].from < s) return false;
  return true;
}

namespace {

// Positions p < q (q <= length, vertex q = vertex 0) bounding a positive
// contiguous subcycle of the closed walk.
bool encloses(const std::vector<std::size_t>& vs, std::size_t p, std::size_t q) {
  std::size_t len = vs.size();
  auto at = [&](std::size_t i) { return vs[i % len]; };
  if (at(p) != at(q)) return false;
  for (std::size_t i = p + 1; i < q; ++i)
    if (at(i) < at(p)) return false;
  return true;
}

}  // namespace

bool is_irreducible(const WeightedGraph& g, const std::vector<std::size_t>& edges) {
  if (!is_positive_cycle(g, edges)) return false;
  std::vector<std::size_t> vs = walk_vertices(g, edges);
  std::size_t len = vs.size();
  for (std::size_t p = 0; p < len; ++p)
    for (std::size_t q = p + 1; q <= len; ++q)
      if (!(p == 0 && q == len) && encloses(vs, p, q)) return false;
  return true;
}

namespace {

class CycleSearch {
 public:
  CycleSearch(const WeightedGraph& g, std::size_t cap, const Progress& progress)
      : g_(g), cap_(cap), progress_(progress) {
    out_.resize(g.vertex_count);
    for (std::size_t e = 0; e < g.edges.size(); ++e) out_.at(g.edges[e].from).push_back(e);
  }

  std::vector<IrreducibleCycle> run() {
    for (std::size_t s = 0; s < g_.vertex_count; ++s) {
      start_ = s;
      vs_ = {s};
      path_.clear();
      extend(s);
    }
    return std::move(found_);
  }

 private:
  void extend(std::size_t u) {
    if (++steps_ % 4096 == 0 && progress_) progress_("irreducible cycles", found_.size());
    for (std::size_t e : out_[u]) {
      std::size_t w = g_.edges[e].to;
      if (w < start_) continue;
      if (w == start_) {
        path_.push_back(e);
        record();
        path_.pop_back();
        continue;
      }
      if (closes_subcycle(w)) continue;
      path_.push_back(e);
      vs_.push_back(w);
      extend(w);
      vs_.pop_back();
      path_.pop_back();
    }
  }

  bool closes_subcycle(std::size_t w) const {
    for (std::size_t p = vs_.size(); p-- > 1;) {
      if (vs_[p] < w) return false;
      if (vs_[p] == w) return true;
    }
    return false;
  }

  void record() {
    if (found_.size() >= cap_) fail(ErrorCode::SizeLimit, "more than " + std::to_string(cap_) + " irreducible cycles");
    IrreducibleCycle c;
    c.edges = path_;
    c.start = start_;
    c.vertices = vs_;
    for (std::size_t e : path_) c.weight += g_.edges[e].weight;
    found_.push_back(std::move(c));
  }

  const WeightedGraph& g_;
  std::size_t cap_;
  const Progress& progress_;
  std::vector<std::vector<std::size_t>> out_;
  std::size_t start_ = 0;
  std::vector<std::size_t> vs_;
  std::vector<std::size_t> path_;
  std::vector<IrreducibleCycle> found_;
  std::size_t steps_ = 0;
};

}  // namespace

CycleSystem irreducible_cycles(const WeightedGraph& g, std::size_t cap, const Progress& progress) {
  CycleSystem cs;
  cs.cycles = CycleSearch(g, cap, progress).run();
  std::stable_sort(cs.cycles.begin(), cs.cycles.end(), [](const IrreducibleCycle& x, const IrreducibleCycle& y) {
    if (x.start != y.start) return x.start < y.start;
    if (x.edges.size() != y.edges.size()) return x.edges.size() < y.edges.size();
    return x.edges < y.edges;
  });
  for (std::size_t i = 0; i < cs.cycles.size(); ++i) {
    std::vector<std::int64_t> row(i + 1, 0);
    std::size_t s = cs.cycles[i].start;
    row[0] = s == 0 ? 1 : 0;
    for (std::size_t j = 0; j < i; ++j)
      row[j + 1] = std::count(cs.cycles[j].vertices.begin(), cs.cycles[j].vertices.end(), s);
    cs.a.push_back(std::move(row));
  }
  return cs;
}

std::vector<std::size_t> peel_multiplicities(const WeightedGraph& g, const CycleSystem& cs,
                                             std::vector<std::size_t> walk,
                                             const std::function<std::size_t(std::size_t)>& choose) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < cs.cycles.size(); ++i) index.emplace(cs.cycles[i].edges, i);
  std::vector<std::size_t> mult(cs.cycles.size(), 0);
  if (!walk.empty() && !is_positive_cycle(g, walk)) fail(ErrorCode::InvalidArgument, "walk is not a positive cycle");

  while (!walk.empty()) {
    std::vector<std::size_t> vs = walk_vertices(g, walk);
    std::size_t len = vs.size();
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t p = 0; p < len; ++p)
      for (std::size_t q = p + 1; q <= len; ++q) {
        if (!encloses(vs, p, q)) continue;
        std::vector<std::size_t> seg(walk.begin() + p, walk.begin() + q);
        if (is_irreducible(g, seg)) candidates.emplace_back(p, q);
        break;
      }
    if (candidates.empty()) fail(ErrorCode::InvalidArgument, "no irreducible subcycle to peel");
    auto [p, q] = candidates.at(choose(candidates.size()) % candidates.size());
    std::vector<std::size_t> seg(walk.begin() + p, walk.begin() + q);
    auto it = index.find(seg);
    if (it == index.end()) fail(ErrorCode::InvalidArgument, "peeled cycle missing from the system");
    ++mult[it->second];
    walk.erase(walk.begin() + p, walk.begin() + q);
  }
  return mult;
}

Integer cycle_product(const CycleSystem& cs, const std::vector<std::int64_t>& z) {
  Integer prod = 1;
  for (std::size_t i = 0; i < cs.cycles.size() && prod != 0; ++i) {
    std::int64_t top = cs.a[i][0] + z.at(i) - 1;
    for (std::size_t j = 0; j < i; ++j) top += cs.a[i][j + 1] * z[j];
    prod *= ext_binom(top, z[i]);
  }
  return prod;
}

}  // namespace tilecount
