#include <unordered_map>

#include "tilecount/gf.hpp"

namespace tilecount {

namespace {

class NetworkBuilder {
 public:
  NetworkBuilder(std::size_t colors, std::size_t cap) : colors_(colors), cap_(cap) {}

  KNetwork build(const GFNodePtr& n) {
    if (auto it = memo_.find(n.get()); it != memo_.end()) return it->second;
    KNetwork net = fresh();
    switch (n->kind) {
      case GFKind::Zero: break;
      case GFKind::Var: net.edges.push_back({net.source, net.sink, n->var}); break;
      case GFKind::Sum: {
        KNetwork a = build(n->lhs);
        KNetwork b = build(n->rhs);
        embed(net, a, net.source, net.sink);
        embed(net, b, net.source, net.sink);
        break;
      }
      case GFKind::Prod: {
        KNetwork f = build(n->lhs);
        KNetwork g = build(n->rhs);
        Integer a = const_term(n->lhs);
        Integer b = const_term(n->rhs);
        std::size_t mid = add_vertex(net);
        embed(net, f, net.source, mid);
        embed(net, g, mid, net.sink);
        for (Integer i = 0; i < a; ++i) embed(net, g, net.source, net.sink);
        for (Integer i = 0; i < b; ++i) embed(net, f, net.source, net.sink);
        break;
      }
      case GFKind::QuasiInv: {
        KNetwork u = build(n->lhs);
        // U
        embed(net, u, net.source, net.sink);
        // U U
        std::size_t m = add_vertex(net);
        embed(net, u, net.source, m);
        embed(net, u, m, net.sink);
        // X = U^3 / (1 - U^2)
        auto add_x = [&](std::size_t from, std::size_t to) {
          std::size_t a = add_vertex(net);
          std::size_t b = add_vertex(net);
          embed(net, u, from, a);
          embed(net, u, a, b);
          embed(net, u, b, to);
          embed(net, u, b, a);
        };
        add_x(net.source, net.sink);
        // U X
        std::size_t p = add_vertex(net);
        embed(net, u, net.source, p);
        add_x(p, net.sink);
        break;
      }
    }
    memo_.emplace(n.get(), net);
    return net;
  }

 private:
  KNetwork fresh() const {
    KNetwork net;
    net.colors = colors_;
    return net;
  }

  std::size_t add_vertex(KNetwork& net) {
    if (net.vertex_count >= cap_) fail(ErrorCode::SizeLimit, "k-network exceeds the vertex cap");
    return net.vertex_count++;
  }

  void embed(KNetwork& dst, const KNetwork& src, std::size_t from, std::size_t to) {
    if (dst.vertex_count + src.vertex_count > cap_ || dst.edges.size() + src.edges.size() > 4 * cap_)
      fail(ErrorCode::SizeLimit, "k-network exceeds the vertex cap");
    std::vector<std::size_t> map(src.vertex_count);
    for (std::size_t v = 0; v < src.vertex_count; ++v) {
      if (v == src.source)
        map[v] = from;
      else if (v == src.sink)
        map[v] = to;
      else
        map[v] = dst.vertex_count++;
    }
    for (const ColoredEdge& e : src.edges) dst.edges.push_back({map[e.from], map[e.to], e.color});
  }

  std::size_t colors_;
  std::size_t cap_;
  std::unordered_map<const GFNode*, KNetwork> memo_;
};

}  // namespace

KNetwork compile_knetwork(const GFExpr& e, std::size_t vertex_cap) {
  NetworkBuilder b(e.vars(), vertex_cap);
  return b.build(e.root());
}

std::vector<Integer> path_count_table(const KNetwork& net, const std::vector<std::size_t>& bounds) {
  std::size_t k = bounds.size();
  std::vector<std::size_t> stride(k, 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    stride[i] = total;
    total *= bounds[i] + 1;
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(net.vertex_count);
  for (const ColoredEdge& e : net.edges) out[e.from].emplace_back(e.to, e.color);

  std::vector<std::unordered_map<std::size_t, Integer>> layer(total);
  std::vector<Integer> result(total, 0);
  layer[0][net.source] = 1;
  for (std::size_t idx = 0; idx < total; ++idx) {
    for (const auto& [u, val] : layer[idx]) {
      if (u == net.sink) result[idx] = val;
      for (const auto& [w, color] : out[u]) {
        if (color == 0 || color > k) continue;
        std::size_t c = color - 1;
        std::size_t digit = (idx / stride[c]) % (bounds[c] + 1);
        if (digit >= bounds[c]) continue;
        layer[idx + stride[c]][w] += val;
      }
    }
    layer[idx].clear();
  }
  return result;
}

Integer count_paths(const KNetwork& net, const std::vector<std::size_t>& c) {
  std::vector<Integer> table = path_count_table(net, c);
  return table.back();
}

}  // namespace tilecount
