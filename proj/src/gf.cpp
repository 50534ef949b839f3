#include "tilecount/gf.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tilecount {

namespace gfn {

GFNodePtr zero() {
  static const GFNodePtr z = std::make_shared<GFNode>();
  return z;
}

GFNodePtr var(std::size_t i) {
  if (i == 0) fail(ErrorCode::InvalidArgument, "variable indices start at 1");
  auto n = std::make_shared<GFNode>();
  n->kind = GFKind::Var;
  n->var = i;
  return n;
}

GFNodePtr sum(GFNodePtr a, GFNodePtr b) {
  auto n = std::make_shared<GFNode>();
  n->kind = GFKind::Sum;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

GFNodePtr prod(GFNodePtr a, GFNodePtr b) {
  auto n = std::make_shared<GFNode>();
  n->kind = GFKind::Prod;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

GFNodePtr qinv(GFNodePtr a) {
  if (const_term(a) != 0)
    fail(ErrorCode::NonzeroConstInQuasiInv, "Q(" + gf_to_string(a) + ") has a child with nonzero constant term");
  auto n = std::make_shared<GFNode>();
  n->kind = GFKind::QuasiInv;
  n->lhs = std::move(a);
  return n;
}

GFNodePtr one() {
  static const GFNodePtr o = qinv(zero());
  return o;
}

GFNodePtr constant(const Integer& m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "negative constant");
  if (m == 0) return zero();
  GFNodePtr acc;
  GFNodePtr power = one();
  Integer rest = m;
  while (rest > 0) {
    if (mpz_odd_p(rest.get_mpz_t())) acc = acc ? sum(acc, power) : power;
    rest >>= 1;
    if (rest > 0) power = sum(power, power);
  }
  return acc;
}

bool is_zero(const GFNodePtr& a) { return a->kind == GFKind::Zero; }

bool is_one(const GFNodePtr& a) { return a->kind == GFKind::QuasiInv && a->lhs->kind == GFKind::Zero; }

GFNodePtr sum_s(GFNodePtr a, GFNodePtr b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  return sum(std::move(a), std::move(b));
}

GFNodePtr prod_s(GFNodePtr a, GFNodePtr b) {
  if (is_zero(a) || is_zero(b)) return zero();
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  return prod(std::move(a), std::move(b));
}

}  // namespace gfn

GFExpr::GFExpr(std::size_t vars, GFNodePtr root) : vars_(vars), root_(std::move(root)) {
  if (vars_ == 0) fail(ErrorCode::InvalidArgument, "a generating function needs at least one variable");
  if (max_var_index(root_) > vars_) fail(ErrorCode::InvalidArgument, "variable index exceeds declared count");
}

namespace {

template <typename F>
void visit_dag(const GFNodePtr& root, F&& f) {
  std::unordered_set<const GFNode*> seen;
  std::vector<const GFNode*> stack{root.get()};
  while (!stack.empty()) {
    const GFNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    f(*n);
    if (n->lhs) stack.push_back(n->lhs.get());
    if (n->rhs) stack.push_back(n->rhs.get());
  }
}

// Children before parents.
std::vector<const GFNode*> post_order(const GFNodePtr& root) {
  std::vector<const GFNode*> order;
  std::unordered_set<const GFNode*> seen;
  std::vector<std::pair<const GFNode*, bool>> stack{{root.get(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(n);
      continue;
    }
    if (seen.count(n)) continue;
    seen.insert(n);
    stack.push_back({n, true});
    if (n->rhs && !seen.count(n->rhs.get())) stack.push_back({n->rhs.get(), false});
    if (n->lhs && !seen.count(n->lhs.get())) stack.push_back({n->lhs.get(), false});
  }
  return order;
}

bool has_var(const GFNode& n, std::unordered_map<const GFNode*, bool>& memo) {
  if (auto it = memo.find(&n); it != memo.end()) return it->second;
  bool r = false;
  switch (n.kind) {
    case GFKind::Zero: r = false; break;
    case GFKind::Var: r = true; break;
    case GFKind::QuasiInv: r = has_var(*n.lhs, memo); break;
    default: r = has_var(*n.lhs, memo) || has_var(*n.rhs, memo);
  }
  memo[&n] = r;
  return r;
}

void print_node(const GFNode& n, std::ostream& out, std::unordered_map<const GFNode*, bool>& vars_memo,
                int context) {
  // context: 0 top/sum operand, 1 product operand
  if (!has_var(n, vars_memo)) {
    GFNodePtr alias(std::shared_ptr<const GFNode>(), &n);
    out << const_term(alias).get_str();
    return;
  }
  switch (n.kind) {
    case GFKind::Zero: out << "0"; break;
    case GFKind::Var: out << "x" << n.var; break;
    case GFKind::QuasiInv:
      out << "Q(";
      print_node(*n.lhs, out, vars_memo, 0);
      out << ")";
      break;
    case GFKind::Sum:
      if (context == 1) out << "(";
      print_node(*n.lhs, out, vars_memo, 0);
      out << " + ";
      print_node(*n.rhs, out, vars_memo, 0);
      if (context == 1) out << ")";
      break;
    case GFKind::Prod:
      print_node(*n.lhs, out, vars_memo, 1);
      out << "*";
      print_node(*n.rhs, out, vars_memo, 1);
      break;
  }
}

}  // namespace

std::size_t max_var_index(const GFNodePtr& root) {
  std::size_t m = 0;
  visit_dag(root, [&](const GFNode& n) {
    if (n.kind == GFKind::Var) m = std::max(m, n.var);
  });
  return m;
}

std::size_t node_count(const GFNodePtr& root) {
  std::size_t c = 0;
  visit_dag(root, [&](const GFNode&) { ++c; });
  return c;
}

Integer const_term(const GFNodePtr& root) {
  std::unordered_map<const GFNode*, Integer> value;
  for (const GFNode* n : post_order(root)) {
    Integer v;
    switch (n->kind) {
      case GFKind::Zero:
      case GFKind::Var: v = 0; break;
      case GFKind::Sum: v = value[n->lhs.get()] + value[n->rhs.get()]; break;
      case GFKind::Prod: v = value[n->lhs.get()] * value[n->rhs.get()]; break;
      case GFKind::QuasiInv: v = 1; break;
    }
    value[n] = v;
  }
  return value[root.get()];
}

std::string gf_to_string(const GFNodePtr& root) {
  std::ostringstream out;
  std::unordered_map<const GFNode*, bool> memo;
  print_node(*root, out, memo, 0);
  return out.str();
}

std::string GFExpr::to_string() const { return gf_to_string(root_); }

namespace {

class GFParser {
 public:
  explicit GFParser(std::string_view text) : text_(text) {}

  GFNodePtr parse() {
    GFNodePtr e = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer nat() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected a natural number");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  GFNodePtr expr() {
    GFNodePtr e = term();
    while (accept('+')) e = gfn::sum(e, term());
    return e;
  }

  GFNodePtr term() {
    GFNodePtr e = factor();
    while (accept('*')) e = gfn::prod(e, factor());
    return e;
  }

  GFNodePtr factor() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GFNodePtr e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (c == 'Q') {
      ++pos_;
      if (!accept('(')) error("expected '(' after Q");
      GFNodePtr e = expr();
      if (!accept(')')) error("expected ')'");
      return gfn::qinv(e);
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        error("expected a variable index after x");
      Integer i = nat();
      if (i < 1 || !i.fits_ulong_p()) error("bad variable index");
      return gfn::var(i.get_ui());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer m = nat();
      return m == 0 ? gfn::zero() : gfn::constant(m);
    }
    error("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GFExpr parse_gf(std::string_view text, std::optional<std::size_t> vars) {
  GFNodePtr root = GFParser(text).parse();
  std::size_t k = std::max<std::size_t>(1, max_var_index(root));
  if (vars) {
    if (*vars < k) fail(ErrorCode::SyntaxError, "declared variable count is below the largest index used");
    k = *vars;
  }
  return GFExpr(k, root);
}

// ---------------------------------------------------------------------------
// Truncated coefficient boxes.

namespace {

class BoxPacker {
 public:
  explicit BoxPacker(const std::vector<std::size_t>& bounds) : bounds_(bounds) {
    unsigned offset = 0;
    for (std::size_t e : bounds) {
      unsigned width = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(e))) + 1;
      offsets_.push_back(offset);
      widths_.push_back(width);
      offset += width;
      if (offset > 64) fail(ErrorCode::SizeLimit, "coefficient box does not fit in 64-bit keys");
    }
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      std::uint64_t guard = std::uint64_t(1) << (offsets_[i] + widths_[i] - 1);
      guard_ |= guard;
      add_ += ((std::uint64_t(1) << (widths_[i] - 1)) - 1 - bounds[i]) << offsets_[i];
    }
  }

  bool fits(std::uint64_t a, std::uint64_t b) const { return ((a + b + add_) & guard_) == 0; }
  std::uint64_t unit(std::size_t var_index) const {
    if (var_index >= bounds_.size() || bounds_[var_index] == 0) return kNone;
    return std::uint64_t(1) << offsets_[var_index];
  }
  std::uint64_t pack(const std::vector<std::size_t>& e) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) k |= std::uint64_t(e[i]) << offsets_[i];
    return k;
  }
  std::size_t field(std::uint64_t key, std::size_t i) const {
    return static_cast<std::size_t>((key >> offsets_[i]) & ((std::uint64_t(1) << widths_[i]) - 1));
  }
  // key a minus key b when b <= a componentwise.
  bool below(std::uint64_t b, std::uint64_t a) const {
    for (std::size_t i = 0; i < bounds_.size(); ++i)
      if (field(b, i) > field(a, i)) return false;
    return true;
  }
  std::size_t dims() const { return bounds_.size(); }

  static constexpr std::uint64_t kNone = ~std::uint64_t(0);

 private:
  std::vector<std::size_t> bounds_;
  std::vector<unsigned> offsets_;
  std::vector<unsigned> widths_;
  std::uint64_t guard_ = 0;
  std::uint64_t add_ = 0;
};

using Series = std::vector<std::pair<std::uint64_t, Integer>>;  // sorted by key

Series from_map(std::unordered_map<std::uint64_t, Integer>& m) {
  Series s;
  s.reserve(m.size());
  for (auto& [k, v] : m)
    if (v != 0) s.emplace_back(k, std::move(v));
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

Series series_sum(const Series& a, const Series& b) {
  Series out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Series series_prod(const BoxPacker& box, const Series& a, const Series& b) {
  std::unordered_map<std::uint64_t, Integer> acc;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      if (!box.fits(ka, kb)) continue;
      mpz_addmul(acc[ka + kb].get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    }
  return from_map(acc);
}

Series series_qinv(const BoxPacker& box, const Series& g) {
  Series out;
  std::map<std::uint64_t, Integer> pending;
  pending[0] = 1;
  while (!pending.empty()) {
    auto it = pending.begin();
    std::uint64_t key = it->first;
    Integer val = std::move(it->second);
    pending.erase(it);
    for (const auto& [kg, vg] : g) {
      if (!box.fits(key, kg)) continue;
      mpz_addmul(pending[key + kg].get_mpz_t(), val.get_mpz_t(), vg.get_mpz_t());
    }
    out.emplace_back(key, std::move(val));
  }
  return out;
}

class BoxEvaluator {
 public:
  BoxEvaluator(const GFNodePtr& root, const std::vector<std::size_t>& bounds) : root_(root), box_(bounds) {
    order_ = post_order(root);
    for (const GFNode* n : order_) {
      if (n->lhs) ++uses_[n->lhs.get()];
      if (n->rhs) ++uses_[n->rhs.get()];
    }
  }

  const BoxPacker& box() const { return box_; }

  // Full series of the root.
  Series full() {
    for (const GFNode* n : order_) compute(n);
    return std::move(memo_[root_.get()]);
  }

  // Single coefficient of the root; avoids building the root series.
  Integer at(std::uint64_t key) {
    const GFNode* r = root_.get();
    if (r->kind == GFKind::Prod) {
      for (const GFNode* n : order_)
        if (n != r) compute(n);
      const Series& a = memo_[r->lhs.get()];
      const Series& b = memo_[r->rhs.get()];
      std::unordered_map<std::uint64_t, const Integer*> index;
      for (const auto& [k, v] : b) index.emplace(k, &v);
      Integer total = 0;
      for (const auto& [ka, va] : a) {
        if (!box_.below(ka, key)) continue;
        auto it = index.find(key - ka);
        if (it != index.end()) mpz_addmul(total.get_mpz_t(), va.get_mpz_t(), it->second->get_mpz_t());
      }
      return total;
    }
    Series s = full();
    auto it = std::lower_bound(s.begin(), s.end(), key, [](const auto& p, std::uint64_t k) { return p.first < k; });
    return (it != s.end() && it->first == key) ? it->second : Integer(0);
  }

 private:
  void release(const GFNode* child) {
    if (--uses_[child] == 0 && child != root_.get()) memo_.erase(child);
  }

  void compute(const GFNode* n) {
    Series s;
    switch (n->kind) {
      case GFKind::Zero: break;
      case GFKind::Var: {
        std::uint64_t u = box_.unit(n->var - 1);
        if (u != BoxPacker::kNone) s.emplace_back(u, Integer(1));
        break;
      }
      case GFKind::Sum: s = series_sum(memo_.at(n->lhs.get()), memo_.at(n->rhs.get())); break;
      case GFKind::Prod: s = series_prod(box_, memo_.at(n->lhs.get()), memo_.at(n->rhs.get())); break;
      case GFKind::QuasiInv: s = series_qinv(box_, memo_.at(n->lhs.get())); break;
    }
    memo_[n] = std::move(s);
    if (n->lhs) release(n->lhs.get());
    if (n->rhs) release(n->rhs.get());
  }

  GFNodePtr root_;
  BoxPacker box_;
  std::vector<const GFNode*> order_;
  std::unordered_map<const GFNode*, std::size_t> uses_;
  std::unordered_map<const GFNode*, Series> memo_;
};

}  // namespace

Integer coeff(const GFExpr& e, const std::vector<std::size_t>& exponents) {
  std::vector<std::size_t> bounds = exponents;
  bounds.resize(std::max(bounds.size(), e.vars()), 0);
  BoxEvaluator ev(e.root(), bounds);
  return ev.at(ev.box().pack(bounds));
}

Integer diagonal(const GFExpr& e, std::size_t n) { return quasi_diagonal(e, 1, n); }

Integer quasi_diagonal(const GFExpr& e, std::size_t c, std::size_t n) {
  return coeff(e, std::vector<std::size_t>(e.vars(), c * n));
}

std::vector<Integer> coefficient_table(const GFExpr& e, const std::vector<std::size_t>& bounds) {
  std::vector<std::size_t> b = bounds;
  b.resize(std::max(b.size(), e.vars()), 0);
  BoxEvaluator ev(e.root(), b);
  Series s = ev.full();
  std::size_t total = 1;
  for (std::size_t x : bounds) total *= x + 1;
  std::vector<Integer> table(total, 0);
  for (const auto& [k, v] : s) {
    std::size_t idx = 0;
    std::size_t stride = 1;
    bool inside = true;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::size_t f = ev.box().field(k, i);
      if (i >= bounds.size()) {
        if (f != 0) inside = false;
        continue;
      }
      idx += f * stride;
      stride *= bounds[i] + 1;
    }
    if (inside) table[idx] = v;
  }
  return table;
}

GFNodePtr rename_vars(const GFNodePtr& root, const std::vector<std::size_t>& map) {
  std::unordered_map<const GFNode*, GFNodePtr> memo;
  std::function<GFNodePtr(const GFNodePtr&)> go = [&](const GFNodePtr& n) -> GFNodePtr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    GFNodePtr r;
    switch (n->kind) {
      case GFKind::Zero: r = n; break;
      case GFKind::Var: {
        std::size_t to = n->var <= map.size() ? map[n->var - 1] : n->var;
        r = to == 0 ? gfn::zero() : (to == n->var ? n : gfn::var(to));
        break;
      }
      case GFKind::Sum: r = gfn::sum_s(go(n->lhs), go(n->rhs)); break;
      case GFKind::Prod: r = gfn::prod_s(go(n->lhs), go(n->rhs)); break;
      case GFKind::QuasiInv: {
        GFNodePtr c = go(n->lhs);
        r = c == n->lhs ? n : gfn::qinv(c);
        break;
      }
    }
    memo[n.get()] = r;
    return r;
  };
  return go(root);
}

namespace {

GFNodePtr shifted(const GFExpr& e, std::size_t by) {
  std::vector<std::size_t> map(e.vars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i + 1 + by;
  return rename_vars(e.root(), map);
}

GFNodePtr ones_in(std::size_t first, std::size_t count) {
  GFNodePtr acc = gfn::one();
  for (std::size_t i = 0; i < count; ++i) acc = gfn::prod_s(acc, gfn::qinv(gfn::var(first + i)));
  return acc;
}

}  // namespace

GFExpr closure_sum(const GFExpr& f, const GFExpr& g) {
  std::size_t k = f.vars();
  std::size_t l = g.vars();
  GFNodePtr a = gfn::prod_s(ones_in(k + 1, l), f.root());
  GFNodePtr b = gfn::prod_s(ones_in(1, k), shifted(g, k));
  return GFExpr(k + l, gfn::sum_s(a, b));
}

GFExpr closure_prod(const GFExpr& f, const GFExpr& g) {
  return GFExpr(f.vars() + g.vars(), gfn::prod_s(f.root(), shifted(g, f.vars())));
}

std::size_t variable_cap() {
  if (const char* env = std::getenv("TILECOUNT_VAR_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultVarCap;
}

}  // namespace tilecount
