#include <functional>
#include <unordered_map>

#include "tilecount/gf.hpp"

namespace tilecount {

namespace {

// F -> F∘ for variable s split into s and a fresh t: the part of F whose
// monomials contain s, with the first s-factor kept as s and the ones before
// it renamed to t.
class Splitter {
 public:
  Splitter(std::size_t s, std::size_t t) : s_(s), t_(t) {}

  GFNodePtr circ(const GFNodePtr& n) {
    if (!contains(n)) return gfn::zero();
    if (auto it = circ_memo_.find(n.get()); it != circ_memo_.end()) return it->second;
    GFNodePtr r;
    switch (n->kind) {
      case GFKind::Zero: r = gfn::zero(); break;
      case GFKind::Var: r = n; break;
      case GFKind::Sum: r = gfn::sum_s(circ(n->lhs), circ(n->rhs)); break;
      case GFKind::Prod:
        r = gfn::sum_s(gfn::prod_s(circ(n->lhs), n->rhs), gfn::prod_s(renamed(n->lhs), circ(n->rhs)));
        break;
      case GFKind::QuasiInv: r = gfn::prod_s(gfn::prod_s(renamed(n), circ(n->lhs)), n); break;
    }
    circ_memo_[n.get()] = r;
    return r;
  }

 private:
  bool contains(const GFNodePtr& n) {
    if (auto it = has_memo_.find(n.get()); it != has_memo_.end()) return it->second;
    bool r = false;
    switch (n->kind) {
      case GFKind::Zero: r = false; break;
      case GFKind::Var: r = n->var == s_; break;
      case GFKind::QuasiInv: r = contains(n->lhs); break;
      default: r = contains(n->lhs) || contains(n->rhs);
    }
    has_memo_[n.get()] = r;
    return r;
  }

  GFNodePtr renamed(const GFNodePtr& n) {
    if (!contains(n)) return n;
    if (auto it = rename_memo_.find(n.get()); it != rename_memo_.end()) return it->second;
    GFNodePtr r;
    switch (n->kind) {
      case GFKind::Zero: r = n; break;
      case GFKind::Var: r = gfn::var(t_); break;
      case GFKind::Sum: r = gfn::sum_s(renamed(n->lhs), renamed(n->rhs)); break;
      case GFKind::Prod: r = gfn::prod_s(renamed(n->lhs), renamed(n->rhs)); break;
      case GFKind::QuasiInv: r = gfn::qinv(renamed(n->lhs)); break;
    }
    rename_memo_[n.get()] = r;
    return r;
  }

  std::size_t s_;
  std::size_t t_;
  std::unordered_map<const GFNode*, bool> has_memo_;
  std::unordered_map<const GFNode*, GFNodePtr> circ_memo_;
  std::unordered_map<const GFNode*, GFNodePtr> rename_memo_;
};

// F minus its constant term, still N-rational.
GFNodePtr without_constant(const GFNodePtr& root) {
  std::unordered_map<const GFNode*, GFNodePtr> memo;
  std::function<GFNodePtr(const GFNodePtr&)> go = [&](const GFNodePtr& n) -> GFNodePtr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    GFNodePtr r;
    switch (n->kind) {
      case GFKind::Zero:
      case GFKind::Var: r = n; break;
      case GFKind::Sum: r = gfn::sum_s(go(n->lhs), go(n->rhs)); break;
      case GFKind::Prod: {
        GFNodePtr a = go(n->lhs);
        GFNodePtr b = go(n->rhs);
        Integer ca = const_term(n->lhs);
        Integer cb = const_term(n->rhs);
        r = gfn::prod_s(a, b);
        r = gfn::sum_s(r, gfn::prod_s(gfn::constant(ca), b));
        r = gfn::sum_s(r, gfn::prod_s(gfn::constant(cb), a));
        break;
      }
      case GFKind::QuasiInv: r = gfn::prod_s(n->lhs, n); break;
    }
    memo[n.get()] = r;
    return r;
  };
  return go(root);
}

}  // namespace

GFExpr patch_constant(const GFExpr& e, const Integer& wanted_constant) {
  if (wanted_constant < 0) fail(ErrorCode::InvalidArgument, "constant term must be nonnegative");
  GFNodePtr body = without_constant(e.root());
  return GFExpr(e.vars(), gfn::sum_s(body, gfn::constant(wanted_constant)));
}

GFExpr split_variables(const GFExpr& e, const std::vector<std::size_t>& multipliers, std::size_t var_cap) {
  if (multipliers.size() != e.vars()) fail(ErrorCode::InvalidArgument, "one multiplier per variable expected");
  std::size_t total = 0;
  for (std::size_t m : multipliers) total += m;
  if (total > var_cap)
    fail(ErrorCode::SizeLimit, "splitting needs " + std::to_string(total) + " variables, cap is " +
                                   std::to_string(var_cap));
  Integer f0 = const_term(e.root());
  if (total == 0) return GFExpr(1, gfn::constant(f0));

  std::vector<std::size_t> base(e.vars());
  std::size_t next = 1;
  for (std::size_t i = 0; i < e.vars(); ++i) {
    base[i] = multipliers[i] == 0 ? 0 : next;
    next += multipliers[i];
  }
  GFNodePtr g = rename_vars(e.root(), base);
  for (std::size_t i = 0; i < e.vars(); ++i)
    for (std::size_t j = 1; j < multipliers[i]; ++j) {
      Splitter sp(base[i], base[i] + j);
      g = sp.circ(g);
    }
  return patch_constant(GFExpr(total, g), f0);
}

GFExpr split_variable(const GFExpr& e, std::size_t m, std::size_t var_cap) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "split factor must be positive");
  return split_variables(e, std::vector<std::size_t>(e.vars(), m), var_cap);
}

}  // namespace tilecount
