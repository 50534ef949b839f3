#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tilecount/exactnum.hpp"

namespace tilecount {

enum class GFKind { Zero, Var, Sum, Prod, QuasiInv };

struct GFNode;
using GFNodePtr = std::shared_ptr<const GFNode>;

struct GFNode {
  GFKind kind = GFKind::Zero;
  std::size_t var = 0;  // 1-based, Var only
  GFNodePtr lhs;        // Sum, Prod, QuasiInv child
  GFNodePtr rhs;        // Sum, Prod
};

namespace gfn {
GFNodePtr zero();
GFNodePtr var(std::size_t i);
GFNodePtr sum(GFNodePtr a, GFNodePtr b);
GFNodePtr prod(GFNodePtr a, GFNodePtr b);
// Throws NONZERO_CONST_IN_QUASIINV when the child has a constant term.
GFNodePtr qinv(GFNodePtr a);
GFNodePtr one();
// m-fold sum of ones, built by doubling so it stays small.
GFNodePtr constant(const Integer& m);

// Simplifying variants used by constructions: fold Zero and One.
GFNodePtr sum_s(GFNodePtr a, GFNodePtr b);
GFNodePtr prod_s(GFNodePtr a, GFNodePtr b);
bool is_zero(const GFNodePtr& a);
bool is_one(const GFNodePtr& a);
}  // namespace gfn

class GFExpr {
 public:
  GFExpr() : vars_(1), root_(gfn::zero()) {}
  GFExpr(std::size_t vars, GFNodePtr root);

  std::size_t vars() const { return vars_; }
  const GFNodePtr& root() const { return root_; }
  std::string to_string() const;

 private:
  std::size_t vars_;
  GFNodePtr root_;
};

std::size_t max_var_index(const GFNodePtr& root);
std::size_t node_count(const GFNodePtr& root);
Integer const_term(const GFNodePtr& root);
std::string gf_to_string(const GFNodePtr& root);

GFExpr parse_gf(std::string_view text, std::optional<std::size_t> vars = std::nullopt);

Integer coeff(const GFExpr& e, const std::vector<std::size_t>& exponents);
Integer diagonal(const GFExpr& e, std::size_t n);
Integer quasi_diagonal(const GFExpr& e, std::size_t c, std::size_t n);

// All coefficients with exponent i-th coordinate <= bounds[i], indexed in
// mixed radix with coordinate 0 fastest.
std::vector<Integer> coefficient_table(const GFExpr& e, const std::vector<std::size_t>& bounds);

GFExpr closure_sum(const GFExpr& f, const GFExpr& g);
GFExpr closure_prod(const GFExpr& f, const GFExpr& g);

// Renames variables: Var(i) becomes Var(map[i - 1]); map entries of 0 mean Zero.
GFNodePtr rename_vars(const GFNodePtr& root, const std::vector<std::size_t>& map);

struct ColoredEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t color = 0;  // 1-based
};

struct KNetwork {
  std::size_t vertex_count = 2;
  std::size_t source = 0;
  std::size_t sink = 1;
  std::size_t colors = 1;
  std::vector<ColoredEdge> edges;
};

inline constexpr std::size_t kDefaultNetworkCap = 2'000'000;

KNetwork compile_knetwork(const GFExpr& e, std::size_t vertex_cap = kDefaultNetworkCap);
// Source-to-sink paths using exactly c[i] edges of color i + 1. The network
// carries F - F(0): the zero vector counts 0 paths, add const_term for F(0).
Integer count_paths(const KNetwork& net, const std::vector<std::size_t>& c);
// Same for every vector below bounds, mixed radix as coefficient_table.
std::vector<Integer> path_count_table(const KNetwork& net, const std::vector<std::size_t>& bounds);

inline constexpr std::size_t kDefaultVarCap = 12;
// Reads TILECOUNT_VAR_CAP, falling back to kDefaultVarCap.
std::size_t variable_cap();

// Replaces each variable i by multipliers[i] fresh copies so that the plain
// diagonal of the result equals the coefficient at (m_1 n, ..., m_k n) for
// n >= 1, then patches n = 0 with const_term(e). A multiplier of 0 means the
// variable must have exponent 0 and is substituted by Zero.
GFExpr split_variables(const GFExpr& e, const std::vector<std::size_t>& multipliers,
                       std::size_t var_cap = variable_cap());
GFExpr split_variable(const GFExpr& e, std::size_t m, std::size_t var_cap = variable_cap());

// Adds `delta` to the constant term only; delta may be negative as long as
// the result has a nonnegative constant term.
GFExpr patch_constant(const GFExpr& e, const Integer& wanted_constant);

}  // namespace tilecount
