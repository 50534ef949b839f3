#include "tilecount/polyhedron.hpp"

#include <algorithm>
#include <map>

namespace tilecount {

namespace {

using System = std::map<std::vector<Integer>, Integer>;

// Returns false when the constraint is a contradiction.
bool insert(System& sys, std::vector<Integer> coeffs, Integer constant) {
  Integer g = 0;
  for (const Integer& c : coeffs) g = gcd(g, c);
  if (g == 0) return constant >= 0;
  if (g != 1) {
    for (Integer& c : coeffs) c /= g;
    mpz_fdiv_q(constant.get_mpz_t(), constant.get_mpz_t(), g.get_mpz_t());
  }
  auto it = sys.find(coeffs);
  if (it == sys.end())
    sys.emplace(std::move(coeffs), std::move(constant));
  else if (constant < it->second)
    it->second = std::move(constant);
  return true;
}

// Opposite constraints a.x + b >= 0 and -a.x + c >= 0 with b + c < 0.
bool contradictory(const System& sys) {
  for (const auto& [coeffs, constant] : sys) {
    std::vector<Integer> neg = coeffs;
    for (Integer& c : neg) c = -c;
    auto it = sys.find(neg);
    if (it != sys.end() && constant + it->second < 0) return true;
  }
  return false;
}

bool eliminate(System& sys, std::size_t var, std::size_t cap) {
  std::vector<std::pair<std::vector<Integer>, Integer>> pos, neg;
  System rest;
  for (auto& [coeffs, constant] : sys) {
    int s = sgn(coeffs[var]);
    if (s > 0)
      pos.emplace_back(coeffs, constant);
    else if (s < 0)
      neg.emplace_back(coeffs, constant);
    else
      rest.emplace(coeffs, constant);
  }
  if (pos.size() * neg.size() + rest.size() > cap) fail(ErrorCode::SizeLimit, "Fourier-Motzkin system too large");
  for (const auto& [pc, pk] : pos)
    for (const auto& [nc, nk] : neg) {
      Integer a = pc[var];
      Integer b = -nc[var];
      std::vector<Integer> c(pc.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = b * pc[i] + a * nc[i];
      c[var] = 0;
      if (!insert(rest, std::move(c), b * pk + a * nk)) return false;
    }
  sys = std::move(rest);
  return !contradictory(sys);
}

std::size_t pick(const System& sys, const std::vector<std::size_t>& candidates) {
  std::size_t best = candidates.front();
  long best_cost = -1;
  for (std::size_t v : candidates) {
    long p = 0, n = 0;
    for (const auto& [coeffs, constant] : sys) {
      int s = sgn(coeffs[v]);
      p += s > 0;
      n += s < 0;
    }
    long cost = p * n - p - n;
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost < 0 ? 0 : cost;
      best = v;
      if (cost <= 0) break;
    }
  }
  return best;
}

std::optional<System> build(const std::vector<LinearConstraint>& system, std::size_t vars) {
  System sys;
  for (const LinearConstraint& c : system) {
    std::vector<Integer> coeffs = c.coeffs;
    coeffs.resize(vars, 0);
    if (!insert(sys, std::move(coeffs), c.constant)) return std::nullopt;
  }
  if (contradictory(sys)) return std::nullopt;
  return sys;
}

std::optional<System> reduce_to(System sys, std::size_t vars, const std::vector<std::size_t>& keep, std::size_t cap) {
  std::vector<std::size_t> todo;
  for (std::size_t v = 0; v < vars; ++v)
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) todo.push_back(v);
  while (!todo.empty()) {
    std::size_t v = pick(sys, todo);
    std::erase(todo, v);
    if (!eliminate(sys, v, cap)) return std::nullopt;
  }
  return sys;
}

}  // namespace

std::optional<std::vector<LinearConstraint>> fm_project(const std::vector<LinearConstraint>& system,
                                                        std::size_t vars, const std::vector<std::size_t>& keep,
                                                        std::size_t cap) {
  std::optional<System> sys = build(system, vars);
  if (!sys) return std::nullopt;
  sys = reduce_to(std::move(*sys), vars, keep, cap);
  if (!sys) return std::nullopt;
  std::vector<LinearConstraint> out;
  for (const auto& [coeffs, constant] : *sys) {
    LinearConstraint c;
    for (std::size_t k : keep) c.coeffs.push_back(coeffs[k]);
    c.constant = constant;
    out.push_back(std::move(c));
  }
  return out;
}

bool fm_feasible(const std::vector<LinearConstraint>& system, std::size_t vars, std::size_t cap) {
  return fm_project(system, vars, {}, cap).has_value();
}

std::optional<std::vector<CoordinateBounds>> fm_bounds(const std::vector<LinearConstraint>& system,
                                                       std::size_t vars, std::size_t cap) {
  std::optional<System> sys = build(system, vars);
  if (!sys) return std::nullopt;
  std::vector<CoordinateBounds> out(vars);
  for (std::size_t j = 0; j < vars; ++j) {
    std::optional<System> one = reduce_to(*sys, vars, {j}, cap);
    if (!one) return std::nullopt;
    for (const auto& [coeffs, constant] : *one) {
      const Integer& a = coeffs[j];
      if (a > 0) {
        Integer lo;  // x >= ceil(-constant / a)
        Integer neg = -constant;
        mpz_cdiv_q(lo.get_mpz_t(), neg.get_mpz_t(), a.get_mpz_t());
        if (!out[j].lo || lo > *out[j].lo) out[j].lo = lo;
      } else if (a < 0) {
        Integer hi;  // x <= floor(constant / -a)
        Integer b = -a;
        mpz_fdiv_q(hi.get_mpz_t(), constant.get_mpz_t(), b.get_mpz_t());
        if (!out[j].hi || hi < *out[j].hi) out[j].hi = hi;
      }
    }
    if (out[j].lo && out[j].hi && *out[j].lo > *out[j].hi) return std::nullopt;
  }
  return out;
}

}  // namespace tilecount
