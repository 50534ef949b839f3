#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tilecount/gf.hpp"
#include "tilecount/multisum.hpp"
#include "tilecount/tiles.hpp"

namespace tilecount {

struct CatalogEntry {
  std::string name;
  std::string description;
  std::optional<TileSet> tiles;
  std::optional<GFExpr> gf;
  std::optional<BinomialMultiSum> multisum;
  std::optional<BalancedMultiSum> balanced;
  std::function<Integer(std::size_t)> oracle;
  std::size_t representation_count() const;
};

std::vector<CatalogEntry> catalog_entries();
std::optional<CatalogEntry> find_entry(const std::string& name);

// Tile sets.
TileSet fibonacci_tiles();     // {[1x1], [1x2]}
TileSet half_tiles();          // [1 x (1/2 -+ alpha)], central binomial
TileSet two_way_tiles();       // two interlocking triples, f = 2
TileSet square_count_tiles();  // R_1, R_{1+alpha}, R_{1+beta}, R_{1+alpha+beta}, f = n^2
TileSet split_square_tiles();  // unit square plus a two-piece square, f = 2^n
TileSet lucas_tiles();         // start piece, R_1, R_2, two end pieces

Integer catalan(std::size_t n);
Integer binomial(std::size_t a, std::size_t b);

// f(n) = binom(2n, n) + (m - 1) binom(2n, n + 1), congruent to C_n mod m.
BinomialMultiSum cat_mod(std::size_t m);
// f(n) = binom(2n, n) + (p^{2n} - 1) binom(2n, n + 1), same p-adic valuation as C_n.
BinomialMultiSum cat_ordp(std::size_t p);

// Sum of binom(n - s, 3v) binom(3v, n - s) binom(2v, v)^3 4^s over s = 0, 1, 2.
BinomialMultiSum cat3_base();
double cat3_constant();  // 3 sqrt(3) / pi

struct CatApprox {
  BinomialMultiSum multisum;
  std::size_t shift = 0;  // i
  std::size_t scale = 1;  // m
  double constant = 0;    // m * xi / 4^i
};

// Smallest shift, then smallest scale, with |m xi / 4^i - 1| < epsilon.
CatApprox cat_approx(double epsilon);

struct HypoSum {
  BinomialMultiSum multisum;
  Integer base;        // c
  std::size_t period;  // d, smallest with denominator(rho) | c^d
  Rational rho;        // r * prod nu^nu / prod mu^mu
  std::vector<std::size_t> mu;
  std::vector<std::vector<std::size_t>> parts;  // parts[i] refines mu[i]
  Rational r;

  // Multinomial weight prod (mu_i l)! / prod (nu_ij l)!.
  Integer weight(std::size_t l) const;
  // f(n), without the multisum.
  Integer value(std::size_t n) const;
  // f(n) / c^n = sum_{l <= n / d} weight(l) rho^l.
  Rational normalized(std::size_t n) const;
};

HypoSum hypo_build(const std::vector<std::size_t>& mu, const std::vector<std::size_t>& nu, const Rational& r,
                   const Integer& c);

// Partial sum of the terms prod_k (k + a_1)...(k + a_p) r / ((k + b_1)...(k + b_p)) for m < terms.
Rational hypergeometric_partial_sum(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                    const Rational& r, std::size_t terms);
// 1/l, ..., (l-1)/l, 1 for every part l.
std::vector<Rational> upsilon(const std::vector<std::size_t>& partition);

}  // namespace tilecount
