#include "tilecount/catalog.hpp"

#include <cmath>
#include <numbers>

namespace tilecount {

namespace {

// sqrt(2) - 1
BasisSymbol alpha_symbol() {
  return {"alpha", {Rational(41, 100), Rational(21, 50)}, PolynomialRoot{{Rational(1), Rational(2), Rational(-1)}}};
}

// (sqrt(3) - 1) / 4
BasisSymbol beta_symbol() {
  return {"beta", {Rational(9, 50), Rational(19, 100)}, PolynomialRoot{{Rational(8), Rational(4), Rational(-1)}}};
}

Profile notch(const Rational& depth) {
  return Profile::make({Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)},
                       {FieldElement(0), FieldElement(depth), FieldElement(0)});
}

Profile step(const Rational& depth) {
  return Profile::make({Rational(0), Rational(1, 2), Rational(1)}, {FieldElement(0), FieldElement(depth)});
}

FieldElement q(long num, long den = 1) { return FieldElement(Rational(num, den)); }

BinomialMultiSum single(const AffineForm& a, const AffineForm& b) {
  BinomialMultiSum ms;
  ms.factors.push_back({a, b});
  return ms;
}

const AffineForm kN = AffineForm::n();
AffineForm v(std::size_t j) { return AffineForm::var(j); }
AffineForm k(std::int64_t c) { return AffineForm::cst(c); }

BinomialMultiSum sum_of(std::initializer_list<BinomialFactor> factors, std::size_t dims) {
  BinomialMultiSum ms;
  ms.dims = dims;
  ms.factors = factors;
  return ms;
}

// [n = s mod p] as sum_v binom(n, p v + s) binom(p v + s, n).
BinomialMultiSum residue_indicator(std::int64_t p, std::int64_t s) {
  return sum_of({{kN, v(0) * p + s}, {v(0) * p + s, kN}}, 1);
}

Integer fib(std::size_t n) {
  Integer a = 1, b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer t = a + b;
    a = b;
    b = t;
  }
  return a;
}

Integer power(const Integer& b, std::size_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

TileSet power_three_tiles() {
  TileSet ts;
  Profile p = notch(Rational(1, 20));
  Profile p2 = step(Rational(1, 20));
  ts.tiles.push_back(rectangle(1));
  ts.tiles.push_back({Profile(), p, q(1, 2)});
  ts.tiles.push_back({p, Profile(), q(1, 2)});
  ts.tiles.push_back({Profile(), p2, q(1, 3)});
  Profile p3 = notch(Rational(1, 30));
  ts.tiles.push_back({p2, p3, q(1, 3)});
  ts.tiles.push_back({p3, Profile(), q(1, 3)});
  return ts;
}

}  // namespace

TileSet fibonacci_tiles() {
  TileSet ts;
  ts.tiles = {rectangle(1), rectangle(2)};
  return ts;
}

TileSet half_tiles() {
  TileSet ts;
  ts.basis = IrrationalBasis::create({alpha_symbol()});
  FieldElement a = FieldElement::symbol(ts.basis, 0);
  ts.tiles = {rectangle(q(1, 2) - a), rectangle(q(1, 2) + a)};
  return ts;
}

TileSet two_way_tiles() {
  TileSet ts;
  ts.basis = IrrationalBasis::create({alpha_symbol()});
  FieldElement a = FieldElement::symbol(ts.basis, 0);
  ts.epsilon = a + a;
  for (const Profile& p : {notch(Rational(1, 20)), step(Rational(1, 20))}) {
    ts.tiles.push_back({Profile(), p, a});
    ts.tiles.push_back({p, p, q(1)});
    ts.tiles.push_back({p, Profile(), a});
  }
  return ts;
}

TileSet square_count_tiles() {
  TileSet ts;
  ts.basis = IrrationalBasis::create({alpha_symbol(), beta_symbol()});
  FieldElement a = FieldElement::symbol(ts.basis, 0);
  FieldElement b = FieldElement::symbol(ts.basis, 1);
  ts.epsilon = a + b;
  ts.tiles = {rectangle(1), rectangle(q(1) + a), rectangle(q(1) + b), rectangle(q(1) + a + b)};
  return ts;
}

TileSet split_square_tiles() {
  TileSet ts;
  Profile p = notch(Rational(1, 20));
  ts.tiles = {rectangle(1), {Profile(), p, q(1, 2)}, {p, Profile(), q(1, 2)}};
  return ts;
}

TileSet lucas_tiles() {
  TileSet ts;
  ts.basis = IrrationalBasis::create({alpha_symbol()});
  FieldElement a = FieldElement::symbol(ts.basis, 0);
  Profile p = notch(Rational(1, 20));
  ts.epsilon = a + a;
  ts.tiles = {{Profile(), p, a}, {p, p, q(1)}, {p, p, q(2)}, {p, Profile(), a}, {p, Profile(), q(2) + a}};
  return ts;
}

Integer binomial(std::size_t a, std::size_t b) { return ext_binom(std::int64_t(a), std::int64_t(b)); }

Integer catalan(std::size_t n) { return binomial(2 * n, n) / (n + 1); }

std::size_t CatalogEntry::representation_count() const {
  return std::size_t(tiles.has_value()) + gf.has_value() + multisum.has_value() + balanced.has_value();
}

// ---------------------------------------------------------------------------

BinomialMultiSum cat_mod(std::size_t m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "modulus must be at least 1");
  return ms_sum(single(kN * 2, kN), ms_scale(single(kN * 2, kN + 1), std::int64_t(m) - 1));
}

BinomialMultiSum cat_ordp(std::size_t p) {
  if (!is_prime(Integer(static_cast<unsigned long>(p)))) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  MultiSumBuilder b;
  std::size_t kv = b.add_var({0, 0}, {1, 0});
  b.require_nonnegative(b.var(kv));
  b.require_nonnegative(kN - b.var(kv) - 1);
  b.add_constant(std::int64_t(p * p) - 1);
  b.add_power(Integer(static_cast<unsigned long>(p)), b.var(kv) * 2, {2, 0});
  b.add_factor(kN * 2, kN + 1);
  return ms_sum(single(kN * 2, kN), b.build());
}

BinomialMultiSum cat3_base() {
  MultiSumBuilder b;
  std::size_t s = b.add_var({0, 0}, {0, 2});
  std::size_t w = b.add_var({0, 0}, {1, 0});
  AffineForm sv = b.var(s), wv = b.var(w);
  b.require_nonnegative(sv);
  b.require_nonnegative(k(2) - sv);
  b.add_factor(kN - sv, wv * 3);
  b.add_factor(wv * 3, kN - sv);
  for (int i = 0; i < 3; ++i) b.add_factor(wv * 2, wv);
  b.add_power(4, sv, {0, 2});
  return b.build();
}

double cat3_constant() { return 3.0 * std::sqrt(3.0) / std::numbers::pi; }

CatApprox cat_approx(double epsilon) {
  if (!(epsilon > 0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  const long double xi = 3.0L * std::sqrt(3.0L) / std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < 40; ++i) {
    long double unit = xi / std::pow(4.0L, static_cast<long double>(i));
    long double first = std::floor((1.0L - epsilon) / unit) + 1.0L;
    std::size_t m = first < 1.0L ? 1 : static_cast<std::size_t>(first);
    if (std::fabs(m * unit - 1.0L) < epsilon) {
      CatApprox out;
      out.shift = i;
      out.scale = m;
      out.constant = static_cast<double>(m * unit);
      out.multisum = ms_scale(ms_shift(cat3_base(), std::int64_t(i)), std::int64_t(m));
      return out;
    }
  }
  fail(ErrorCode::SizeLimit, "no shift below 40 reaches the requested accuracy");
}

// ---------------------------------------------------------------------------

std::vector<Rational> upsilon(const std::vector<std::size_t>& partition) {
  std::vector<Rational> out;
  for (std::size_t l : partition)
    for (std::size_t j = 1; j <= l; ++j) {
      Rational x(static_cast<unsigned long>(j), static_cast<unsigned long>(l));
      x.canonicalize();
      out.push_back(x);
    }
  return out;
}

Rational hypergeometric_partial_sum(const std::vector<Rational>& a, const std::vector<Rational>& b, const Rational& r,
                                    std::size_t terms) {
  Rational sum = 0, term = 1;
  for (std::size_t m = 0; m < terms; ++m) {
    sum += term;
    Rational num = r, den = 1;
    for (const Rational& x : a) num *= Rational(static_cast<unsigned long>(m)) + x;
    for (const Rational& x : b) den *= Rational(static_cast<unsigned long>(m)) + x;
    term *= num / den;
  }
  return sum;
}

namespace {

Integer factorial(std::size_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

bool group_parts(const std::vector<std::size_t>& mu, std::vector<std::size_t>& left,
                 std::vector<std::vector<std::size_t>>& parts, const std::vector<std::size_t>& nu, std::size_t next) {
  if (next == nu.size()) {
    for (std::size_t x : left)
      if (x != 0) return false;
    return true;
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (left[i] < nu[next]) continue;
    left[i] -= nu[next];
    parts[i].push_back(nu[next]);
    if (group_parts(mu, left, parts, nu, next + 1)) return true;
    parts[i].pop_back();
    left[i] += nu[next];
  }
  return false;
}

Integer prime_radical(Integer m) {
  Integer out = 1;
  for (const auto& [p, e] : factorize(m)) out *= p;
  return out;
}

}  // namespace

Integer HypoSum::weight(std::size_t l) const {
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    num *= factorial(mu[i] * l);
    for (std::size_t x : parts[i]) den *= factorial(x * l);
  }
  return num / den;
}

Integer HypoSum::value(std::size_t n) const {
  const std::size_t m = n / period;
  const std::size_t i = n % period;
  const Integer big = power(base, period);
  Rational dq = rho * big;
  const Integer d = dq.get_num();
  Integer total = 0;
  for (std::size_t l = 0; l <= m; ++l) total += weight(l) * power(big, m - l) * power(d, l);
  return total * power(base, i);
}

Rational HypoSum::normalized(std::size_t n) const {
  const std::size_t m = n / period;
  Rational total = 0, rl = 1;
  for (std::size_t l = 0; l <= m; ++l) {
    total += Rational(weight(l)) * rl;
    rl *= rho;
  }
  return total;
}

HypoSum hypo_build(const std::vector<std::size_t>& mu, const std::vector<std::size_t>& nu, const Rational& r,
                   const Integer& c) {
  if (mu.empty() || nu.empty()) fail(ErrorCode::NotRefinement, "partitions must be nonempty");
  for (std::size_t x : mu)
    if (x == 0) fail(ErrorCode::NotRefinement, "partition parts must be positive");
  for (std::size_t x : nu)
    if (x == 0) fail(ErrorCode::NotRefinement, "partition parts must be positive");
  if (r <= 0) fail(ErrorCode::InvalidArgument, "ratio must be positive");
  if (c < 1) fail(ErrorCode::BadBase, "base must be positive");

  HypoSum h;
  h.mu = mu;
  h.r = r;
  h.base = c;
  h.parts.assign(mu.size(), {});
  std::vector<std::size_t> left = mu;
  std::vector<std::size_t> sorted_nu = nu;
  std::sort(sorted_nu.rbegin(), sorted_nu.rend());
  if (!group_parts(mu, left, h.parts, sorted_nu, 0)) fail(ErrorCode::NotRefinement, "nu does not refine mu");

  Integer required = r.get_den();
  for (std::size_t x : mu) required *= static_cast<unsigned long>(x);
  Integer rad = prime_radical(required);
  if (c % rad != 0) fail(ErrorCode::BadBase, "base must be divisible by " + rad.get_str());

  Rational rho = r;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    rho /= Rational(power(static_cast<unsigned long>(mu[i]), mu[i]));
    for (std::size_t x : h.parts[i]) rho *= Rational(power(static_cast<unsigned long>(x), x));
  }
  rho.canonicalize();
  h.rho = rho;

  std::size_t d = 1;
  while (power(c, d) % rho.get_den() != 0) {
    if (++d > 64) fail(ErrorCode::BadBase, "denominator never divides a power of the base");
  }
  h.period = d;
  const Integer big = power(c, d);
  Rational dq = rho * big;
  const Integer step_base = dq.get_num();

  MultiSumBuilder b;
  AffineForm l, rest;
  if (d == 1) {
    std::size_t lv = b.add_var({0, 0}, {1, 0});
    l = b.var(lv);
    rest = kN - l;
  } else {
    std::size_t mv = b.add_var({0, 0}, {1, 0});
    std::size_t iv = b.add_var({0, 0}, {0, std::int64_t(d) - 1});
    std::size_t lv = b.add_var({0, 0}, {1, 0});
    AffineForm m = b.var(mv), i = b.var(iv);
    l = b.var(lv);
    rest = m - l;
    b.require_zero(kN - m * std::int64_t(d) - i);
    b.require_nonnegative(i);
    b.require_nonnegative(k(std::int64_t(d) - 1) - i);
    b.add_power(c, i, {0, std::int64_t(d) - 1});
  }
  b.require_nonnegative(l);
  b.require_nonnegative(rest);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    AffineForm top = l * std::int64_t(mu[i]);
    for (std::size_t j = 0; j + 1 < h.parts[i].size(); ++j) {
      AffineForm part = l * std::int64_t(h.parts[i][j]);
      b.add_factor(top, part);
      top = top - part;
    }
  }
  b.add_power(big, rest, {1, 0});
  b.add_power(step_base, l, {1, 0});
  h.multisum = b.build();
  return h;
}

// ---------------------------------------------------------------------------

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  auto add = [&](CatalogEntry e) { out.push_back(std::move(e)); };

  add({"g1", "1 for even n, 0 for odd n", TileSet{{rectangle(2)}, FieldElement(), nullptr}, parse_gf("Q(x1*x1)"),
       residue_indicator(2, 0), std::nullopt, [](std::size_t n) -> Integer { return Integer(n % 2 == 0 ? 1 : 0); }});
  add({"g2", "constant 2", two_way_tiles(), parse_gf("Q(x1) + Q(x1)"), single(k(2), k(1)), std::nullopt,
       [](std::size_t) -> Integer { return Integer(2); }});
  add({"g3", "n^2", square_count_tiles(), parse_gf("x1*Q(x1)*Q(x1)*x2*Q(x2)*Q(x2)"),
       sum_of({{kN, k(1)}, {kN, k(1)}}, 0), std::nullopt,
       [](std::size_t n) -> Integer { return Integer(static_cast<unsigned long>(n * n)); }});
  add({"g4", "2^n", split_square_tiles(), parse_gf("Q(2*x1)"), sum_of({{kN, v(0)}}, 1), std::nullopt,
       [](std::size_t n) -> Integer { return power(2, n); }});
  add({"g5", "Fibonacci numbers, F_0 = F_1 = 1", fibonacci_tiles(), parse_gf("Q(x1 + x1*x1)"),
       sum_of({{kN - v(0), v(0)}}, 1), std::nullopt, fib});
  add({"g6", "central binomial coefficients binom(2n, n)", half_tiles(), parse_gf("Q(x1 + x2)"), single(kN * 2, kN),
       std::nullopt, [](std::size_t n) -> Integer { return binomial(2 * n, n); }});
  add({"lucas", "Lucas numbers L_n for n >= 1, value 1 at n = 0", lucas_tiles(),
       parse_gf("(1 + x1*x1)*Q(x1 + x1*x1)"),
       sum_of({{kN - v(0) - v(1) * 2, v(0)}, {k(1), v(1)}, {kN - v(1) * 2 - 1, k(0)}}, 2), std::nullopt,
       [](std::size_t n) -> Integer { return n < 2 ? Integer(1) : fib(n) + fib(n - 2); }});
  add({"powers-2-3", "2^n + 3^n", std::nullopt, parse_gf("Q(2*x1) + Q(3*x1)"),
       // variables i, j, k, l, m
       sum_of({{kN, v(0)},
               {v(4), v(1)},
               {k(1), v(2)},
               {v(4) - v(2), v(4)},
               {v(3) + v(2) - 1, v(3)},
               {v(0), v(4) + v(3)},
               {v(4) + v(3), v(0)}},
              5),
       std::nullopt, [](std::size_t n) -> Integer { return power(2, n) + power(3, n); }});
  add({"delannoy", "central Delannoy numbers", std::nullopt, parse_gf("Q(x1 + x2 + x1*x2)"),
       sum_of({{kN + v(0), kN - v(0)}, {v(0) * 2, v(0)}}, 1), std::nullopt, [](std::size_t n) -> Integer {
         Integer s = 0;
         for (std::size_t j = 0; j <= n; ++j) s += binomial(n, j) * binomial(n + j, j);
         return s;
       }});
  {
    BinomialMultiSum apery =
        sum_of({{kN, v(0)}, {kN + v(0), v(0)}, {v(0), v(1)}, {v(0), v(1)}, {v(0), v(1)}}, 2);
    add({"apery", "Apery numbers", std::nullopt, std::nullopt, apery, to_balanced(apery), [](std::size_t n) -> Integer {
           Integer s = 0;
           for (std::size_t kk = 0; kk <= n; ++kk) {
             Integer inner = 0;
             for (std::size_t j = 0; j <= kk; ++j) inner += power(binomial(kk, j), 3);
             s += binomial(n, kk) * binomial(n + kk, kk) * inner;
           }
           return s;
         }});
  }
  add({"finite-support", "1, 2, 1, then 0", std::nullopt, parse_gf("1 + 2*x1 + x1*x1"), single(k(2), kN),
       std::nullopt, [](std::size_t n) -> Integer { return Integer(n == 1 ? 2 : n <= 2 ? 1 : 0); }});
  add({"periodic", "2, 1, 0 repeating with period 3", std::nullopt,
       parse_gf("2*Q(x1*x1*x1) + x1*Q(x1*x1*x1)"), ms_sum(ms_scale(residue_indicator(3, 0), 2), residue_indicator(3, 1)),
       std::nullopt, [](std::size_t n) -> Integer { return Integer(n % 3 == 0 ? 2 : n % 3 == 1 ? 1 : 0); }});
  add({"polynomial", "n^2 + 2n + 3", std::nullopt,
       parse_gf("x1*(1 + x1)*Q(x1)*Q(x1)*Q(x1) + 2*x1*Q(x1)*Q(x1) + 3*Q(x1)"),
       ms_sum(ms_sum(sum_of({{kN, k(1)}, {kN, k(1)}}, 0), sum_of({{kN, k(1)}, {k(2), k(1)}}, 0)), single(k(3), k(1))),
       std::nullopt, [](std::size_t n) -> Integer { return Integer(static_cast<unsigned long>(n * n + 2 * n + 3)); }});
  {
    MultiSumBuilder b;
    b.add_power(3, kN, {1, 0});
    add({"power-3", "3^n", power_three_tiles(), parse_gf("Q(3*x1)"), b.build(), std::nullopt,
         [](std::size_t n) -> Integer { return power(3, n); }});
  }
  {
    MultiSumBuilder b;
    std::size_t kv = b.add_var({0, 0}, {1, 0});
    b.require_nonnegative(b.var(kv));
    b.require_nonnegative(kN - b.var(kv) - 1);
    b.add_constant(2);
    b.add_power(3, b.var(kv), {1, 0});
    add({"power-3-minus-1", "3^n - 1", std::nullopt, parse_gf("2*x1*Q(x1)*Q(3*x1)"), b.build(), std::nullopt,
         [](std::size_t n) -> Integer { return power(3, n) - 1; }});
  }
  {
    HypoSum h = hypo_build({4}, {2, 1, 1}, Rational(1, 2), 128);
    add({"hypo-128", "sum_k binom(4k, k) binom(3k, k) 128^(n - k)", std::nullopt, std::nullopt, h.multisum,
         std::nullopt, [h](std::size_t n) -> Integer { return h.value(n); }});
  }
  {
    BinomialMultiSum ms = cat_mod(10);
    add({"catalan-mod-10", "congruent to the Catalan numbers mod 10", std::nullopt, std::nullopt, ms,
         to_balanced(ms), [](std::size_t n) -> Integer { return binomial(2 * n, n) + 9 * binomial(2 * n, n + 1); }});
  }
  add({"cat3-base", "asymptotic to 3 sqrt(3) / pi times the Catalan numbers", std::nullopt, std::nullopt,
       cat3_base(), std::nullopt, [](std::size_t n) -> Integer {
         Integer w = power(binomial(2 * (n / 3), n / 3), 3);
         return w * power(4, n % 3);
       }});
  add({"central-binomial", "binom(2n, n) as a sum of squares", half_tiles(), parse_gf("Q(x1 + x2)"),
       sum_of({{kN, v(0)}, {kN, v(0)}}, 1), std::nullopt, [](std::size_t n) -> Integer { return binomial(2 * n, n); }});
  return out;
}

std::optional<CatalogEntry> find_entry(const std::string& name) {
  for (CatalogEntry& e : catalog_entries())
    if (e.name == name) return std::move(e);
  return std::nullopt;
}

}  // namespace tilecount
