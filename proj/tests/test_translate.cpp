#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tilecount/catalog.hpp"
#include "tilecount/translate.hpp"
#include "tilecount/transfer.hpp"

using namespace tilecount;

namespace {

const AffineForm N = AffineForm::n();

std::vector<TileSet> six_sets() {
  return {fibonacci_tiles(), half_tiles(), two_way_tiles(), square_count_tiles(), split_square_tiles(), lucas_tiles()};
}

WeightedGraph graph_with(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  WeightedGraph g;
  g.vertex_count = vertices;
  for (auto [a, b] : edges) g.edges.push_back({a, b, FieldElement(1)});
  return g;
}

}  // namespace

TEST_CASE("lattice kernels") {
  IntMatrix m{{1, 2, 3}, {2, 4, 7}};
  std::vector<IntVector> k = integer_kernel(m, 3);
  REQUIRE(k.size() == 1);
  IntVector z = mat_vec(m, k[0]);
  CHECK(z == IntVector{0, 0});
  CHECK(abs(k[0][0]) == 2);
  CHECK(determinant({{2, 1}, {7, 4}}) == 1);
  CHECK(determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);

  ColumnReduction r = column_reduce(m, 3);
  CHECK(r.rank == 2);
  CHECK(abs(determinant(r.u)) == 1);
}

TEST_CASE("property: kernels of random matrices") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m(2, IntVector(4));
    for (auto& row : m)
      for (auto& x : row) x = e(rng);
    std::vector<IntVector> k = integer_kernel(m, 4);
    ColumnReduction r = column_reduce(m, 4);
    CHECK(k.size() == 4 - r.rank);
    for (const IntVector& v : k) CHECK(mat_vec(m, v) == IntVector{0, 0});
  }
}

TEST_CASE("solving for tile counts") {
  // weights 1 and 2: z0 + 2 z1 = n
  LatticeSolution s = solve_weights({FieldElement(1), FieldElement(2)}, 0, std::nullopt);
  CHECK(s.kernel.size() == 1);
  CHECK(s.particular_n[0] + 2 * s.particular_n[1] == 1);
}

TEST_CASE("irreducible cycles") {
  CHECK(irreducible_cycles(graph_with(1, {{0, 0}, {0, 0}})).cycles.size() == 2);
  CycleSystem two = irreducible_cycles(graph_with(2, {{0, 1}, {1, 0}}));
  REQUIRE(two.cycles.size() == 1);
  CHECK(two.cycles[0].edges.size() == 2);
  // a loop at vertex 1 sits inside the 2-cycle
  CycleSystem three = irreducible_cycles(graph_with(2, {{0, 1}, {1, 0}, {1, 1}}));
  CHECK(three.cycles.size() == 2);
  for (const IrreducibleCycle& c : three.cycles) CHECK(is_irreducible(graph_with(2, {{0, 1}, {1, 0}, {1, 1}}), c.edges));
  CHECK_THROWS_AS(irreducible_cycles(graph_with(1, {{0, 0}, {0, 0}}), 1), Error);
}

TEST_CASE("tiles to multisum") {
  for (const TileSet& ts : six_sets()) {
    BinomialMultiSum m = tiles_to_multisum(ts);
    for (std::size_t n = 0; n <= 8; ++n) CHECK(eval_multisum(m, std::int64_t(n)) == count_tilings(ts, n));
  }
  BinomialMultiSum two = tiles_to_multisum(two_way_tiles());
  for (std::int64_t n = 1; n <= 6; ++n) CHECK(eval_multisum(two, n) == 2);
  BinomialMultiSum sq = tiles_to_multisum(square_count_tiles());
  CHECK(eval_multisum(sq, 3) == 9);
  BinomialMultiSum half = tiles_to_multisum(half_tiles());
  for (long n = 0; n <= 3; ++n) CHECK(eval_multisum(half, n) == oracle::choose(2 * n, n));
  CHECK(eval_multisum(tiles_to_multisum(TileSet{}), 0) == 1);
  CHECK(eval_multisum(tiles_to_multisum(TileSet{}), 2) == 0);
}

TEST_CASE("the cycle system reconstructs walk counts") {
  TileTranslation t = translate_tiles(lucas_tiles());
  CHECK(t.cycles.cycles.size() == t.cycles.a.size());
  for (const IrreducibleCycle& c : t.cycles.cycles) CHECK(is_irreducible(t.graph, c.edges));
}

TEST_CASE("gf to tiles") {
  struct Case {
    const char* expr;
    std::function<Integer(long)> f;
  };
  std::vector<Case> cases{{"Q(x1+x2)", [](long n) -> Integer { return oracle::choose(2 * n, n); }},
                          {"Q(2*x1)", [](long n) -> Integer { return oracle::pow(2, n); }},
                          {"Q(x1+x1*x1)", oracle::fib},
                          {"x1*Q(x1)*Q(x1)*x2*Q(x2)*Q(x2)", [](long n) -> Integer { return Integer(n * n); }}};
  for (const Case& c : cases) {
    TileSet ts = gf_to_tiles(parse_gf(c.expr));
    CHECK_NOTHROW(validate_tile_set(ts));
    for (long n = 0; n <= 4; ++n) CHECK_MESSAGE(count_tilings(ts, std::size_t(n)) == c.f(n), c.expr);
  }
  TileSet zero = gf_to_tiles(parse_gf("0"));
  for (std::size_t n = 0; n <= 3; ++n) CHECK(count_tilings(zero, n) == 0);
}

TEST_CASE("multisum to gf") {
  BinomialMultiSum fib;
  fib.dims = 1;
  fib.factors = {{N - AffineForm::var(0), AffineForm::var(0)}};
  MultisumGF d = multisum_to_gf_detailed(fib);
  for (long n = 0; n <= 5; ++n) CHECK(diagonal(d.diagonal, std::size_t(n)) == oracle::fib(n));

  BinomialMultiSum g3;
  g3.factors = {{N, AffineForm::cst(1)}, {N, AffineForm::cst(1)}};
  GFExpr e3 = multisum_to_gf(g3);
  for (long n = 0; n <= 4; ++n) CHECK(diagonal(e3, std::size_t(n)) == Integer(n * n));

  BinomialMultiSum one;
  one.factors = {{N, AffineForm::cst(0)}};
  GFExpr e1 = multisum_to_gf(one);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(diagonal(e1, n) == 1);

  TranslateOptions tight;
  tight.var_cap = 2;
  CHECK_THROWS_AS(multisum_to_gf(fib, tight), Error);
  try {
    multisum_to_gf(*find_entry("apery")->multisum);
    FAIL("expected a refusal at the default cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeLimit);
  }
}

TEST_CASE("property: peeling does not depend on the order") {
  TileTranslation t = translate_tiles(two_way_tiles());
  const CycleSystem& cs = t.cycles;
  REQUIRE(cs.cycles.size() >= 3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    // Compose a closed walk at vertex 0 by inserting cycles at visits of their start.
    std::vector<std::size_t> walk;
    std::vector<std::size_t> inserted(cs.cycles.size(), 0);
    for (int step = 0; step < 8; ++step) {
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, cs.cycles.size() - 1)(rng);
      const IrreducibleCycle& c = cs.cycles[i];
      std::vector<std::size_t> verts = walk_vertices(t.graph, walk);
      std::vector<std::size_t> spots;
      if (walk.empty() && c.start == 0) spots.push_back(0);
      for (std::size_t p = 0; p < verts.size(); ++p)
        if (verts[p] == c.start) spots.push_back(p);
      if (spots.empty()) continue;
      std::size_t at = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
      walk.insert(walk.begin() + std::ptrdiff_t(at), c.edges.begin(), c.edges.end());
      ++inserted[i];
    }
    auto random_order = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
    std::vector<std::size_t> a = peel_multiplicities(t.graph, cs, walk, random_order);
    std::vector<std::size_t> b = peel_multiplicities(t.graph, cs, walk, random_order);
    CHECK(a == b);
    CHECK(a == inserted);
  }
}

TEST_CASE("cycle products count walks") {
  // Every irreducible cycle of the Fibonacci graph is a loop at vertex 0, so
  // walks are arrangements: a multinomial coefficient.
  TileTranslation t = translate_tiles(fibonacci_tiles());
  REQUIRE(t.cycles.cycles.size() >= 2);
  for (const IrreducibleCycle& c : t.cycles.cycles) REQUIRE(c.edges.size() == 1);
  std::vector<std::int64_t> z(t.cycles.cycles.size(), 0);
  z[0] = 2;
  z[1] = 1;
  CHECK(cycle_product(t.cycles, z) == 3);
  z[0] = 3;
  z[1] = 2;
  CHECK(cycle_product(t.cycles, z) == 10);
}
