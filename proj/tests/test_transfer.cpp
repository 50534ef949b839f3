#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tilecount/catalog.hpp"
#include "tilecount/transfer.hpp"

using namespace tilecount;

TEST_CASE("transfer graphs of simple sets") {
  TransferGraph fib = build_graph(fibonacci_tiles());
  CHECK(fib.vertex_count() == 1);
  REQUIRE(fib.edges.size() == 2);
  CHECK(fib.edges[0].weight + fib.edges[1].weight == FieldElement(3));

  TileSet half = half_tiles();
  TransferGraph h = build_graph(half);
  CHECK(h.vertex_count() == 1);
  REQUIRE(h.edges.size() == 2);
  CHECK(h.edges[0].weight + h.edges[1].weight == FieldElement(1));

  TransferGraph empty = build_graph(TileSet{});
  CHECK(empty.vertex_count() == 1);
  CHECK(empty.edges.empty());
}

TEST_CASE("counting against enumeration oracles") {
  TileSet fib = fibonacci_tiles();
  for (long n = 0; n <= 15; ++n) CHECK(count_tilings(fib, std::size_t(n)) == Integer(oracle::compositions(n, {1, 2})));
  CHECK(count_tilings(fib, 10) == 89);

  TileSet half = half_tiles();
  CHECK(count_tilings(half, 2) == 6);
  for (long n = 0; n <= 8; ++n) CHECK(count_tilings(half, std::size_t(n)) == oracle::choose(2 * n, n));

  TileSet two = two_way_tiles();
  for (std::size_t n = 1; n <= 8; ++n) CHECK(count_tilings(two, n) == 2);

  TileSet sq = square_count_tiles();
  CHECK(count_tilings(sq, 3) == 9);
  for (std::size_t n = 0; n <= 7; ++n) CHECK(count_tilings(sq, n) == Integer(static_cast<unsigned long>(n * n)));

  TileSet split = split_square_tiles();
  for (long n = 0; n <= 10; ++n) CHECK(count_tilings(split, std::size_t(n)) == oracle::pow(2, n));

  TileSet luc = lucas_tiles();
  for (long n = 0; n <= 10; ++n) CHECK(count_tilings(luc, std::size_t(n)) == oracle::lucas(n));
}

TEST_CASE("enumeration lists tile sequences") {
  auto seqs = enumerate_tilings(fibonacci_tiles(), 3, 100);
  CHECK(seqs.size() == 3);
  std::sort(seqs.begin(), seqs.end());
  CHECK(seqs == std::vector<std::vector<std::size_t>>{{0, 0, 0}, {0, 1}, {1, 0}});

  CHECK(enumerate_tilings(half_tiles(), 1, 100).size() == 2);
  TileSet twos{{rectangle(2)}, FieldElement(), nullptr};
  CHECK(enumerate_tilings(twos, 3, 100).empty());
  CHECK(count_tilings(twos, 3) == 0);
  try {
    enumerate_tilings(fibonacci_tiles(), 10, 5);
    FAIL("expected a limit error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LimitExceeded);
  }
}

TEST_CASE("property: enumeration and counting agree") {
  for (const TileSet& ts : {fibonacci_tiles(), half_tiles(), two_way_tiles(), lucas_tiles(), split_square_tiles()})
    for (std::size_t n = 0; n <= 6; ++n)
      CHECK(Integer(static_cast<unsigned long>(enumerate_tilings(ts, n, 1000000).size())) == count_tilings(ts, n));
}

TEST_CASE("closed walks by weight") {
  TransferGraph g = build_graph(fibonacci_tiles());
  CHECK(count_closed_walks(g, FieldElement(4)) == 5);
  CHECK(count_closed_walks(g, FieldElement(Rational(1, 2))) == 0);
  CHECK(count_closed_walks(g, FieldElement(0)) == 1);
}
