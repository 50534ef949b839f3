#include <doctest.h>

#include <cmath>
#include <random>

#include "tilecount/exactnum.hpp"

using namespace tilecount;

namespace {

BasisPtr alpha_basis() {
  return IrrationalBasis::create(
      {{"alpha", {Rational(41, 100), Rational(42, 100)}, PolynomialRoot{{Rational(1), Rational(2), Rational(-1)}}}});
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(rational_from_string("3/6") == Rational(1, 2));
  CHECK(rational_from_string("-7") == Rational(-7));
  CHECK(rational_to_string(rational_from_string("4/6")) == "2/3");
  CHECK_THROWS_AS(rational_from_string("1/0"), Error);
  CHECK_THROWS_AS(rational_from_string("abc"), Error);
}

TEST_CASE("field element arithmetic") {
  BasisPtr b = alpha_basis();
  FieldElement a = FieldElement::symbol(b, 0);
  FieldElement half(Rational(1, 2));
  CHECK((half - a) + (half + a) == FieldElement(1));
  CHECK(((FieldElement(1) + a) - (FieldElement(1) + a)).is_zero());
  CHECK((half + a).scaled(3) == FieldElement(Rational(3, 2)) + a.scaled(3));
  CHECK(FieldElement().is_zero());
  CHECK(FieldElement().to_string() == "0");
  CHECK((FieldElement(Rational(3, 2)) + a).to_string() == "3/2 + 1 alpha");
  CHECK((-a).to_string() == "-1 alpha");
  CHECK((half - a).coefficient(1) == -1);
  CHECK((half - a).rational_part() == Rational(1, 2));
}

TEST_CASE("sign decisions") {
  BasisPtr b = alpha_basis();
  FieldElement a = FieldElement::symbol(b, 0);
  CHECK(fe_sign(FieldElement(Rational(1, 2)) - a) == Sign::Positive);
  CHECK(fe_sign(a - FieldElement(Rational(1, 2))) == Sign::Negative);
  CHECK(fe_sign(FieldElement()) == Sign::Zero);
  // a = sqrt(2) - 1 lies in (0.41421356, 0.41421357): only refinement separates it.
  FieldElement close = a - FieldElement(Rational(41421356, 100000000));
  CHECK(fe_sign(close) == Sign::Positive);
  CHECK(fe_compare(a, FieldElement(Rational(41421357, 100000000))) == Sign::Negative);
}

TEST_CASE("overlapping enclosures are undecided until refined") {
  BasisPtr fixed = IrrationalBasis::create({{"alpha", {Rational(5, 10), Rational(7, 10)}, FixedEnclosure{}},
                                            {"beta", {Rational(6, 10), Rational(8, 10)}, FixedEnclosure{}}});
  FieldElement d = FieldElement::symbol(fixed, 0) - FieldElement::symbol(fixed, 1);
  CHECK_THROWS_AS(fe_sign(d, 0), Error);
  try {
    fe_sign(d, 16);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SignUndecided);
  }

  IntervalTable ta{{{Rational(5, 10), Rational(55, 100)}}};
  IntervalTable tb{{{Rational(75, 100), Rational(8, 10)}}};
  BasisPtr table = IrrationalBasis::create({{"alpha", {Rational(5, 10), Rational(7, 10)}, ta},
                                            {"beta", {Rational(6, 10), Rational(8, 10)}, tb}});
  FieldElement e = FieldElement::symbol(table, 0) - FieldElement::symbol(table, 1);
  CHECK_THROWS_AS(fe_sign(e, 0), Error);
  CHECK(fe_sign(e, 4) == Sign::Negative);
}

TEST_CASE("elements over different bases do not mix") {
  BasisPtr b1 = alpha_basis();
  BasisPtr b2 = IrrationalBasis::create({{"gamma", {Rational(1, 10), Rational(2, 10)}, FixedEnclosure{}}});
  FieldElement x = FieldElement::symbol(b1, 0);
  FieldElement y = FieldElement::symbol(b2, 0);
  try {
    (void)(x + y);
    FAIL("expected BASIS_MISMATCH");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BasisMismatch);
  }
  // Rational elements combine with anything.
  CHECK((x + FieldElement(2)).coefficient(0) == 2);
}

TEST_CASE("root refinement keeps the root enclosed") {
  BasisPtr b = alpha_basis();
  Interval iv = b->symbol(0).enclosure;
  for (int i = 0; i < 30; ++i) REQUIRE(b->refine(0, iv));
  Rational sqrt2 = iv.lo + 1;
  CHECK(sqrt2 * sqrt2 <= 2);
  Rational hi = iv.hi + 1;
  CHECK(hi * hi >= 2);
  CHECK(iv.hi - iv.lo < Rational(1, 1000000));
}

TEST_CASE("property: field operations agree with interval evaluation") {
  BasisPtr b = IrrationalBasis::create(
      {{"alpha", {Rational(41, 100), Rational(42, 100)}, PolynomialRoot{{Rational(1), Rational(2), Rational(-1)}}},
       {"beta", {Rational(18, 100), Rational(19, 100)}, PolynomialRoot{{Rational(8), Rational(4), Rational(-1)}}}});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-20, 20);
  auto random_element = [&] {
    return FieldElement(Rational(coef(rng), 7)) + FieldElement::symbol(b, 0, Rational(coef(rng), 3)) +
           FieldElement::symbol(b, 1, Rational(coef(rng), 5));
  };
  const double alpha = std::sqrt(2.0) - 1, beta = (std::sqrt(3.0) - 1) / 4;
  auto value = [&](const FieldElement& x) {
    return x.coefficient(0).get_d() + x.coefficient(1).get_d() * alpha + x.coefficient(2).get_d() * beta;
  };
  for (int trial = 0; trial < 200; ++trial) {
    FieldElement x = random_element(), y = random_element();
    CHECK((x + y) - y == x);
    CHECK(x + y == y + x);
    CHECK((x.hash() == (x + y - y).hash()));
    double v = value(x - y);
    if (std::fabs(v) > 1e-9) {
      Sign s = fe_compare(x, y);
      CHECK((v > 0) == (s == Sign::Positive));
    }
  }
}
