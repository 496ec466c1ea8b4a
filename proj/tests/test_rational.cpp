#include <gtest/gtest.h>

#include <random>

#include "pilp/rational.hpp"

using namespace pilp;

namespace {

mpq_class reference(const Rational& r) {
  mpq_class q(r.num().mpz(), r.den().mpz());
  q.canonicalize();
  return q;
}

Rational random_rational(std::mt19937_64& rng) {
  // Mix tiny values, values near the 64-bit boundary and genuinely large ones.
  switch (rng() % 4) {
    case 0:
      return Rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(1 + rng() % 12));
    case 1: {
      const long n = static_cast<long>(rng() >> 1) * ((rng() & 1) ? 1 : -1);
      return Rational(n, static_cast<long>(1 + (rng() >> 2)));
    }
    case 2:
      return Rational(static_cast<long>(rng() >> 1), 1);
    default: {
      mpz_class big(std::to_string(rng()) + std::to_string(rng()));
      return Rational(Integer(big), Integer(static_cast<long>(1 + rng() % 1000)));
    }
  }
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_EQ(Rational::parse("-7").str(), "-7");
  EXPECT_EQ(Rational::parse(" 0/5 ").str(), "0");
  EXPECT_EQ(Rational::parse("123456789012345678901234567890").str(), "123456789012345678901234567890");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/-2"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("0.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, LowestTermsAndSign) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), Integer(-3));
  EXPECT_EQ(r.den(), Integer(2));
  EXPECT_EQ(r.floor(), Integer(-2));
  EXPECT_EQ(r.ceil(), Integer(-1));
  EXPECT_EQ(r.frac(), Rational(1, 2));
  EXPECT_EQ(Rational(0, -3), Rational(0));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ArithmeticMatchesGmp) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20000; ++t) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const mpq_class qa = reference(a), qb = reference(b);
    EXPECT_EQ(reference(a + b), mpq_class(qa + qb));
    EXPECT_EQ(reference(a - b), mpq_class(qa - qb));
    EXPECT_EQ(reference(a * b), mpq_class(qa * qb));
    if (!b.is_zero()) EXPECT_EQ(reference(a / b), mpq_class(qa / qb));
    EXPECT_EQ(a < b, qa < qb);
    EXPECT_EQ(a == b, qa == qb);
    // Round trip through text is exact.
    EXPECT_EQ(Rational::parse(a.str()), a);
  }
}

TEST(Rational, ShrinksBackAfterCancellation) {
  const Rational big = Rational(Integer::parse("340282366920938463463374607431768211456"));
  const Rational r = (big + Rational(1, 3)) - big;
  EXPECT_EQ(r, Rational(1, 3));
  EXPECT_EQ(r.str(), "1/3");
}
