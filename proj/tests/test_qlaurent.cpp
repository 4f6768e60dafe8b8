#include <doctest.h>

#include <random>

#include "qsp/linalg.hpp"
#include "qsp/qlaurent.hpp"

using namespace qsp;

namespace {

LaurentPoly q(int e) { return LaurentPoly::q(e); }

LaurentPoly random_poly(std::mt19937& rng, int span) {
  std::uniform_int_distribution<int> c(-3, 3), e(-span, span), n(0, 4);
  LaurentPoly p;
  for (int i = n(rng); i > 0; --i) p += LaurentPoly::monomial(c(rng), e(rng));
  return p;
}

}  // namespace

TEST_CASE("Laurent polynomials: canonical form and arithmetic") {
  LaurentPoly p = q(1) + q(-1) - q(1);
  CHECK(p == q(-1));
  CHECK(p.terms().size() == 1);
  CHECK((q(2) - q(2)).is_zero());
  CHECK(LaurentPoly(0).is_zero());
  CHECK(LaurentPoly(1).is_one());
  CHECK((q(1) + 1) * (q(1) - 1) == q(2) - 1);
  CHECK(qq().str() == "-q + q^(-1)");
  CHECK(to_json(qq()) == nlohmann::json({{"-1", "1"}, {"1", "-1"}}));
  CHECK(laurent_from_json(to_json(qq())) == qq());
  CHECK(LaurentPoly::monomial(Rational(1, 2), 3).coeff(3) == Rational(1, 2));
  CHECK((q(2) + 3).eval_at_one() == 4);
  CHECK((q(2) + q(1)).in_qZq());
  CHECK_FALSE((q(0) + q(1)).in_qZq());
  CHECK(q(-3).in_qinvZqinv());
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * 1 == a);
    CHECK(bar(a * b) == bar(a) * bar(b));
    CHECK(bar(bar(a)) == a);
    if (!b.is_zero()) CHECK(divide_exact(a * b, b) == a);
  }
  CHECK_THROWS_AS(divide_exact(q(0) + q(1), q(0) - q(1)), std::domain_error);
}

TEST_CASE("bar map") {
  CHECK(bar(q(1)) == q(-1));
  CHECK(bar(qq()) == q(1) - q(-1));
  CHECK(bar(1 + q(2)) == 1 + q(-2));
  RationalFn r(q(0), qq());
  CHECK(bar(bar(r)) == r);
  CHECK(bar(r) == -r);
}

TEST_CASE("quantum integers, factorials and binomials") {
  CHECK(qint(2) == q(1) + q(-1));
  CHECK(qint(0).is_zero());
  CHECK(qint(3) == q(2) + 1 + q(-2));
  CHECK(qint(-2) == -qint(2));
  for (int a = -8; a <= 8; ++a) CHECK(qint(a) * (q(1) - q(-1)) == q(a) - q(-a));
  CHECK(qfact(0) == 1);
  CHECK(qfact(2) == q(1) + q(-1));
  CHECK(qfact(3) == qint(2) * qint(3));
  CHECK(qbinom(2, 1) == q(1) + q(-1));
  CHECK(qbinom(4, 2) == q(4) + q(2) + 2 + q(-2) + q(-4));
  for (int a = 0; a <= 7; ++a) {
    CHECK(qbinom(a, 0) == 1);
    CHECK(qbinom(a, a) == 1);
    for (int b = 1; b < a; ++b)  // q-Pascal
      CHECK(qbinom(a, b) == qbinom(a - 1, b).shift(-b) + qbinom(a - 1, b - 1).shift(a - b));
  }
}

TEST_CASE("rational functions") {
  RationalFn a(1, qq());
  CHECK(a.den().coeff(a.den().min_exp()) > 0);
  CHECK(a * RationalFn(qq()) == RationalFn(1));
  CHECK(RationalFn(q(2) - 1, q(1) - 1) == RationalFn(q(1) + 1));
  CHECK(RationalFn(q(2) - 1, q(1) - 1).is_laurent());
  CHECK(RationalFn(q(3)) .to_laurent() == q(3));
  CHECK_THROWS(a.to_laurent());
  CHECK_THROWS_AS(RationalFn(1, 0), std::domain_error);
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto n1 = random_poly(rng, 2), d1 = random_poly(rng, 2), n2 = random_poly(rng, 2), d2 = random_poly(rng, 2);
    if (d1.is_zero() || d2.is_zero()) continue;
    RationalFn x(n1, d1), y(n2, d2);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) - y == x);
    if (!y.is_zero()) {
      CHECK((x / y) * y == x);
      CHECK(y * y.inverse() == RationalFn(1));
    }
    CHECK(bar(x * y) == bar(x) * bar(y));
  }
}

TEST_CASE("ZPoly mirrors LaurentPoly") {
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto a = random_poly(rng, 5), b = random_poly(rng, 5);
    bool integral = a.is_integral() && b.is_integral();
    REQUIRE(integral);
    ZPoly za = ZPoly::from_laurent(a), zb = ZPoly::from_laurent(b);
    CHECK((za * zb).to_laurent() == a * b);
    ZPoly s = za;
    s += zb;
    CHECK(s.to_laurent() == a + b);
    CHECK(za.times_qq().to_laurent() == a * qq());
  }
}

TEST_CASE("exact linear algebra") {
  RMatrix m{{RationalFn(1), RationalFn(q(1))}, {RationalFn(q(-1)), RationalFn(2)}};
  auto inv = invert(m);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      RationalFn s;
      for (size_t k = 0; k < 2; ++k) s += m[i][k] * inv[k][j];
      CHECK(s == RationalFn(i == j ? 1 : 0));
    }
  auto x = solve_unique(m, {RationalFn(1), RationalFn(0)});
  CHECK(x[0] == inv[0][0]);
  RMatrix sing{{RationalFn(1), RationalFn(q(1))}, {RationalFn(q(-1)), RationalFn(1)}};
  CHECK_THROWS_AS(invert(sing), std::domain_error);
}
