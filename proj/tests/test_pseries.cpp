#include "doctest.h"
#include "mzsv/bi_series.hpp"
#include "support.hpp"

using namespace mzsv;
using namespace testing;
using S = ExactSeries;

namespace {

S random_series(int d, bool unit_constant) {
  S p(d);
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) p.set(a, b, Rational(uniform_int(-9, 9), uniform_int(1, 7)));
  if (unit_constant && p.coeff(0, 0) == 0) p.set(0, 0, Rational(1));
  return p;
}

// Schoolbook product without truncation-aware indexing, for cross-checks.
S naive_mul(const S& p, const S& q) {
  const int d = p.max_degree();
  S out(d);
  for (int a1 = 0; a1 <= d; ++a1)
    for (int b1 = 0; a1 + b1 <= d; ++b1)
      for (int a2 = 0; a2 <= d; ++a2)
        for (int b2 = 0; a2 + b2 <= d; ++b2)
          if (a1 + a2 + b1 + b2 <= d)
            out.set(a1 + a2, b1 + b2, out.coeff(a1 + a2, b1 + b2) + p.coeff(a1, b1) * q.coeff(a2, b2));
  return out;
}

long pascal(int n, int r) {
  std::vector<long> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<long> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = next;
  }
  return row[static_cast<std::size_t>(r)];
}

}  // namespace

TEST_CASE("products") {
  const int d = 4;
  const S one = S::constant(d, Rational(1));
  const S x = S::x(d), z = S::z(d);
  CHECK((one + x) * (one - x) == one - x * x);
  CHECK((x + z) * (x - z) == x * x - z * z);
  for (int i = 0; i < 10; ++i) {
    S p = random_series(d, false), q = random_series(d, false);
    CHECK(p * q == naive_mul(p, q));
  }
  CHECK_THROWS_AS(S(3) * S(4), DomainError);
}

TEST_CASE("reciprocal") {
  const int d = 6;
  const S one = S::constant(d, Rational(1));
  const S x = S::x(d), z = S::z(d);
  S quadric = one - x * Rational(2) + x * x - z * z;
  CHECK(quadric * ps_reciprocal(quadric) == one);

  S geometric = ps_reciprocal(one - x);
  for (int a = 0; a <= d; ++a) CHECK(geometric.coeff(a, 0) == 1);
  CHECK(geometric.coeff(0, 1) == 0);

  S a1 = ps_reciprocal(quadric);
  CHECK(ps_coeff(a1, 0, 0) == 1);
  CHECK(ps_coeff(a1, 1, 0) == 2);
  CHECK(ps_coeff(a1, 2, 0) == 3);
  CHECK(ps_coeff(a1, 0, 2) == 1);
  CHECK(ps_coeff(a1, 1, 1) == 0);
  CHECK(ps_reciprocal(one) == one);

  for (int i = 0; i < 50; ++i) {
    const int deg = static_cast<int>(uniform_int(0, 8));
    S p = random_series(deg, true);
    CHECK(p * ps_reciprocal(p) == S::constant(deg, Rational(1)));
  }
  CHECK_THROWS_AS(ps_reciprocal(x), SingularError);
}

TEST_CASE("coefficient access is bounded by the truncation") {
  S p(2);
  p.set(1, 0, Rational(2));
  CHECK(ps_coeff(p, 1, 0) == 2);
  CHECK(ps_coeff(p, 0, 2) == 0);
  CHECK_THROWS_AS(ps_coeff(p, 3, 0), OutOfRangeError);
  CHECK_THROWS_AS(p.set(2, 1, Rational(1)), OutOfRangeError);
}

TEST_CASE("ring axioms up to truncation") {
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(uniform_int(0, 10));
    S p = random_series(d, false), q = random_series(d, false), r = random_series(d, false);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    CHECK(p - p == S(d));
  }
}

TEST_CASE("pole expansions") {
  const int d = 6;
  const S one = S::constant(d, Rational(1));
  const S x = S::x(d), z = S::z(d);
  S p1 = pole_expand<Rational>(1, Sign::plus, d);
  S w = x + z;
  S expect = S(d);
  S power = one;
  for (int m = 0; m <= d; ++m) {
    expect -= power;
    power = power * w;
  }
  CHECK(p1 == expect);
  CHECK(pole_expand<Rational>(2, Sign::minus, d).coeff(0, 0) == Rational(-1, 2));
  for (int l = 1; l <= 4; ++l)
    for (Sign s : {Sign::plus, Sign::minus}) {
      S pe = pole_expand<Rational>(l, s, d);
      for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b) {
          Rational c = -Rational(pascal(a + b, b));
          if (s == Sign::minus && b % 2 == 1) c = -c;
          Rational lp = 1;
          for (int e = 0; e <= a + b; ++e) lp *= l;
          CHECK(pe.coeff(a, b) == c / lp);
        }
      S linear = x + z * Rational(to_int(s)) - one * Rational(l);
      CHECK(pe * linear == one);
    }
  CHECK_THROWS_AS(pole_expand<Rational>(0, Sign::plus, d), PoleError);
  CHECK_THROWS_AS(pole_expand<Rational>(-1, Sign::plus, d), DomainError);
}

TEST_CASE("numeric mode and rendering") {
  PrecisionScope scope(PrecisionConfig{});
  NumericSeries p = NumericSeries::constant(2, Real(1)) - NumericSeries::x(2) * Real(2);
  NumericSeries q = ps_reciprocal(p);
  CHECK(close(q.coeff(2, 0), Real(4), pow10(-60)));
  S e = S::constant(1, Rational(1, 2)) + S::z(1) * Rational(-3);
  CHECK(e.render() == "1/2 * x^0 * z^0\n-3 * x^0 * z^1\n");
}
