#include "doctest.h"
#include "mzsv/constants.hpp"
#include "mzsv/hypergeom.hpp"
#include "support.hpp"

using namespace mzsv;
using namespace mzsv::hypergeom;
using namespace testing;
namespace bm = boost::multiprecision;

namespace {

const PrecisionConfig cfg{};

Rational random_rational() { return Rational(uniform_int(-40, 40), uniform_int(41, 97)); }

XZPoint random_point() { return {Real(uniform(-0.45, 0.45)), Real(uniform(0.02, 0.45) * (uniform(0, 1) < 0.5 ? -1 : 1))}; }

}  // namespace

TEST_CASE("series values") {
  PrecisionScope scope(cfg);
  CHECK(f21({Real("0.3"), Real("1.7"), Real("2.5")}, Real(0), cfg) == 1);
  CHECK(close(f21({Real(1), Real(1), Real(2)}, Real("0.5"), cfg), 2 * ref_log2(), pow10(-60)));
  const Real a("0.7"), t("0.3");
  CHECK(close(f21({a, Real("1.9"), Real("1.9")}, t, cfg), bm::pow(1 - t, -a), pow10(-60)));
  // terminating: F(-2, b, c; t) = 1 - 2bt/c + b(b+1)t^2/(c(c+1))
  const Real b("0.5"), c("1.5");
  CHECK(close(f21({Real(-2), b, c}, t, cfg), 1 - 2 * b * t / c + b * (b + 1) * t * t / (c * (c + 1)), pow10(-60)));
  CHECK_THROWS_AS(f21({Real(1), Real(1), Real(-1)}, t, cfg), DomainError);
  CHECK_THROWS_AS(f21({Real(1), Real(1), Real(2)}, Real(1), cfg), DomainError);
}

TEST_CASE("Euler transformation of the series") {
  PrecisionScope scope(cfg);
  for (int i = 0; i < 20; ++i) {
    Real al(uniform(-1.5, 1.5)), be(uniform(-1.5, 1.5)), ga(uniform(0.3, 3)), t(uniform(0, 0.6));
    Real lhs = f21({al, be, ga}, t, cfg) * bm::pow(1 - t, al + be - ga);
    Real rhs = f21({ga - al, ga - be, ga}, t, cfg);
    CHECK(close(lhs, rhs, pow10(-40) * bm::max(Real(1), bm::abs(rhs))));
  }
}

TEST_CASE("evaluation near t = 1") {
  PrecisionScope scope(cfg);
  // connection formula against the slowly convergent series, generic and
  // integer gamma - alpha - beta
  const std::vector<HypParams> params{{Real("0.3"), Real("-0.45"), Real("1.2")},
                                      {Real("1.1"), Real("0.9"), Real("1.4")},
                                      {Real("0.5"), Real("0.5"), Real(2)},
                                      {Real("0.9"), Real("0.6"), Real("0.5")}};
  for (const auto& p : params) {
    Hypergeometric f(p, cfg);
    for (const char* ts : {"0.3", "0.55", "0.8", "0.97"}) {
      Real t(ts);
      Real series = f21(p, t, cfg);
      CHECK(close(f(t), series, pow10(-44) * bm::max(Real(1), bm::abs(series))));
    }
  }
  // F(a, b, b; t) = (1-t)^-a right next to t = 1
  Hypergeometric binom({Real("0.7"), Real("1.3"), Real("1.3")}, cfg);
  Real u("1e-30");
  CHECK(close(binom(1 - u, u) * bm::pow(u, Real("0.7")), Real(1), pow10(-44)));
  CHECK_THROWS_AS(Hypergeometric({Real(1), Real(1), Real(0)}, cfg), DomainError);
}

TEST_CASE("Gauss value at 1") {
  PrecisionScope scope(cfg);
  CHECK(close(f21_at_1({Real(1), Real(1), Real(3)}, cfg), Real(2), pow10(-60)));
  CHECK(f21_at_1({Real(0), Real("0.3"), Real("1.2")}, cfg) == 1);
  const Real q("0.25");
  Real expect = ref_gamma(Real("1.5")) * ref_gamma(q) / (ref_gamma(Real("0.5")) * ref_gamma(Real("1.25")));
  CHECK(close(f21_at_1({Real(1), q, 2 * q + 1}, cfg), expect, pow10(-60)));
  // Chu-Vandermonde against the finite sum
  CHECK(close(f21_at_1({Real(-3), Real("0.4"), Real("2.2")}, cfg),
              1 + Real(-3) * Real("0.4") / Real("2.2") + Real(-3) * Real(-2) * Real("0.4") * Real("1.4") / (Real("2.2") * Real("3.2") * 2) +
                  Real(-3) * Real(-2) * Real(-1) * Real("0.4") * Real("1.4") * Real("2.4") / (Real("2.2") * Real("3.2") * Real("4.2") * 6),
              pow10(-60)));
  CHECK_THROWS_AS(f21_at_1({Real(1), Real(1), Real(2)}, cfg), PoleError);
}

TEST_CASE("partial-fraction coefficients") {
  PrecisionScope scope(cfg);
  const Rational z(3, 11);
  CHECK(a_coeff<Rational>(1, 1, Sign::plus, z) == -1 / (2 * z));
  CHECK(a_coeff<Rational>(2, 1, Sign::plus, z) == -1 / (2 * (2 * z + 1)));
  CHECK_THROWS_AS(a_coeff<Rational>(2, 1, Sign::plus, Rational(-1, 2)), PoleError);
  CHECK_THROWS_AS(a_coeff<Rational>(1, 2, Sign::plus, z), DomainError);

  for (int n = 1; n <= 8; ++n)
    for (int i = 0; i < 5; ++i) {
      Rational x = random_rational(), zz = random_rational();
      if (zz == 0) zz = Rational(1, 7);
      Rational sum = 0;
      for (int l = 1; l <= n; ++l)
        sum += a_coeff<Rational>(n, l, Sign::plus, zz) / (x + zz - l) + a_coeff<Rational>(n, l, Sign::minus, zz) / (x - zz - l);
      CHECK(sum == a_value<Rational>(n, x, zz));
    }
}

TEST_CASE("sums of the partial-fraction coefficients") {
  PrecisionScope scope(cfg);
  const Real q("0.25");
  CHECK(close(sum_A_closed(1, Sign::plus, q, cfg), Real(-4), pow10(-60)));
  CHECK(close(sum_A_closed(2, Sign::plus, q, cfg), Real(4), pow10(-60)));
  CHECK(close(sum_A_closed(3, Sign::minus, q, cfg), Real(4), pow10(-60)));
  for (int l = 1; l <= 6; ++l)
    for (Sign s : {Sign::plus, Sign::minus})
      for (const char* zs : {"0.1", "0.17", "0.25"}) {
        Real z(zs);
        Real product = sum_A_closed(l, s, z, cfg) * z * to_int(s) * (l % 2 ? -1 : 1);
        CHECK(close(product, Real(1), pow10(-25)));
      }
  CHECK_THROWS_AS(sum_A_closed(1, Sign::plus, Real(0), cfg), DomainError);

  CHECK(close(abel_sum_A(1, Sign::plus, q, cfg), Real(-4), Real(1e-4)));
  CHECK(close(abel_sum_A(1, Sign::minus, q, cfg), Real(4), Real(1e-4)));
  CHECK(close(abel_sum_A(2, Sign::plus, q, cfg), Real(4), Real(1e-4)));
  CHECK_THROWS_AS(abel_sum_A(3, Sign::plus, q, cfg), DomainError);
}

TEST_CASE("exponent extrapolation") {
  PrecisionScope scope(cfg);
  std::vector<Real> h{Real("0.1"), Real("0.01"), Real("0.001")};
  std::vector<Real> v;
  for (const auto& hi : h) v.push_back(3 + 2 * bm::pow(hi, Real("0.3")) - hi);
  CHECK(close(extrapolate_exponents(h, v, {Real(0), Real("0.3"), Real(1)}), Real(3), pow10(-60)));
  CHECK_THROWS_AS(extrapolate_exponents(h, v, {Real(1), Real(2), Real(3)}), DomainError);
}

TEST_CASE("pole series and digamma form") {
  PrecisionScope scope(cfg);
  const Real pi = ref_pi();
  const XZPoint special{Real(0), Real("0.5")};
  CHECK(close(rhs_series(special, cfg), 2 * pi - 4, pow10(-60)));
  CHECK(close(rhs_digamma(special, cfg), 2 * pi - 4, pow10(-60)));
  const XZPoint p{Real("0.1"), Real("0.05")};
  CHECK(close(rhs_series(p, cfg), rhs_digamma(p, cfg), pow10(-40)));
  const XZPoint q{Real("0.3"), Real("-0.15")};
  CHECK(close(rhs_series(q, cfg), rhs_digamma(q, cfg), pow10(-40)));
  CHECK(close(rhs_digamma({p.x, -p.z}, cfg), rhs_digamma(p, cfg), pow10(-60)));
  for (int i = 0; i < 10; ++i) {
    XZPoint r = random_point();
    CHECK(close(rhs_series(r, cfg), rhs_digamma(r, cfg), pow10(-40)));
  }
  // z -> 0 limit is zeta(2): the value is even in z, so two points
  // eliminate the z^2 term.
  Real v1 = rhs_series({Real(0), Real("0.001")}, cfg), v2 = rhs_series({Real(0), Real("0.0001")}, cfg);
  Real limit = (v2 * Real("1e-6") - v1 * Real("1e-8")) / (Real("1e-6") - Real("1e-8"));
  CHECK(close(limit, pi * pi / 6, Real(1e-10)));

  CHECK_THROWS_AS(rhs_series({Real("0.1"), Real(0)}, cfg), DomainError);
  CHECK_THROWS_AS(rhs_series({Real("0.6"), Real("0.1")}, cfg), DomainError);
  CHECK_THROWS_AS(rhs_digamma({Real("0.5"), Real("0.5")}, cfg), PoleError);
}

TEST_CASE("integral representation") {
  PrecisionScope scope(cfg);
  const Real pi = ref_pi();
  CHECK(close(theorem2_lhs({Real(0), Real("0.5")}, cfg).value, 2 * pi - 4, Real(1e-8)));
  const XZPoint p{Real("0.1"), Real("0.05")}, q{Real("-0.2"), Real("0.1")}, r{Real("0.3"), Real("-0.15")};
  CHECK(close(theorem2_lhs(p, cfg).value, rhs_series(p, cfg), Real(1e-8)));
  CHECK(close(theorem2_lhs(q, cfg).value, rhs_digamma(q, cfg), Real(1e-8)));
  CHECK(close(theorem2_lhs(r, cfg).value, rhs_series(r, cfg), Real(1e-8)));
  // the raw integrand (1-t)^(z-x) F(1-x+z, 1+z, 2-x; t) on a subinterval
  // where the plain series converges, against the transformed form
  const Real x = p.x, z = p.z;
  Hypergeometric g({1 - z, 1 - x - z, 2 - x}, cfg);
  for (const char* ts : {"0.2", "0.45"}) {
    Real t(ts);
    Real raw = bm::pow(1 - t, z - x) * f21({1 - x + z, 1 + z, 2 - x}, t, cfg);
    CHECK(close(raw, bm::pow(1 - t, -x - z) * g(t), pow10(-55)));
  }
}

TEST_CASE("variation of parameters") {
  PrecisionScope scope(cfg);
  const XZPoint p{Real("0.1"), Real("0.05")};
  CHECK(close(vop_phi0(p, Real("0.5"), cfg), phi0_power_series(p, Real("0.5"), cfg), Real(1e-10)));
  Real small = vop_phi0(p, Real("0.001"), cfg);
  CHECK(bm::abs(small) <= Real("2e-3") * bm::abs(a_value<Real>(1, p.x, p.z)) * Real("1.1"));
  CHECK(close(vop_phi0_at_one(p, cfg), rhs_series(p, cfg), Real(1e-4)));
  CHECK(close(vop_phi0_at_one({Real(0), Real("0.2")}, cfg), rhs_series({Real(0), Real("0.2")}, cfg), Real(1e-4)));
  CHECK_THROWS_AS(vop_phi0(p, Real(1), cfg), DomainError);
  CHECK_THROWS_AS(vop_phi0({Real("0.1"), Real(0)}, Real("0.5"), cfg), DomainError);
}

TEST_CASE("validity window") {
  CHECK_NOTHROW((XZPoint{Real("-0.5"), Real("0.5")}.validate()));
  CHECK_NOTHROW((XZPoint{Real("0.5"), Real("-0.4")}.validate()));
  CHECK_THROWS_AS((XZPoint{Real("0.51"), Real(0)}.validate()), DomainError);
  CHECK_THROWS_AS((XZPoint{Real("0.5"), Real("0.5")}.validate()), PoleError);
}
