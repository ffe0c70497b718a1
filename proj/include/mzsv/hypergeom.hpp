#pragma once

#include <memory>
#include <vector>

#include "mzsv/numkern.hpp"
#include "mzsv/types.hpp"

// Gauss hypergeometric machinery for the generating function Phi0(x,z;t):
// its closed value at t = 1 (pole series and digamma forms), the integral
// representation over (0,1), and the variation-of-parameters construction.
namespace mzsv::hypergeom {

/// Parameters of F(alpha, beta, gamma; t).
struct HypParams {
  Real alpha, beta, gamma;
};

/// Point (x, z) of the generating function.
struct XZPoint {
  Real x, z;

  /// Validity window |x|, |z| <= 1/2 with x +- z away from 1, 2, 3, ...
  /// Throws DomainError outside the window.
  void validate() const;
};

/// F(alpha, beta, gamma; t) usable on all of [0,1): the power series for
/// t <= 1/2 and the 1-t connection formula above, with the pair (t, 1-t)
/// supplied so that points next to t = 1 keep full relative accuracy.
/// Integer values of gamma - alpha - beta are handled by averaging the
/// connection formula at beta +- eps.
class Hypergeometric {
 public:
  Hypergeometric(HypParams p, const PrecisionConfig& cfg);

  const HypParams& params() const { return p_; }

  Real operator()(const Real& t, const Real& one_minus_t) const;
  Real operator()(const Real& t) const { return (*this)(t, 1 - t); }

 private:
  // gamma - alpha - beta = excess_int + excess_frac, |excess_frac| <= 1/2
  Hypergeometric(HypParams p, long excess_int, const Real& excess_frac, const PrecisionConfig& cfg);
  void init_excess(long excess_int, const Real& excess_frac);
  Real near_one(const Real& t, const Real& u) const;

  HypParams p_;
  PrecisionConfig cfg_;
  bool terminating_ = false;
  bool degenerate_ = false;
  long excess_int_ = 0;
  Real excess_frac_;
  Real coeff_regular_, coeff_singular_;  // connection coefficients
  std::unique_ptr<Hypergeometric> lower_, upper_;
};

/// Power series sum (alpha)_n (beta)_n / ((gamma)_n n!) t^n, |t| < 1, by
/// term recurrence with a geometric tail bound as stopping rule.
/// Throws DomainError at a gamma pole or for |t| >= 1.
Real f21(const HypParams& p, const Real& t, const PrecisionConfig& cfg);

/// Gauss's value F(alpha, beta, gamma; 1) = G(g) G(g-a-b) / (G(g-a) G(g-b)),
/// taken as the Gamma quotient wherever it is finite (terminating series
/// via Chu-Vandermonde). Throws PoleError on an uncompensated numerator pole.
Real f21_at_1(const HypParams& p, const PrecisionConfig& cfg);

/// Partial-fraction coefficient A_{n,l}^(+-) of a_n at the pole x +- z = l:
///   (-1)^l C(n-1, l-1) prod_{i=1}^{n-1} (w-l+i) / prod_{j=1}^{n} (2w-l+j),
/// w = +-z. Throws PoleError on a vanishing denominator.
template <class S>
S a_coeff(int n, int l, Sign sign, const S& z) {
  if (l < 1 || n < l) throw DomainError("a_coeff: need 1 <= l <= n");
  const S w = to_int(sign) == 1 ? z : S(-z);
  S value = l % 2 == 0 ? S(1) : S(-1);
  for (int i = 1; i < l; ++i) value = value * S(n - l + i) / S(i);
  for (int i = 1; i <= n - 1; ++i) value *= w - S(l) + S(i);
  for (int j = 1; j <= n; ++j) {
    S den = S(2) * w - S(l) + S(j);
    if (den == 0) throw PoleError("a_coeff: vanishing denominator");
    value /= den;
  }
  return value;
}

/// a_n(x, z) at a numeric point via the ratio recurrence
///   a_1 = 1/((1-x)^2 - z^2),  a_(m+1) = a_m m (m-x) / ((m+1-x)^2 - z^2).
template <class S>
S a_value(int n, const S& x, const S& z) {
  if (n < 1) throw DomainError("a_value: n must be >= 1");
  auto quadric = [&](int m) {
    S mx = S(m) - x;
    S q = mx * mx - z * z;
    if (q == 0) throw PoleError("a_value: x +- z hits a positive integer");
    return q;
  };
  S a = S(1) / quadric(1);
  for (int m = 1; m < n; ++m) a = a * S(m) * (S(m) - x) / quadric(m + 1);
  return a;
}

/// a_n(x, z) as the Gamma quotient
///   G(n) G(n-x) G(1-x-z) G(1-x+z) / (G(1-x) G(1-x-z+n) G(1-x+z+n)).
Real a_gamma_form(int n, const Real& x, const Real& z, const PrecisionConfig& cfg);

/// sum_{n>=l} A_{n,l}^(+-) through the prefactor times f21_at_1(l, w, 2w+1);
/// equals +-(-1)^l / z.
Real sum_A_closed(int l, Sign sign, const Real& z, const PrecisionConfig& cfg);

/// Abel-regularized sum_{n>=l} A_{n,l}^(+-): the series
/// prefactor t^l F(l, w, 2w+1; t) evaluated at nine points from t = 0.9 to
/// 0.999 and extrapolated to t = 1 with the known exponents 0, 1, 2, ...
/// and 1+w-l, 2+w-l, ... of the expansion about t = 1. Only l in {1, 2}.
/// Throws BudgetExceeded when a refit on fewer points disagrees.
Real abel_sum_A(int l, Sign sign, const Real& z, const PrecisionConfig& cfg);

/// (1/z) sum_{l>=1} (-1)^l (1/(x+z-l) - 1/(x-z-l)) = Phi0(x, z; 1), by
/// accelerated alternating summation.
Real rhs_series(const XZPoint& p, const PrecisionConfig& cfg);

/// -(1/z) (psi(1-(x+z)) - psi(1-(x-z)) - psi(1-(x+z)/2) + psi(1-(x-z)/2)).
Real rhs_digamma(const XZPoint& p, const PrecisionConfig& cfg);

/// (1/(1-x)) int_0^1 (1-t)^(z-x) F(1-x+z, 1+z, 2-x; t) dt, with the
/// integrand rewritten through Euler's transformation as
/// (1-t)^(-x-z) F(1-z, 1-x-z, 2-x; t).
numkern::Estimate theorem2_lhs(const XZPoint& p, const PrecisionConfig& cfg);

/// Phi0(x, z; t) = u1(t) phi1(t) + u2(t) phi2(t) from the fundamental
/// solutions phi1 = t^(x+z) F(x+z, z, 2z+1; t), phi2 = t^(x-z) F(x-z, -z, 1-2z; t)
/// and the variation-of-parameters quadratures u1, u2 over (0, t).
Real vop_phi0(const XZPoint& p, const Real& t, const PrecisionConfig& cfg);

/// Limit of vop_phi0 as t -> 1, extrapolated from 1-t = 1e-2, 1e-3, 1e-4
/// with exponents 0, 1-x, 1 of the expansion about t = 1.
Real vop_phi0_at_one(const XZPoint& p, const PrecisionConfig& cfg);

/// sum_{n<=N} a_n(x,z) t^n, stopping on a geometric tail bound.
Real phi0_power_series(const XZPoint& p, const Real& t, const PrecisionConfig& cfg);

/// Coefficient of exponent 0 in a fit v_i = sum_e c_e h_i^e.
Real extrapolate_exponents(const std::vector<Real>& h, const std::vector<Real>& v, const std::vector<Real>& exponents);

}  // namespace mzsv::hypergeom
