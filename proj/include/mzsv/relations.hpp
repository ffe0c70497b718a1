#pragma once

#include <optional>
#include <vector>

#include "mzsv/hypergeom.hpp"
#include "mzsv/mzv.hpp"
#include "mzsv/report.hpp"

namespace mzsv::relations {

/// 2 C(k-1, 2s-1) (1 - 2^(1-k)) zeta(k). Throws DomainError unless s >= 1, k >= 2s.
Real theorem1_rhs(int k, int s, const PrecisionConfig& cfg);

/// Sum of zeta*(idx) over admissible indices of weight k and height s.
Estimate theorem1_lhs(int k, int s, ZetaEvaluator& evaluator);
Estimate theorem1_lhs(int k, int s, const EvalConfig& ec);

/// 1e-8 for k <= 6, 1e-5 above.
double default_sweep_tolerance(int k);

struct SweepOptions {
  std::optional<double> tol;  ///< overrides default_sweep_tolerance
  unsigned jobs = 0;          ///< worker cap, 0 = hardware concurrency
  double rhs_perturbation = 0;
  bool timing = false;        ///< record elapsed_ms (otherwise 0)
};

/// One "theorem1" report per (k, s), 2 <= k <= kmax, ordered by (k, s).
std::vector<VerificationReport> verify_theorem1(int kmax, const EvalConfig& ec, const SweepOptions& opts = {});

struct XiValue {
  int k, n;
  Real value;
  Real error;
};

/// xi_k(n) = zeta*(k+1, 1, ..., 1) with n-1 ones.
XiValue xi_value(int k, int n, ZetaEvaluator& evaluator);
XiValue xi_value(int k, int n, const EvalConfig& ec);

/// sum_{n=1}^{k-1} xi_(k-n)(n) against 2(k-1)(1 - 2^(1-k)) zeta(k), one
/// "corollary" report per k in [2, kmax].
std::vector<VerificationReport> verify_corollary(int kmax, const EvalConfig& ec, const SweepOptions& opts = {});

/// Integral against the alternating pole series, tolerance 1e-8 by default.
VerificationReport verify_theorem2(const hypergeom::XZPoint& p, const PrecisionConfig& cfg,
                                   std::optional<double> tol = {}, bool timing = false);

/// Digamma form against the pole series, tolerance 10^-(digits-20) by default.
VerificationReport verify_remark(const hypergeom::XZPoint& p, const PrecisionConfig& cfg,
                                 std::optional<double> tol = {}, bool timing = false);

/// Exact checks up to t^tmax and total degree `degree`: a_n against the
/// Phi0 coefficients, the ODE residual, and the derivative recurrences
/// (weights <= min(degree, 6)). Each report carries the mismatch count as
/// lhs against rhs = 0 with zero tolerance.
std::vector<VerificationReport> verify_oracle(int tmax, int degree, bool timing = false);

/// Coefficient of x^(k-2s) z^(2s-2) in (1/z) sum_{l=1}^{L} (-1)^l (1/(x+z-l) - 1/(x-z-l)),
/// expanded exactly.
Rational pole_series_coeff(int k, int s, int terms);

/// 2 C(k-1, 2s-1) sum_{l=1}^{L} (-1)^(l-1) l^-k.
Rational pole_series_expected(int k, int s, int terms);

/// Accelerated limit of the l-series of the (k, s) coefficient.
Real pole_series_limit(int k, int s, const PrecisionConfig& cfg);

}  // namespace mzsv::relations
