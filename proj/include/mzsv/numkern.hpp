#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mzsv/types.hpp"

// Numeric kernel: special functions at extended precision, exact binomials,
// alternating-series acceleration and tanh-sinh quadrature on (0,1).
//
// Every function assumes a PrecisionScope for `cfg` (or wider) is active.
namespace mzsv::numkern {

/// Value with an absolute error estimate.
struct Estimate {
  Real value;
  Real error;
};

// --- Riemann zeta / Dirichlet eta at integers ------------------------------

/// zeta(k) = eta(k) / (1 - 2^(1-k)), k >= 2.
Real zeta_int(int k, const PrecisionConfig& cfg);

/// eta(k) = sum_{l>=1} (-1)^(l-1) / l^k, k >= 1.
Real eta_int(int k, const PrecisionConfig& cfg);

// --- Gamma family ----------------------------------------------------------

/// Exact Bernoulli number B_n for n <= 2 * bernoulli_table_size.
const Rational& bernoulli(int n);
inline constexpr int bernoulli_table_size = 60;

/// psi(w) = Gamma'(w)/Gamma(w). Throws PoleError at w = 0, -1, -2, ...
Real digamma(const Real& w, const PrecisionConfig& cfg);

/// log|Gamma(w)|. Throws PoleError at non-positive integers.
Real log_gamma(const Real& w, const PrecisionConfig& cfg);

/// Gamma(w), with the reflection formula for w < 1/2.
Real gamma(const Real& w, const PrecisionConfig& cfg);

/// 1/Gamma(w); zero at the poles of Gamma.
Real rgamma(const Real& w, const PrecisionConfig& cfg);

/// True when w is within `slack` of 0, -1, -2, ...
bool is_nonpositive_integer(const Real& w, const Real& slack);

// --- Exact combinatorics ---------------------------------------------------

/// C(n, r); zero when r < 0 or r > n.
Integer binomial(long n, long r);

// --- Alternating series ----------------------------------------------------

enum class AltMethod {
  cvz,    ///< Cohen-Rodriguez Villegas-Zagier acceleration
  plain,  ///< straight partial sums, kept as a cross-check
};

struct AltSumOptions {
  AltMethod method = AltMethod::cvz;
  std::size_t max_terms = 4'000'000;
};

/// Term generator: term(l) for l = 1, 2, 3, ... including its sign.
using TermFn = std::function<Real(std::size_t)>;

/// Sum of sum_{l>=1} term(l) for an (eventually) alternating series with
/// monotone magnitudes. Stops once the error estimate drops below 10^-digits;
/// throws BudgetExceeded (with the best value) otherwise.
Estimate alt_sum(const TermFn& term, const PrecisionConfig& cfg, const AltSumOptions& opts = {});

// --- Quadrature ------------------------------------------------------------

/// Integrand on (0,1). Receives t and 1-t, both computed without
/// cancellation, so that endpoint singularities can be evaluated accurately.
using Integrand = std::function<Real(const Real& t, const Real& one_minus_t)>;

struct QuadOptions {
  int max_level = 10;  ///< step h = 2^-level
  /// Absolute tolerance; defaults to 10^-digits when unset (zero).
  Real tolerance = 0;
};

/// Double-exponential (tanh-sinh) quadrature of f over (0,1). The error
/// estimate is the difference between the last two levels. Throws
/// AccuracyError if the estimate is above tolerance at max_level.
Estimate quad_de(const Integrand& f, const PrecisionConfig& cfg, const QuadOptions& opts = {});

/// Convenience overload for integrands that only need t.
Estimate quad_de(const std::function<Real(const Real&)>& f, const PrecisionConfig& cfg,
                 const QuadOptions& opts = {});

// --- Small dense solve -----------------------------------------------------

/// Solves a*x = b in place by Gaussian elimination with partial pivoting.
/// `a` is row-major n x n. Throws SingularError for a singular system.
std::vector<Real> solve_dense(std::vector<Real> a, std::vector<Real> b);

}  // namespace mzsv::numkern
