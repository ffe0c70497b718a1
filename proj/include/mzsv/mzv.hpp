#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "mzsv/bi_series.hpp"
#include "mzsv/indices.hpp"
#include "mzsv/numkern.hpp"
#include "mzsv/types.hpp"

namespace mzsv {

using numkern::Estimate;

enum class EvalMethod {
  /// Iterated-integral splitting at 1/2 into products of multiple
  /// polylogarithms at 1/2 (geometric convergence, full working precision).
  convolution,
  /// Truncated nested sums up to N * 2^ladder with tail extrapolation.
  nested,
};

struct EvalConfig {
  std::size_t terms = std::size_t{1} << 22;  ///< N, outer truncation bound (nested)
  int ladder = 3;                            ///< doublings N, 2N, ..., 2^ladder N (nested)
  PrecisionConfig precision{};
  EvalMethod method = EvalMethod::convolution;

  /// Throws DomainError unless N >= 1000 and 0 <= ladder <= 5.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Exact coefficients of L*_k(t)
// ---------------------------------------------------------------------------

/// Memoized exact partial sums P_k(m) = sum_{m >= m1 >= ... >= mn >= 1}
/// prod m_i^-k_i for m <= nmax; the t^n coefficient of L*_k is
/// n^-k1 P_(k2..kn)(n).
class LStarTable {
 public:
  explicit LStarTable(int nmax);

  int nmax() const { return nmax_; }

  /// Coefficient of t^n in L*_idx(t), 1 <= n <= nmax. The empty index is the
  /// constant 1 and has no t^n coefficient for n >= 1.
  Rational coeff(int n, const MultiIndex& idx);

  /// P_idx(m) for 0 <= m <= nmax.
  const std::vector<Rational>& partial_sums(const MultiIndex& idx);

 private:
  int nmax_;
  std::vector<Rational> inverse_;  // 1/m
  std::map<MultiIndex, std::vector<Rational>> memo_;
};

/// Exact t^n coefficient of L*_idx(t). Throws DomainError for n <= 0.
Rational lstar_coeff(int n, const MultiIndex& idx);

/// L*_idx(t) for |t| <= 0.99 by streaming summation over m1 with a geometric
/// tail bound.
Real lstar_eval(const MultiIndex& idx, const Real& t, const EvalConfig& ec);

// ---------------------------------------------------------------------------
// Numeric zeta / zeta-star
// ---------------------------------------------------------------------------

/// Caching evaluator for zeta(k) and zeta*(k). Thread-safe: lookups and
/// inserts are serialized, evaluation runs outside the lock. The precision
/// in `ec` must match the active PrecisionScope for the evaluator's lifetime.
class ZetaEvaluator {
 public:
  explicit ZetaEvaluator(EvalConfig ec);

  const EvalConfig& config() const { return ec_; }

  /// zeta(idx), strict nested sum. Throws DomainError when idx is not
  /// admissible (divergent series).
  Estimate zeta(const MultiIndex& idx);

  /// zeta*(idx), nested sum with equalities allowed.
  Estimate zeta_star(const MultiIndex& idx);

 private:
  Estimate multiple_polylog_half(const std::vector<int>& word);
  Estimate convolution_zeta(const MultiIndex& idx);

  EvalConfig ec_;
  std::mutex mu_;
  std::map<std::vector<int>, Estimate> polylog_cache_;
  std::map<MultiIndex, Estimate> zeta_cache_;
};

Estimate zeta_star_num(const MultiIndex& idx, const EvalConfig& ec);
Estimate zeta_num(const MultiIndex& idx, const EvalConfig& ec);

/// Partial sums of the nested series at N_i = N * 2^i, i = 0..ladder,
/// accumulated in `long double`.
std::vector<long double> nested_partial_sums(const MultiIndex& idx, std::size_t n, int ladder, bool star);

/// Tail-model extrapolation of nested partial sums: the tail beyond N is
/// modeled as c (log N)^j / N^(k1-1), j = number of 1-parts directly after
/// k1, with c fitted from consecutive ladder points. Error estimate is the
/// difference of the last two extrapolants.
Estimate nested_sum_estimate(const MultiIndex& idx, const EvalConfig& ec, bool star);

// ---------------------------------------------------------------------------
// Generating function Phi0 and its coefficient sequence a_n
// ---------------------------------------------------------------------------

/// Coefficient of t^n in Phi0(x,z;t) = sum X0(k,s;t) x^(k-2s) z^(2s-2),
/// built from L* coefficients over all admissible indices of weight <= D+2.
ExactSeries phi0_t_coeff(int n, int max_degree);
ExactSeries phi0_t_coeff(int n, int max_degree, LStarTable& table);

/// a_n via a_1 = 1/((1-x)^2 - z^2), a_(m+1) = a_m m (m-x) / ((m+1-x)^2 - z^2).
ExactSeries a_series(int n, int max_degree);

/// {"n": n, "monomials": [{"a", "b", "num", "den"}, ...]} over the nonzero
/// coefficients, ordered by total degree then by b.
std::string coeff_json(int n, const ExactSeries& series);

/// a_1..a_nmax in one pass.
std::vector<ExactSeries> a_series_upto(int nmax, int max_degree);

/// Coefficients of t^1..t^T of
///   t^2(1-t) Phi0'' + t((1-t)(1-x) - x) Phi0' + (x^2 - z^2) Phi0 - t
/// for Phi0 = sum_{n=1}^{T+1} coeffs[n-1] t^n.
std::vector<ExactSeries> ode_residual(std::span<const ExactSeries> coeffs, int T);
std::vector<ExactSeries> ode_residual(int T, int max_degree);

struct RecurrenceFailure {
  int relation;  ///< 1 or 2
  int k, s, n;
};

struct RecurrenceReport {
  std::size_t instances = 0;
  std::vector<RecurrenceFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Exact t^n coefficients of X(k,s;t) / X0(k,s;t) (all / admissible indices).
Rational x_coeff(int n, int k, int s, LStarTable& table);
Rational x0_coeff(int n, int k, int s, LStarTable& table);

/// Checks, for all weights k <= wmax, heights s and 1 <= n <= nmax:
///  (i)  n x0_n(k,s) = x_n(k-1,s-1) - x0_n(k-1,s-1) + x0_n(k-1,s)
///  (ii) n (x_n(k,s) - x0_n(k,s)) = sum_{m=0}^{n} x_m(k-1,s)
/// where the m = 0 term is the constant of X(0,0;t) = 1.
RecurrenceReport deriv_recurrence_check(int nmax, int wmax);

}  // namespace mzsv
