#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace mzsv {

/// Extended-precision real. The working precision is the MPFR default
/// precision in force when a value is created; see PrecisionScope.
using Real = boost::multiprecision::mpfr_float;
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

/// Evaluation hit a pole (gamma/digamma at non-positive integers, 1/(x+z-l), ...).
struct PoleError : Error {
  using Error::Error;
};

/// Reciprocal of a series with vanishing constant term.
struct SingularError : Error {
  using Error::Error;
};

/// Coefficient outside the truncation window of a series.
struct OutOfRangeError : Error {
  using Error::Error;
};

/// Series or iteration did not converge within its budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, Real best)
      : Error(what), best_(std::move(best)) {}
  const Real& best_estimate() const { return best_; }

 private:
  Real best_;
};

/// Quadrature did not reach tolerance at its maximal level.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, Real partial, Real estimate)
      : Error(what), partial_(std::move(partial)), estimate_(std::move(estimate)) {}
  const Real& partial_result() const { return partial_; }
  const Real& error_estimate() const { return estimate_; }

 private:
  Real partial_;
  Real estimate_;
};

// ---------------------------------------------------------------------------
// Precision
// ---------------------------------------------------------------------------

struct PrecisionConfig {
  int digits = 60;
  int guard_digits = 10;

  /// Digits carried internally (digits + guard_digits).
  int working_digits() const { return digits + guard_digits; }

  /// 10^-digits as a Real at the current working precision.
  Real tolerance() const;

  /// Throws DomainError unless digits >= 15 and guard_digits >= 5.
  void validate() const;

  /// Defaults, with `digits` taken from MZV_DEFAULT_DIGITS when set.
  static PrecisionConfig from_env();
};

/// Sets the MPFR default precision for the lifetime of the scope and restores
/// the previous value on exit. The precision is process-wide: set it from the
/// dispatching thread before starting workers, never from inside a worker.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionConfig& cfg);
  explicit PrecisionScope(int working_digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Copy of v rounded to the active default precision. A plain copy keeps
/// the precision v was created with.
Real at_working_precision(const Real& v);

/// Decimal rendering with `digits` significant digits, scientific notation.
std::string to_decimal(const Real& v, int digits);

/// Exact fraction string "num/den" (or "num" when den = 1).
std::string to_fraction(const Rational& q);

enum class Sign : int { plus = 1, minus = -1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

}  // namespace mzsv
