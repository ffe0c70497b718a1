#include "mzsv/numkern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <string>

#include "mzsv/constants.hpp"

namespace mzsv {

Real PrecisionConfig::tolerance() const {
  return boost::multiprecision::pow(Real(10), -digits);
}

void PrecisionConfig::validate() const {
  if (digits < 15) throw DomainError("precision: digits must be >= 15, got " + std::to_string(digits));
  if (guard_digits < 5)
    throw DomainError("precision: guard_digits must be >= 5, got " + std::to_string(guard_digits));
}

PrecisionConfig PrecisionConfig::from_env() {
  PrecisionConfig cfg;
  if (const char* env = std::getenv("MZV_DEFAULT_DIGITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw DomainError(std::string("MZV_DEFAULT_DIGITS is not an integer: ") + env);
    cfg.digits = static_cast<int>(v);
  }
  cfg.validate();
  return cfg;
}

PrecisionScope::PrecisionScope(const PrecisionConfig& cfg) : PrecisionScope(cfg.working_digits()) {}

PrecisionScope::PrecisionScope(int working_digits) : previous_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(working_digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

Real at_working_precision(const Real& v) {
  Real r;
  mpfr_set(r.backend().data(), v.backend().data(), MPFR_RNDN);
  return r;
}

std::string to_decimal(const Real& v, int digits) {
  return v.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string to_fraction(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Real const_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real const_log2() {
  Real r;
  mpfr_const_log2(r.backend().data(), MPFR_RNDN);
  return r;
}

}  // namespace mzsv

namespace mzsv::numkern {

namespace bm = boost::multiprecision;

namespace {

void require_scope(const PrecisionConfig& cfg) {
  if (Real::default_precision() < static_cast<unsigned>(cfg.working_digits()))
    throw Error("numkern: active precision is below the configured working precision");
}

Real pow_int(const Real& base, int e) { return bm::pow(base, e); }

}  // namespace

// ---------------------------------------------------------------------------
// Bernoulli numbers
// ---------------------------------------------------------------------------

const Rational& bernoulli(int n) {
  static const std::vector<Rational> table = [] {
    const int top = 2 * bernoulli_table_size;
    std::vector<Rational> b(top + 1);
    b[0] = 1;
    for (int m = 1; m <= top; ++m) {
      Rational acc = 0;
      for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
      b[m] = -acc / (m + 1);
    }
    return b;
  }();
  if (n < 0 || n > 2 * bernoulli_table_size)
    throw DomainError("bernoulli: index " + std::to_string(n) + " outside the cached table");
  return table[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------------------
// Gamma family
// ---------------------------------------------------------------------------

bool is_nonpositive_integer(const Real& w, const Real& slack) {
  if (w > slack) return false;
  Real nearest = bm::round(w);
  return bm::abs(w - nearest) <= slack && nearest <= 0;
}

namespace {

bool at_pole(const Real& w) { return w <= 0 && w == bm::floor(w); }

// Shift point above which the 60-term Stirling/digamma series reaches
// `wd` digits: the k = 60 term is about 2 (120)! / (2 pi w)^120.
double asymptotic_threshold(int wd) {
  double needed = std::pow(10.0, (wd + 199.0) / 120.0) / (2.0 * M_PI);
  return std::max({20.0, 1.2 * needed, 0.5 * wd});
}

Real log_gamma_positive(const Real& w, const PrecisionConfig& cfg) {
  const Real tol = bm::pow(Real(10), -cfg.working_digits());
  const double threshold = asymptotic_threshold(cfg.working_digits());
  Real shifted = w;
  Real product = 1;
  while (shifted < threshold) {
    product *= shifted;
    shifted += 1;
  }
  Real inv = 1 / shifted;
  Real inv2 = inv * inv;
  Real result = (shifted - Real(0.5)) * bm::log(shifted) - shifted + bm::log(2 * const_pi()) / 2;
  Real power = inv;
  for (int k = 1; k <= bernoulli_table_size; ++k) {
    Real term = Real(bernoulli(2 * k)) / (2 * k * (2 * k - 1)) * power;
    result += term;
    if (bm::abs(term) < tol) break;
    power *= inv2;
  }
  return result - bm::log(product);
}

}  // namespace

Real log_gamma(const Real& w, const PrecisionConfig& cfg) {
  require_scope(cfg);
  if (at_pole(w)) throw PoleError("log_gamma: pole at " + to_decimal(w, 6));
  if (w >= Real(0.5)) return log_gamma_positive(w, cfg);
  // |Gamma(w)| = pi / (|sin(pi w)| Gamma(1-w))
  Real s = bm::abs(bm::sin(const_pi() * w));
  return bm::log(const_pi()) - bm::log(s) - log_gamma_positive(1 - w, cfg);
}

Real gamma(const Real& w, const PrecisionConfig& cfg) {
  require_scope(cfg);
  if (at_pole(w)) throw PoleError("gamma: pole at " + to_decimal(w, 6));
  if (w >= Real(0.5)) return bm::exp(log_gamma_positive(w, cfg));
  const Real pi = const_pi();
  return pi / (bm::sin(pi * w) * bm::exp(log_gamma_positive(1 - w, cfg)));
}

Real rgamma(const Real& w, const PrecisionConfig& cfg) {
  if (at_pole(w)) return Real(0);
  return 1 / gamma(w, cfg);
}

Real digamma(const Real& w, const PrecisionConfig& cfg) {
  require_scope(cfg);
  if (at_pole(w)) throw PoleError("digamma: pole at " + to_decimal(w, 6));
  if (w < Real(0.5)) {
    // psi(w) = psi(1-w) - pi cot(pi w)
    const Real pi = const_pi();
    return digamma(1 - w, cfg) - pi / bm::tan(pi * w);
  }
  const Real tol = bm::pow(Real(10), -cfg.working_digits());
  const double threshold = asymptotic_threshold(cfg.working_digits());
  Real shifted = w;
  Real correction = 0;
  while (shifted < threshold) {
    correction += 1 / shifted;
    shifted += 1;
  }
  Real inv = 1 / shifted;
  Real inv2 = inv * inv;
  Real result = bm::log(shifted) - inv / 2;
  Real power = inv2;
  for (int k = 1; k <= bernoulli_table_size; ++k) {
    Real term = Real(bernoulli(2 * k)) / (2 * k) * power;
    result -= term;
    if (bm::abs(term) < tol) break;
    power *= inv2;
  }
  return result - correction;
}

// ---------------------------------------------------------------------------
// Binomials
// ---------------------------------------------------------------------------

Integer binomial(long n, long r) {
  if (n < 0) throw DomainError("binomial: n must be non-negative");
  if (r < 0 || r > n) return Integer(0);
  Integer result;
  mpz_bin_uiui(result.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return result;
}

// ---------------------------------------------------------------------------
// Alternating series
// ---------------------------------------------------------------------------

namespace {

class TermCache {
 public:
  explicit TermCache(const TermFn& fn) : fn_(fn) {}
  const Real& operator[](std::size_t l) {  // 1-based
    while (terms_.size() < l) terms_.push_back(fn_(terms_.size() + 1));
    return terms_[l - 1];
  }

 private:
  const TermFn& fn_;
  std::deque<Real> terms_;  // stable references across growth
};

// Cohen-Rodriguez Villegas-Zagier, algorithm 1, on the first n terms.
Real cvz(TermCache& terms, std::size_t n) {
  const Real nn = static_cast<double>(n);
  Real d = bm::pow(3 + bm::sqrt(Real(8)), static_cast<int>(n));
  d = (d + 1 / d) / 2;
  Real b = -1;
  Real c = -d;
  Real s = 0;
  for (std::size_t k = 0; k < n; ++k) {
    c = b - c;
    const Real& u = terms[k + 1];
    // a_k = (-1)^k u_{k+1}
    if (k % 2 == 0)
      s += c * u;
    else
      s -= c * u;
    const Real kk = static_cast<double>(k);
    b = (kk + nn) * (kk - nn) * b / ((kk + Real(0.5)) * (kk + 1));
  }
  return s / d;
}

}  // namespace

Estimate alt_sum(const TermFn& term, const PrecisionConfig& cfg, const AltSumOptions& opts) {
  require_scope(cfg);
  const Real tol = cfg.tolerance();
  TermCache terms(term);

  if (opts.method == AltMethod::plain) {
    Real sum = 0;
    for (std::size_t l = 1; l <= opts.max_terms; ++l) {
      const Real& u = terms[l];
      sum += u;
      Real next = bm::abs(terms[l + 1]);
      if (next < tol) return {sum, next};
    }
    throw BudgetExceeded("alt_sum: plain summation exceeded " + std::to_string(opts.max_terms) + " terms", sum);
  }

  // CVZ converges like 5.828^-n, i.e. ~0.7655 digits per term.
  std::size_t n = static_cast<std::size_t>(std::ceil(cfg.working_digits() / 0.7655)) + 4;
  while (true) {
    std::size_t n2 = n + std::max<std::size_t>(10, n / 8);
    if (n2 > opts.max_terms) {
      Real best = cvz(terms, std::min(n, opts.max_terms));
      throw BudgetExceeded("alt_sum: acceleration exceeded " + std::to_string(opts.max_terms) + " terms", best);
    }
    Real s1 = cvz(terms, n);
    Real s2 = cvz(terms, n2);
    Real err = bm::abs(s2 - s1);
    if (err < tol) return {s2, err};
    n *= 2;
  }
}

// ---------------------------------------------------------------------------
// tanh-sinh quadrature on (0,1)
// ---------------------------------------------------------------------------

namespace {

struct Node {
  Real t, tc, w;
};

// t = 1/(1+exp(-v)), v = pi sinh(u); dt/du = pi cosh(u) t (1-t).
Node de_node(const Real& u, const Real& pi) {
  Real v = pi * bm::sinh(u);
  Real ev = bm::exp(v);
  Node n;
  n.t = ev / (1 + ev);
  n.tc = 1 / (1 + ev);
  n.w = pi * bm::cosh(u) * n.t * n.tc;
  return n;
}

}  // namespace

Estimate quad_de(const Integrand& f, const PrecisionConfig& cfg, const QuadOptions& opts) {
  require_scope(cfg);
  const Real pi = const_pi();
  // Cut the abscissae where 1-t reaches 10^-(12 wd): enough for endpoint
  // singularities up to (1-t)^-0.9 at the working precision.
  const double vmax = std::log(10.0) * cfg.working_digits() * 12.0;
  const Real umax = bm::asinh(Real(vmax) / pi);

  auto contribution = [&](const Real& u) -> Real {
    Node n = de_node(u, pi);
    if (n.t == 0 || n.tc == 0) return Real(0);
    return n.w * f(n.t, n.tc);
  };

  // Level 0: h = 1, integer abscissae.
  Real h = 1;
  Real sum = contribution(Real(0));
  for (int j = 1; Real(j) <= umax; ++j) sum += contribution(Real(j)) + contribution(Real(-j));
  Real prev = h * sum;
  Real estimate = bm::abs(prev);

  for (int level = 1; level <= opts.max_level; ++level) {
    h /= 2;
    Real added = 0;
    for (long j = 1;; j += 2) {
      Real u = h * j;
      if (u > umax) break;
      added += contribution(u) + contribution(-u);
    }
    sum += added;
    Real current = h * sum;
    estimate = bm::abs(current - prev);
    Real tol = opts.tolerance > 0 ? opts.tolerance : cfg.tolerance() * bm::max(Real(1), bm::abs(current));
    if (level >= 3 && estimate <= tol) return {current, estimate};
    prev = current;
  }
  throw AccuracyError("quad_de: error estimate " + to_decimal(estimate, 3) + " above tolerance at level " +
                          std::to_string(opts.max_level),
                      prev, estimate);
}

Estimate quad_de(const std::function<Real(const Real&)>& f, const PrecisionConfig& cfg, const QuadOptions& opts) {
  return quad_de(Integrand([&f](const Real& t, const Real&) { return f(t); }), cfg, opts);
}

// ---------------------------------------------------------------------------
// Zeta / eta
// ---------------------------------------------------------------------------

Real eta_int(int k, const PrecisionConfig& cfg) {
  if (k < 1) throw DomainError("eta_int: k must be >= 1, got " + std::to_string(k));
  require_scope(cfg);
  auto term = [k](std::size_t l) {
    Real v = pow_int(Real(static_cast<double>(l)), -k);
    return l % 2 == 1 ? v : Real(-v);
  };
  return alt_sum(term, cfg).value;
}

Real zeta_int(int k, const PrecisionConfig& cfg) {
  if (k < 2) throw DomainError("zeta_int: k must be >= 2, got " + std::to_string(k));
  return eta_int(k, cfg) / (1 - pow_int(Real(2), 1 - k));
}

// ---------------------------------------------------------------------------
// Dense solve
// ---------------------------------------------------------------------------

std::vector<Real> solve_dense(std::vector<Real> a, std::vector<Real> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw DomainError("solve_dense: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (bm::abs(a[r * n + col]) > bm::abs(a[pivot * n + col])) pivot = r;
    if (a[pivot * n + col] == 0) throw SingularError("solve_dense: singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      Real factor = a[r * n + col] / a[col * n + col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i * n + c] * x[c];
    x[i] = acc / a[i * n + i];
  }
  return x;
}

}  // namespace mzsv::numkern
