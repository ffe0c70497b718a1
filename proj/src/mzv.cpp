#include "mzsv/mzv.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mzsv/constants.hpp"

namespace mzsv {

namespace bm = boost::multiprecision;

void EvalConfig::validate() const {
  if (terms < 1000) throw DomainError("EvalConfig: N must be >= 1000");
  if (ladder < 0 || ladder > 5) throw DomainError("EvalConfig: ladder must be in [0,5]");
  precision.validate();
}

// ---------------------------------------------------------------------------
// Exact L* coefficients
// ---------------------------------------------------------------------------

LStarTable::LStarTable(int nmax) : nmax_(nmax) {
  if (nmax < 0) throw DomainError("LStarTable: negative bound");
  inverse_.resize(static_cast<std::size_t>(nmax) + 1);
  for (int m = 1; m <= nmax; ++m) inverse_[static_cast<std::size_t>(m)] = Rational(1, m);
}

const std::vector<Rational>& LStarTable::partial_sums(const MultiIndex& idx) {
  if (auto it = memo_.find(idx); it != memo_.end()) return it->second;
  std::vector<Rational> sums(static_cast<std::size_t>(nmax_) + 1);
  if (idx.empty()) {
    std::fill(sums.begin(), sums.end(), Rational(1));
  } else {
    const std::vector<Rational>& inner = partial_sums(idx.suffix(1));
    const int k1 = idx[0];
    sums[0] = 0;
    for (int m = 1; m <= nmax_; ++m) {
      const auto um = static_cast<std::size_t>(m);
      Rational term = inner[um];
      for (int e = 0; e < k1; ++e) term *= inverse_[um];
      sums[um] = sums[um - 1] + term;
    }
  }
  return memo_.emplace(idx, std::move(sums)).first->second;
}

Rational LStarTable::coeff(int n, const MultiIndex& idx) {
  if (n <= 0) throw DomainError("lstar_coeff: n must be >= 1");
  if (n > nmax_) throw DomainError("lstar_coeff: n beyond the table bound");
  if (idx.empty()) return Rational(0);
  Rational value = partial_sums(idx.suffix(1))[static_cast<std::size_t>(n)];
  for (int e = 0; e < idx[0]; ++e) value *= inverse_[static_cast<std::size_t>(n)];
  return value;
}

Rational lstar_coeff(int n, const MultiIndex& idx) {
  if (n <= 0) throw DomainError("lstar_coeff: n must be >= 1");
  LStarTable table(n);
  return table.coeff(n, idx);
}

Real lstar_eval(const MultiIndex& idx, const Real& t, const EvalConfig& ec) {
  if (bm::abs(t) > Real(0.99)) throw DomainError("lstar_eval: |t| must be <= 0.99");
  if (idx.empty()) return Real(1);
  if (t == 0) return Real(0);
  const int d = idx.depth();
  const Real tol = bm::pow(Real(10), -ec.precision.working_digits());
  const Real at = bm::abs(t);
  // acc[r] = P_(k_r..k_d)(m), r = 1..d-1 (0-based parts index r)
  std::vector<Real> acc(static_cast<std::size_t>(d) + 1, Real(0));
  acc[static_cast<std::size_t>(d)] = 1;
  Real sum = 0;
  Real tpow = 1;
  for (long m = 1;; ++m) {
    const Real inv = Real(1) / m;
    for (int r = d - 1; r >= 1; --r) acc[static_cast<std::size_t>(r)] += bm::pow(inv, idx[static_cast<std::size_t>(r)]) * acc[static_cast<std::size_t>(r) + 1];
    tpow *= t;
    Real term = tpow * bm::pow(inv, idx[0]) * acc[1];
    sum += term;
    // Inner sums grow at most logarithmically, so the remaining terms are
    // dominated by a geometric series with ratio slightly above |t|.
    if (m > 10L * d && bm::abs(term) * (d + 1) / (1 - at) < tol * bm::max(Real(1), bm::abs(sum))) break;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Convolution evaluator
// ---------------------------------------------------------------------------

namespace {

std::vector<int> word_of(const MultiIndex& idx) {
  std::vector<int> w;
  for (int k : idx.parts()) {
    for (int i = 1; i < k; ++i) w.push_back(0);
    w.push_back(1);
  }
  return w;
}

// Words ending in 1 correspond to polylog indices: each 1 closes a part
// whose size is one plus the number of zeros before it.
std::vector<int> polylog_index(const std::vector<int>& word) {
  std::vector<int> s;
  int zeros = 0;
  for (int letter : word) {
    if (letter == 0) {
      ++zeros;
    } else {
      s.push_back(zeros + 1);
      zeros = 0;
    }
  }
  return s;
}

std::vector<int> dual_reverse(std::vector<int>::const_iterator begin, std::vector<int>::const_iterator end) {
  std::vector<int> out;
  for (auto it = end; it != begin;) {
    --it;
    out.push_back(1 - *it);
  }
  return out;
}

}  // namespace

ZetaEvaluator::ZetaEvaluator(EvalConfig ec) : ec_(std::move(ec)) { ec_.validate(); }

Estimate ZetaEvaluator::multiple_polylog_half(const std::vector<int>& word) {
  if (word.empty()) return {Real(1), Real(0)};
  {
    std::lock_guard lock(mu_);
    if (auto it = polylog_cache_.find(word); it != polylog_cache_.end()) return it->second;
  }
  // Li_{s1..sd}(1/2) = sum_{n1 > ... > nd >= 1} 2^-n1 prod n_i^-s_i
  const std::vector<int> s = polylog_index(word);
  const int d = static_cast<int>(s.size());
  const int wd = ec_.precision.working_digits();
  const int max_s = *std::max_element(s.begin(), s.end());

  // Truncation at M: the tail is below 2^-M * 4 (2 + ln M)^d, using
  // inner sums <= (1 + ln n)^(d-1).
  long m_cut = static_cast<long>(std::ceil(wd * 3.3219281)) + 16;
  auto tail_bound = [d](long m) { return 4.0 * std::pow(2.0 + std::log(double(m)), d); };
  while (std::log2(tail_bound(m_cut)) - static_cast<double>(m_cut) > -wd * 3.3219281) m_cut += 8;

  std::vector<Real> acc(static_cast<std::size_t>(d) + 1, Real(0));
  std::vector<Real> powers(static_cast<std::size_t>(max_s) + 1);
  Real half_pow = 1;
  for (long n = 1; n <= m_cut; ++n) {
    const Real inv = Real(1) / n;
    powers[0] = 1;
    for (int e = 1; e <= max_s; ++e) powers[static_cast<std::size_t>(e)] = powers[static_cast<std::size_t>(e) - 1] * inv;
    half_pow /= 2;
    // ascending r uses acc[r+1] before its own update: strict inequalities
    for (int r = 0; r < d; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      Real inner = r + 1 < d ? acc[ur + 1] : Real(1);
      if (r > 0 && inner == 0) continue;
      Real contrib = powers[static_cast<std::size_t>(s[ur])] * inner;
      if (r == 0) contrib *= half_pow;
      acc[ur] += contrib;
    }
  }
  Real err = bm::ldexp(Real(tail_bound(m_cut)), static_cast<int>(-m_cut)) +
             acc[0] * bm::pow(Real(10), -wd) * (m_cut / 100 + 1);
  Estimate est{acc[0], err};
  std::lock_guard lock(mu_);
  polylog_cache_.emplace(word, est);
  return est;
}

Estimate ZetaEvaluator::convolution_zeta(const MultiIndex& idx) {
  // Splitting the iterated integral over 1 > t1 > ... > tw > 0 at 1/2 and
  // mapping the upper block by t -> 1-t gives
  //   zeta(w) = sum_j Li(dual(reverse(w_1..w_j)))(1/2) * Li(w_{j+1}..w_w)(1/2).
  const std::vector<int> word = word_of(idx);
  Real value = 0;
  Real err = 0;
  for (std::size_t j = 0; j <= word.size(); ++j) {
    const auto split = word.begin() + static_cast<std::ptrdiff_t>(j);
    Estimate head = multiple_polylog_half(dual_reverse(word.begin(), split));
    Estimate tail = multiple_polylog_half(std::vector<int>(split, word.end()));
    value += head.value * tail.value;
    err += head.error * bm::abs(tail.value) + tail.error * bm::abs(head.value) + head.error * tail.error;
  }
  return {value, err};
}

Estimate ZetaEvaluator::zeta(const MultiIndex& idx) {
  if (!idx.admissible())
    throw DomainError("zeta: index (" + idx.to_string() + ") is not admissible; the series diverges");
  {
    std::lock_guard lock(mu_);
    if (auto it = zeta_cache_.find(idx); it != zeta_cache_.end()) return it->second;
  }
  Estimate est = ec_.method == EvalMethod::convolution ? convolution_zeta(idx) : nested_sum_estimate(idx, ec_, false);
  std::lock_guard lock(mu_);
  zeta_cache_.emplace(idx, est);
  return est;
}

Estimate ZetaEvaluator::zeta_star(const MultiIndex& idx) {
  if (!idx.admissible())
    throw DomainError("zeta_star: index (" + idx.to_string() + ") is not admissible; the series diverges");
  if (ec_.method == EvalMethod::nested) return nested_sum_estimate(idx, ec_, true);
  Real value = 0;
  Real err = 0;
  for (const auto& p : star_expand(idx)) {
    Estimate e = zeta(p);
    value += e.value;
    err += e.error;
  }
  return {value, err};
}

Estimate zeta_star_num(const MultiIndex& idx, const EvalConfig& ec) { return ZetaEvaluator(ec).zeta_star(idx); }

Estimate zeta_num(const MultiIndex& idx, const EvalConfig& ec) { return ZetaEvaluator(ec).zeta(idx); }

// ---------------------------------------------------------------------------
// Nested sums
// ---------------------------------------------------------------------------

std::vector<long double> nested_partial_sums(const MultiIndex& idx, std::size_t n, int ladder, bool star) {
  if (idx.empty()) throw DomainError("nested_partial_sums: empty index");
  const auto parts = idx.parts();
  const std::size_t d = parts.size();
  const int max_k = *std::max_element(parts.begin(), parts.end());
  // acc[r] = P_(k_r..k_d)(m); acc[d] = 1
  std::vector<long double> acc(d + 1, 0.0L);
  acc[d] = 1.0L;
  std::vector<long double> powers(static_cast<std::size_t>(max_k) + 1);
  std::vector<long double> out;
  std::size_t checkpoint = n;
  const std::size_t last = n << ladder;
  for (std::size_t m = 1; m <= last; ++m) {
    const long double inv = 1.0L / static_cast<long double>(m);
    powers[0] = 1.0L;
    for (int e = 1; e <= max_k; ++e) powers[static_cast<std::size_t>(e)] = powers[static_cast<std::size_t>(e) - 1] * inv;
    if (star) {
      // descending: inner suffix already includes m (m_r >= m_{r+1})
      for (std::size_t r = d; r-- > 0;) acc[r] += powers[static_cast<std::size_t>(parts[r])] * acc[r + 1];
    } else {
      // ascending: inner suffix still excludes m (m_r > m_{r+1})
      for (std::size_t r = 0; r < d; ++r) {
        const long double inner = r + 1 == d ? 1.0L : acc[r + 1];
        acc[r] += powers[static_cast<std::size_t>(parts[r])] * inner;
      }
    }
    if (m == checkpoint) {
      out.push_back(acc[0]);
      checkpoint <<= 1;
    }
  }
  return out;
}

Estimate nested_sum_estimate(const MultiIndex& idx, const EvalConfig& ec, bool star) {
  if (!idx.admissible())
    throw DomainError("nested sum: index (" + idx.to_string() + ") is not admissible; the series diverges");
  ec.validate();
  const std::vector<long double> partial = nested_partial_sums(idx, ec.terms, ec.ladder, star);
  const int k1 = idx[0];
  const int j = idx.leading_ones_after_first();
  auto tail_shape = [&](std::size_t i) {
    const double ni = static_cast<double>(ec.terms) * std::ldexp(1.0, static_cast<int>(i));
    return Real(std::pow(std::log(ni), j) / std::pow(ni, k1 - 1));
  };
  std::vector<Real> s(partial.begin(), partial.end());
  const std::size_t top = s.size() - 1;
  // Accumulated rounding of the long double pass.
  const Real rounding = s[top] * Real(static_cast<double>(ec.terms << ec.ladder)) * Real(1e-19);
  if (top == 0) {
    Real bound = s[0] * tail_shape(0) * 2 / (k1 - 1);
    return {s[0], bound + rounding};
  }
  std::vector<Real> extrap;
  for (std::size_t i = 1; i <= top; ++i) {
    Real g0 = tail_shape(i - 1);
    Real g1 = tail_shape(i);
    Real c = (s[i] - s[i - 1]) / (g0 - g1);
    extrap.push_back(s[i] + c * g1);
  }
  const Real& best = extrap.back();
  Real err = extrap.size() >= 2 ? Real(bm::abs(best - extrap[extrap.size() - 2])) : Real(bm::abs(best - s[top]));
  return {best, err + rounding};
}

// ---------------------------------------------------------------------------
// Phi0 coefficients
// ---------------------------------------------------------------------------

ExactSeries phi0_t_coeff(int n, int max_degree, LStarTable& table) {
  if (n < 1) throw DomainError("phi0_t_coeff: n must be >= 1");
  if (max_degree < 0) throw DomainError("phi0_t_coeff: negative degree");
  ExactSeries out(max_degree);
  for (int k = 2; k <= max_degree + 2; ++k)
    for (int s = 1; 2 * s <= k; ++s) {
      Rational total = 0;
      for (const auto& idx : enum_indices(k, s, true)) total += table.coeff(n, idx);
      out.set(k - 2 * s, 2 * s - 2, total);
    }
  return out;
}

std::string coeff_json(int n, const ExactSeries& series) {
  nlohmann::ordered_json monomials = nlohmann::ordered_json::array();
  for (int total = 0; total <= series.max_degree(); ++total)
    for (int b = 0; b <= total; ++b) {
      const Rational& c = series.coeff(total - b, b);
      if (c == 0) continue;
      monomials.push_back(
          {{"a", total - b}, {"b", b}, {"num", numerator(c).str()}, {"den", denominator(c).str()}});
    }
  nlohmann::ordered_json out{{"n", n}, {"monomials", monomials}};
  return out.dump();
}

ExactSeries phi0_t_coeff(int n, int max_degree) {
  LStarTable table(n);
  return phi0_t_coeff(n, max_degree, table);
}

std::vector<ExactSeries> a_series_upto(int nmax, int max_degree) {
  if (nmax < 1) throw DomainError("a_series: n must be >= 1");
  const int d = max_degree;
  const ExactSeries x = ExactSeries::x(d);
  const ExactSeries z = ExactSeries::z(d);
  const ExactSeries one = ExactSeries::constant(d, Rational(1));
  auto shifted_quadric = [&](int m) {  // (m - x)^2 - z^2
    ExactSeries mx = one * Rational(m) - x;
    return mx * mx - z * z;
  };
  std::vector<ExactSeries> out;
  out.reserve(static_cast<std::size_t>(nmax));
  out.push_back(ps_reciprocal(shifted_quadric(1)));
  for (int m = 1; m < nmax; ++m) {
    ExactSeries ratio = (one * Rational(m) - x) * Rational(m);
    out.push_back(out.back() * ratio * ps_reciprocal(shifted_quadric(m + 1)));
  }
  return out;
}

ExactSeries a_series(int n, int max_degree) { return a_series_upto(n, max_degree).back(); }

std::vector<ExactSeries> ode_residual(std::span<const ExactSeries> coeffs, int T) {
  if (T < 1) throw DomainError("ode_residual: T must be >= 1");
  if (coeffs.size() < static_cast<std::size_t>(T)) throw DomainError("ode_residual: need a_1..a_T");
  const int d = coeffs.front().max_degree();
  const ExactSeries x = ExactSeries::x(d);
  const ExactSeries z = ExactSeries::z(d);
  const ExactSeries one = ExactSeries::constant(d, Rational(1));
  // (1-t)(1-x) - x = (1 - 2x) - (1 - x) t
  const ExactSeries lin0 = one - x * Rational(2);
  const ExactSeries lin1 = one - x;
  const ExactSeries quad = x * x - z * z;
  std::vector<ExactSeries> residual;
  residual.reserve(static_cast<std::size_t>(T));
  for (int n = 1; n <= T; ++n) {
    const ExactSeries& an = coeffs[static_cast<std::size_t>(n) - 1];
    ExactSeries r(d);
    r += an * Rational(n * (n - 1));  // t^2 Phi''
    r += lin0 * an * Rational(n);     // t (1-2x) Phi'
    r += quad * an;                   // (x^2 - z^2) Phi
    if (n >= 2) {
      const ExactSeries& prev = coeffs[static_cast<std::size_t>(n) - 2];
      r -= prev * Rational((n - 1) * (n - 2));  // -t^3 Phi''
      r -= lin1 * prev * Rational(n - 1);       // -t^2 (1-x) Phi'
    }
    if (n == 1) r -= one;  // right-hand side t
    residual.push_back(std::move(r));
  }
  return residual;
}

std::vector<ExactSeries> ode_residual(int T, int max_degree) {
  // The t^1 relation reads a_1 ((1-x)^2 - z^2) = 1 and each later one fixes
  // a_n from a_(n-1), so the power-series solution is determined uniquely.
  const std::vector<ExactSeries> a = a_series_upto(T + 1, max_degree);
  return ode_residual(a, T);
}

// ---------------------------------------------------------------------------
// Derivative recurrences
// ---------------------------------------------------------------------------

Rational x_coeff(int n, int k, int s, LStarTable& table) {
  if (k < 0 || s < 0) return Rational(0);
  if (n == 0) return (k == 0 && s == 0) ? Rational(1) : Rational(0);
  Rational total = 0;
  for (const auto& idx : enum_indices(k, s, false)) total += table.coeff(n, idx);
  return total;
}

Rational x0_coeff(int n, int k, int s, LStarTable& table) {
  if (k < 0 || s < 0 || n == 0) return Rational(0);
  Rational total = 0;
  for (const auto& idx : enum_indices(k, s, true)) total += table.coeff(n, idx);
  return total;
}

RecurrenceReport deriv_recurrence_check(int nmax, int wmax) {
  if (nmax < 1) throw DomainError("deriv_recurrence_check: nmax must be >= 1");
  if (wmax < 2) throw DomainError("deriv_recurrence_check: wmax must be >= 2");
  LStarTable table(nmax);
  RecurrenceReport report;
  for (int k = 1; k <= wmax; ++k)
    for (int s = 0; 2 * s <= k; ++s)
      for (int n = 1; n <= nmax; ++n) {
        if (s >= 1) {
          Rational lhs = Rational(n) * x0_coeff(n, k, s, table);
          Rational rhs = x_coeff(n, k - 1, s - 1, table) - x0_coeff(n, k - 1, s - 1, table) + x0_coeff(n, k - 1, s, table);
          ++report.instances;
          if (lhs != rhs) report.failures.push_back({1, k, s, n});
        }
        Rational lhs = Rational(n) * (x_coeff(n, k, s, table) - x0_coeff(n, k, s, table));
        Rational rhs = 0;
        for (int m = 0; m <= n; ++m) rhs += x_coeff(m, k - 1, s, table);
        ++report.instances;
        if (lhs != rhs) report.failures.push_back({2, k, s, n});
      }
  return report;
}

}  // namespace mzsv
