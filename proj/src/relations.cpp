#include "mzsv/relations.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "mzsv/bi_series.hpp"

namespace mzsv::relations {

namespace bm = boost::multiprecision;

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    if (!enabled_) return 0;
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

void check_ks(int k, int s) {
  if (s < 1 || k < 2 * s)
    throw DomainError("invalid (k, s) = (" + std::to_string(k) + ", " + std::to_string(s) + "): need s >= 1, k >= 2s");
}

// 2 c (1 - 2^(1-k)) zeta(k)
Real eta_multiple(int k, const Integer& c, const PrecisionConfig& cfg) { return 2 * Real(c) * numkern::eta_int(k, cfg); }

// Runs task(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Real theorem1_rhs(int k, int s, const PrecisionConfig& cfg) {
  check_ks(k, s);
  return eta_multiple(k, numkern::binomial(k - 1, 2 * s - 1), cfg);
}

Estimate theorem1_lhs(int k, int s, ZetaEvaluator& evaluator) {
  check_ks(k, s);
  Real value = 0;
  Real err = 0;
  for (const auto& idx : enum_indices(k, s, true)) {
    Estimate e = evaluator.zeta_star(idx);
    value += e.value;
    err += e.error;
  }
  return {value, err};
}

Estimate theorem1_lhs(int k, int s, const EvalConfig& ec) {
  ZetaEvaluator evaluator(ec);
  return theorem1_lhs(k, s, evaluator);
}

double default_sweep_tolerance(int k) { return k <= 6 ? 1e-8 : 1e-5; }

std::vector<VerificationReport> verify_theorem1(int kmax, const EvalConfig& ec, const SweepOptions& opts) {
  if (kmax < 2) throw DomainError("verify_theorem1: kmax must be >= 2");
  ec.validate();
  const PrecisionConfig& cfg = ec.precision;
  PrecisionScope scope(cfg);
  std::vector<std::pair<int, int>> tasks;
  for (int k = 2; k <= kmax; ++k)
    for (int s = 1; 2 * s <= k; ++s) tasks.emplace_back(k, s);

  ZetaEvaluator evaluator(ec);
  std::vector<VerificationReport> reports(tasks.size());
  parallel_for(tasks.size(), opts.jobs, [&](std::size_t i) {
    const auto [k, s] = tasks[i];
    Stopwatch clock(opts.timing);
    Estimate lhs = theorem1_lhs(k, s, evaluator);
    Real rhs = theorem1_rhs(k, s, cfg) + opts.rhs_perturbation;
    const double tol = opts.tol.value_or(default_sweep_tolerance(k));
    reports[i] = make_report("theorem1", {{"k", std::to_string(k)}, {"s", std::to_string(s)}}, lhs.value, rhs,
                             Real(tol), cfg.working_digits(), clock.ms());
  });
  return reports;
}

XiValue xi_value(int k, int n, ZetaEvaluator& evaluator) {
  if (k < 1 || n < 1) throw DomainError("xi_value: k and n must be >= 1");
  std::vector<int> parts(static_cast<std::size_t>(n), 1);
  parts[0] = k + 1;
  Estimate e = evaluator.zeta_star(MultiIndex(std::move(parts)));
  return {k, n, std::move(e.value), std::move(e.error)};
}

XiValue xi_value(int k, int n, const EvalConfig& ec) {
  ZetaEvaluator evaluator(ec);
  return xi_value(k, n, evaluator);
}

std::vector<VerificationReport> verify_corollary(int kmax, const EvalConfig& ec, const SweepOptions& opts) {
  if (kmax < 2) throw DomainError("verify_corollary: kmax must be >= 2");
  ec.validate();
  const PrecisionConfig& cfg = ec.precision;
  PrecisionScope scope(cfg);
  ZetaEvaluator evaluator(ec);
  const std::size_t count = static_cast<std::size_t>(kmax - 1);
  std::vector<VerificationReport> reports(count);
  parallel_for(count, opts.jobs, [&](std::size_t i) {
    const int k = static_cast<int>(i) + 2;
    Stopwatch clock(opts.timing);
    Real lhs = 0;
    for (int n = 1; n <= k - 1; ++n) lhs += xi_value(k - n, n, evaluator).value;
    Real rhs = eta_multiple(k, Integer(k - 1), cfg) + opts.rhs_perturbation;
    const double tol = opts.tol.value_or(default_sweep_tolerance(k));
    reports[i] =
        make_report("corollary", {{"k", std::to_string(k)}}, lhs, rhs, Real(tol), cfg.working_digits(), clock.ms());
  });
  return reports;
}

namespace {

ParamList xz_params(const hypergeom::XZPoint& p) {
  return {{"x", to_decimal(p.x, 6)}, {"z", to_decimal(p.z, 6)}};
}

}  // namespace

VerificationReport verify_theorem2(const hypergeom::XZPoint& p, const PrecisionConfig& cfg, std::optional<double> tol,
                                   bool timing) {
  PrecisionScope scope(cfg);
  Stopwatch clock(timing);
  Estimate lhs = hypergeom::theorem2_lhs(p, cfg);
  Real rhs = hypergeom::rhs_series(p, cfg);
  return make_report("theorem2", xz_params(p), lhs.value, rhs, Real(tol.value_or(1e-8)), cfg.working_digits(),
                     clock.ms());
}

VerificationReport verify_remark(const hypergeom::XZPoint& p, const PrecisionConfig& cfg, std::optional<double> tol,
                                 bool timing) {
  PrecisionScope scope(cfg);
  Stopwatch clock(timing);
  Real lhs = hypergeom::rhs_digamma(p, cfg);
  Real rhs = hypergeom::rhs_series(p, cfg);
  Real t = tol ? Real(*tol) : bm::pow(Real(10), -(cfg.digits - 20));
  return make_report("remark", xz_params(p), lhs, rhs, t, cfg.working_digits(), clock.ms());
}

std::vector<VerificationReport> verify_oracle(int tmax, int degree, bool timing) {
  if (tmax < 1 || degree < 0) throw DomainError("verify_oracle: need tmax >= 1 and degree >= 0");
  PrecisionScope scope(PrecisionConfig{});
  const ParamList params{{"tmax", std::to_string(tmax)}, {"degree", std::to_string(degree)}};
  std::vector<VerificationReport> out;
  auto exact = [&](const char* name, std::size_t mismatches, long long ms) {
    out.push_back(make_report(name, params, Real(static_cast<double>(mismatches)), Real(0), Real(0), 20, ms));
  };

  {
    Stopwatch clock(timing);
    LStarTable table(tmax);
    const auto a = a_series_upto(tmax, degree);
    std::size_t bad = 0;
    for (int n = 1; n <= tmax; ++n)
      if (!(a[static_cast<std::size_t>(n) - 1] == phi0_t_coeff(n, degree, table))) ++bad;
    exact("oracle_a_vs_phi0", bad, clock.ms());
  }
  {
    Stopwatch clock(timing);
    std::size_t bad = 0;
    for (const auto& c : ode_residual(tmax, degree))
      if (!c.is_zero()) ++bad;
    exact("oracle_ode_residual", bad, clock.ms());
  }
  {
    Stopwatch clock(timing);
    RecurrenceReport rec = deriv_recurrence_check(tmax, std::min(degree, 6));
    exact("oracle_derivative_recurrences", rec.failures.size(), clock.ms());
  }
  return out;
}

Rational pole_series_coeff(int k, int s, int terms) {
  check_ks(k, s);
  const int deg = k - 1;
  ExactSeries sum(deg);
  for (int l = 1; l <= terms; ++l) {
    ExactSeries diff = pole_expand<Rational>(l, Sign::plus, deg) - pole_expand<Rational>(l, Sign::minus, deg);
    if (l % 2 == 1)
      sum -= diff;
    else
      sum += diff;
  }
  // dividing by z moves z^(2s-1) to z^(2s-2)
  return sum.coeff(k - 2 * s, 2 * s - 1);
}

Rational pole_series_expected(int k, int s, int terms) {
  check_ks(k, s);
  Rational partial = 0;
  for (int l = 1; l <= terms; ++l) {
    Rational inv_pow = 1;
    for (int e = 0; e < k; ++e) inv_pow /= l;
    partial += l % 2 == 1 ? inv_pow : Rational(-inv_pow);
  }
  return 2 * Rational(numkern::binomial(k - 1, 2 * s - 1)) * partial;
}

Real pole_series_limit(int k, int s, const PrecisionConfig& cfg) {
  check_ks(k, s);
  const Real c = 2 * Real(numkern::binomial(k - 1, 2 * s - 1));
  auto term = [&](std::size_t l) {
    Real v = c / bm::pow(Real(static_cast<double>(l)), k);
    return l % 2 == 1 ? v : Real(-v);
  };
  return numkern::alt_sum(term, cfg).value;
}

}  // namespace mzsv::relations
