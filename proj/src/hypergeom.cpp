#include "mzsv/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mzsv/constants.hpp"

namespace mzsv::hypergeom {

namespace bm = boost::multiprecision;
using numkern::Estimate;

namespace {

bool nonpositive_integer(const Real& w) { return w <= 0 && w == bm::floor(w); }

Real pow10(int e) { return bm::pow(Real(10), e); }

XZPoint working(const XZPoint& p) { return {at_working_precision(p.x), at_working_precision(p.z)}; }

}  // namespace

void XZPoint::validate() const {
  if (bm::abs(x) > Real(0.5) || bm::abs(z) > Real(0.5))
    throw DomainError("XZPoint: (x, z) outside the window |x|, |z| <= 1/2");
  for (const Real& w : {Real(x + z), Real(x - z)})
    if (w >= 1 && w == bm::floor(w)) throw PoleError("XZPoint: x +- z is a positive integer");
}

// ---------------------------------------------------------------------------
// Series and Gauss's value
// ---------------------------------------------------------------------------

namespace {

// Series with the lower parameter given as gamma_int + gamma_frac, so that
// gamma + k stays accurate when it passes next to zero.
Real f21_split(const Real& alpha, const Real& beta, long gamma_int, const Real& gamma_frac, const Real& t,
               const PrecisionConfig& cfg) {
  if (bm::abs(t) >= 1) throw DomainError("f21: |t| must be < 1 (use f21_at_1 or Hypergeometric)");
  const Real tol = pow10(-cfg.working_digits());
  const Real at = bm::abs(t);
  const double settle = std::abs(alpha.convert_to<double>()) + std::abs(beta.convert_to<double>()) +
                        std::abs(static_cast<double>(gamma_int) + gamma_frac.convert_to<double>()) + 2.0;
  constexpr long budget = 200'000'000;
  Real term = 1;
  Real sum = 1;
  for (long n = 0; n < budget; ++n) {
    const Real nn = static_cast<double>(n);
    Real lower = Real(static_cast<double>(gamma_int + n)) + gamma_frac;
    if (lower == 0) throw DomainError("f21: gamma is a non-positive integer");
    Real ratio = (alpha + nn) * (beta + nn) / (lower * (nn + 1)) * t;
    term *= ratio;
    if (term == 0) return sum;  // terminating series
    sum += term;
    if (static_cast<double>(n) > settle) {
      Real rho = bm::max(bm::abs(ratio), at);
      if (rho < 1 && bm::abs(term) * rho / (1 - rho) < tol * bm::max(Real(1), bm::abs(sum))) return sum;
    }
  }
  throw BudgetExceeded("f21: series did not settle within the term budget", sum);
}

// Gamma(n + e) for small e, through reflection when n + e is near a pole.
Real gamma_split(long n, const Real& e, const PrecisionConfig& cfg) {
  const Real w = Real(static_cast<double>(n)) + e;
  if (n >= 1) return numkern::gamma(w, cfg);
  if (e == 0) throw PoleError("Gamma pole at a non-positive integer");
  const Real s = (n % 2 == 0 ? 1 : -1) * bm::sin(const_pi() * e);  // sin(pi (n + e))
  return const_pi() / (s * numkern::gamma(1 - w, cfg));
}

}  // namespace

Real f21(const HypParams& p, const Real& t, const PrecisionConfig& cfg) {
  if (nonpositive_integer(p.gamma)) throw DomainError("f21: gamma is a non-positive integer");
  return f21_split(p.alpha, p.beta, 0, p.gamma, t, cfg);
}

Real f21_at_1(const HypParams& p, const PrecisionConfig& cfg) {
  if (nonpositive_integer(p.gamma)) throw DomainError("f21_at_1: gamma is a non-positive integer");
  const Real* terminating = nullptr;
  const Real* other = nullptr;
  if (nonpositive_integer(p.alpha)) {
    terminating = &p.alpha;
    other = &p.beta;
  } else if (nonpositive_integer(p.beta)) {
    terminating = &p.beta;
    other = &p.alpha;
  }
  if (terminating) {
    // Chu-Vandermonde: F(-m, b, c; 1) = (c-b)_m / (c)_m
    const long m = static_cast<long>(-terminating->convert_to<double>() + 0.5);
    Real value = 1;
    for (long k = 0; k < m; ++k) value *= (p.gamma - *other + k) / (p.gamma + k);
    return value;
  }
  const Real excess = p.gamma - p.alpha - p.beta;
  if (nonpositive_integer(excess)) throw PoleError("f21_at_1: Gamma(gamma - alpha - beta) has a pole");
  return numkern::gamma(p.gamma, cfg) * numkern::gamma(excess, cfg) * numkern::rgamma(p.gamma - p.alpha, cfg) *
         numkern::rgamma(p.gamma - p.beta, cfg);
}

// ---------------------------------------------------------------------------
// Hypergeometric on [0,1)
// ---------------------------------------------------------------------------

Hypergeometric::Hypergeometric(HypParams p, const PrecisionConfig& cfg) : p_(std::move(p)), cfg_(cfg) {
  for (Real* v : {&p_.alpha, &p_.beta, &p_.gamma}) *v = at_working_precision(*v);
  if (nonpositive_integer(p_.gamma)) throw DomainError("Hypergeometric: gamma is a non-positive integer");
  terminating_ = nonpositive_integer(p_.alpha) || nonpositive_integer(p_.beta);
  if (terminating_) return;
  const Real excess = p_.gamma - p_.alpha - p_.beta;
  const Real nearest = bm::round(excess);
  init_excess(nearest.convert_to<long>(), excess - nearest);
}

Hypergeometric::Hypergeometric(HypParams p, long excess_int, const Real& excess_frac, const PrecisionConfig& cfg)
    : p_(std::move(p)), cfg_(cfg) {
  init_excess(excess_int, excess_frac);
}

void Hypergeometric::init_excess(long excess_int, const Real& excess_frac) {
  excess_int_ = excess_int;
  excess_frac_ = excess_frac;
  const int wd = cfg_.working_digits();
  if (bm::abs(excess_frac_) < pow10(-(wd / 3 + 4))) {
    // Logarithmic case: the connection formula is the limit of the average
    // over beta +- eps; the O(eps^2) bias is far below working precision.
    degenerate_ = true;
    const Real eps = pow10(-(wd / 3));
    lower_.reset(new Hypergeometric({p_.alpha, p_.beta - eps, p_.gamma}, excess_int_, excess_frac_ + eps, cfg_));
    upper_.reset(new Hypergeometric({p_.alpha, p_.beta + eps, p_.gamma}, excess_int_, excess_frac_ - eps, cfg_));
    return;
  }
  const Real g = numkern::gamma(p_.gamma, cfg_);
  coeff_regular_ = g * gamma_split(excess_int_, excess_frac_, cfg_) * numkern::rgamma(p_.gamma - p_.alpha, cfg_) *
                   numkern::rgamma(p_.gamma - p_.beta, cfg_);
  coeff_singular_ = g * gamma_split(-excess_int_, -excess_frac_, cfg_) * numkern::rgamma(p_.alpha, cfg_) *
                    numkern::rgamma(p_.beta, cfg_);
}

Real Hypergeometric::near_one(const Real& t, const Real& u) const {
  if (degenerate_) return (lower_->near_one(t, u) + upper_->near_one(t, u)) / 2;
  Real value = 0;
  if (coeff_regular_ != 0)
    value += coeff_regular_ * f21_split(p_.alpha, p_.beta, 1 - excess_int_, -excess_frac_, u, cfg_);
  if (coeff_singular_ != 0) {
    const Real excess = Real(static_cast<double>(excess_int_)) + excess_frac_;
    value += coeff_singular_ * bm::pow(u, excess) *
             f21_split(p_.gamma - p_.alpha, p_.gamma - p_.beta, 1 + excess_int_, excess_frac_, u, cfg_);
  }
  return value;
}

Real Hypergeometric::operator()(const Real& t, const Real& one_minus_t) const {
  if (t < 0 || one_minus_t <= 0) throw DomainError("Hypergeometric: t must lie in [0, 1)");
  if (terminating_ || t <= Real(0.5)) return f21(p_, t, cfg_);
  return near_one(t, one_minus_t);
}

// ---------------------------------------------------------------------------
// a_n and its partial fractions
// ---------------------------------------------------------------------------

Real a_gamma_form(int n, const Real& x_in, const Real& z_in, const PrecisionConfig& cfg) {
  using numkern::gamma;
  const Real x = at_working_precision(x_in), z = at_working_precision(z_in);
  Real num = gamma(Real(n), cfg) * gamma(n - x, cfg) * gamma(1 - x - z, cfg) * gamma(1 - x + z, cfg);
  Real den = gamma(1 - x, cfg) * gamma(1 - x - z + n, cfg) * gamma(1 - x + z + n, cfg);
  return num / den;
}

namespace {

// (-1)^l prod_{i=1}^{l-1} (w-l+i) / prod_{j=1}^{l} (2w-l+j)
Real a_sum_prefactor(int l, const Real& w) {
  Real value = l % 2 == 0 ? Real(1) : Real(-1);
  for (int i = 1; i < l; ++i) value *= w - l + i;
  for (int j = 1; j <= l; ++j) {
    Real den = 2 * w - l + j;
    if (den == 0) throw PoleError("sum_A: vanishing denominator");
    value /= den;
  }
  return value;
}

}  // namespace

Real sum_A_closed(int l, Sign sign, const Real& z_in, const PrecisionConfig& cfg) {
  const Real z = at_working_precision(z_in);
  if (l < 1) throw DomainError("sum_A_closed: l must be >= 1");
  if (z == 0) throw DomainError("sum_A_closed: z must be nonzero");
  const Real w = sign == Sign::plus ? z : Real(-z);
  return a_sum_prefactor(l, w) * f21_at_1({Real(l), w, 2 * w + 1}, cfg);
}

Real extrapolate_exponents(const std::vector<Real>& h, const std::vector<Real>& v, const std::vector<Real>& exponents) {
  const std::size_t n = h.size();
  if (v.size() != n || exponents.size() != n) throw DomainError("extrapolate_exponents: size mismatch");
  std::vector<Real> m(n * n);
  std::size_t target = n;
  for (std::size_t e = 0; e < n; ++e) {
    if (exponents[e] == 0) target = e;
    for (std::size_t i = 0; i < n; ++i) m[i * n + e] = bm::pow(h[i], exponents[e]);
  }
  if (target == n) throw DomainError("extrapolate_exponents: exponent 0 missing");
  return numkern::solve_dense(std::move(m), v)[target];
}

namespace {

// The J smallest exponents of {0, 1, 2, ...} u {d, d+1, ...}.
std::vector<Real> local_exponents(const Real& d, std::size_t count) {
  std::vector<Real> out;
  int i = 0;
  Real next_d = d;
  while (out.size() < count) {
    if (Real(i) <= next_d) {
      if (out.empty() || out.back() != Real(i)) out.push_back(Real(i));
      if (Real(i) == next_d) next_d += 1;
      ++i;
    } else {
      out.push_back(next_d);
      next_d += 1;
    }
  }
  return out;
}

}  // namespace

Real abel_sum_A(int l, Sign sign, const Real& z_in, const PrecisionConfig& cfg) {
  const Real z = at_working_precision(z_in);
  if (l < 1 || l > 2) throw DomainError("abel_sum_A: only l in {1, 2}");
  if (z == 0) throw DomainError("abel_sum_A: z must be nonzero");
  const Real w = sign == Sign::plus ? z : Real(-z);
  const Real pre = a_sum_prefactor(l, w);
  const HypParams hp{Real(l), w, 2 * w + 1};
  const Real d = 1 + w - Real(l);  // gamma - alpha - beta
  // Nine points with 1-t geometric from 1e-1 to 1e-3 (t = 0.9, 0.99, 0.999
  // among them). Three points cannot separate exponent 0 from +-z.
  constexpr int points = 9;
  std::vector<Real> h, v;
  for (int i = 0; i < points; ++i) {
    Real hi = bm::pow(Real(10), Real(-1) - Real(2 * i) / (points - 1));
    Real t = 1 - hi;
    h.push_back(hi);
    v.push_back(pre * bm::pow(t, l) * f21(hp, t, cfg));
  }
  const Real full = extrapolate_exponents(h, v, local_exponents(d, points));
  // Refit without the point farthest from t = 1: disagreement means the
  // expansion has not settled.
  const std::vector<Real> h_near(h.begin() + 1, h.end()), v_near(v.begin() + 1, v.end());
  const Real coarse = extrapolate_exponents(h_near, v_near, local_exponents(d, points - 1));
  if (bm::abs(full - coarse) > Real(1e-3) * bm::max(Real(1), bm::abs(full)))
    throw BudgetExceeded("abel_sum_A: extrapolation unstable", full);
  return full;
}

// ---------------------------------------------------------------------------
// Phi0(x, z; 1)
// ---------------------------------------------------------------------------

Real rhs_series(const XZPoint& point, const PrecisionConfig& cfg) {
  const XZPoint p = working(point);
  p.validate();
  if (p.z == 0) throw DomainError("rhs_series: z must be nonzero");
  // (-1)^l (1/(x+z-l) - 1/(x-z-l)) / z = 2 (-1)^(l-1) / ((l-x)^2 - z^2)
  auto term = [&](std::size_t l) {
    Real lx = Real(static_cast<double>(l)) - p.x;
    Real v = 2 / (lx * lx - p.z * p.z);
    return l % 2 == 1 ? v : Real(-v);
  };
  return numkern::alt_sum(term, cfg).value;
}

Real rhs_digamma(const XZPoint& point, const PrecisionConfig& cfg) {
  const XZPoint p = working(point);
  p.validate();
  if (p.z == 0) throw DomainError("rhs_digamma: z must be nonzero");
  using numkern::digamma;
  const Real plus = p.x + p.z;
  const Real minus = p.x - p.z;
  Real combo = digamma(1 - plus, cfg) - digamma(1 - minus, cfg) - digamma(1 - plus / 2, cfg) +
               digamma(1 - minus / 2, cfg);
  return -combo / p.z;
}

Estimate theorem2_lhs(const XZPoint& point, const PrecisionConfig& cfg) {
  const XZPoint p = working(point);
  p.validate();
  if (p.x == 1) throw PoleError("theorem2_lhs: pole at x = 1");
  const Hypergeometric g({1 - p.z, 1 - p.x - p.z, 2 - p.x}, cfg);
  const Real power = -p.x - p.z;
  auto integrand = [&](const Real& t, const Real& tc) { return bm::pow(tc, power) * g(t, tc); };
  // Integer gamma - alpha - beta (e.g. x = 0) keeps only about 2/3 of the
  // working digits near t = 1, so the quadrature target is set below that.
  const numkern::QuadOptions opts{.max_level = 12, .tolerance = pow10(-cfg.working_digits() / 2)};
  Estimate integral = numkern::quad_de(numkern::Integrand(integrand), cfg, opts);
  return {integral.value / (1 - p.x), integral.error / bm::abs(1 - p.x)};
}

// ---------------------------------------------------------------------------
// Variation of parameters
// ---------------------------------------------------------------------------

Real vop_phi0(const XZPoint& point, const Real& t, const PrecisionConfig& cfg) {
  const XZPoint p = working(point);
  p.validate();
  if (p.z == 0) throw DomainError("vop_phi0: z must be nonzero");
  if (t <= 0 || t >= 1) throw DomainError("vop_phi0: t must lie in (0, 1)");
  const Real& x = p.x;
  const Real& z = p.z;
  const Hypergeometric f1({x + z, z, 2 * z + 1}, cfg);
  const Real exp1 = x + z;
  const Hypergeometric f2({x - z, -z, 1 - 2 * z}, cfg);
  const Real exp2 = x - z;
  const Real tc = 1 - t;

  // u_i(t) = +-(t/2z) int_0^1 (tv)^(-x-+z) (1-tv)^(x-1) F(..; tv) dv
  auto quadrature = [&](const Hypergeometric& f, const Real& power) {
    auto integrand = [&](const Real& v, const Real& vc) {
      Real s = t * v;
      Real sc = tc + t * vc;
      return bm::pow(s, power) * bm::pow(sc, x - 1) * f(s, sc);
    };
    const numkern::QuadOptions opts{.max_level = 12, .tolerance = pow10(-cfg.working_digits() / 2)};
    return numkern::quad_de(numkern::Integrand(integrand), cfg, opts).value;
  };
  const Real u1 = t / (2 * z) * quadrature(f2, -x - z);
  const Real u2 = -t / (2 * z) * quadrature(f1, -x + z);
  const Real phi1 = bm::pow(t, exp1) * f1(t, tc);
  const Real phi2 = bm::pow(t, exp2) * f2(t, tc);
  return u1 * phi1 + u2 * phi2;
}

Real vop_phi0_at_one(const XZPoint& p, const PrecisionConfig& cfg) {
  std::vector<Real> h, v;
  for (int i = 2; i <= 4; ++i) {
    Real hi = pow10(-i);
    h.push_back(hi);
    v.push_back(vop_phi0(p, 1 - hi, cfg));
  }
  const Real singular = 1 - p.x;
  if (bm::abs(singular - 1) > Real(1e-6)) return extrapolate_exponents(h, v, {Real(0), singular, Real(1)});
  // x = 0: the exponents 1-x and 1 collide into u and u log u.
  std::vector<Real> m(9);
  for (std::size_t i = 0; i < 3; ++i) {
    m[i * 3 + 0] = 1;
    m[i * 3 + 1] = h[i] * bm::log(h[i]);
    m[i * 3 + 2] = h[i];
  }
  return numkern::solve_dense(std::move(m), v)[0];
}

Real phi0_power_series(const XZPoint& point, const Real& t, const PrecisionConfig& cfg) {
  const XZPoint p = working(point);
  if (bm::abs(t) >= 1) throw DomainError("phi0_power_series: |t| must be < 1");
  const Real tol = pow10(-cfg.working_digits());
  Real a = a_value<Real>(1, p.x, p.z);
  Real tp = t;
  Real sum = a * tp;
  for (int n = 1; n < 100'000'000; ++n) {
    Real mx = n + 1 - p.x;
    a = a * n * (n - p.x) / (mx * mx - p.z * p.z);
    tp *= t;
    Real term = a * tp;
    sum += term;
    if (n > 10 && bm::abs(term) / (1 - bm::abs(t)) < tol * bm::max(Real(1), bm::abs(sum))) return sum;
  }
  throw BudgetExceeded("phi0_power_series: no convergence", sum);
}

}  // namespace mzsv::hypergeom
