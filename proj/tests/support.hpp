#pragma once

#include <random>

#include <mpfr.h>

#include "mzsv/types.hpp"

namespace testing {

using mzsv::Real;

// Fixed seed so that every run draws the same sample.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Real ref_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real ref_euler() {
  Real r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real ref_log2() {
  Real r;
  mpfr_const_log2(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real ref_zeta(unsigned long k) {
  Real r;
  mpfr_zeta_ui(r.backend().data(), k, MPFR_RNDN);
  return r;
}

inline Real ref_gamma(const Real& w) {
  Real r;
  mpfr_gamma(r.backend().data(), w.backend().data(), MPFR_RNDN);
  return r;
}

inline Real ref_digamma(const Real& w) {
  Real r;
  mpfr_digamma(r.backend().data(), w.backend().data(), MPFR_RNDN);
  return r;
}

inline Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

inline bool close(const Real& a, const Real& b, const Real& tol) { return boost::multiprecision::abs(a - b) <= tol; }

}  // namespace testing
