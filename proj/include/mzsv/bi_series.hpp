#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mzsv/types.hpp"

namespace mzsv {

/// Truncated power series in two formal variables x, z:
///   sum_{a+b <= D} c(a,b) x^a z^b.
///
/// Coefficients live in dense triangular storage ordered by total degree,
/// then by the z-exponent. Monomials beyond the degree bound are unknown,
/// not zero, and cannot be read back.
template <class Coeff>
class BiSeries {
 public:
  using coeff_type = Coeff;

  explicit BiSeries(int max_degree) : degree_(max_degree), data_(slots(max_degree), Coeff(0)) {
    if (max_degree < 0) throw DomainError("BiSeries: negative degree bound");
  }

  static BiSeries constant(int max_degree, const Coeff& c) {
    BiSeries s(max_degree);
    s.data_[0] = c;
    return s;
  }

  /// c x^a z^b; silently zero when a + b exceeds the bound.
  static BiSeries monomial(int max_degree, int a, int b, const Coeff& c) {
    BiSeries s(max_degree);
    if (a + b <= max_degree) s.data_[offset(a, b)] = c;
    return s;
  }

  static BiSeries x(int max_degree) { return monomial(max_degree, 1, 0, Coeff(1)); }
  static BiSeries z(int max_degree) { return monomial(max_degree, 0, 1, Coeff(1)); }

  int max_degree() const { return degree_; }

  /// Coefficient of x^a z^b. Throws OutOfRangeError when a + b > D.
  const Coeff& coeff(int a, int b) const {
    check(a, b);
    return data_[offset(a, b)];
  }

  void set(int a, int b, Coeff c) {
    check(a, b);
    data_[offset(a, b)] = std::move(c);
  }

  bool is_zero() const {
    for (const auto& c : data_)
      if (c != 0) return false;
    return true;
  }

  BiSeries& operator+=(const BiSeries& o) {
    same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  BiSeries& operator-=(const BiSeries& o) {
    same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  BiSeries& operator*=(const Coeff& c) {
    for (auto& v : data_) v *= c;
    return *this;
  }

  friend BiSeries operator+(BiSeries p, const BiSeries& q) { return p += q; }
  friend BiSeries operator-(BiSeries p, const BiSeries& q) { return p -= q; }
  friend BiSeries operator-(BiSeries p) {
    for (auto& v : p.data_) v = -v;
    return p;
  }
  friend BiSeries operator*(BiSeries p, const Coeff& c) { return p *= c; }
  friend BiSeries operator*(const Coeff& c, BiSeries p) { return p *= c; }
  friend BiSeries operator*(const BiSeries& p, const BiSeries& q) { return ps_mul(p, q); }

  friend bool operator==(const BiSeries& p, const BiSeries& q) {
    return p.degree_ == q.degree_ && p.data_ == q.data_;
  }

  /// Product truncated to total degree D.
  friend BiSeries ps_mul(const BiSeries& p, const BiSeries& q) {
    p.same_shape(q);
    const int d = p.degree_;
    BiSeries r(d);
    for (int a1 = 0; a1 <= d; ++a1)
      for (int b1 = 0; a1 + b1 <= d; ++b1) {
        const Coeff& c1 = p.data_[offset(a1, b1)];
        if (c1 == 0) continue;
        for (int a2 = 0; a1 + b1 + a2 <= d; ++a2)
          for (int b2 = 0; a1 + b1 + a2 + b2 <= d; ++b2) {
            const Coeff& c2 = q.data_[offset(a2, b2)];
            if (c2 == 0) continue;
            r.data_[offset(a1 + a2, b1 + b2)] += c1 * c2;
          }
      }
    return r;
  }

  /// q with p*q = 1 up to degree D, by coefficient recursion in order of
  /// total degree. Throws SingularError when the constant term vanishes.
  friend BiSeries ps_reciprocal(const BiSeries& p) {
    const Coeff& c0 = p.data_[0];
    if (c0 == 0) throw SingularError("ps_reciprocal: zero constant term");
    const int d = p.degree_;
    BiSeries q(d);
    const Coeff inv = Coeff(1) / c0;
    q.data_[0] = inv;
    for (int total = 1; total <= d; ++total)
      for (int b = 0; b <= total; ++b) {
        const int a = total - b;
        Coeff acc(0);
        for (int i = 0; i <= a; ++i)
          for (int j = 0; j <= b; ++j) {
            if (i == 0 && j == 0) continue;
            const Coeff& pc = p.data_[offset(i, j)];
            if (pc == 0) continue;
            acc += pc * q.data_[offset(a - i, b - j)];
          }
        q.data_[offset(a, b)] = -acc * inv;
      }
    return q;
  }

  /// Sorted monomial listing, one `coeff * x^a * z^b` per line, by total
  /// degree then z-exponent; zero coefficients are omitted.
  std::string render() const {
    std::ostringstream out;
    for (int total = 0; total <= degree_; ++total)
      for (int b = 0; b <= total; ++b) {
        const Coeff& c = data_[offset(total - b, b)];
        if (c == 0) continue;
        out << format(c) << " * x^" << (total - b) << " * z^" << b << '\n';
      }
    return out.str();
  }

 private:
  static std::size_t slots(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }
  static std::size_t offset(int a, int b) {
    const int t = a + b;
    return static_cast<std::size_t>(t * (t + 1) / 2 + b);
  }
  void check(int a, int b) const {
    if (a < 0 || b < 0) throw OutOfRangeError("BiSeries: negative exponent");
    if (a + b > degree_)
      throw OutOfRangeError("BiSeries: monomial x^" + std::to_string(a) + " z^" + std::to_string(b) +
                            " is beyond the truncation degree " + std::to_string(degree_));
  }
  void same_shape(const BiSeries& o) const {
    if (o.degree_ != degree_) throw DomainError("BiSeries: degree bounds differ");
  }
  static std::string format(const Coeff& c) {
    if constexpr (std::is_same_v<Coeff, Rational>)
      return to_fraction(c);
    else
      return to_decimal(c, static_cast<int>(Real::default_precision()));
  }

  int degree_;
  std::vector<Coeff> data_;
};

using ExactSeries = BiSeries<Rational>;
using NumericSeries = BiSeries<Real>;

/// Coefficient of x^a z^b; throws OutOfRangeError outside the window.
template <class Coeff>
const Coeff& ps_coeff(const BiSeries<Coeff>& p, int a, int b) {
  return p.coeff(a, b);
}

/// Expansion of 1/(x + sign*z - l) = -(1/l) sum_j ((x + sign*z)/l)^j about
/// the origin:  coefficient of x^a z^b is -C(a+b, b) sign^b / l^(a+b+1).
template <class Coeff>
BiSeries<Coeff> pole_expand(int l, Sign sign, int max_degree) {
  if (l == 0) throw PoleError("pole_expand: pole at the origin (l = 0)");
  if (l < 0) throw DomainError("pole_expand: l must be positive");
  BiSeries<Coeff> s(max_degree);
  Coeff lpow = Coeff(l);  // l^(total+1)
  for (int total = 0; total <= max_degree; ++total) {
    // C(total, b) built incrementally
    Coeff binom(1);
    for (int b = 0; b <= total; ++b) {
      Coeff c = -binom / lpow;
      if (sign == Sign::minus && b % 2 == 1) c = -c;
      s.set(total - b, b, c);
      binom = binom * Coeff(total - b) / Coeff(b + 1);
    }
    lpow *= Coeff(l);
  }
  return s;
}

}  // namespace mzsv
