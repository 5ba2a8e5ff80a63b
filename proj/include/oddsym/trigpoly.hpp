#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <string>

#include "oddsym/errors.hpp"
#include "oddsym/scalar.hpp"

namespace oddsym {

// Frequency vector in Z^n, padded with zeros beyond the active dimension so
// one key type serves n = 1 and n = 3.  Lexicographic std::array ordering
// gives the canonical serialization order.
using Freq = std::array<int, 3>;

inline void check_dimension(int n) {
  if (n != 1 && n != 3) throw precondition_error("unsupported-dimension: n must be 1 or 3");
}

// Trigonometric polynomial on the torus T^n: a finitely supported map
// k -> c_k representing sum c_k e^{i k.x}.  This is the coefficient ring of
// the symbol calculus; zero coefficients are never stored.
class TrigPoly {
 public:
  explicit TrigPoly(int n) : n_(n) { check_dimension(n); }

  static TrigPoly constant(int n, ExactScalar c) {
    TrigPoly p(n);
    p.add_term({0, 0, 0}, std::move(c));
    return p;
  }
  static TrigPoly mode(int n, const Freq& k, ExactScalar c) {
    TrigPoly p(n);
    for (int j = n; j < 3; ++j)
      if (k[j] != 0) throw precondition_error("frequency component beyond dimension");
    p.add_term(k, std::move(c));
    return p;
  }

  int dim() const { return n_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Freq, ExactScalar>& coeffs() const { return coeffs_; }

  ExactScalar coeff(const Freq& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? ExactScalar() : it->second;
  }

  // True when only the zero frequency is present: the function is constant
  // in x.
  bool x_independent() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == Freq{0, 0, 0});
  }

  int max_abs_freq() const {
    int m = 0;
    for (const auto& [k, c] : coeffs_)
      for (int j = 0; j < n_; ++j) m = std::max(m, std::abs(k[j]));
    return m;
  }

  void add_term(const Freq& k, ExactScalar c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
      coeffs_.emplace(k, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  TrigPoly operator-() const {
    TrigPoly r(n_);
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, -c);
    return r;
  }
  TrigPoly& operator+=(const TrigPoly& o) {
    check_same(o);
    for (const auto& [k, c] : o.coeffs_) add_term(k, c);
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) { return *this += -o; }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }

  // Pointwise product = convolution of coefficient maps.
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    a.check_same(b);
    TrigPoly r(a.n_);
    for (const auto& [k1, c1] : a.coeffs_)
      for (const auto& [k2, c2] : b.coeffs_)
        r.add_term({k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}, c1 * c2);
    return r;
  }
  friend TrigPoly operator*(const TrigPoly& a, const ExactScalar& c) {
    TrigPoly r(a.n_);
    for (const auto& [k, v] : a.coeffs_) r.add_term(k, v * c);
    return r;
  }

  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const TrigPoly& a, const TrigPoly& b) { return !(a == b); }

 private:
  void check_same(const TrigPoly& o) const {
    if (n_ != o.n_) throw precondition_error("dimension mismatch between trig polynomials");
  }

  int n_;
  std::map<Freq, ExactScalar> coeffs_;
};

inline TrigPoly trig_mul(const TrigPoly& a, const TrigPoly& b) { return a * b; }

// d/dx_axis: mode k picks up a factor i*k_axis.  Axes are 0-based.
inline TrigPoly x_derivative(const TrigPoly& p, int axis) {
  if (axis < 0 || axis >= p.dim()) throw precondition_error("axis out of range");
  TrigPoly r(p.dim());
  for (const auto& [k, c] : p.coeffs())
    r.add_term(k, c * GaussRational(Rational(0), Rational(k[axis])));
  return r;
}

// Integral over T^n: only the zero mode survives, weighted by the volume
// (2 pi)^n.
inline ExactScalar torus_integral(const TrigPoly& p) {
  return p.coeff({0, 0, 0}) * ExactScalar::term(GaussRational(Rational(Integer(1) << p.dim())), p.dim());
}

// The units of the trig-polynomial ring are the monomials c e^{i k.x} with
// invertible c; everything else is refused.
inline TrigPoly invert_unit(const TrigPoly& p) {
  if (p.coeffs().size() != 1)
    throw precondition_error("unsupported-inverse: trig polynomial is not a monomial unit");
  const auto& [k, c] = *p.coeffs().begin();
  return TrigPoly::mode(p.dim(), {-k[0], -k[1], -k[2]}, c.inverse());
}

}  // namespace oddsym
