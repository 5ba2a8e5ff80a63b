#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/trigpoly.hpp"

namespace oddsym {

// Monomial exponent in xi, padded like Freq.
using Beta = std::array<int, 3>;

inline int beta_weight(const Beta& b) { return b[0] + b[1] + b[2]; }

// Homogeneous polynomial in xi of a fixed total degree, with TrigPoly
// coefficients (functions of x).  Used both as the harmonic layers of the
// canonical form and as scratch during decomposition.
class XiPoly {
 public:
  XiPoly(int n, int degree) : n_(n), degree_(degree) {
    check_dimension(n);
    if (degree < 0) throw precondition_error("negative polynomial degree");
  }

  static XiPoly monomial(int n, const Beta& beta, TrigPoly coeff) {
    XiPoly p(n, beta_weight(beta));
    for (int j = n; j < 3; ++j)
      if (beta[j] != 0) throw precondition_error("monomial exponent beyond dimension");
    for (int j = 0; j < 3; ++j)
      if (beta[j] < 0) throw precondition_error("negative monomial exponent");
    p.add_term(beta, std::move(coeff));
    return p;
  }

  int dim() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return mono_.empty(); }
  const std::map<Beta, TrigPoly>& monomials() const { return mono_; }

  TrigPoly coeff(const Beta& b) const {
    auto it = mono_.find(b);
    return it == mono_.end() ? TrigPoly(n_) : it->second;
  }

  void add_term(const Beta& b, TrigPoly c) {
    if (c.is_zero()) return;
    if (beta_weight(b) != degree_) throw precondition_error("mixed homogeneity degrees");
    auto it = mono_.find(b);
    if (it == mono_.end()) {
      mono_.emplace(b, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) mono_.erase(it);
    }
  }

  XiPoly& operator+=(const XiPoly& o) {
    if (n_ != o.n_) throw precondition_error("dimension mismatch");
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    for (const auto& [b, c] : o.mono_) add_term(b, c);
    return *this;
  }
  XiPoly operator-() const {
    XiPoly r(n_, degree_);
    for (const auto& [b, c] : mono_) r.mono_.emplace(b, -c);
    return r;
  }
  XiPoly& operator-=(const XiPoly& o) { return *this += -o; }
  friend XiPoly operator+(XiPoly a, const XiPoly& b) { return a += b; }
  friend XiPoly operator-(XiPoly a, const XiPoly& b) { return a -= b; }

  friend XiPoly operator*(const XiPoly& a, const XiPoly& b) {
    if (a.n_ != b.n_) throw precondition_error("dimension mismatch");
    XiPoly r(a.n_, a.degree_ + b.degree_);
    for (const auto& [b1, c1] : a.mono_)
      for (const auto& [b2, c2] : b.mono_)
        r.add_term({b1[0] + b2[0], b1[1] + b2[1], b1[2] + b2[2]}, c1 * c2);
    return r;
  }
  friend XiPoly operator*(const XiPoly& a, const ExactScalar& s) {
    XiPoly r(a.n_, a.degree_);
    for (const auto& [b, c] : a.mono_) r.add_term(b, c * s);
    return r;
  }
  friend XiPoly operator*(const XiPoly& a, const TrigPoly& t) {
    XiPoly r(a.n_, a.degree_);
    for (const auto& [b, c] : a.mono_) r.add_term(b, c * t);
    return r;
  }

  friend bool operator==(const XiPoly& a, const XiPoly& b) {
    if (a.n_ != b.n_ || a.mono_ != b.mono_) return false;
    return a.is_zero() || a.degree_ == b.degree_;
  }
  friend bool operator!=(const XiPoly& a, const XiPoly& b) { return !(a == b); }

  // d/dxi_axis, degree drops by one.
  XiPoly derivative(int axis) const {
    XiPoly r(n_, degree_ > 0 ? degree_ - 1 : 0);
    for (const auto& [b, c] : mono_) {
      if (b[axis] == 0) continue;
      Beta nb = b;
      nb[axis] -= 1;
      r.add_term(nb, c * ExactScalar(b[axis]));
    }
    return r;
  }

  // Euclidean Laplacian sum_i d^2/dxi_i^2, degree drops by two.
  XiPoly laplacian() const {
    XiPoly r(n_, degree_ >= 2 ? degree_ - 2 : 0);
    for (const auto& [b, c] : mono_)
      for (int i = 0; i < n_; ++i) {
        if (b[i] < 2) continue;
        Beta nb = b;
        nb[i] -= 2;
        r.add_term(nb, c * ExactScalar(static_cast<long long>(b[i]) * (b[i] - 1)));
      }
    return r;
  }

  // Multiplication by |xi|^2 = sum_i xi_i^2, degree grows by two.
  XiPoly times_r2() const {
    XiPoly r(n_, degree_ + 2);
    for (const auto& [b, c] : mono_)
      for (int i = 0; i < n_; ++i) {
        Beta nb = b;
        nb[i] += 2;
        r.add_term(nb, c);
      }
    return r;
  }

  bool is_harmonic() const { return laplacian().is_zero(); }

 private:
  int n_;
  int degree_;
  std::map<Beta, TrigPoly> mono_;
};

// Unique harmonic decomposition P = sum_j |xi|^{2j} H_{m-2j} of a homogeneous
// polynomial of degree m.  Computed by the finite recursion: the Laplacian of
// the unknown expansion is
//   Lap P = sum_{j>=1} 2j(2j + 2(m-2j) + n - 2) |xi|^{2j-2} H_{m-2j},
// so decomposing Lap P (degree m-2, by induction) yields every H_{m-2j} with
// j >= 1 after dividing by the eigenfactor, and the top layer is whatever is
// left.  The eigenfactors 2j(2j + 2l + n - 2) never vanish for j >= 1, l >= 0,
// n >= 1, so the division is exact.  Returns the nonzero layers keyed by l.
inline std::map<int, XiPoly> harmonic_layers(const XiPoly& p) {
  std::map<int, XiPoly> out;
  if (p.is_zero()) return out;
  int m = p.degree();
  if (m <= 1) {
    out.emplace(m, p);
    return out;
  }
  std::map<int, XiPoly> sub = harmonic_layers(p.laplacian());
  XiPoly top = p;
  for (auto& [l, k] : sub) {
    int j = (m - l) / 2;
    Rational factor(1, static_cast<long long>(2 * j) * (2 * j + 2 * l + p.dim() - 2));
    XiPoly h = k * ExactScalar(factor);
    XiPoly radial = h;
    for (int t = 0; t < j; ++t) radial = radial.times_r2();
    top -= radial;
    out.emplace(l, std::move(h));
  }
  if (!top.is_zero()) out.emplace(m, std::move(top));
  return out;
}

// One (beta, m, coeff) input term of canonicalize: coeff * xi^beta * |xi|^m,
// homogeneous of total degree |beta| + m.
struct RadialTerm {
  Beta beta;
  int radial;
  TrigPoly coeff;
};

// Positively homogeneous function of xi of integer degree d, stored in
// canonical harmonic form: layers l -> harmonic polynomial P_l of xi-degree l,
// the represented function being sum_l P_l(x, xi) |xi|^{d-l}.  The
// representation is unique, so operator== decides equality of functions.
class HomogeneousComponent {
 public:
  HomogeneousComponent(int n, int degree) : n_(n), degree_(degree) { check_dimension(n); }

  // Harmonic decomposition applied to the polynomial part of every term.
  static HomogeneousComponent canonicalize(int n, const std::vector<RadialTerm>& terms) {
    if (terms.empty()) throw precondition_error("canonicalize: no terms (use the zero constructor)");
    int d = beta_weight(terms.front().beta) + terms.front().radial;
    HomogeneousComponent out(n, d);
    // Group by polynomial degree first so each degree is decomposed once.
    std::map<int, XiPoly> by_degree;
    for (const auto& t : terms) {
      if (beta_weight(t.beta) + t.radial != d)
        throw precondition_error("canonicalize: mixed homogeneity degrees");
      if (t.coeff.is_zero()) continue;
      auto [it, inserted] = by_degree.try_emplace(beta_weight(t.beta), XiPoly(n, beta_weight(t.beta)));
      it->second += XiPoly::monomial(n, t.beta, t.coeff);
    }
    for (const auto& [w, poly] : by_degree)
      for (auto& [l, h] : harmonic_layers(poly)) out.add_layer(l, h);
    return out;
  }

  static HomogeneousComponent monomial(int n, int degree, const Beta& beta, TrigPoly coeff) {
    return canonicalize(n, {{beta, degree - beta_weight(beta), std::move(coeff)}});
  }
  // |xi|^degree with the given coefficient function.
  static HomogeneousComponent radial(int n, int degree, TrigPoly coeff) {
    return monomial(n, degree, {0, 0, 0}, std::move(coeff));
  }

  int dim() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return layers_.empty(); }
  const std::map<int, XiPoly>& layers() const { return layers_; }

  XiPoly layer(int l) const {
    auto it = layers_.find(l);
    return it == layers_.end() ? XiPoly(n_, l) : it->second;
  }

  void add_layer(int l, const XiPoly& h) {
    if (h.is_zero()) return;
    if (h.degree() != l) throw precondition_error("layer degree mismatch");
    auto it = layers_.find(l);
    if (it == layers_.end()) {
      layers_.emplace(l, h);
    } else {
      it->second += h;
      if (it->second.is_zero()) layers_.erase(it);
    }
  }

  bool x_independent() const {
    for (const auto& [l, h] : layers_)
      for (const auto& [b, c] : h.monomials())
        if (!c.x_independent()) return false;
    return true;
  }

  // True when the represented function is a polynomial in xi: every radial
  // exponent d - l is even and nonnegative.
  bool is_polynomial() const {
    for (const auto& [l, h] : layers_) {
      int m = degree_ - l;
      if (m < 0 || m % 2 != 0) return false;
    }
    return true;
  }

  HomogeneousComponent operator-() const {
    HomogeneousComponent r(n_, degree_);
    for (const auto& [l, h] : layers_) r.layers_.emplace(l, -h);
    return r;
  }
  HomogeneousComponent& operator+=(const HomogeneousComponent& o) {
    if (n_ != o.n_) throw precondition_error("dimension mismatch");
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    if (degree_ != o.degree_) throw precondition_error("mixed homogeneity degrees");
    for (const auto& [l, h] : o.layers_) add_layer(l, h);
    return *this;
  }
  HomogeneousComponent& operator-=(const HomogeneousComponent& o) { return *this += -o; }
  friend HomogeneousComponent operator+(HomogeneousComponent a, const HomogeneousComponent& b) {
    return a += b;
  }
  friend HomogeneousComponent operator-(HomogeneousComponent a, const HomogeneousComponent& b) {
    return a -= b;
  }
  friend HomogeneousComponent operator*(const HomogeneousComponent& a, const ExactScalar& s) {
    HomogeneousComponent r(a.n_, a.degree_);
    for (const auto& [l, h] : a.layers_) r.add_layer(l, h * s);
    return r;
  }
  friend HomogeneousComponent operator*(const HomogeneousComponent& a, const TrigPoly& t) {
    HomogeneousComponent r(a.n_, a.degree_);
    for (const auto& [l, h] : a.layers_) r.add_layer(l, h * t);
    return r;
  }

  friend bool operator==(const HomogeneousComponent& a, const HomogeneousComponent& b) {
    if (a.n_ != b.n_ || a.layers_ != b.layers_) return false;
    return a.is_zero() || a.degree_ == b.degree_;
  }
  friend bool operator!=(const HomogeneousComponent& a, const HomogeneousComponent& b) {
    return !(a == b);
  }

  // Same layer data reattached at a different total degree (the radial powers
  // |xi|^{d-l} change accordingly).
  HomogeneousComponent with_degree(int d) const {
    HomogeneousComponent r(n_, d);
    r.layers_ = layers_;
    return r;
  }

  // Coefficient derivative d/dx_axis; leaves the xi structure alone, so no
  // recanonicalization is needed.
  HomogeneousComponent x_derivative(int axis) const {
    HomogeneousComponent r(n_, degree_);
    for (const auto& [l, h] : layers_) {
      XiPoly dh(n_, l);
      for (const auto& [b, c] : h.monomials()) dh.add_term(b, oddsym::x_derivative(c, axis));
      r.add_layer(l, dh);
    }
    return r;
  }

 private:
  int n_;
  int degree_;
  std::map<int, XiPoly> layers_;
};

// Pointwise product; degrees add, layer products are recanonicalized.
inline HomogeneousComponent comp_mul(const HomogeneousComponent& a, const HomogeneousComponent& b) {
  if (a.dim() != b.dim()) throw precondition_error("dimension mismatch");
  HomogeneousComponent r(a.dim(), a.degree() + b.degree());
  std::map<int, XiPoly> raw;  // polynomial degree -> accumulated product
  for (const auto& [l1, h1] : a.layers())
    for (const auto& [l2, h2] : b.layers()) {
      XiPoly q = h1 * h2;
      auto [it, inserted] = raw.try_emplace(l1 + l2, XiPoly(a.dim(), l1 + l2));
      it->second += q;
    }
  for (const auto& [w, q] : raw)
    for (auto& [l, h] : harmonic_layers(q)) r.add_layer(l, h);
  return r;
}

// d/dxi_axis of P|xi|^s = (dP)|xi|^s + s xi_axis P |xi|^{s-2}; the first part
// of each layer stays harmonic, the second is recanonicalized.
inline HomogeneousComponent xi_derivative(const HomogeneousComponent& c, int axis) {
  if (axis < 0 || axis >= c.dim()) throw precondition_error("axis out of range");
  HomogeneousComponent r(c.dim(), c.degree() - 1);
  std::map<int, XiPoly> raw;
  for (const auto& [l, h] : c.layers()) {
    XiPoly dh = h.derivative(axis);
    if (!dh.is_zero()) {
      auto [it, inserted] = raw.try_emplace(l - 1, XiPoly(c.dim(), l - 1));
      it->second += dh;
    }
    int s = c.degree() - l;
    if (s != 0) {
      Beta e{0, 0, 0};
      e[axis] = 1;
      XiPoly lifted = h * XiPoly::monomial(c.dim(), e, TrigPoly::constant(c.dim(), ExactScalar(s)));
      auto [it, inserted] = raw.try_emplace(l + 1, XiPoly(c.dim(), l + 1));
      it->second += lifted;
    }
  }
  for (const auto& [w, q] : raw)
    for (auto& [l, h] : harmonic_layers(q)) r.add_layer(l, h);
  return r;
}

// Parity required of a degree-d component of a symbol with the parity of a
// differential operator: sigma_d(x,-xi) = (-1)^d sigma_d(x,xi).  On the
// canonical form this reads: every nonempty layer l has l = d (mod 2).
inline bool parity_ok(const HomogeneousComponent& c) {
  for (const auto& [l, h] : c.layers())
    if (((l - c.degree()) % 2 + 2) % 2 != 0) return false;
  return true;
}

// Unit sphere volumes: |S^0| = 2, |S^2| = 4 pi.
inline ExactScalar sphere_volume(int n) {
  check_dimension(n);
  if (n == 1) return ExactScalar(2);
  return ExactScalar::term(GaussRational(4), 1);
}

// Integral over the unit sphere of the restriction of c.  Harmonics of degree
// >= 1 integrate to zero, so only the layer-0 constant survives, weighted by
// the sphere volume.  The result is still a function of x.
inline TrigPoly sphere_integral(const HomogeneousComponent& c) {
  TrigPoly base = c.layer(0).coeff({0, 0, 0});
  return base * sphere_volume(c.dim());
}

// Inverse of the sphere Laplacian on mean-zero data: restricted to degree-l
// harmonics the operator acts by l(l+n-2) (with the sign convention fixed
// operationally by the decomposition round trip: -sum_i d_i d_i applied to
// |xi|^{2-n} times the result reproduces the input).  Layer 0 must be empty;
// n = 1 is refused because the S^0 Laplacian is identically zero.
inline HomogeneousComponent sphere_laplacian_inverse(const HomogeneousComponent& c) {
  if (c.dim() < 3)
    throw precondition_error("unsupported-dimension: sphere Laplacian inverse needs n >= 3");
  HomogeneousComponent r(c.dim(), c.degree());
  for (const auto& [l, h] : c.layers()) {
    if (l == 0) throw precondition_error("nonzero spherical mean");
    Rational eig(1, static_cast<long long>(l) * (l + c.dim() - 2));
    r.add_layer(l, h * ExactScalar(eig));
  }
  return r;
}

}  // namespace oddsym
