#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/trigpoly.hpp"

namespace oddsym {

// Formal expansion sigma = sum_{floor <= d <= order} sigma_d with sigma_d
// positively homogeneous of degree d in xi.  `exact` records that the stored
// components are the whole symbol: there is no unspecified tail below the
// floor.  For an inexact symbol the components within [floor, order] are
// still exact values; only the part below the floor is unknown.
class FormalSymbol {
 public:
  FormalSymbol(int n, int order, int floor, bool exact)
      : n_(n), order_(order), floor_(floor), exact_(exact) {
    check_dimension(n);
    if (floor > order) throw precondition_error("floor above order");
  }

  static FormalSymbol one(int n) { return radial_power(n, 0); }

  // u(x) |xi|^a as an exact symbol of order a; u defaults to 1.
  static FormalSymbol radial_power(int n, int a) {
    return radial_power(n, a, TrigPoly::constant(n, ExactScalar(1)));
  }
  static FormalSymbol radial_power(int n, int a, TrigPoly u) {
    FormalSymbol s(n, a, a, true);
    s.set_component(a, HomogeneousComponent::radial(n, a, std::move(u)));
    return s;
  }

  int dim() const { return n_; }
  int order() const { return order_; }
  int floor() const { return floor_; }
  bool exact() const { return exact_; }
  const std::map<int, HomogeneousComponent>& components() const { return comps_; }

  bool is_zero() const { return comps_.empty(); }

  HomogeneousComponent component(int d) const {
    auto it = comps_.find(d);
    return it == comps_.end() ? HomogeneousComponent(n_, d) : it->second;
  }

  void set_component(int d, HomogeneousComponent c) {
    if (d < floor_ || d > order_) throw precondition_error("component degree outside [floor, order]");
    if (c.dim() != n_) throw precondition_error("dimension mismatch");
    if (c.is_zero()) {
      comps_.erase(d);
      return;
    }
    if (c.degree() != d) throw precondition_error("component degree mismatch");
    comps_.insert_or_assign(d, std::move(c));
  }

  void add_component(int d, const HomogeneousComponent& c) {
    if (c.is_zero()) return;
    auto it = comps_.find(d);
    if (it == comps_.end()) {
      set_component(d, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  FormalSymbol operator-() const {
    FormalSymbol r(n_, order_, floor_, exact_);
    for (const auto& [d, c] : comps_) r.comps_.emplace(d, -c);
    return r;
  }
  friend FormalSymbol operator*(const FormalSymbol& s, const ExactScalar& a) {
    FormalSymbol r(s.n_, s.order_, s.floor_, s.exact_);
    for (const auto& [d, c] : s.comps_) r.add_component(d, c * a);
    return r;
  }

  // Declared order lowered to the highest degree actually present (declared
  // order is only an upper bound, so this is always sound).
  FormalSymbol tightened() const {
    int top = comps_.empty() ? floor_ : comps_.rbegin()->first;
    FormalSymbol r(n_, top, floor_, exact_);
    r.comps_ = comps_;
    return r;
  }

  // Change the floor.  Lowering is free for an exact symbol (the components
  // below the old floor are genuinely zero) and forbidden for an inexact one
  // (they are unknown).  Raising it discards the components underneath; for
  // an exact symbol the result is the exact truncation.
  FormalSymbol with_floor(int f) const {
    if (f > order_) throw precondition_error("floor above order");
    if (!exact_ && f < floor_)
      throw precondition_error("insufficient-depth: cannot lower the floor of an inexact symbol");
    FormalSymbol r(n_, order_, f, exact_);
    for (const auto& [d, c] : comps_)
      if (d >= f) r.comps_.emplace(d, c);
    return r;
  }

  friend bool operator==(const FormalSymbol& a, const FormalSymbol& b) {
    return a.n_ == b.n_ && a.order_ == b.order_ && a.floor_ == b.floor_ &&
           a.exact_ == b.exact_ && a.comps_ == b.comps_;
  }
  friend bool operator!=(const FormalSymbol& a, const FormalSymbol& b) { return !(a == b); }

 private:
  int n_;
  int order_;
  int floor_;
  bool exact_;
  std::map<int, HomogeneousComponent> comps_;
};

// Same stored components, bookkeeping fields ignored.
inline bool components_equal(const FormalSymbol& a, const FormalSymbol& b) {
  return a.dim() == b.dim() && a.components() == b.components();
}

inline bool is_xi_polynomial(const FormalSymbol& s) {
  for (const auto& [d, c] : s.components())
    if (!c.is_polynomial()) return false;
  return true;
}

inline bool is_x_independent(const FormalSymbol& s) {
  for (const auto& [d, c] : s.components())
    if (!c.x_independent()) return false;
  return true;
}

inline bool is_odd_class(const FormalSymbol& s) {
  for (const auto& [d, c] : s.components())
    if (!parity_ok(c)) return false;
  return true;
}

inline int symbol_max_freq(const FormalSymbol& s) {
  int m = 0;
  for (const auto& [d, c] : s.components())
    for (const auto& [l, h] : c.layers())
      for (const auto& [b, t] : h.monomials()) m = std::max(m, t.max_abs_freq());
  return m;
}

// Highest nonzero component; the zero component of degree `order` if none.
inline HomogeneousComponent leading_symbol(const FormalSymbol& s) {
  if (s.components().empty()) return HomogeneousComponent(s.dim(), s.order());
  return s.components().rbegin()->second;
}

// Weighted sum.  The floor is the depth to which the sum is known: the
// stored floor of an inexact operand, the deeper of the two when both are
// exact (an exact operand hides nothing below its floor).
inline FormalSymbol sym_add(const FormalSymbol& a, const FormalSymbol& b, const ExactScalar& wa,
                            const ExactScalar& wb) {
  if (a.dim() != b.dim()) throw precondition_error("dimension mismatch");
  int order = std::max(a.order(), b.order());
  bool exact = a.exact() && b.exact();
  int floor;
  if (exact)
    floor = std::min(a.floor(), b.floor());
  else if (!a.exact() && !b.exact())
    floor = std::max(a.floor(), b.floor());
  else
    floor = a.exact() ? b.floor() : a.floor();
  FormalSymbol r(a.dim(), order, floor, exact);
  for (const auto& [d, c] : a.components())
    if (d >= floor) r.add_component(d, c * wa);
  for (const auto& [d, c] : b.components())
    if (d >= floor) r.add_component(d, c * wb);
  return r;
}

inline FormalSymbol sym_add(const FormalSymbol& a, const FormalSymbol& b) {
  return sym_add(a, b, ExactScalar(1), ExactScalar(1));
}

inline FormalSymbol sym_sub(const FormalSymbol& a, const FormalSymbol& b) {
  return sym_add(a, -b);
}

// Componentwise d/dxi_axis; every degree drops by one.
inline FormalSymbol xi_derivative(const FormalSymbol& s, int axis) {
  FormalSymbol r(s.dim(), s.order() - 1, s.floor() - 1, s.exact());
  for (const auto& [d, c] : s.components()) r.add_component(d - 1, xi_derivative(c, axis));
  return r;
}

// Symbol of the commutator with the coordinate function x_axis: i d/dxi_axis.
inline FormalSymbol coordinate_bracket(int axis, const FormalSymbol& s) {
  return xi_derivative(s, axis) * ExactScalar::i();
}

// Componentwise d/dx_axis; degrees are unchanged.
inline FormalSymbol x_derivative(const FormalSymbol& s, int axis) {
  FormalSymbol r(s.dim(), s.order(), s.floor(), s.exact());
  for (const auto& [d, c] : s.components()) r.add_component(d, c.x_derivative(axis));
  return r;
}

namespace detail {

inline std::vector<Beta> alphas_of_weight(int n, int w) {
  std::vector<Beta> out;
  if (n == 1) {
    out.push_back({w, 0, 0});
    return out;
  }
  for (int a = w; a >= 0; --a)
    for (int b = w - a; b >= 0; --b) out.push_back({a, b, w - a - b});
  return out;
}

inline Rational factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

// (-i)^w / alpha! for |alpha| = w.
inline ExactScalar alpha_weight(const Beta& alpha, int w) {
  Rational inv = Rational(1) / (factorial(alpha[0]) * factorial(alpha[1]) * factorial(alpha[2]));
  GaussRational c;
  switch (w & 3) {
    case 0: c = GaussRational(inv, Rational(0)); break;
    case 1: c = GaussRational(Rational(0), -inv); break;
    case 2: c = GaussRational(-inv, Rational(0)); break;
    default: c = GaussRational(Rational(0), inv); break;
  }
  return ExactScalar::term(c);
}

// Memoized iterated derivatives of one component, in xi or in x.
class ComponentDerivatives {
 public:
  ComponentDerivatives(HomogeneousComponent base, bool in_xi) : in_xi_(in_xi) {
    table_.emplace(Beta{0, 0, 0}, std::move(base));
  }

  const HomogeneousComponent& get(const Beta& alpha) {
    auto it = table_.find(alpha);
    if (it != table_.end()) return it->second;
    int j = 0;
    while (alpha[j] == 0) ++j;
    Beta prev = alpha;
    prev[j] -= 1;
    const HomogeneousComponent& p = get(prev);
    HomogeneousComponent d = in_xi_ ? xi_derivative(p, j) : p.x_derivative(j);
    return table_.emplace(alpha, std::move(d)).first->second;
  }

 private:
  bool in_xi_;
  std::map<Beta, HomogeneousComponent> table_;
};

}  // namespace detail

// Composition in the symbol calculus:
//   (a # b)_d = sum over d1 + d2 - |alpha| = d of
//               ((-i)^|alpha| / alpha!) (d_xi^alpha a_{d1}) (d_x^alpha b_{d2}).
// Order adds.  The floor of the result is the depth to which the sum is
// trustworthy: a contribution to degree d needs a_{d1} with d1 >= d - b.order,
// so an unknown tail below f1 contaminates degrees below f1 + b.order, and
// symmetrically; exact factors contaminate nothing.  When both factors are
// exact the series usually still fails to terminate and the result is the
// truncation at max(f1 + a2, a1 + f2); it terminates, and the result is
// exact, when the left factor is polynomial in xi or the right factor does
// not depend on x.
//
// keep_floor lets a caller that will truncate the product anyway say so up
// front; degrees below it are never computed.  The result is identical to
// star followed by with_floor(keep_floor).
inline FormalSymbol star(const FormalSymbol& a, const FormalSymbol& b, int keep_floor = INT_MIN) {
  if (a.dim() != b.dim()) throw precondition_error("dimension mismatch");
  const int n = a.dim();
  const int order = a.order() + b.order();
  const bool terminating =
      a.exact() && b.exact() && (is_xi_polynomial(a) || is_x_independent(b));

  int floor = 0;
  if (!terminating) {
    std::optional<int> c1, c2;
    if (!a.exact()) c1 = a.floor() + b.order();
    if (!b.exact()) c2 = a.order() + b.floor();
    if (c1 && c2)
      floor = std::max(*c1, *c2);
    else if (c1)
      floor = *c1;
    else if (c2)
      floor = *c2;
    else
      floor = std::max(a.floor() + b.order(), a.order() + b.floor());
    floor = std::max(floor, keep_floor);
  }

  std::map<int, detail::ComponentDerivatives> da, db;
  for (const auto& [d, c] : a.components()) da.emplace(d, detail::ComponentDerivatives(c, true));
  for (const auto& [d, c] : b.components()) db.emplace(d, detail::ComponentDerivatives(c, false));

  std::map<int, HomogeneousComponent> acc;
  for (auto& [d1, tab1] : da) {
    const bool poly1 = a.components().at(d1).is_polynomial();
    for (auto& [d2, tab2] : db) {
      if (d1 + d2 < keep_floor) continue;
      const bool xind2 = b.components().at(d2).x_independent();
      int wmax;
      if (terminating) {
        wmax = poly1 ? d1 : INT_MAX;
        if (xind2) wmax = std::min(wmax, 0);
        if (keep_floor != INT_MIN) wmax = std::min(wmax, d1 + d2 - keep_floor);
      } else {
        wmax = d1 + d2 - floor;
        if (poly1) wmax = std::min(wmax, d1);
        if (xind2) wmax = std::min(wmax, 0);
      }
      for (int w = 0; w <= wmax; ++w) {
        bool any_left = false, any_right = false;
        for (const Beta& alpha : detail::alphas_of_weight(n, w)) {
          const HomogeneousComponent& x1 = tab1.get(alpha);
          const HomogeneousComponent& x2 = tab2.get(alpha);
          if (!x1.is_zero()) any_left = true;
          if (!x2.is_zero()) any_right = true;
          if (x1.is_zero() || x2.is_zero()) continue;
          HomogeneousComponent term = comp_mul(x1, x2) * detail::alpha_weight(alpha, w);
          if (term.is_zero()) continue;
          int d = d1 + d2 - w;
          auto [it, inserted] = acc.try_emplace(d, a.dim(), d);
          it->second += term;
        }
        if (!any_left || !any_right) break;  // iterated derivatives stay zero
      }
    }
  }

  if (terminating) {
    int lowest = order;
    for (const auto& [d, c] : acc)
      if (!c.is_zero()) lowest = std::min(lowest, d);
    // if the cap may have cut real support, the cap is the honest floor
    if (a.floor() + b.floor() < keep_floor) lowest = keep_floor;
    FormalSymbol r(n, order, lowest, true);
    for (const auto& [d, c] : acc) r.add_component(d, c);
    return r;
  }
  FormalSymbol r(n, order, floor, false);
  for (const auto& [d, c] : acc)
    if (d >= floor) r.add_component(d, c);
  return r;
}

// a # b - b # a.  The top components multiply pointwise and cancel, so the
// declared order genuinely drops; tightening records that.
inline FormalSymbol commutator(const FormalSymbol& a, const FormalSymbol& b) {
  return sym_sub(star(a, b), star(b, a)).tightened();
}

// Expansion of an inverse: given sigma with invertible leading part
// u(x)|xi|^a, produce b of order -a with components down to target_floor such
// that (sigma # b - 1) has no component of degree >= a + target_floor.  The
// recursion solves the degree -k component of sigma # b = 1 for b_{-a-k}:
//   b_0 = u^{-1} |xi|^{-a},
//   b_{-a-k} = -b_0 * sum_{j + k' + |alpha| = k, k' < k}
//              ((-i)^|alpha|/alpha!) (d_xi^alpha sigma_{a-j}) (d_x^alpha b_{-a-k'}).
// The true inverse has an infinite tail, so the result is never exact.
inline FormalSymbol parametrix(const FormalSymbol& s, int target_floor) {
  const int n = s.dim();
  const int a = s.order();
  if (target_floor > -a) throw precondition_error("parametrix target floor must be at most -order");

  HomogeneousComponent lead = s.component(a);
  const auto& layers = lead.layers();
  if (layers.size() != 1 || layers.begin()->first != 0)
    throw precondition_error("unsupported-leading: leading component is not a radial power");
  TrigPoly u = layers.begin()->second.coeff({0, 0, 0});
  TrigPoly uinv(n);
  try {
    uinv = invert_unit(u);
  } catch (const precondition_error&) {
    throw precondition_error("unsupported-leading: leading coefficient is not a monomial unit");
  }

  const int depth = -a - target_floor;  // largest k needed
  if (!s.exact() && s.floor() > a - depth)
    throw precondition_error("insufficient-depth: symbol floor too high for requested parametrix depth");

  std::map<int, detail::ComponentDerivatives> ds;
  for (const auto& [d, c] : s.components()) ds.emplace(d, detail::ComponentDerivatives(c, true));

  HomogeneousComponent b0 = HomogeneousComponent::radial(n, -a, uinv);
  std::map<int, HomogeneousComponent> bc;  // keyed by k, component degree -a-k
  std::map<int, detail::ComponentDerivatives> dbx;
  bc.emplace(0, b0);
  dbx.emplace(0, detail::ComponentDerivatives(b0, false));

  for (int k = 1; k <= depth; ++k) {
    HomogeneousComponent acc(n, -k);
    for (int j = 0; j <= k; ++j) {
      auto sit = ds.find(a - j);
      if (sit == ds.end()) continue;
      for (int kp = 0; kp <= k - j && kp < k; ++kp) {
        int w = k - j - kp;
        auto bit = dbx.find(kp);
        if (bit == dbx.end()) continue;
        for (const Beta& alpha : detail::alphas_of_weight(n, w)) {
          const HomogeneousComponent& x1 = sit->second.get(alpha);
          if (x1.is_zero()) continue;
          const HomogeneousComponent& x2 = bit->second.get(alpha);
          if (x2.is_zero()) continue;
          acc += comp_mul(x1, x2) * detail::alpha_weight(alpha, w);
        }
      }
    }
    HomogeneousComponent bk = -comp_mul(b0, acc);
    if (!bk.is_zero()) {
      bc.emplace(k, bk);
      dbx.emplace(k, detail::ComponentDerivatives(bk, false));
    }
  }

  FormalSymbol r(n, -a, target_floor, false);
  for (const auto& [k, c] : bc) r.add_component(-a - k, c);
  return r;
}

}  // namespace oddsym
