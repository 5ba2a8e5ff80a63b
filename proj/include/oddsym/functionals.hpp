#pragma once

#include <map>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/symbol.hpp"
#include "oddsym/trigpoly.hpp"

namespace oddsym {

// Scalar result of a linear functional together with how much of the symbol
// it saw.  exact = false marks a partial value: only degrees >= floor_used
// contributed, and a deeper floor would refine it.
struct FunctionalValue {
  ExactScalar value;
  int floor_used = 0;
  bool exact = true;
};

// One coefficient extraction: weight times the coefficient of the monomial
// xi^beta (in the harmonic layer |beta|) at torus frequency freq.
struct RhoPairing {
  Freq freq{0, 0, 0};
  int layer = 0;
  Beta beta{0, 0, 0};
  ExactScalar weight;
};

// A generalized leading-symbol functional: finitely many coefficient
// extractions from the degrees in [2*order, order].  Restricting the degrees
// to that window is what makes the induced functional factor through the
// quotient killing everything of degree <= 2*order - 1, which in turn kills
// commutators of symbols of order <= order.
struct RhoSpec {
  int n = 3;
  int order = 0;  // <= 0
  std::map<int, std::vector<RhoPairing>> pairings;
};

inline void validate_rho(const RhoSpec& rho) {
  check_dimension(rho.n);
  if (rho.order > 0) throw precondition_error("functional order must be at most 0");
  for (const auto& [d, list] : rho.pairings) {
    if (d < 2 * rho.order || d > rho.order)
      throw precondition_error("pairing degree outside [2*order, order]");
    for (const auto& p : list) {
      if (p.layer < 0 || beta_weight(p.beta) != p.layer)
        throw precondition_error("pairing monomial does not match its layer");
      for (int j = rho.n; j < 3; ++j)
        if (p.freq[j] != 0 || p.beta[j] != 0)
          throw precondition_error("pairing data beyond dimension");
      for (int j = 0; j < 3; ++j)
        if (p.beta[j] < 0) throw precondition_error("negative monomial exponent");
    }
  }
}

// The normalized double mean in every degree of the window: the coefficient
// at frequency zero, layer zero.  (The torus and sphere volume factors cancel
// against the normalization, leaving plain coefficient extraction.)
inline RhoSpec default_rho(int n, int order) {
  RhoSpec rho;
  rho.n = n;
  rho.order = order;
  for (int d = 2 * order; d <= order; ++d)
    rho.pairings[d] = {RhoPairing{{0, 0, 0}, 0, {0, 0, 0}, ExactScalar(1)}};
  validate_rho(rho);
  return rho;
}

// Integral of the degree -n component over the unit cosphere bundle.  Only
// one component enters, so the value is exact whenever that component is
// retained; the unknown tail of an inexact symbol never reaches it.
inline FunctionalValue residue(const FormalSymbol& s) {
  const int n = s.dim();
  if (!s.exact() && s.floor() > -n)
    throw precondition_error("insufficient-depth: residue needs the degree -n component");
  ExactScalar v = torus_integral(sphere_integral(s.component(-n)));
  return {v, s.floor(), true};
}

// Finite part in R of the integral of the symbol over 1 <= |xi| <= R, as a
// function of x.  Degree d != -n integrates radially to (R^{d+n} - 1)/(d+n);
// the finite part keeps -1/(d+n).  Degree -n integrates to log R: pure
// divergence, no finite part.  For an inexact symbol this is the partial
// density over retained degrees (callers read the flags off the symbol).
inline TrigPoly cutoff_integral(const FormalSymbol& s) {
  const int n = s.dim();
  TrigPoly density(n);
  for (const auto& [d, c] : s.components()) {
    if (d == -n) continue;
    density += sphere_integral(c) * ExactScalar(Rational(-1) / (d + n));
  }
  return density;
}

// (2 pi)^{-n} times the torus integral of the cut-off density, which is just
// its zero-frequency coefficient.
inline FunctionalValue canonical_trace(const FormalSymbol& s) {
  TrigPoly density = cutoff_integral(s);
  return {density.coeff({0, 0, 0}), s.floor(), s.exact()};
}

// Boundary functional: the finite part of the integral of d/dxi_axis of the
// sharp-convention function of tau.  All interior terms cancel; what survives
// is the flux through the unit sphere of the degree 1-n component,
// i.e. the sphere integral of tau_{1-n} * omega_axis.
inline TrigPoly stokes_boundary(const FormalSymbol& tau, int axis) {
  const int n = tau.dim();
  if (axis < 0 || axis >= n) throw precondition_error("axis out of range");
  if (!tau.exact()) throw precondition_error("stokes boundary requires an exact symbol");
  if (tau.floor() > 1 - n)
    throw precondition_error("insufficient-depth: stokes boundary needs the degree 1-n component");
  Beta e{0, 0, 0};
  e[axis] = 1;
  HomogeneousComponent omega =
      HomogeneousComponent::monomial(n, 0, e, TrigPoly::constant(n, ExactScalar(1)));
  return sphere_integral(comp_mul(tau.component(1 - n), omega));
}

// Sum of the pairings applied to the symbol's coefficients.  Components above
// the functional's order are forbidden; everything below the window simply
// never gets addressed, which is the quotient property.
inline FunctionalValue leading_trace(const FormalSymbol& s, const RhoSpec& rho) {
  validate_rho(rho);
  if (s.dim() != rho.n) throw precondition_error("dimension mismatch");
  if (s.order() > rho.order)
    throw precondition_error("symbol order exceeds the functional's order");
  ExactScalar v;
  for (const auto& [d, list] : rho.pairings) {
    HomogeneousComponent c = s.component(d);
    for (const auto& p : list) v += c.layer(p.layer).coeff(p.beta).coeff(p.freq) * p.weight;
  }
  return {v, s.floor(), s.exact()};
}

}  // namespace oddsym
