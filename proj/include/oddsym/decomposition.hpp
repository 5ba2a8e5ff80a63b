#pragma once

#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/symbol.hpp"

namespace oddsym {

// sigma written as a sum of xi-derivatives: sum_i xi_derivative(tau[i], i)
// reproduces sigma componentwise for all degrees >= residual_floor.
struct DerivativeDecomposition {
  std::vector<FormalSymbol> tau;
  int residual_floor = 0;
};

// Write an odd-class symbol as sum_i d/dxi_i tau_i with odd-class tau_i of
// order one higher.  Away from degree -n Euler's identity does it:
//   sum_i d_i (xi_i sigma_d) = (n + d) sigma_d,
// so tau_{i,d+1} = xi_i sigma_d / (d+n).  At degree -n that denominator dies;
// instead solve the sphere Laplacian: with h the inverse of sigma_{-n}'s
// restriction (solvable because odd-class parity empties the spherical mean)
// and b the same layers carried by |xi|^{2-n}, one has -Lap b = sigma_{-n},
// i.e. tau_{i,1-n} = -d_i b.
inline DerivativeDecomposition decompose(const FormalSymbol& s) {
  const int n = s.dim();
  if (n < 3) throw precondition_error("unsupported-dimension: the decomposition needs n >= 3");
  if (!is_odd_class(s)) throw precondition_error("parity error: decomposition needs an odd-class symbol");

  std::vector<FormalSymbol> tau;
  tau.reserve(n);
  for (int i = 0; i < n; ++i) tau.emplace_back(n, s.order() + 1, s.floor() + 1, s.exact());

  for (const auto& [d, c] : s.components()) {
    if (d != -n) {
      ExactScalar w(Rational(1) / (d + n));
      for (int i = 0; i < n; ++i) {
        Beta e{0, 0, 0};
        e[i] = 1;
        HomogeneousComponent xi_i =
            HomogeneousComponent::monomial(n, 1, e, TrigPoly::constant(n, ExactScalar(1)));
        tau[i].add_component(d + 1, comp_mul(c, xi_i) * w);
      }
    } else {
      HomogeneousComponent h = sphere_laplacian_inverse(c);
      HomogeneousComponent b = h.with_degree(2 - n);
      for (int i = 0; i < n; ++i) tau[i].add_component(1 - n, -xi_derivative(b, i));
    }
  }
  return {tau, s.floor()};
}

// The decomposition of everything below the top: decompose applied to the
// symbol with its highest nonzero component removed.
inline DerivativeDecomposition decompose_below_leading(const FormalSymbol& s) {
  FormalSymbol rest(s.dim(), s.order(), s.floor(), s.exact());
  if (!s.components().empty()) {
    int top = s.components().rbegin()->first;
    for (const auto& [d, c] : s.components())
      if (d != top) rest.add_component(d, c);
  }
  return decompose(rest);
}

// sum_i xi_derivative(tau[i], i), the round-trip reconstruction.
inline FormalSymbol recompose(const DerivativeDecomposition& dec) {
  if (dec.tau.empty()) throw precondition_error("empty decomposition");
  FormalSymbol acc = xi_derivative(dec.tau[0], 0);
  for (std::size_t i = 1; i < dec.tau.size(); ++i)
    acc = sym_add(acc, xi_derivative(dec.tau[i], static_cast<int>(i)));
  return acc;
}

}  // namespace oddsym
