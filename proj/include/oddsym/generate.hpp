#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/functionals.hpp"
#include "oddsym/harmonic.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/symbol.hpp"
#include "oddsym/trigpoly.hpp"

// Seeded random symbols for the property suites.  All draws go through
// explicit modulo arithmetic on mt19937_64 output, never through
// distribution objects, so the same seed gives the same symbol everywhere.

namespace oddsym {

namespace detail {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int below(int m) { return static_cast<int>(eng() % static_cast<std::uint64_t>(m)); }
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int num, int den) { return below(den) < num; }
};

inline ExactScalar random_scalar(Rng& r) {
  Rational q(r.range(1, 6) * (r.chance(1, 2) ? 1 : -1), r.range(1, 3));
  GaussRational g = r.chance(1, 4) ? GaussRational(Rational(0), q) : GaussRational(q, Rational(0));
  int s = r.chance(1, 5) ? (r.chance(1, 2) ? 1 : -1) : 0;
  return ExactScalar::term(g, s);
}

inline TrigPoly random_trig(Rng& r, int n, int max_freq) {
  TrigPoly p(n);
  const int modes = r.range(1, 2);
  for (int m = 0; m < modes; ++m) {
    Freq k{0, 0, 0};
    for (int i = 0; i < n; ++i) k[i] = max_freq > 0 ? r.range(-max_freq, max_freq) : 0;
    p.add_term(k, random_scalar(r));
  }
  return p;
}

}  // namespace detail

// Deterministic random classical symbol.  Components are drawn as monomial
// radial terms and canonicalized, which keeps the xi-parity of each draw, so
// requesting the odd class restricts the sampled polynomial degrees to
// l == d (mod 2) and nothing else.
inline FormalSymbol gen_random_symbol(std::uint64_t seed, int n, int order, int floor,
                                      int max_freq, int max_layer, bool odd_class) {
  check_dimension(n);
  if (floor > order) throw precondition_error("floor above order");
  if (max_freq < 0) throw precondition_error("parameter bounds: max_freq must be nonnegative");
  if (max_layer < 0) throw precondition_error("parameter bounds: max_layer must be nonnegative");
  detail::Rng rng(seed);
  FormalSymbol s(n, order, floor, true);
  for (int d = floor; d <= order; ++d) {
    const bool forced = (d == order);
    if (!forced && rng.chance(1, 8)) continue;
    // polynomial degrees compatible with this component
    std::vector<int> degrees;
    for (int p = 0; p <= max_layer; ++p) {
      if (odd_class && ((p - d) % 2 + 2) % 2 != 0) continue;
      degrees.push_back(p);
    }
    if (degrees.empty()) continue;
    std::vector<RadialTerm> terms;
    const int count = rng.range(1, 3);
    for (int t = 0; t < count; ++t) {
      const int p = degrees[rng.below(static_cast<int>(degrees.size()))];
      Beta b{0, 0, 0};
      int rest = p;
      for (int i = 0; i + 1 < n; ++i) {
        b[i] = rng.below(rest + 1);
        rest -= b[i];
      }
      b[n - 1] = rest;
      terms.push_back({b, d - p, detail::random_trig(rng, n, max_freq)});
    }
    HomogeneousComponent c = HomogeneousComponent::canonicalize(n, terms);
    s.set_component(d, c);
  }
  return s;
}

// Deterministic random generalized-leading-symbol spec for a given order.
inline RhoSpec gen_random_rho(std::uint64_t seed, int n, int order, int max_freq, int max_layer) {
  check_dimension(n);
  if (order > 0) throw precondition_error("functional order must be at most 0");
  detail::Rng rng(seed);
  RhoSpec rho;
  rho.n = n;
  rho.order = order;
  for (int d = 2 * order; d <= order; ++d) {
    const bool forced = (d == order);
    if (!forced && rng.chance(1, 2)) continue;
    const int count = rng.range(1, 2);
    for (int t = 0; t < count; ++t) {
      RhoPairing p;
      for (int i = 0; i < n; ++i)
        p.freq[i] = max_freq > 0 ? rng.range(-max_freq, max_freq) : 0;
      p.layer = rng.below(std::min(max_layer, n == 1 ? 1 : max_layer) + 1);
      int rest = p.layer;
      for (int i = 0; i + 1 < n; ++i) {
        p.beta[i] = rng.below(rest + 1);
        rest -= p.beta[i];
      }
      p.beta[n - 1] = rest;
      p.weight = detail::random_scalar(rng);
      rho.pairings[d].push_back(p);
    }
  }
  validate_rho(rho);
  return rho;
}

}  // namespace oddsym
