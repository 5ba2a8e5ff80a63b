#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "oddsym/errors.hpp"
#include "oddsym/functionals.hpp"
#include "oddsym/scalar.hpp"
#include "oddsym/symbol.hpp"

namespace oddsym {

// I + A for a symbol A of negative order.  Only the perturbation is stored.
struct GroupElement {
  FormalSymbol base;

  explicit GroupElement(FormalSymbol b) : base(std::move(b)) {
    if (base.order() > -1)
      throw precondition_error("unsupported-order: group elements need order <= -1");
  }
};

// (I+A)(I+B) = I + (A + B + A*B).
inline GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
  return GroupElement(sym_add(sym_add(g.base, h.base), star(g.base, h.base)));
}

// Exp(A) - I = sum_{k>=1} A^k / k!.  A star power of k factors has order
// k * (top degree of A), so once that falls below the floor the power
// contributes nothing to retained degrees and the series stops.  The true
// exponential continues below the floor, hence the result is never exact.
inline GroupElement exp_symbol(const FormalSymbol& A) {
  if (A.order() > -1)
    throw precondition_error("unsupported-order: exponential needs order <= -1");
  const int f = A.floor();
  FormalSymbol result(A.dim(), A.order(), f, false);
  if (A.is_zero()) return GroupElement(std::move(result));

  const int atop = A.components().rbegin()->first;
  const int kmax = f / atop;  // both negative
  FormalSymbol power = A;
  Rational kfact(1);
  for (int k = 1; k <= kmax; ++k) {
    kfact *= k;
    ExactScalar w(Rational(1) / kfact);
    for (const auto& [d, c] : power.components())
      if (d >= f) result.add_component(d, c * w);
    if (k < kmax) power = star(power, A, f);
  }
  return GroupElement(std::move(result));
}

// Log(I+B) = sum_{k>=1} (-1)^{k+1} B^k / k, truncated the same way.
inline FormalSymbol log_symbol(const GroupElement& g) {
  const FormalSymbol& B = g.base;
  const int f = B.floor();
  FormalSymbol result(B.dim(), B.order(), f, false);
  if (B.is_zero()) return result;

  const int btop = B.components().rbegin()->first;
  const int kmax = f / btop;
  FormalSymbol power = B;
  for (int k = 1; k <= kmax; ++k) {
    ExactScalar w(k % 2 == 1 ? Rational(1, k) : Rational(-1, k));
    for (const auto& [d, c] : power.components())
      if (d >= f) result.add_component(d, c * w);
    if (k < kmax) power = star(power, B, f);
  }
  return result;
}

struct DeterminantResult {
  FunctionalValue exponent;
  std::complex<double> value;
};

// Two-parameter determinant: exponent = c1 * rho(Log g) + c2 * TR(Log g).
// The exponent is carried exactly; the float value is exp of its evaluation.
inline DeterminantResult determinant(const GroupElement& g, const ExactScalar& c1,
                                     const ExactScalar& c2, const RhoSpec& rho,
                                     int digits = 15) {
  if (rho.order != g.base.order())
    throw precondition_error("order mismatch between functional and group element");
  FormalSymbol lg = log_symbol(g);
  FunctionalValue lt = leading_trace(lg, rho);
  FunctionalValue ct = canonical_trace(lg);
  ExactScalar e = c1 * lt.value + c2 * ct.value;
  FunctionalValue exponent{e, lg.floor(), ct.exact};
  return {exponent, std::exp(e.eval(digits))};
}

// gamma(t) = I + sum_{j>=1} t^j A_j on [0,1]; A_0 is stored and must be zero.
struct PolynomialPath {
  std::vector<FormalSymbol> coefficients;  // index = power of t
};

struct PathDeterminantResult {
  DeterminantResult result;
  // lambda(gamma^{-1} gamma') as a polynomial in t; index = power of t.  The
  // constant coefficient is lambda of the velocity at the identity.
  std::vector<ExactScalar> integrand_coefficients;
};

namespace detail {

// Polynomial in t with symbol coefficients; index = t-power, trailing zero
// symbols allowed.
using TSeries = std::vector<FormalSymbol>;

inline void tseries_accumulate(TSeries& acc, const TSeries& inc) {
  for (std::size_t m = 0; m < inc.size(); ++m) {
    if (m < acc.size())
      acc[m] = sym_add(acc[m], inc[m]);
    else
      acc.push_back(inc[m]);
  }
}

inline TSeries tseries_star(const TSeries& p, const TSeries& q, int floor) {
  TSeries r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q[j].is_zero()) continue;
      if (p[i].order() + q[j].order() < floor) continue;  // nothing retained
      FormalSymbol s = star(p[i], q[j], floor);
      // exact zero placeholders: adding one never raises an accumulated floor
      TSeries inc(i + j, FormalSymbol(s.dim(), s.order(), s.order(), true));
      inc.push_back(std::move(s));
      tseries_accumulate(r, inc);
    }
  }
  return r;
}

}  // namespace detail

// Determinant of a polynomial path via the logarithmic derivative:
// exponent = integral over [0,1] of lambda(gamma^{-1} gamma'), with
// lambda = c1 * rho + c2 * TR.  gamma^{-1} = I + sum_k (-N)^k is a finite
// Neumann series once star powers drop below the working floor, so the
// integrand is a genuine polynomial in t and the integral is exact.
inline PathDeterminantResult path_determinant(const PolynomialPath& path, const ExactScalar& c1,
                                              const ExactScalar& c2, const RhoSpec& rho,
                                              int digits = 15) {
  if (path.coefficients.empty()) throw precondition_error("empty path");
  const FormalSymbol& a0 = path.coefficients.front();
  if (!a0.is_zero()) throw precondition_error("path-start error: gamma(0) must be the identity");
  const int n = a0.dim();

  int order = -1, floor_exact = 0;
  bool any = false, any_inexact = false;
  int floor_inexact = 0;
  for (const auto& A : path.coefficients) {
    if (A.dim() != n) throw precondition_error("dimension mismatch");
    if (A.order() > -1) throw precondition_error("unsupported-order: path coefficients need order <= -1");
    if (!any) {
      order = A.order();
      floor_exact = A.floor();
      any = true;
    } else {
      order = std::max(order, A.order());
      floor_exact = std::min(floor_exact, A.floor());
    }
    if (!A.exact()) {
      floor_inexact = any_inexact ? std::max(floor_inexact, A.floor()) : A.floor();
      any_inexact = true;
    }
  }
  const int F = any_inexact ? floor_inexact : floor_exact;
  if (rho.order != order)
    throw precondition_error("order mismatch between functional and path");

  // N(t) = gamma(t) - I, every coefficient brought to the working floor.
  detail::TSeries N;
  for (const auto& A : path.coefficients)
    N.push_back(A.floor() < F || (A.exact() && A.floor() > F) ? A.with_floor(F) : A);
  // gamma'(t)
  detail::TSeries vel;
  for (std::size_t j = 1; j < N.size(); ++j) vel.push_back(N[j] * ExactScalar(static_cast<long long>(j)));

  // inv = sum_{k>=1} (-N)^k; the k-th power has order k * order, so it stops
  // contributing above F after F / order factors.
  detail::TSeries minus_n;
  for (const auto& A : N) minus_n.push_back(-A);
  const int kmax = F / order;
  detail::TSeries inv;
  detail::TSeries power = minus_n;
  for (int k = 1; k <= kmax; ++k) {
    detail::tseries_accumulate(inv, power);
    if (k < kmax) power = detail::tseries_star(power, minus_n, F);
  }

  // integrand = gamma^{-1} gamma' = gamma' + inv * gamma'
  detail::TSeries integrand = vel;
  if (!inv.empty() && !vel.empty())
    detail::tseries_accumulate(integrand, detail::tseries_star(inv, vel, F));

  std::vector<ExactScalar> coeffs;
  ExactScalar total;
  bool all_exact = true;
  for (std::size_t m = 0; m < integrand.size(); ++m) {
    FunctionalValue lt = leading_trace(integrand[m], rho);
    FunctionalValue ct = canonical_trace(integrand[m]);
    ExactScalar cm = c1 * lt.value + c2 * ct.value;
    all_exact = all_exact && ct.exact;
    total += cm * ExactScalar(Rational(1, static_cast<long long>(m) + 1));
    coeffs.push_back(std::move(cm));
  }
  FunctionalValue exponent{total, F, all_exact};
  DeterminantResult det{exponent, std::exp(total.eval(digits))};
  return {det, std::move(coeffs)};
}

// Endpoint gamma(1) = I + sum_j A_j as a group element.
inline GroupElement path_endpoint(const PolynomialPath& path) {
  if (path.coefficients.empty()) throw precondition_error("empty path");
  FormalSymbol acc = path.coefficients.front();
  for (std::size_t j = 1; j < path.coefficients.size(); ++j)
    acc = sym_add(acc, path.coefficients[j]);
  return GroupElement(std::move(acc));
}

}  // namespace oddsym
