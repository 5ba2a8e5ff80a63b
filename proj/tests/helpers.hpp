// Shared shorthand for the unit tests: terse builders for scalars, trig
// polynomials, and one-component symbols, plus a complex-closeness matcher.

#pragma once

#include <complex>
#include <string>

#include <gtest/gtest.h>

#include <oddsym/oddsym.hpp>

namespace oddsym::testing {

inline ExactScalar sc(const std::string& text) { return ExactScalar::parse(text); }

inline Rational rat(long long p, long long q = 1) { return Rational(p, q); }

// u(x) = c * e^{i k.x}
inline TrigPoly mode3(const Freq& k, ExactScalar c) { return TrigPoly::mode(3, k, std::move(c)); }
inline TrigPoly const3(ExactScalar c) { return TrigPoly::constant(3, std::move(c)); }
inline TrigPoly const1(ExactScalar c) { return TrigPoly::constant(1, std::move(c)); }

// Single-component symbol c(x) * xi^beta * |xi|^{degree - |beta|}.
inline FormalSymbol mono_symbol(int n, int degree, const Beta& beta, TrigPoly c) {
  FormalSymbol s(n, degree, degree, true);
  s.set_component(degree, HomogeneousComponent::monomial(n, degree, beta, std::move(c)));
  return s;
}

inline FormalSymbol radial_symbol(int n, int degree, TrigPoly c) {
  return mono_symbol(n, degree, {0, 0, 0}, std::move(c));
}

#define EXPECT_CNEAR(a, b, tol)                            \
  do {                                                     \
    std::complex<double> a_ = (a), b_ = (b);               \
    EXPECT_NEAR(a_.real(), b_.real(), tol) << #a " real"; \
    EXPECT_NEAR(a_.imag(), b_.imag(), tol) << #a " imag"; \
  } while (0)

#define EXPECT_THROWS_WITH(stmt, ExType, fragment)                          \
  do {                                                                      \
    bool caught_ = false;                                                   \
    try {                                                                   \
      stmt;                                                                 \
    } catch (const ExType& e_) {                                            \
      caught_ = true;                                                       \
      EXPECT_NE(std::string(e_.what()).find(fragment), std::string::npos)   \
          << "actual message: " << e_.what();                               \
    }                                                                       \
    EXPECT_TRUE(caught_) << "expected " #ExType " from " #stmt;             \
  } while (0)

}  // namespace oddsym::testing
