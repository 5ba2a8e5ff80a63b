#include <gtest/gtest.h>

#include "helpers.hpp"

namespace oddsym {
namespace {

using testing::const1;
using testing::const3;
using testing::mode3;
using testing::mono_symbol;
using testing::radial_symbol;
using testing::sc;

TEST(Residue, RadialPowerAtCriticalDegree) {
  // res(|xi|^{-3}) on T^3: sphere gives 4 pi, torus gives (2 pi)^3.
  FormalSymbol s = radial_symbol(3, -3, const3(sc("1")));
  FunctionalValue v = residue(s);
  EXPECT_EQ(v.value, sc("32*pi^4"));
  EXPECT_TRUE(v.exact);

  // n = 1: res(|xi|^{-1}) = 2 * 2 pi = 4 pi
  FormalSymbol t = radial_symbol(1, -1, const1(sc("1")));
  EXPECT_EQ(residue(t).value, sc("4*pi"));
}

TEST(Residue, SeesOnlyCriticalDegreeAndMeans) {
  // no degree -n component: residue is zero
  EXPECT_TRUE(residue(radial_symbol(3, -4, const3(sc("1")))).value.is_zero());
  // nonzero frequency at degree -n: torus mean kills it
  EXPECT_TRUE(residue(radial_symbol(3, -3, mode3({1, 0, 0}, sc("1")))).value.is_zero());
  // odd harmonic at degree -n: sphere mean kills it
  EXPECT_TRUE(residue(mono_symbol(3, -3, {1, 0, 0}, const3(sc("1")))).value.is_zero());
}

TEST(Residue, TruncationDepthGuard) {
  FormalSymbol deep(3, 0, -3, false);
  deep.set_component(-3, HomogeneousComponent::radial(3, -3, const3(sc("1"))));
  EXPECT_EQ(residue(deep).value, sc("32*pi^4"));
  FormalSymbol shallow(3, 0, -2, false);
  EXPECT_THROW(residue(shallow), precondition_error);
}

TEST(CutoffIntegral, FrozenRadialExamples) {
  // fp of int_{1<=|xi|<=R} |xi|^{-4} = 4 pi (1 - 1/R) -> 4 pi
  EXPECT_EQ(cutoff_integral(radial_symbol(3, -4, const3(sc("1")))), const3(sc("4*pi")));
  // fp for |xi|^1: 4 pi (R^4 - 1)/4 -> -pi
  EXPECT_EQ(cutoff_integral(radial_symbol(3, 1, const3(sc("1")))), const3(sc("-pi")));
  // the log-divergent degree contributes no finite part
  EXPECT_TRUE(cutoff_integral(radial_symbol(3, -3, const3(sc("1")))).is_zero());
  // n = 1 example: |xi|^{-2} integrates to 2(1 - 1/R): fp 2
  EXPECT_EQ(cutoff_integral(radial_symbol(1, -2, const1(sc("1")))), const1(sc("2")));
}

TEST(CutoffIntegral, KeepsCoefficientFunctions) {
  FormalSymbol s = radial_symbol(3, -4, mode3({1, 0, 0}, sc("3")));
  EXPECT_EQ(cutoff_integral(s), mode3({1, 0, 0}, sc("12*pi")));
}

TEST(CanonicalTrace, ZeroModeOfDensity) {
  FormalSymbol s = radial_symbol(3, -4, const3(sc("1")) + mode3({1, 0, 0}, sc("5")));
  FunctionalValue v = canonical_trace(s);
  EXPECT_EQ(v.value, sc("4*pi"));
  EXPECT_TRUE(v.exact);

  FormalSymbol t(3, -4, -6, false);
  t.set_component(-4, HomogeneousComponent::radial(3, -4, const3(sc("1"))));
  FunctionalValue w = canonical_trace(t);
  EXPECT_EQ(w.value, sc("4*pi"));
  EXPECT_FALSE(w.exact);
  EXPECT_EQ(w.floor_used, -6);
}

TEST(CanonicalTrace, CriticalDegreeContributesNoFinitePart) {
  // a pure degree -n component is log-divergent: its finite part is empty,
  // so the trace of this odd-class sample is exactly zero
  FormalSymbol s = mono_symbol(3, -3, {1, 0, 0}, mode3({0, 1, 0}, sc("2")));
  ASSERT_TRUE(is_odd_class(s));
  EXPECT_TRUE(canonical_trace(s).value.is_zero());
}

TEST(StokesBoundary, FluxOfUnitSphereMoment) {
  // tau with degree (1-n) component xi1 |xi|^{-3}: flux through axis 0 is
  // the second moment 4 pi / 3; other axes give odd integrands, zero.
  FormalSymbol tau(3, 0, -2, true);
  tau.set_component(-2, HomogeneousComponent::monomial(3, -2, {1, 0, 0}, const3(sc("1"))));
  EXPECT_EQ(stokes_boundary(tau, 0), const3(sc("4/3*pi")));
  EXPECT_TRUE(stokes_boundary(tau, 1).is_zero());
  EXPECT_TRUE(stokes_boundary(tau, 2).is_zero());
  EXPECT_THROW(stokes_boundary(tau, 3), precondition_error);
}

TEST(StokesBoundary, RequiresExactSymbolOfDepth) {
  FormalSymbol shallow(3, 0, 0, true);
  EXPECT_THROW(stokes_boundary(shallow, 0), precondition_error);
  FormalSymbol inexact(3, 0, -4, false);
  EXPECT_THROW(stokes_boundary(inexact, 0), precondition_error);
}

TEST(LeadingTrace, DefaultRhoReadsDoubleMean) {
  // order 0 functional on 2 + e^{ix1}: the mean is 2
  RhoSpec rho = default_rho(3, 0);
  FormalSymbol s = radial_symbol(3, 0, const3(sc("2")) + mode3({1, 0, 0}, sc("1")));
  EXPECT_EQ(leading_trace(s, rho).value, sc("2"));
}

TEST(LeadingTrace, CustomPairingExtractsLayerCoefficient) {
  // rho of order -1 pairing the xi1 coefficient at degree -1 with weight 1:
  // on 5 xi1 |xi|^{-2} the value is 5.
  RhoSpec rho;
  rho.n = 3;
  rho.order = -1;
  rho.pairings[-1] = {RhoPairing{{0, 0, 0}, 1, {1, 0, 0}, sc("1")}};
  validate_rho(rho);
  FormalSymbol s = mono_symbol(3, -1, {1, 0, 0}, const3(sc("5")));
  EXPECT_EQ(leading_trace(s, rho).value, sc("5"));

  // frequency pairing picks the matching Fourier coefficient
  rho.pairings[-1] = {RhoPairing{{1, 0, 0}, 1, {1, 0, 0}, sc("2")}};
  FormalSymbol t = mono_symbol(3, -1, {1, 0, 0}, mode3({1, 0, 0}, sc("3")));
  EXPECT_EQ(leading_trace(t, rho).value, sc("6"));
}

TEST(LeadingTrace, Linearity) {
  RhoSpec rho = default_rho(3, -1);
  FormalSymbol a = radial_symbol(3, -1, const3(sc("3")));
  FormalSymbol b(3, -1, -2, true);
  b.set_component(-2, HomogeneousComponent::radial(3, -2, const3(sc("7"))));
  ExactScalar va = leading_trace(a, rho).value;
  ExactScalar vb = leading_trace(b, rho).value;
  ExactScalar vab = leading_trace(sym_add(a, b), rho).value;
  EXPECT_EQ(vab, va + vb);
  EXPECT_EQ(va, sc("3"));
  EXPECT_EQ(vb, sc("7"));
}

TEST(LeadingTrace, WindowAndOrderGuards) {
  RhoSpec rho = default_rho(3, -1);
  FormalSymbol high = radial_symbol(3, 0, const3(sc("1")));
  EXPECT_THROW(leading_trace(high, rho), precondition_error);

  RhoSpec bad = rho;
  bad.pairings[-3] = {RhoPairing{{0, 0, 0}, 0, {0, 0, 0}, sc("1")}};  // outside [-2, -1]
  FormalSymbol ok = radial_symbol(3, -1, const3(sc("1")));
  EXPECT_THROW(leading_trace(ok, bad), precondition_error);

  RhoSpec pos;
  pos.n = 3;
  pos.order = 1;
  EXPECT_THROW(validate_rho(pos), precondition_error);

  RhoSpec mismatch;
  mismatch.n = 3;
  mismatch.order = -1;
  mismatch.pairings[-1] = {RhoPairing{{0, 0, 0}, 1, {2, 0, 0}, sc("1")}};  // |beta| != layer
  EXPECT_THROW(validate_rho(mismatch), precondition_error);
}

TEST(LeadingTrace, QuotientPropertyBelowWindow) {
  // degrees below 2*order never enter: two symbols differing only below the
  // window get the same value.
  RhoSpec rho = default_rho(3, -1);
  FormalSymbol a(3, -1, -4, true);
  a.set_component(-1, HomogeneousComponent::radial(3, -1, const3(sc("1"))));
  FormalSymbol b = a;
  b.set_component(-4, HomogeneousComponent::radial(3, -4, const3(sc("9"))));
  EXPECT_EQ(leading_trace(a, rho).value, leading_trace(b, rho).value);
}

}  // namespace
}  // namespace oddsym
