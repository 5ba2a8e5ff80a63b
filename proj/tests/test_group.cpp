#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "helpers.hpp"

namespace oddsym {
namespace {

using testing::const3;
using testing::mode3;
using testing::radial_symbol;
using testing::sc;

FormalSymbol sample_a() {
  // x-independent: powers under star are plain powers, so exp is the scalar
  // series degree by degree
  FormalSymbol a(3, -1, -3, true);
  a.set_component(-1, HomogeneousComponent::radial(3, -1, const3(sc("2"))));
  return a;
}

TEST(Group, ExpOfXIndependentSymbolMatchesScalarSeries) {
  GroupElement g = exp_symbol(sample_a());
  const FormalSymbol& b = g.base;
  EXPECT_EQ(b.order(), -1);
  EXPECT_FALSE(b.exact());
  // e^{2/|xi|} - 1 = 2|xi|^{-1} + 2|xi|^{-2} + (4/3)|xi|^{-3} + ...
  EXPECT_EQ(b.component(-1), HomogeneousComponent::radial(3, -1, const3(sc("2"))));
  EXPECT_EQ(b.component(-2), HomogeneousComponent::radial(3, -2, const3(sc("2"))));
  EXPECT_EQ(b.component(-3), HomogeneousComponent::radial(3, -3, const3(sc("4/3"))));
}

TEST(Group, LogInvertsExp) {
  FormalSymbol a(3, -1, -4, true);
  a.set_component(-1, HomogeneousComponent::radial(3, -1, mode3({1, 0, 0}, sc("1"))));
  a.set_component(-2, HomogeneousComponent::monomial(3, -2, {0, 1, 0}, const3(sc("1/2"))));
  FormalSymbol back = log_symbol(exp_symbol(a));
  EXPECT_TRUE(components_equal(back, a.with_floor(back.floor())));
}

TEST(Group, LogOfGeometricSeriesElement) {
  // I + B with B = sum_{k>=1} |xi|^{-k}/1: log should start at |xi|^{-1}
  FormalSymbol b(3, -1, -3, false);
  for (int d = -1; d >= -3; --d)
    b.set_component(d, HomogeneousComponent::radial(3, d, const3(sc("1"))));
  FormalSymbol lg = log_symbol(GroupElement(b));
  // log(1 + t + t^2 + t^3 + O(t^4)) = t + t^2/2 + t^3/3 + O(t^4) at t = 1/|xi|
  EXPECT_EQ(lg.component(-1), HomogeneousComponent::radial(3, -1, const3(sc("1"))));
  EXPECT_EQ(lg.component(-2), HomogeneousComponent::radial(3, -2, const3(sc("1/2"))));
  EXPECT_EQ(lg.component(-3), HomogeneousComponent::radial(3, -3, const3(sc("1/3"))));
}

TEST(Group, OrderGuards) {
  FormalSymbol zero_order = radial_symbol(3, 0, const3(sc("1")));
  EXPECT_THROW(exp_symbol(zero_order), precondition_error);
  EXPECT_THROW({ GroupElement g(zero_order); (void)g; }, precondition_error);
}

TEST(Group, MultiplicationAgainstHandProduct) {
  FormalSymbol a = sample_a();
  FormalSymbol b(3, -1, -3, true);
  b.set_component(-1, HomogeneousComponent::radial(3, -1, const3(sc("3"))));
  GroupElement g = group_mul(GroupElement(a), GroupElement(b));
  // (1 + 2t)(1 + 3t) = 1 + 5t + 6t^2 with t = |xi|^{-1}
  EXPECT_EQ(g.base.component(-1), HomogeneousComponent::radial(3, -1, const3(sc("5"))));
  EXPECT_EQ(g.base.component(-2), HomogeneousComponent::radial(3, -2, const3(sc("6"))));
}

TEST(Group, DeterminantOfRadialFamilyMember) {
  // g = I + (e^{4 alpha / |xi|^2} - 1) truncated: with c1 = 1, c2 = 0 and the
  // default order -2 functional, the exponent is the coefficient mean of the
  // log's top component, 4 alpha; here alpha = 1/4 so Det = e.
  FormalSymbol a(3, -2, -6, true);
  a.set_component(-2, HomogeneousComponent::radial(3, -2, const3(sc("1"))));
  GroupElement g = exp_symbol(a);
  RhoSpec rho = default_rho(3, -2);
  DeterminantResult d = determinant(g, sc("1"), sc("0"), rho, 15);
  EXPECT_EQ(d.exponent.value, sc("1"));
  EXPECT_NEAR(d.value.real(), std::exp(1.0), 1e-12);
  EXPECT_NEAR(d.value.imag(), 0.0, 1e-15);
}

TEST(Group, DeterminantSplitsLinearly) {
  FormalSymbol a(3, -2, -6, true);
  a.set_component(-2, HomogeneousComponent::radial(3, -2, const3(sc("3"))));
  a.set_component(-4, HomogeneousComponent::radial(3, -4, const3(sc("1"))));
  GroupElement g = exp_symbol(a);
  RhoSpec rho = default_rho(3, -2);

  ExactScalar e10 = determinant(g, sc("1"), sc("0"), rho, 15).exponent.value;
  ExactScalar e01 = determinant(g, sc("0"), sc("1"), rho, 15).exponent.value;
  ExactScalar e11 = determinant(g, sc("1"), sc("1"), rho, 15).exponent.value;
  EXPECT_EQ(e11, e10 + e01);
}

TEST(Group, DeterminantRequiresMatchingOrder) {
  FormalSymbol a(3, -2, -4, true);
  a.set_component(-2, HomogeneousComponent::radial(3, -2, const3(sc("1"))));
  GroupElement g = exp_symbol(a);
  EXPECT_THROW(determinant(g, sc("1"), sc("0"), default_rho(3, -1), 15), precondition_error);
}

TEST(Group, PathDeterminantMatchesEndpointDeterminant) {
  FormalSymbol zero(3, -2, -4, true);
  FormalSymbol a(3, -2, -4, true);
  a.set_component(-2, HomogeneousComponent::radial(3, -2, mode3({1, 0, 0}, sc("1"))));
  a.set_component(-3, HomogeneousComponent::monomial(3, -3, {1, 0, 0}, const3(sc("2"))));

  PolynomialPath path;
  path.coefficients = {zero, a};  // gamma(t) = I + t A
  RhoSpec rho = default_rho(3, -2);

  PathDeterminantResult pd = path_determinant(path, sc("1"), sc("2"), rho, 15);
  GroupElement end = GroupElement(a);
  DeterminantResult ed = determinant(end, sc("1"), sc("2"), rho, 15);
  EXPECT_EQ(pd.result.exponent.value, ed.exponent.value);

  // the integrand's constant coefficient is the functional applied to the
  // velocity at the identity
  ASSERT_FALSE(pd.integrand_coefficients.empty());
  ExactScalar expect = leading_trace(a, rho).value * sc("1") + canonical_trace(a).value * sc("2");
  EXPECT_EQ(pd.integrand_coefficients.front(), expect);
}

TEST(Group, PathGuards) {
  FormalSymbol nonzero(3, -1, -2, true);
  nonzero.set_component(-1, HomogeneousComponent::radial(3, -1, const3(sc("1"))));
  PolynomialPath bad;
  bad.coefficients = {nonzero};
  EXPECT_THROW(path_determinant(bad, sc("1"), sc("0"), default_rho(3, -1), 15),
               precondition_error);

  PolynomialPath empty;
  EXPECT_THROW(path_determinant(empty, sc("1"), sc("0"), default_rho(3, -1), 15),
               precondition_error);
}

}  // namespace
}  // namespace oddsym
