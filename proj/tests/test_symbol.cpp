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

TEST(Symbol, ConstructionGuards) {
  EXPECT_THROW(FormalSymbol(3, 0, 1, true), precondition_error);   // floor above order
  EXPECT_THROW(FormalSymbol(2, 0, 0, true), precondition_error);   // bad dimension
  FormalSymbol s(3, 2, -1, true);
  HomogeneousComponent lin =
      HomogeneousComponent::monomial(3, 1, {1, 0, 0}, const3(sc("1")));
  EXPECT_THROW(s.set_component(3, lin.with_degree(3)), precondition_error);
  EXPECT_THROW(s.set_component(-2, lin.with_degree(-2)), precondition_error);
  EXPECT_THROW(s.set_component(0, lin), precondition_error);  // degree mismatch
}

TEST(Symbol, WithFloorSemantics) {
  FormalSymbol s(3, 0, -3, true);
  s.set_component(0, HomogeneousComponent::radial(3, 0, const3(sc("1"))));
  s.set_component(-3, HomogeneousComponent::radial(3, -3, const3(sc("2"))));
  FormalSymbol t = s.with_floor(-3);  // already there: no-op
  EXPECT_EQ(t, s);

  // raising the floor of an exact symbol is exact truncation
  FormalSymbol u = s.with_floor(-1);
  EXPECT_TRUE(u.exact());
  EXPECT_EQ(u.components().size(), 1u);
  EXPECT_EQ(u.floor(), -1);

  // exact symbols extend downward for free (the tail is literally zero)
  FormalSymbol v = s.with_floor(-5);
  EXPECT_TRUE(v.exact());
  EXPECT_EQ(v.floor(), -5);

  // truncations cannot be deepened
  FormalSymbol w(3, 0, -2, false);
  w.set_component(0, HomogeneousComponent::radial(3, 0, const3(sc("1"))));
  EXPECT_NO_THROW(w.with_floor(-1));
  EXPECT_THROW(w.with_floor(-3), precondition_error);
}

TEST(Symbol, TightenedDropsEmptyTop) {
  FormalSymbol s(3, 2, -1, true);
  s.set_component(-1, HomogeneousComponent::radial(3, -1, const3(sc("1"))));
  FormalSymbol t = s.tightened();
  EXPECT_EQ(t.order(), -1);
  EXPECT_EQ(t.floor(), -1);
}

TEST(Symbol, OddClassAndPolynomialPredicates) {
  // differential symbol: polynomial in xi, odd class by construction
  FormalSymbol d = mono_symbol(3, 2, {2, 0, 0}, const3(sc("1")));
  EXPECT_TRUE(is_xi_polynomial(d));
  EXPECT_TRUE(is_odd_class(d));

  // |xi|^{-3} in n = 3 has wrong parity at degree -3
  FormalSymbol bad = radial_symbol(3, -3, const3(sc("1")));
  EXPECT_FALSE(is_odd_class(bad));
  EXPECT_FALSE(is_xi_polynomial(bad));

  // xi1 |xi|^{-4} has layer 1 at degree -3: odd class, not polynomial
  FormalSymbol good = mono_symbol(3, -3, {1, 0, 0}, const3(sc("1")));
  EXPECT_TRUE(is_odd_class(good));
  EXPECT_FALSE(is_xi_polynomial(good));

  EXPECT_TRUE(is_x_independent(good));
  FormalSymbol xdep = radial_symbol(3, 0, mode3({1, 0, 0}, sc("1")));
  EXPECT_FALSE(is_x_independent(xdep));
}

// n = 1 worked example: a = e^{ix} xi, b = xi.  Composition picks up exactly
// one derivative term, so [a, b] = -e^{ix} xi; checked via the full star in
// both orders.
TEST(Symbol, StarOneDimensionalWorkedExample) {
  TrigPoly e1 = TrigPoly::mode(1, {1, 0, 0}, sc("1"));
  FormalSymbol a = mono_symbol(1, 1, {1, 0, 0}, e1);
  FormalSymbol b = mono_symbol(1, 1, {1, 0, 0}, const1(sc("1")));

  // b # a: d_xi b = 1, d_x a = i e^{ix} xi, weight -i: term e^{ix} xi.
  FormalSymbol ba = star(b, a);
  EXPECT_TRUE(ba.exact());
  EXPECT_EQ(ba.order(), 2);
  EXPECT_EQ(ba.component(2), HomogeneousComponent::monomial(1, 2, {2, 0, 0}, e1));
  EXPECT_EQ(ba.component(1), HomogeneousComponent::monomial(1, 1, {1, 0, 0}, e1));

  // a # b has no correction (b is x-independent)
  FormalSymbol ab = star(a, b);
  EXPECT_EQ(ab.component(2), ba.component(2));
  EXPECT_TRUE(ab.component(1).is_zero());

  FormalSymbol c = commutator(a, b);
  EXPECT_EQ(c.order(), 1);  // top cancelled and tightened() noticed
  EXPECT_EQ(c.component(1), HomogeneousComponent::monomial(1, 1, {1, 0, 0}, -e1));
}

// [e^{ix}, xi] = -e^{ix} in one dimension.
TEST(Symbol, MultiplierBracketExample) {
  TrigPoly e1 = TrigPoly::mode(1, {1, 0, 0}, sc("1"));
  FormalSymbol a = radial_symbol(1, 0, e1);
  FormalSymbol b = testing::mono_symbol(1, 1, {1, 0, 0}, const1(sc("1")));
  FormalSymbol c = commutator(a, b);
  EXPECT_EQ(c.order(), 0);
  EXPECT_EQ(c.component(0), HomogeneousComponent::radial(1, 0, -e1));
  EXPECT_TRUE(c.exact());
}

// [x_j, xi_j] in operator form: coordinate_bracket of xi1 is the constant i.
TEST(Symbol, CoordinateBracketExamples) {
  FormalSymbol xi1 = mono_symbol(3, 1, {1, 0, 0}, const3(sc("1")));
  FormalSymbol br = coordinate_bracket(0, xi1);
  EXPECT_EQ(br.component(0), HomogeneousComponent::radial(3, 0, const3(sc("i"))));

  // coordinate_bracket(0, |xi|^{-2}) = -2 i xi1 |xi|^{-4}
  FormalSymbol r2 = radial_symbol(3, -2, const3(sc("1")));
  FormalSymbol br2 = coordinate_bracket(0, r2);
  EXPECT_EQ(br2.component(-3),
            HomogeneousComponent::monomial(3, -3, {1, 0, 0}, const3(sc("-2*i"))));
}

TEST(Symbol, StarFloorBookkeeping) {
  // both factors truncated: floor of product = max(f1 + a2, a1 + f2)
  FormalSymbol a(3, 0, -2, false);
  a.set_component(0, HomogeneousComponent::radial(3, 0, mode3({1, 0, 0}, sc("1"))));
  FormalSymbol b(3, -1, -4, false);
  b.set_component(-1, HomogeneousComponent::radial(3, -1, mode3({0, 1, 0}, sc("1"))));
  FormalSymbol p = star(a, b);
  EXPECT_EQ(p.order(), -1);
  EXPECT_EQ(p.floor(), std::max(-2 + -1, 0 + -4));
  EXPECT_FALSE(p.exact());

  // exact x polynomial-in-xi left factor: terminating, exact product
  FormalSymbol d = mono_symbol(3, 1, {0, 1, 0}, mode3({1, 0, 0}, sc("1")));
  FormalSymbol q = star(d, d);
  EXPECT_TRUE(q.exact());

  // exact but non-terminating: |xi|^{-1} # (x-dependent |xi|^{-1})
  FormalSymbol r = radial_symbol(3, -1, const3(sc("1")));
  FormalSymbol s = radial_symbol(3, -1, mode3({1, 0, 0}, sc("1")));
  FormalSymbol t = star(s, r);  // right factor x-independent: terminates
  EXPECT_TRUE(t.exact());
  FormalSymbol u = star(r, s);  // genuinely infinite expansion
  EXPECT_FALSE(u.exact());
  EXPECT_EQ(u.floor(), std::max(r.floor() + s.order(), r.order() + s.floor()));
}

TEST(Symbol, StarKeepFloorMatchesTruncatedFullProduct) {
  TrigPoly e1 = mode3({1, 0, 0}, sc("1"));
  FormalSymbol a(3, 2, 0, true);
  a.set_component(2, HomogeneousComponent::monomial(3, 2, {1, 1, 0}, e1));
  a.set_component(0, HomogeneousComponent::radial(3, 0, const3(sc("1"))));
  FormalSymbol b = mono_symbol(3, 1, {0, 0, 1}, mode3({0, 1, 0}, sc("2")));
  FormalSymbol full = star(a, b).with_floor(1);
  FormalSymbol capped = star(a, b, 1);
  EXPECT_EQ(capped, full);

  // capped non-terminating product agrees with truncation too; the cap can
  // only raise the natural floor, never deepen it
  FormalSymbol r(3, -1, -3, true);
  r.set_component(-1, HomogeneousComponent::radial(3, -1, const3(sc("1"))));
  r.set_component(-3, HomogeneousComponent::radial(3, -3, const3(sc("2"))));
  FormalSymbol s(3, -1, -2, true);
  s.set_component(-1, HomogeneousComponent::radial(3, -1, mode3({1, 0, 0}, sc("1"))));
  s.set_component(-2, HomogeneousComponent::radial(3, -2, mode3({0, 1, 0}, sc("1"))));
  ASSERT_EQ(star(r, s).floor(), -3);  // max(f1 + a2, a1 + f2)
  EXPECT_EQ(star(r, s, -2), star(r, s).with_floor(-2));
  EXPECT_EQ(star(r, s, -9).floor(), star(r, s).floor());
}

TEST(Symbol, CommutatorOfXIndependentSymbolsVanishes) {
  FormalSymbol a = radial_symbol(3, -1, const3(sc("2")));
  FormalSymbol b = mono_symbol(3, 2, {1, 1, 0}, const3(sc("1")));
  FormalSymbol c = commutator(a, b);
  EXPECT_TRUE(c.is_zero());
  EXPECT_TRUE(c.exact());
}

// Geometric-series inverse: sigma = |xi|^2 (1 + e^{ix1}|xi|^{-1} summand),
// parametrix components follow the alternating series.
TEST(Symbol, ParametrixWorkedExample) {
  FormalSymbol sigma(3, 2, 1, true);
  sigma.set_component(2, HomogeneousComponent::radial(3, 2, const3(sc("1"))));
  sigma.set_component(1, HomogeneousComponent::radial(3, 1, mode3({1, 0, 0}, sc("1"))));
  FormalSymbol b = parametrix(sigma, -5);
  EXPECT_EQ(b.order(), -2);
  EXPECT_EQ(b.floor(), -5);
  EXPECT_FALSE(b.exact());

  // residual check: sigma # b = 1 on all retained degrees
  FormalSymbol prod = star(sigma, b);
  FormalSymbol err = sym_sub(prod, FormalSymbol::one(3));
  for (const auto& [d, c] : err.components())
    if (d >= err.floor()) EXPECT_TRUE(c.is_zero()) << "degree " << d;

  // b_{-2} = |xi|^{-2}; b_{-3} = -e^{ix1}|xi|^{-3}
  EXPECT_EQ(b.component(-2), HomogeneousComponent::radial(3, -2, const3(sc("1"))));
  EXPECT_EQ(b.component(-3), HomogeneousComponent::radial(3, -3, mode3({1, 0, 0}, sc("-1"))));
}

TEST(Symbol, ParametrixRefusals) {
  // leading component not radial
  FormalSymbol bad = mono_symbol(3, 1, {1, 0, 0}, const3(sc("1")));
  EXPECT_THROW(parametrix(bad, -3), precondition_error);

  // leading coefficient a two-term trig polynomial: no monomial inverse
  FormalSymbol two = radial_symbol(3, 0, const3(sc("1")) + mode3({1, 0, 0}, sc("1")));
  EXPECT_THROW(parametrix(two, -2), precondition_error);

  // truncated symbol without enough depth for the requested tail
  FormalSymbol shallow(3, 2, 1, false);
  shallow.set_component(2, HomogeneousComponent::radial(3, 2, const3(sc("1"))));
  EXPECT_THROW(parametrix(shallow, -8), precondition_error);
}

TEST(Symbol, SymbolMaxFreq) {
  FormalSymbol s = radial_symbol(3, 0, mode3({2, -3, 0}, sc("1")));
  EXPECT_EQ(symbol_max_freq(s), 3);
  EXPECT_EQ(symbol_max_freq(FormalSymbol::one(3)), 0);
}

}  // namespace
}  // namespace oddsym
