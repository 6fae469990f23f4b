#include <gtest/gtest.h>

#include "desing/contact.hpp"
#include "desing/errors.hpp"

using namespace desing;

namespace {

Polynomial P(const std::string& s, const Ring& r) { return parse_polynomial(s, r); }
Ring zxy() { return make_ring({"Z", "X", "Y"}); }

bool in_radical(const Ideal& I, const Polynomial& g) { return I.localize(g).is_trivial(); }

bool same_zero_set(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.generators())
    if (!in_radical(b, g)) return false;
  for (const auto& g : b.generators())
    if (!in_radical(a, g)) return false;
  return true;
}

}  // namespace

TEST(Contact, TschirnhausenWitness) {
  Ring r = zxy();
  ChartTree t(r);
  Couple c{Ideal::from_strings(r, {"Z^2+2*X*Z+X^2+X*Y^2"}), 2};
  auto mc = find_maximal_contact(c, t.chart(0));
  EXPECT_EQ(mc.var, 0u);
  ASSERT_TRUE(mc.shift);
  EXPECT_EQ(*mc.shift, P("X", r));
  EXPECT_TRUE(sing(c).contains(mc.witness));
  int ch = t.change_coordinates(0, mc.var, *mc.shift, 0);
  Polynomial f1 = t.chart(ch).from_parent.apply(c.ideal.generators()[0]);
  EXPECT_EQ(f1, P("Z^2+X*Y^2", r));
  // After the change the witness is a multiple of the contact coordinate.
  Polynomial w = t.chart(ch).from_parent.apply(mc.witness);
  EXPECT_EQ(w.monic(), P("Z", r));

  auto K = coefficient_ideal({Ideal(r, {f1}), 2}, 0);
  EXPECT_EQ(K.bound, 2u);
  EXPECT_TRUE(K.ideal.equals(Ideal::from_strings(r, {"X*Y^2"})));
}

TEST(Contact, CubicSurface) {
  Ring r = zxy();
  ChartTree t(r);
  Couple c{Ideal::from_strings(r, {"Z^3+X*Y^2*Z+X^5"}), 3};
  auto mc = find_maximal_contact(c, t.chart(0));
  EXPECT_EQ(mc.var, 0u);
  EXPECT_FALSE(mc.shift);
  auto K = coefficient_ideal(c, 0);
  EXPECT_EQ(K.bound, 6u);
  EXPECT_TRUE(K.ideal.equals(Ideal::from_strings(r, {"X^3*Y^6", "X^10"})));
  for (const auto& g : K.ideal.generators()) EXPECT_FALSE(g.involves(0));
  // V(Z) contains Sing(J, 3).
  EXPECT_TRUE(sing(c).contains(P("Z", r)));
}

TEST(Contact, SurfaceDescent) {
  Ring r = make_ring({"z", "x", "y"});
  ChartTree t(r);
  Couple c{Ideal::from_strings(r, {"z^2+x^2+y^3"}), 2};
  auto mc = find_maximal_contact(c, t.chart(0));
  EXPECT_EQ(mc.var, 0u);
  EXPECT_FALSE(mc.shift);
  auto K = coefficient_ideal(c, 0);
  EXPECT_EQ(K.bound, 2u);
  EXPECT_TRUE(K.ideal.equals(Ideal::from_strings(r, {"x^2+y^3"})));
}

TEST(Contact, CommutesWithBlowup) {
  Ring r = zxy();
  ChartTree t(r);
  Couple c{Ideal::from_strings(r, {"Z^3+X*Y^2*Z+X^5"}), 3};
  auto K = coefficient_ideal(c, 0);
  auto kids = t.blowup(0, {0, 1, 2}, 1);
  int y = -1;
  for (int k : kids)
    if (t.chart(k).pivot == 2) y = k;
  Ideal K1 = controlled_transform(K.ideal, 6, t.chart(y));
  Ideal g1 = controlled_transform(c.ideal, 3, t.chart(y));
  auto A = coefficient_ideal({g1, 3}, 0);
  EXPECT_TRUE(K1.equals(A.ideal));
  EXPECT_TRUE(A.ideal.equals(Ideal::from_strings(r, {"X^3*Y^3", "X^10*Y^4"})));
}

TEST(Contact, Errors) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r);
  EXPECT_THROW(find_maximal_contact({Ideal::from_strings(r, {"x"}), 2}, t.chart(0)), NoMaximalContact);
  EXPECT_THROW(coefficient_ideal({Ideal::from_strings(r, {"x^7"}), 7}, 0), FactorialBlowup);
  EXPECT_THROW(coefficient_ideal({Ideal::from_strings(r, {"x^2"}), 2}, 0), ZeroCoefficientIdeal);
  // All exceptional: V(x) is the only candidate and it is forbidden.
  ChartTree te(r, {0, 1});
  ContactSearch s;
  s.forbidden = {1, 2};
  EXPECT_THROW(find_maximal_contact({Ideal::from_strings(r, {"x^2*y^2"}), 2}, te.chart(0), s), NoMaximalContact);
  s.forbidden = {2};
  EXPECT_EQ(find_maximal_contact({Ideal::from_strings(r, {"x^2+y^3"}), 2}, te.chart(0), s).var, 0u);
}

TEST(Contact, IntersectObjects) {
  Ring r = make_ring({"x", "y"});
  auto ab = intersect_objects({Ideal::from_strings(r, {"x"}), 1}, {Ideal::from_strings(r, {"y"}), 1});
  EXPECT_EQ(ab.bound, 1u);
  EXPECT_TRUE(ab.ideal.equals(Ideal::from_strings(r, {"x", "y"})));

  Couple cusp{Ideal::from_strings(r, {"x^2-y^5"}), 2};
  auto cx = intersect_objects(cusp, {Ideal::from_strings(r, {"x"}), 1});
  EXPECT_EQ(cx.bound, 2u);
  EXPECT_TRUE(cx.ideal.equals(Ideal::from_strings(r, {"x^2-y^5", "x^2"})));
  EXPECT_TRUE(same_zero_set(sing(cx), Ideal::from_strings(r, {"x", "y"})));

  auto self = intersect_objects(cusp, cusp);
  EXPECT_EQ(self.bound, 4u);
  EXPECT_TRUE(same_zero_set(sing(self), sing(cusp)));
  // The zero ideal imposes nothing.
  EXPECT_EQ(intersect_objects(cusp, {Ideal(r), 1}).bound, 2u);
}

TEST(Contact, CompanionMatchesMaxT) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r);
  auto s0 = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2-y^5"}), 1);
  auto m0 = max_t(s0, {});
  auto c0 = companion_object(s0, m0);
  ASSERT_TRUE(c0.couple);
  EXPECT_FALSE(c0.monomial);
  EXPECT_TRUE(same_zero_set(sing(*c0.couple), m0.locus));
  EXPECT_EQ(max_order(c0.couple->ideal), c0.couple->bound);

  // x^4 - y^5 after one blow-up: the companion mixes the reduced ideal and I(H1).
  auto kids = t.blowup(0, {0, 1}, 1);
  int y = kids[1];
  auto q0 = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^4-y^5"}), 1);
  auto q1 = controlled_transform(q0, t.chart(y));
  auto m1 = max_t(q1, {1});
  EXPECT_EQ(m1.value, (TValue{1, 1}));
  auto c1 = companion_object(q1, m1);
  ASSERT_TRUE(c1.couple);
  EXPECT_TRUE(same_zero_set(sing(*c1.couple), m1.locus));
  EXPECT_EQ(max_order(c1.couple->ideal), c1.couple->bound);
  EXPECT_EQ(m1.subsets, (std::vector<std::vector<DivisorLabel>>{{1}}));
  EXPECT_EQ(sing(*c1.couple).codim_one_part(), Polynomial(r, 1));

  ChartTree tm(r, {0, 1});
  auto mono = BasicObjectState::make(tm.chart(0), Ideal::from_strings(r, {"x^3*y^2"}), 2);
  EXPECT_TRUE(companion_object(mono, max_t(mono, {1, 2})).monomial);
}
