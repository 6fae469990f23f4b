#include <gtest/gtest.h>

#include <random>

#include "desing/delta.hpp"
#include "desing/invariants.hpp"
#include "generators.hpp"

using namespace desing;

namespace {

Polynomial P(const std::string& s, const Ring& r) { return parse_polynomial(s, r); }

std::vector<Rational> Q(std::initializer_list<int> xs) {
  std::vector<Rational> v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

int chart_with_pivot(const ChartTree& t, const std::vector<int>& ids, std::size_t pivot) {
  for (int id : ids)
    if (t.chart(id).pivot == pivot) return id;
  return -1;
}

// g in rad(I) iff I becomes the unit ideal once g is inverted.
bool in_radical(const Ideal& I, const Polynomial& g) { return I.localize(g).is_trivial(); }

bool same_zero_set(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.generators())
    if (!in_radical(b, g)) return false;
  for (const auto& g : b.generators())
    if (!in_radical(a, g)) return false;
  return true;
}

TValue T(Rational w, unsigned n) { return {w, n}; }

}  // namespace

TEST(Invariants, WordAtOnTheCusp) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r);
  auto s0 = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2-y^3"}), 1);
  EXPECT_EQ(word_at(s0, Q({0, 0})), 2);
  EXPECT_EQ(word_at(s0, Q({1, 1})), 1);
  EXPECT_THROW(word_at(s0, Q({1, 0})), std::invalid_argument);

  auto kids = t.blowup(0, {0, 1}, 1);
  int y = chart_with_pivot(t, kids, 1);
  auto s1 = controlled_transform(s0, t.chart(y));
  EXPECT_EQ(word_at(s1, Q({0, 0})), 1);
  EXPECT_EQ(n_at(s1, {1}, Q({0, 0}), 1), 1u);
  auto mt = max_t(s1, {1});
  EXPECT_EQ(mt.value, T(1, 1));
  EXPECT_TRUE(same_zero_set(mt.locus, Ideal::from_strings(r, {"x", "y"})));
  // A point of the curve off H1 has t = (1, 0).
  EXPECT_EQ(n_at(s1, {1}, Q({1, 1}), 1), 0u);
}

TEST(Invariants, WordIsZeroForMonomial) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r, {0, 1});
  auto s = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^3*y^2"}), 2);
  EXPECT_TRUE(s.reduced.is_trivial());
  EXPECT_EQ(word_at(s, Q({0, 0})), 0);
  auto mw = max_word(s);
  EXPECT_EQ(mw.value, 0);
  EXPECT_TRUE(mw.locus.equals(sing({s.ideal, 2})));
}

TEST(Invariants, MaxWordExamples) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r);
  auto cusp = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2-y^5"}), 1);
  auto mw = max_word(cusp);
  EXPECT_EQ(mw.value, 2);
  EXPECT_EQ(mw.bprime, 2u);
  EXPECT_TRUE(same_zero_set(mw.locus, Ideal::from_strings(r, {"x", "y"})));

  auto line = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2"}), 2);
  auto lw = max_word(line);
  EXPECT_EQ(lw.value, 1);
  EXPECT_TRUE(lw.locus.equals(Ideal::from_strings(r, {"x"})));
  EXPECT_THROW(max_word(BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x"}), 2)),
               std::invalid_argument);
}

TEST(Invariants, EmptyMinusMeansNoCount) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r, {1});
  auto s = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2-y^3"}), 1);
  auto mt = max_t(s, {});
  EXPECT_EQ(mt.value, T(2, 0));
  EXPECT_TRUE(mt.locus.equals(mt.word.locus));
  EXPECT_EQ(n_at(s, {}, Q({0, 0}), 2), 0u);
}

TEST(Invariants, CodimOneParts) {
  Ring r = make_ring({"x", "y"});
  ChartTree t(r);
  EXPECT_EQ(*codim_one_part(BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2"}), 2)), P("x", r));
  EXPECT_FALSE(codim_one_part(BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {"x^2-y^5"}), 2)));
  Ring r3 = make_ring({"x1", "x2", "x3"});
  ChartTree t3(r3, {0, 1, 2});
  auto h = codim_one_part(BasicObjectState::make(t3.chart(0), Ideal::from_strings(r3, {"x1^6*x2^7*x3^4"}), 5));
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, P("x1*x2", r3));
}

TEST(Invariants, VectorOrderAndPrinting) {
  auto t20 = InvariantEntry::of(T(2, 0));
  auto t11 = InvariantEntry::of(T(1, 1));
  auto g = InvariantEntry::of(GammaValue{-1, 7, {2}});
  auto inf = InvariantEntry::infinity();
  EXPECT_LT(t11, t20);
  EXPECT_LT(g, t11);
  EXPECT_LT(t20, inf);
  EXPECT_LT(InvariantEntry::pending(), g);
  InvariantVector a{{t11, g, inf}}, b{{t11, inf, inf}}, c{{t20, inf, inf}};
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(to_string(InvariantVector{{InvariantEntry::of(T(Rational(3, 2), 0)), t11, inf}}),
            "[(3/2,0), (1,1), inf]");
  EXPECT_EQ(to_string(InvariantVector{{t11, InvariantEntry::of(GammaValue{-1, Rational(7, 5), {2}}), inf}}),
            "[(1,1), Γ(-1, 7/5, [2]), inf]");
  EXPECT_EQ(to_string(InvariantVector::smooth(1, 2)), "[(1,0), inf, inf]");
  EXPECT_EQ(InvariantVector::smooth(0, 2).entries.size(), 3u);
}

// Points of Max t carry t = max t.
TEST(InvariantsProperty, PointLocusAgreement) {
  Ring r = make_ring({"x", "y", "z"});
  ChartTree t(r, {2});
  struct Case {
    const char* f;
    std::vector<std::vector<Rational>> points;
  };
  std::vector<Case> cases = {
      {"x^2-y^3", {Q({0, 0, 0}), Q({0, 0, 5})}},
      {"z*(x^2+y^2*z)", {Q({0, 0, 0})}},
      {"x^2*z^3-y^3*z", {Q({0, 0, 0}), Q({0, 0, 2})}},
  };
  for (const auto& c : cases) {
    auto s = BasicObjectState::make(t.chart(0), Ideal::from_strings(r, {c.f}), 1);
    auto mt = max_t(s, {1});
    for (const auto& p : c.points) {
      bool on = true;
      for (const auto& g : mt.locus.generators()) on = on && g.evaluate(p) == 0;
      if (!on) continue;
      TValue at{word_at(s, p), n_at(s, {1}, p, mt.value.word)};
      EXPECT_EQ(at, mt.value) << c.f;
    }
  }
}

// Sing(J, b) = Sing(J^2, 2b); max w-ord and Max t agree.
TEST(InvariantsProperty, RescalingInvariance) {
  Ring r = make_ring({"x", "y", "z"});
  ChartTree t(r, {2});
  std::mt19937 rng(41);
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    Polynomial f = testgen::random_poly(rng, r, 3, 3, 4, 1);
    if (f.is_zero() || f.is_constant()) continue;
    Ideal J(r, {f});
    unsigned b = 1 + rng() % 2;
    Ideal J2 = J.power(2);
    auto s = BasicObjectState::make(t.chart(0), J, b);
    auto s2 = BasicObjectState::make(t.chart(0), J2, 2 * b);
    Ideal a = sing({J, b}), c = sing({J2, 2 * b});
    ASSERT_TRUE(same_zero_set(a, c)) << to_string(f);
    if (a.is_trivial()) continue;
    auto m1 = max_t(s, {1});
    auto m2 = max_t(s2, {1});
    EXPECT_EQ(m1.value, m2.value) << to_string(f);
    EXPECT_TRUE(same_zero_set(m1.locus, m2.locus)) << to_string(f);
    ++checked;
  }
  EXPECT_GT(checked, 5);
}
