#include <gtest/gtest.h>

#include <json.hpp>

#include "desing/trace.hpp"

using namespace desing;
using nlohmann::ordered_json;

namespace {

ResolutionTrace quintic() {
  auto r = make_ring({"x", "y"});
  return principalize(Ideal::from_strings(r, {"x^2-y^5"}));
}

// Bumps the first exponent stored under `field` of the first node at `stage`
// that has one; returns the chart of that node.
int tamper(ordered_json& j, const char* field, int stage) {
  for (auto& n : j["nodes"]) {
    if (n["stage"] != stage || n[field].empty()) continue;
    auto it = n[field].begin();
    it.value() = it.value().get<unsigned>() + 1;
    return n["chart"].get<int>();
  }
  return -1;
}

}  // namespace

TEST(Trace, RoundTripIsAFixedPoint) {
  std::string a = trace_to_json(quintic());
  std::string b = trace_to_json(trace_from_json(a));
  EXPECT_EQ(a, b);
}

TEST(Trace, RoundTripOfAnAbortedRun) {
  auto r = make_ring({"z", "x", "y"});
  auto t = principalize(Ideal::from_strings(r, {"z^2+x^2+y^3"}));
  ASSERT_EQ(t.status, "aborted");
  std::string a = trace_to_json(t);
  auto back = trace_from_json(a);
  EXPECT_EQ(back.error_type, "CenterNotCoordinate");
  EXPECT_EQ(trace_to_json(back), a);
}

TEST(Trace, RepeatedRunsAreByteIdentical) {
  EXPECT_EQ(trace_to_json(quintic()), trace_to_json(quintic()));
  auto r = make_ring({"x1", "x2", "x3"});
  auto m = [&] { return trace_to_json(resolve_object(Ideal::from_strings(r, {"x1^6*x2^7*x3^4"}), 5, {0, 1, 2})); };
  EXPECT_EQ(m(), m());
}

TEST(Trace, StageTwoCarriesTotalExponents) {
  auto j = ordered_json::parse(trace_to_json(quintic()));
  bool found = false;
  for (const auto& n : j["nodes"])
    if (n["stage"] == 2 && n["total"] == ordered_json({{"1", 2}, {"2", 4}})) found = true;
  EXPECT_TRUE(found);
  EXPECT_EQ(j["result"]["status"], "resolved");
}

TEST(Trace, FreshRunVerifies) {
  auto t = trace_from_json(trace_to_json(quintic()));
  auto rep = verify_trace(t, 20, 3);
  EXPECT_TRUE(rep.ok) << rep.failure;
  EXPECT_GT(rep.checks, 0u);
}

TEST(Trace, MonomialRunVerifies) {
  auto r = make_ring({"x1", "x2", "x3"});
  auto t = resolve_object(Ideal::from_strings(r, {"x1^6*x2^7*x3^4"}), 5, {0, 1, 2});
  auto rep = verify_trace(trace_from_json(trace_to_json(t)), 5, 1);
  EXPECT_TRUE(rep.ok) << rep.failure;
}

TEST(Trace, TamperedExponentFailsAtThatNode) {
  for (const char* field : {"a", "total"}) {
    auto j = ordered_json::parse(trace_to_json(quintic()));
    int chart = tamper(j, field, 2);
    ASSERT_GE(chart, 0);
    auto rep = verify_trace(trace_from_json(j.dump(2)));
    EXPECT_FALSE(rep.ok) << field;
    EXPECT_NE(rep.failure.find("chart " + std::to_string(chart)), std::string::npos) << rep.failure;
    EXPECT_NE(rep.failure.find("stage 2"), std::string::npos) << rep.failure;
  }
}

TEST(Trace, TamperedCertificateFails) {
  auto j = ordered_json::parse(trace_to_json(quintic()));
  auto& p = j["result"]["principal"];
  ASSERT_FALSE(p.empty());
  auto& first = p.begin().value();
  auto it = first.begin();
  it.value() = it.value().get<unsigned>() + 1;
  EXPECT_FALSE(verify_trace(trace_from_json(j.dump(2))).ok);
}

TEST(Trace, EditedChartMapIsRejected) {
  auto j = ordered_json::parse(trace_to_json(quintic()));
  auto& map = j["charts"][1]["map"];
  map.begin().value() = "x+1";
  EXPECT_THROW(trace_from_json(j.dump(2)), TraceFormatError);
}

TEST(Trace, EmptyInputIsAFormatError) {
  EXPECT_THROW(trace_from_json(""), TraceFormatError);
  EXPECT_THROW(trace_from_json("{}"), TraceFormatError);
  EXPECT_THROW(trace_from_json("[1, 2"), TraceFormatError);
}

TEST(Trace, InvariantParsing) {
  for (const char* s : {"[(2,0), (5/2,0), inf]", "[(1,1), Γ(-1, 1, [3]), inf]", "[(1,0), *, *]",
                        "[Γ(-2, 6/5, [3,4]), inf, inf, inf]", "[]"})
    EXPECT_EQ(to_string(parse_invariant(s)), s);
  EXPECT_THROW(parse_invariant("[(1,"), TraceFormatError);
}

TEST(Trace, TextAndDot) {
  auto t = quintic();
  auto text = trace_to_text(t);
  EXPECT_NE(text.find("(5/2,0)"), std::string::npos);
  auto dot = trace_to_dot(t);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("->"), std::string::npos);
}
