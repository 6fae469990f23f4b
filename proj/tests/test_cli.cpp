#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("desing_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    auto p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "desing");
    out_.str("");
    err_.str("");
    return desing::cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, MaxordPrintsOrderAndTopDelta) {
  auto spec = file("cubic.json", R"({"vars":["X","Y","Z"],"gens":["Z^3+X*Y^2*Z+X^5"]})");
  ASSERT_EQ(run({"maxord", spec}), 0) << err_.str();
  EXPECT_EQ(out_.str().substr(0, 2), "3\n");
  EXPECT_NE(out_.str().find("<Z, Y^2, X*Y, X^3>"), std::string::npos) << out_.str();
  ASSERT_EQ(run({"maxord", spec, "--format", "json"}), 0);
  auto j = ordered_json::parse(out_.str());
  EXPECT_EQ(j["max_order"], 3);
  EXPECT_EQ(j["delta"].size(), 4u);
}

TEST_F(Cli, PrincipalizeWritesJsonWithStageTwoExponents) {
  auto spec = file("q.json", R"({"vars":["x","y"],"gens":["x^2-y^5"]})");
  auto out = path("q.trace.json");
  ASSERT_EQ(run({"principalize", spec, "--format", "json", "--out", out}), 0) << err_.str();
  auto j = ordered_json::parse(slurp(out));
  bool found = false;
  for (const auto& n : j["nodes"])
    if (n["stage"] == 2 && n["total"] == ordered_json({{"1", 2}, {"2", 4}})) found = true;
  EXPECT_TRUE(found);

  ASSERT_EQ(run({"verify", out, "--seed", "9"}), 0) << err_.str();
  EXPECT_EQ(out_.str().rfind("ok", 0), 0u);

  // The same run again gives the same bytes.
  auto again = path("again.json");
  ASSERT_EQ(run({"principalize", spec, "--format", "json", "--out", again}), 0);
  EXPECT_EQ(slurp(out), slurp(again));
}

TEST_F(Cli, VerifyRejectsTamperedAndEmptyTraces) {
  auto spec = file("q.json", R"({"vars":["x","y"],"gens":["x^2-y^5"]})");
  auto out = path("q.trace.json");
  ASSERT_EQ(run({"principalize", spec, "--format", "json", "--out", out}), 0);
  auto j = ordered_json::parse(slurp(out));
  for (auto& n : j["nodes"])
    if (n["stage"] == 3 && !n["a"].empty()) {
      auto it = n["a"].begin();
      it.value() = it.value().get<unsigned>() + 2;
      break;
    }
  auto bad = file("bad.json", j.dump(2));
  EXPECT_EQ(run({"verify", bad}), 2);
  EXPECT_NE(err_.str().find("stage 3"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("chart"), std::string::npos) << err_.str();

  EXPECT_EQ(run({"verify", file("empty.json", "")}), 1);
  EXPECT_EQ(run({"verify", file("obj.json", "{}")}), 1);
}

TEST_F(Cli, DesingReportsFirstCenterAndDescent) {
  auto spec = file("s.json", R"({"vars":["z","x","y"],"gens":["z^2+x^2+y^3"]})");
  int rc = run({"desing", spec});
  EXPECT_EQ(rc, 2);  // typed abort later in the run
  const auto text = out_.str();
  EXPECT_NE(text.find("chart 0 J = <y^3 + z^2 + x^2>, center V(z, x, y)"), std::string::npos) << text;
  EXPECT_NE(text.find("contact z, coefficient ideal (<y^3 + x^2>, 2)"), std::string::npos) << text;
  EXPECT_NE(err_.str().find("CenterNotCoordinate"), std::string::npos);
  EXPECT_NE(err_.str().find("chart"), std::string::npos);
  EXPECT_NE(err_.str().find("stage"), std::string::npos);
}

TEST_F(Cli, ResolveWithBoundAndDot) {
  auto spec = file("q.json", R"({"vars":["x","y"],"gens":["x^2-y^5"]})");
  ASSERT_EQ(run({"resolve", spec, "--bound", "2", "--format", "dot"}), 0) << err_.str();
  EXPECT_EQ(out_.str().rfind("digraph", 0), 0u);
  EXPECT_EQ(run({"resolve", spec, "--max-steps", "1"}), 2);
  EXPECT_NE(err_.str().find("ResourceLimit"), std::string::npos);
}

TEST_F(Cli, MonomialSpecWithDivisors) {
  auto spec = file("m.json", R"({"vars":["x1","x2","x3"],"gens":["x1^6*x2^7*x3^4"],"bound":5,"divisors":["x1","x2","x3"]})");
  ASSERT_EQ(run({"resolve", spec, "--format", "json"}), 0) << err_.str();
  auto j = ordered_json::parse(out_.str());
  EXPECT_EQ(j["result"]["status"], "resolved");
  EXPECT_EQ(j["problem"]["divisors"], ordered_json({"x1", "x2", "x3"}));
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run({"maxord", path("missing.json")}), 1);
  EXPECT_EQ(run({"maxord", file("a.json", R"({"vars":["x"],"gens":["y"]})")}), 1);
  EXPECT_EQ(run({"maxord", file("b.json", R"({"vars":["x"],"gens":["x^"]})")}), 1);
  EXPECT_EQ(run({"maxord", file("c.json", R"({"vars":["x","x"],"gens":["x"]})")}), 1);
  EXPECT_EQ(run({"maxord", file("d.json", R"({"vars":["x"],"gens":["x"],"divisors":["y"]})")}), 1);
  EXPECT_EQ(run({"maxord", file("e.json", R"({"vars":["x"],"gens":["0"]})")}), 1);
  EXPECT_EQ(run({"maxord", file("f.json", R"({"vars":["x"],"gens":["x"]})"), "--format", "xml"}), 1);
  EXPECT_EQ(run({"nonsense"}), 1);
  EXPECT_EQ(run({}), 1);
}
