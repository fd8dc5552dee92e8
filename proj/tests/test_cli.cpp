#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "steinitz/cli.hpp"

using namespace steinitz;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = STEINITZ_DEFAULT_FIXTURES;

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "steinitz_cli");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string group_file(const std::string& name) { return (kFixtures / "groups" / (name + ".json")).string(); }
std::string field_file(const std::string& name) { return (kFixtures / "fields" / (name + ".json")).string(); }

std::string temp_json(const std::string& name, const json& j) {
  const auto p = fs::temp_directory_path() / ("steinitz_cli_test_" + name + ".json");
  std::ofstream(p) << j.dump();
  return p.string();
}

} // namespace

TEST(Cli, HelpSucceeds) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("calw"), std::string::npos);
}

TEST(Cli, MissingSubcommandIsBadInput) { EXPECT_EQ(invoke({}).code, 2); }

TEST(Cli, AnalyzeHeisenberg) {
  auto r = invoke({"analyze-group", "-g", group_file("he3")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["order"], 27);
  EXPECT_TRUE(j["aprime"].is_null());
  for (auto& c : j["conjugacy_classes"]) EXPECT_EQ(c["phi"], json::array({1}));
  EXPECT_EQ(j["classification"]["kind"], "exponent_l");
  EXPECT_EQ(j["classification"]["witnesses_verified"], true);
}

TEST(Cli, AnalyzeCyclicEight) {
  auto r = invoke({"analyze-group", "-g", group_file("c8")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["aprime"]["kind"], "abelian");
  EXPECT_FALSE(j.contains("classification"));
}

TEST(Cli, AnalyzeModularEightyOne) {
  auto r = invoke({"analyze-group", "-g", group_file("m81")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["classification"]["kind"], "modular");
  EXPECT_EQ(j["classification"]["e_tau"], 9);
}

TEST(Cli, CalwCyclicEightOverQiSqrt10) {
  auto r = invoke({"calw", "-g", group_file("c8"), "-k", field_file("qi_sqrt10")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["calw"]["order"], 2);
  EXPECT_EQ(j["calw"]["forms_agree"], true);
  EXPECT_TRUE(j["certificate"].is_null());
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"calw", "-g", group_file("c9_c9"), "-k", field_file("qm23")};
  auto a = invoke(args), b = invoke(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto c = invoke({"verify", "--suite", "powers", "--seed", "3"});
  auto d = invoke({"verify", "--suite", "powers", "--seed", "3"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, TableFormat) {
  auto r = invoke({"e-fields", "-g", group_file("c7_c3"), "-k", field_file("qm5"), "--format", "table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tau_order"), std::string::npos);
  EXPECT_THROW(json::parse(r.out), json::parse_error);
}

TEST(Cli, Reproduce) {
  for (auto name : {"c8_example", "gruppiacta", "espl"}) {
    auto r = invoke({"reproduce", name});
    EXPECT_EQ(r.code, 0) << name << r.err;
    EXPECT_EQ(json::parse(r.out)["passed"], true) << name;
    EXPECT_NE(r.err.find("PASS"), std::string::npos);
  }
}

TEST(Cli, BadInputs) {
  EXPECT_EQ(invoke({"reproduce", "no_such_scenario"}).code, 2);
  EXPECT_EQ(invoke({"analyze-group", "-g", "/nonexistent/group.json"}).code, 2);
  EXPECT_EQ(invoke({"analyze-group", "-g", temp_json("bad_group", {{"kind", "cyclic"}, {"n", -3}})}).code, 2);
  EXPECT_EQ(invoke({"analyze-group", "-g", temp_json("unknown_kind", {{"kind", "sporadic"}})}).code, 2);
  EXPECT_EQ(invoke({"calw", "-g", group_file("c8"), "-k", temp_json("bad_field", {{"kind", "imag_quadratic"}, {"d", 4}})}).code, 2);
  EXPECT_EQ(invoke({"calw", "-g", group_file("c8"), "-k", field_file("q"), "--bound", "1"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({"--format", "xml", "classify", "-g", group_file("he3")}).code, 2);
  EXPECT_EQ(invoke({"classify", "-g", group_file("s3")}).code, 2);

  const auto empty = fs::temp_directory_path() / "steinitz_cli_test_empty";
  fs::create_directories(empty);
  EXPECT_EQ(invoke({"--fixtures", empty.string(), "reproduce", "c8_example"}).code, 2);
}

TEST(Cli, InconsistentDeclaredData) {
  const json field{{"kind", "declared"},
                   {"gal", {{"8", {1, 5}}}},
                   {"class_group", {2}},
                   {"prime_norm_classes", {{13, {1}}, {3, {0}}}}};
  auto r = invoke({"calw", "-g", group_file("c8"), "-k", temp_json("inconsistent", field)});
  EXPECT_EQ(r.code, 4) << r.err;
  const json tower{{"kind", "declared"},
                   {"gal", {{"8", {1, 5}}, {"4", {1, 3}}}},
                   {"class_group", {2}},
                   {"prime_norm_classes", json::array()}};
  EXPECT_EQ(invoke({"calw", "-g", group_file("c8"), "-k", temp_json("tower", tower)}).code, 4);
}
