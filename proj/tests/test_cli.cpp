#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qwsearch/cli.hpp"
#include "qwsearch/errors.hpp"

using namespace qwsearch;
using namespace qwsearch::cli;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const ParseOutcome parsed = parse_args(args, out, err);
  Invocation inv;
  inv.code = parsed.config ? dispatch(*parsed.config, out, err) : parsed.exit_code;
  inv.out = out.str();
  inv.err = err.str();
  return inv;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST(ParseArgs, SimulateConfig) {
  std::ostringstream out, err;
  const ParseOutcome p = parse_args({"simulate", "--side", "10", "--steps", "200"}, out, err);
  ASSERT_TRUE(p.config.has_value());
  EXPECT_EQ(p.config->subcommand, Subcommand::simulate);
  EXPECT_EQ(p.config->side, 10);
  EXPECT_EQ(p.config->steps, 200);
  EXPECT_EQ(p.config->marked, (Vertex{0, 0}));
  EXPECT_EQ(p.config->format, Format::csv);
}

TEST(ParseArgs, ParityIsValidatedPerSubcommand) {
  const Invocation bad = invoke({"analytic", "--side", "8"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("m ≡ 2 (mod 4)"), std::string::npos);
  EXPECT_EQ(invoke({"spectrum", "--side", "12"}).code, kExitUsage);
  // simulate only needs an even side when steps are explicit.
  EXPECT_EQ(invoke({"simulate", "--side", "8", "--steps", "3"}).code, kExitOk);
  EXPECT_EQ(invoke({"simulate", "--side", "8"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--side", "7", "--steps", "3"}).code, kExitUsage);
}

TEST(ParseArgs, SideRanges) {
  EXPECT_EQ(parse_sides("6:30:8"), (std::vector<int>{6, 14, 22, 30}));
  EXPECT_EQ(parse_sides("6,10,14"), (std::vector<int>{6, 10, 14}));
  EXPECT_THROW(parse_sides("6:30"), std::invalid_argument);
  EXPECT_THROW(parse_sides("6:x:4"), std::invalid_argument);
  EXPECT_THROW(parse_sides("6:30:0"), std::invalid_argument);

  std::ostringstream out, err;
  const ParseOutcome ok = parse_args({"sweep", "--sides", "6:62:8"}, out, err);
  ASSERT_TRUE(ok.config.has_value());
  EXPECT_EQ(ok.config->sides, (std::vector<int>{6, 14, 22, 30, 38, 46, 54, 62}));
  const Invocation bad = invoke({"sweep", "--sides", "6:62:6"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("side 12"), std::string::npos);
}

TEST(ParseArgs, UnknownFlagsAndMissingSubcommand) {
  EXPECT_EQ(invoke({"simulate", "--side", "6", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--side", "6", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "--side", "6", "--marked", "9,0", "--steps", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Dispatch, AnalyticJsonRecord) {
  const Invocation inv = invoke({"analytic", "--side", "6", "--format", "json"});
  ASSERT_EQ(inv.code, kExitOk) << inv.err;
  const auto j = nlohmann::json::parse(inv.out);
  EXPECT_NEAR(j["alpha"].get<double>(), 0.6455, 1e-4);
  EXPECT_EQ(j["t_pred"], 2);
  EXPECT_NEAR(j["B_minus_Cx"].get<double>(), 0.533333, 1e-6);
}

TEST(Dispatch, SimulateZeroSteps) {
  const Invocation inv = invoke({"simulate", "--side", "6", "--steps", "0"});
  ASSERT_EQ(inv.code, kExitOk);
  const auto ls = lines(inv.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "t,p_t,re_overlap,im_overlap");
  EXPECT_EQ(ls[1], "0,0.0277777777778,0.166666666667,0");
}

TEST(Dispatch, SimulateAutoStepsUsesEightTPred) {
  const Invocation inv = invoke({"simulate", "--side", "10", "--format", "json"});
  ASSERT_EQ(inv.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(inv.out).size(), 8u * 5u + 1u);
}

TEST(Dispatch, SpectrumTable) {
  const Invocation inv = invoke({"spectrum", "--side", "6"});
  ASSERT_EQ(inv.code, kExitOk) << inv.err;
  const auto ls = lines(inv.out);
  ASSERT_EQ(ls.size(), 10u);
  EXPECT_EQ(ls[0], "k,l,theta,overlap_00_w0,overlap_00_w1,identity,dense_alpha");
  EXPECT_EQ(ls[1].rfind("0,0,0,", 0), 0u);
  EXPECT_NE(ls[1].find(",1,0.519278143654"), std::string::npos);

  const Invocation capped = invoke({"spectrum", "--side", "10", "--cap", "64"});
  ASSERT_EQ(capped.code, kExitOk);
  EXPECT_EQ(lines(capped.out)[1].back(), ',');
  EXPECT_FALSE(capped.err.empty());
}

TEST(Dispatch, NumericalFailureExitsTwo) {
  const Invocation inv = invoke({"spectrum", "--side", "6", "--degenerate-tol", "10"});
  EXPECT_EQ(inv.code, kExitNumerical);
  EXPECT_TRUE(inv.out.empty());
  EXPECT_NE(inv.err.find("error:"), std::string::npos);
}

TEST(Dispatch, SweepAndAmplify) {
  const Invocation s = invoke({"sweep", "--sides", "6,10", "--no-timing"});
  ASSERT_EQ(s.code, kExitOk);
  EXPECT_EQ(parse_rows(s.out).size(), 2u);
  EXPECT_EQ(s.out, invoke({"sweep", "--sides", "6,10", "--no-timing"}).out);

  const Invocation a = invoke({"amplify", "--side", "14", "--steps", "7", "--format", "json"});
  ASSERT_EQ(a.code, kExitOk);
  const auto j = nlohmann::json::parse(a.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["round"], 2);
  EXPECT_GE(j[1]["p"].get<double>(), 0.5);
}

TEST(Dispatch, OutputDirectoryFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "qwsearch_cli_out";
  std::filesystem::create_directories(dir);
  ::setenv("QWSEARCH_OUTPUT_DIR", dir.c_str(), 1);
  const Invocation inv = invoke({"simulate", "--side", "6", "--steps", "2", "--out", "series.csv"});
  ::unsetenv("QWSEARCH_OUTPUT_DIR");
  ASSERT_EQ(inv.code, kExitOk);
  EXPECT_TRUE(inv.out.empty());
  std::ifstream in(dir / "series.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,p_t,re_overlap,im_overlap");
  EXPECT_EQ(resolve_output_path("/abs/x.csv"), "/abs/x.csv");
}
