#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "hornred/cli.hpp"

using hornred::cli::run;

namespace {

const std::string kBase = "P0(x1,x2) :- P1(x1,x3), P2(x1,x4), P3(x2,x3), P4(x2,x4), P5(x3,x4).";

std::string write_temp(const std::string& text) {
  std::string path = ::testing::TempDir() + "hornred_cli_theory.thy";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, EnumerateCount) {
  auto r = run({"hornred", "enumerate", "--arity", "2", "--body", "2", "--two-connected", "--most-general", "--count"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "32\n");
}

TEST(Cli, EnumerateJsonHasSchema) {
  auto r = run({"hornred", "enumerate", "--arity", "1", "--body", "1", "--connected", "--most-general", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["clauses"][1], "P0(x1) :- P1(x1).");
}

TEST(Cli, CheckVerdictsAndExitCodes) {
  auto irr = run({"hornred", "check", "--clause", kBase});
  EXPECT_EQ(irr.code, 0);
  EXPECT_EQ(irr.out.rfind("irreducible", 0), 0u);
  auto red = run({"hornred", "check", "--clause", kBase, "--mode", "standard"});
  EXPECT_EQ(red.code, 1);
  EXPECT_EQ(red.out.rfind("reducible", 0), 0u);
  auto fwd = run({"hornred", "check", "--clause", kBase, "--method", "forward", "--json"});
  EXPECT_EQ(fwd.code, 0);
  EXPECT_EQ(nlohmann::json::parse(fwd.out)["verdict"], "irreducible");
}

TEST(Cli, ReduceTheoryFile) {
  auto path = write_temp("# intro\nP0(x) :- P1(x).\nP0(x) :- P1(x), P2(x).\nP0(x) :- P1(x), P2(x), P3(x).\n");
  auto r = run({"hornred", "reduce", "--theory", path, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["report"]["core"].size(), 2u);
  EXPECT_EQ(j["report"]["removed"].size(), 1u);
  EXPECT_NE(r.err.find("core: 2"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, ReduceFragment) {
  auto r = run({"hornred", "reduce", "--fragment", "1,3", "--connected", "--most-general"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("core: 2 clause(s)", 0), 0u);
}

TEST(Cli, DeriveFindsProof) {
  auto path = write_temp("P0(x) :- P1(x), P2(x).\n");
  auto r = run({"hornred", "derive", "--theory", path, "--goal", "P0(x) :- P1(x), P2(x), P3(x)."});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sld-resolution"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, GraphReport) {
  auto r = run({"hornred", "graph", "--clause", "P0(x1,x2) :- P1(x1,x3), P2(x4,x2).", "--dot"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("connected: yes"), std::string::npos);
  EXPECT_NE(r.out.find("two-connected: no"), std::string::npos);
  EXPECT_NE(r.out.find("pending: x3 x4"), std::string::npos);
  EXPECT_NE(r.out.find("graph {"), std::string::npos);
}

TEST(Cli, ExtendCountsFamily) {
  auto r = run({"hornred", "extend", "--clause", kBase, "--depth", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 17);
}

TEST(Cli, ErrorExitCodes) {
  EXPECT_EQ(run({"hornred"}).code, hornred::cli::kExitUsage);
  EXPECT_EQ(run({"hornred", "frobnicate"}).code, hornred::cli::kExitUsage);
  EXPECT_EQ(run({"hornred", "check", "--clause", "P0(x1 :- ."}).code, hornred::cli::kExitParse);
  EXPECT_EQ(run({"hornred", "check", "--clause", kBase, "--mode", "weird"}).code, hornred::cli::kExitUsage);
  EXPECT_EQ(run({"hornred", "reduce", "--theory", "/nonexistent/theory.thy"}).code, hornred::cli::kExitNoInput);
  EXPECT_EQ(run({"hornred", "reduce", "--fragment", "x"}).code, hornred::cli::kExitUsage);
  auto help = run({"hornred", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("enumerate"), std::string::npos);
}
