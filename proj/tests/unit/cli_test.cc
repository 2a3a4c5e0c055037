#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.h"
#include "relex/io.h"
#include "relex/structure.h"

#ifndef RELEX_CORPUS_DIR
#define RELEX_CORPUS_DIR "corpus"
#endif

namespace relex {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "relex");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return std::string(RELEX_CORPUS_DIR) + "/" + rel; }

TEST(Cli, NdapFailureExitsOneWithWitness) {
  const auto r = run({"check", "ndap", "--class", "equivalence", "--n", "3", "--json"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("holds").get<bool>());
  EXPECT_EQ(j.at("witness_family").size(), 3u);
}

TEST(Cli, NdapSuccessExitsZero) {
  EXPECT_EQ(run({"check", "ndap", "--class", "graphs", "--n", "4"}).code, 0);
  EXPECT_EQ(run({"check", "ndap", "--class", corpus("theories/tournaments.theory"), "--n", "3"}).code, 0);
  EXPECT_EQ(run({"check", "dap", "--class", "equivalence", "--bound", "3"}).code, 0);
  EXPECT_EQ(run({"check", "jep", "--class", "graphs", "--bound", "3"}).code, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", "ndap", "--class", "graphs"}).code, 2);
  EXPECT_EQ(run({"check", "ndap", "--class", "nope", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"--cap", "9", "age", "--class", "graphs", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"--alpha", "1.5", "test", "exch", "--sampler", "random-graph"}).code, 2);
  EXPECT_EQ(run({"--samples", "0", "test", "exch", "--sampler", "random-graph"}).code, 2);
  EXPECT_EQ(run({"age", "--class", "graphs", "--n", "7"}).code, 2);  // above the default cap
  EXPECT_EQ(run({"test", "dissoc", "--sampler", "random-graph", "--s", "1,2", "--t", "2,3"}).code, 2);
  const auto r = run({"theory", "check", "/nonexistent.theory"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, SamplingIsDeterministicAndProjective) {
  const auto a = run({"sample", "framewise", "--class", "graphs", "--n", "5", "--seed", "7", "--json"});
  const auto b = run({"sample", "framewise", "--class", "graphs", "--n", "5", "--seed", "7", "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto small = run({"sample", "framewise", "--class", "graphs", "--n", "3", "--seed", "7", "--json"});
  const Structure big = structure_from_json(nlohmann::json::parse(a.out));
  EXPECT_EQ(restrict(big, {1, 2, 3}), structure_from_json(nlohmann::json::parse(small.out)));
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("RELEX_SEED", "11", 1);
  const auto env = run({"sample", "exchangeable", "--rules", "random-graph", "--n", "5", "--json"});
  ::unsetenv("RELEX_SEED");
  const auto flag = run({"sample", "exchangeable", "--rules", "random-graph", "--n", "5", "--seed", "11", "--json"});
  EXPECT_EQ(env.out, flag.out);
}

TEST(Cli, RuleSamplers) {
  EXPECT_EQ(run({"sample", "exchangeable", "--rules", corpus("rules/tournament.json"), "--n", "4"}).code, 0);
  EXPECT_EQ(run({"sample", "m-exch", "--rules", corpus("rules/strong_rep.json"), "--ref", "evens", "--n", "4"}).code, 0);
  EXPECT_EQ(run({"sample", "maxseg", "--rules", "tdc-maxseg", "--ref", "tdc-evens", "--n", "4"}).code, 0);
  // Context-reading rules need a reference structure.
  EXPECT_EQ(run({"sample", "exchangeable", "--rules", "strong-rep", "--n", "4"}).code, 2);
}

TEST(Cli, FramewiseAmalgamationFailureExitsOne) {
  bool saw = false;
  for (int seed = 0; seed < 50 && !saw; ++seed) {
    const auto r = run({"sample", "framewise", "--class", "equivalence", "--n", "4", "--seed", std::to_string(seed), "--json"});
    if (r.code == 1) {
      saw = true;
      EXPECT_EQ(nlohmann::json::parse(r.out).at("error"), "amalgamation_failure");
    }
  }
  EXPECT_TRUE(saw);
}

TEST(Cli, TheoryCommands) {
  EXPECT_EQ(run({"theory", "check", corpus("theories/graphs.theory"), "--n", "3"}).code, 0);
  const auto t = run({"theory", "check", corpus("theories/transitive.theory"), "--json"});
  EXPECT_EQ(t.code, 1);
  EXPECT_EQ(nlohmann::json::parse(t.out).at("offending_atom"), "R(x,y)");
  const auto m = run({"theory", "models", corpus("theories/equivalence.theory"), "--n", "3", "--json"});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(nlohmann::json::parse(m.out).at("count"), 5);
}

TEST(Cli, StatisticalTests) {
  EXPECT_EQ(run({"--samples", "3000", "test", "exch", "--sampler", "framewise-graphs", "--n", "3"}).code, 0);
  EXPECT_EQ(run({"--samples", "3000", "test", "exch", "--sampler", "loop-at-1", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"--samples", "3000", "test", "rel-exch", "--sampler", "strong-rep"}).code, 0);
  EXPECT_EQ(run({"--samples", "8000", "test", "dissoc", "--sampler", "strong-rep-mixed", "--s", "1", "--t", "2"}).code, 1);
  EXPECT_EQ(run({"--samples", "3000", "test", "equal", "--sampler", "weak-rep", "--other", "weak-rep-maxseg",
                 "--subset", "1,2,3"}).code,
            0);
}

TEST(Cli, EmbeddingsAndOutputFile) {
  const auto out = (std::filesystem::temp_directory_path() / "relex_cli_test.json").string();
  const auto r = run({"--json", "--output", out, "embeddings", "--source", corpus("structures/edge.json"),
                      "--target", corpus("structures/cycle4.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_json_file(out).at("count"), 8);
  std::filesystem::remove(out);
}

TEST(Cli, VerifyPaperExamples) {
  const auto r = run({"verify-paper-examples"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, AgeListsMembers) {
  const auto r = run({"age", "--class", "graphs", "--n", "4", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("count"), 64);
  EXPECT_EQ(j.at("isomorphism_classes"), 11);
}

}  // namespace
}  // namespace relex
