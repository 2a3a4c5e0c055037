#include <gtest/gtest.h>

#include <filesystem>

#include "relex/errors.h"
#include "relex/io.h"
#include "relex/reference.h"

#ifndef RELEX_CORPUS_DIR
#define RELEX_CORPUS_DIR "corpus"
#endif

namespace relex {
namespace {

namespace fs = std::filesystem;

TEST(Io, ReportsSerializeWithSortedKeys) {
  const auto r = check_ndap(builtin_class("equivalence"), 3);
  const auto j = to_json(r);
  EXPECT_FALSE(j.at("holds").get<bool>());
  EXPECT_EQ(j.at("witness_family").size(), 3u);
  const auto text = j.dump();
  EXPECT_LT(text.find("\"families_checked\""), text.find("\"holds\""));
  EXPECT_TRUE(to_json(check_jep(builtin_class("graphs"), 2)).at("failing_pair").is_null());
}

TEST(Io, ParametricReportUsesOneBasedSentence) {
  const auto rep = is_parametric(parse_theory("rel R/2; forall x . R(x,x); forall x y z . R(x,y) -> R(x,z);"));
  const auto j = to_json(rep);
  EXPECT_EQ(j.at("sentence"), 2);
  EXPECT_EQ(j.at("offending_atom"), "R(x,y)");
  EXPECT_TRUE(to_json(is_parametric(parse_theory("rel R/2;"))).at("offending_atom").is_null());
}

TEST(Io, TestReportVerdict) {
  TestReport r;
  r.pass = false;
  EXPECT_EQ(to_json(r).at("verdict"), "fail");
}

TEST(Io, CorpusFilesLoad) {
  const fs::path root = RELEX_CORPUS_DIR;
  std::size_t theories = 0;
  for (const auto& e : fs::directory_iterator(root / "theories")) {
    EXPECT_NO_THROW(parse_theory(read_text_file(e.path().string()))) << e.path();
    ++theories;
  }
  EXPECT_GE(theories, 8u);
  for (const auto& e : fs::directory_iterator(root / "rules")) {
    EXPECT_NO_THROW(load_rule_set(read_json_file(e.path().string()))) << e.path();
  }
  for (const auto& e : fs::directory_iterator(root / "structures")) {
    const auto j = read_json_file(e.path().string());
    EXPECT_EQ(to_json(structure_from_json(j)), j) << e.path();
  }
  const auto k = load_class((root / "theories" / "graphs.theory").string());
  EXPECT_EQ(k.name(), "graphs");
  EXPECT_EQ(k.enumerate(3), builtin_class("graphs").enumerate(3));
}

TEST(Io, ShippedRuleFilesMatchBuilders) {
  const fs::path rules = fs::path(RELEX_CORPUS_DIR) / "rules";
  EXPECT_EQ(read_json_file((rules / "random_graph.json").string()), random_graph_rules_json());
  EXPECT_EQ(read_json_file((rules / "strong_rep.json").string()), strong_rep_rules_json());
}

TEST(Io, MissingFilesAreReported) {
  EXPECT_THROW(read_text_file("/nonexistent/file"), PreconditionError);
  EXPECT_THROW(load_class("/nonexistent/file.theory"), PreconditionError);
}

}  // namespace
}  // namespace relex
