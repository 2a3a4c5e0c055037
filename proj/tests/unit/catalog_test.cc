#include <gtest/gtest.h>

#include <set>

#include "relex/catalog.h"

namespace relex {
namespace {

TEST(Catalog, EveryClaimHolds) {
  const auto claims = verify_paper_examples();
  EXPECT_GE(claims.size(), 10u);
  std::set<std::string> ids;
  for (const auto& c : claims) {
    EXPECT_TRUE(c.passed) << c.id << ": " << c.detail;
    EXPECT_TRUE(ids.insert(c.id).second) << "duplicate id " << c.id;
  }
}

TEST(Catalog, HoldsForOtherMetaSeeds) {
  for (std::uint64_t seed : {1u, 2u}) {
    for (const auto& c : verify_paper_examples(seed)) EXPECT_TRUE(c.passed) << c.id << " seed " << seed;
  }
}

}  // namespace
}  // namespace relex
