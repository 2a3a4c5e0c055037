#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.h"
#include "relex/amalgamation.h"
#include "relex/catalog.h"
#include "relex/errors.h"
#include "relex/isomorphism.h"
#include "relex/theory.h"

namespace relex {
namespace {

struct BruteNdap {
  bool holds = true;
  std::size_t compatible = 0;
};

// Every n-tuple of members on n-1 points; compatible ones need some member
// on [n] with exactly those faces.
BruteNdap brute_ndap(const FiniteClass& k, int n) {
  const auto faces = k.enumerate(n - 1);
  std::set<Family> realized;
  for (const auto& m : k.enumerate(n)) realized.insert(faces_of(m));
  BruteNdap out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Family f;
    for (auto i : idx) f.push_back(faces[i]);
    if (pairwise_compatible(f)) {
      ++out.compatible;
      if (!realized.count(f)) out.holds = false;
    }
    std::size_t p = 0;
    while (p < idx.size() && ++idx[p] == faces.size()) idx[p++] = 0;
    if (p == idx.size()) break;
  }
  return out;
}

TEST(Ndap, MatchesBruteForceOracle) {
  const std::vector<std::pair<const char*, int>> cases = {
      {"graphs", 4}, {"digraphs", 3}, {"tournaments", 4}, {"equivalence", 3}, {"equivalence", 4},
      {"3-hypergraphs", 4}, {"parity-hypergraphs", 4}};
  for (const auto& [name, max_n] : cases) {
    const auto k = builtin_class(name);
    for (int n = 2; n <= max_n; ++n) {
      const auto fast = check_ndap(k, n);
      const auto slow = brute_ndap(k, n);
      EXPECT_EQ(fast.holds, slow.holds) << name << " n=" << n;
      if (slow.holds) EXPECT_EQ(fast.families_checked, slow.compatible) << name << " n=" << n;
      if (!fast.holds) {
        ASSERT_TRUE(fast.witness_family);
        EXPECT_TRUE(pairwise_compatible(*fast.witness_family));
        EXPECT_TRUE(amalgams(*fast.witness_family, k).all.empty());
      }
    }
  }
}

TEST(Ndap, EquivalenceWitnessIsTheTriangleFamily) {
  const auto r = check_ndap(builtin_class("equivalence"), 3);
  ASSERT_FALSE(r.holds);
  EXPECT_TRUE(families_isomorphic(*r.witness_family, equivalence_triangle_family()));
  // A family of three separated pairs is not isomorphic to it.
  Family sep(3, r.witness_family->front());
  EXPECT_FALSE(families_isomorphic(sep, equivalence_triangle_family()));
}

// Parametric theories have n-DAP for every n (spot check n <= 4).
TEST(Ndap, ParametricTheoriesAmalgamate) {
  for (const char* name : {"graphs", "digraphs", "tournaments", "3-hypergraphs"}) {
    const auto k = builtin_class(name);
    ASSERT_TRUE(is_parametric(*k.theory()).parametric);
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(check_ndap(k, n).holds) << name << " n=" << n;
  }
}

TEST(Family, FacesGlueBackToTheBoundary) {
  std::mt19937_64 rng(31);
  const auto k = builtin_class("digraphs");
  const auto all = k.enumerate(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto& m = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    const Family f = faces_of(m);
    EXPECT_TRUE(pairwise_compatible(f));
    const auto glued = glue_family(f);
    // For binary relations on 4 points every tuple misses some point.
    EXPECT_EQ(glued.free_count(), 0u);
    EXPECT_EQ(glued.values(), m);
    const auto set = amalgams(f, k);
    EXPECT_EQ(set.all, std::vector<Structure>{m});
  }
}

TEST(Family, IncompatibleFamiliesAreRejected) {
  const auto graphs = builtin_class("graphs");
  const auto two = graphs.enumerate(2);  // empty, edge
  // Faces on [3] overlap in single points, so any choice is compatible.
  EXPECT_TRUE(pairwise_compatible(Family{two[0], two[0], two[1]}));
  const auto g4 = graphs.enumerate(3);
  Family bad = {g4[0], g4[0], g4[0], g4.back()};
  EXPECT_FALSE(pairwise_compatible(bad));
  EXPECT_THROW(glue_family(bad), PreconditionError);
}

TEST(Amalgams, ClassesPartitionAllAmalgams) {
  const auto k = builtin_class("tournaments");
  const auto t2 = k.enumerate(2);
  const Family f = {t2[0], t2[0], t2[1]};
  const auto set = amalgams(f, k);
  std::size_t covered = 0;
  for (std::size_t c = 0; c < set.canonical_forms.size(); ++c) {
    for (auto i : set.members[c]) {
      EXPECT_EQ(canonical_form(set.all[i]), set.canonical_forms[c]);
      ++covered;
    }
    EXPECT_EQ(set.representatives[c], set.all[set.members[c].front()]);
  }
  EXPECT_EQ(covered, set.all.size());
  EXPECT_TRUE(std::is_sorted(set.all.begin(), set.all.end()));
}

TEST(Dap, KnownClasses) {
  const auto eq = check_dap(builtin_class("equivalence"), 3);
  EXPECT_TRUE(eq.holds);
  EXPECT_TRUE(eq.agree);
  EXPECT_TRUE(check_dap(builtin_class("graphs"), 3).holds);
  // All points share membership in P: no disjoint amalgam of {P} and {not P}
  // over the empty structure.
  const auto same = FiniteClass::from_theory("same", parse_theory("rel P/1; forall x y . P(x) -> P(y);"));
  const auto r = check_dap(same, 2);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.agree);
  EXPECT_TRUE(r.overlap_witness);
}

TEST(Jep, KnownClasses) {
  EXPECT_TRUE(check_jep(builtin_class("equivalence"), 3).holds);
  EXPECT_TRUE(check_jep(builtin_class("tournaments"), 3).holds);
  const auto same = FiniteClass::from_theory("same", parse_theory("rel P/1; forall x y . P(x) -> P(y);"));
  const auto r = check_jep(same, 2);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.failing_pair);
  EXPECT_NE(r.failing_pair->first.tuple_count(0), r.failing_pair->second.tuple_count(0));
}

TEST(Checks, RespectCap) {
  EXPECT_THROW(check_ndap(builtin_class("graphs"), 7), CapExceeded);
  EXPECT_THROW(check_dap(builtin_class("graphs"), 5, 4), CapExceeded);
  EXPECT_THROW(check_jep(builtin_class("graphs"), 7), CapExceeded);
}

}  // namespace
}  // namespace relex
