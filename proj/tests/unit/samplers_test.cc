#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "helpers.h"
#include "relex/errors.h"
#include "relex/isomorphism.h"
#include "relex/reference.h"
#include "relex/samplers.h"
#include "relex/stat_tests.h"

namespace relex {
namespace {

using testing::iota_vec;

// Binomial 4-sigma band.
void expect_frequency(std::size_t hits, std::size_t n, double p, const std::string& what = "") {
  const double f = static_cast<double>(hits) / static_cast<double>(n);
  EXPECT_NEAR(f, p, 4 * std::sqrt(p * (1 - p) / static_cast<double>(n))) << what;
}

TEST(Samplers, EveryNamedSamplerIsProjective) {
  for (const auto& name : named_sampler_names()) {
    const auto sampler = named_sampler(name);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const Structure big = sampler(6, seed);
      for (int m = 0; m <= 6; ++m) EXPECT_EQ(restrict(big, iota_vec(m)), sampler(m, seed)) << name << " m=" << m;
    }
  }
}

TEST(Framewise, OutputsLieInTheClass) {
  for (const char* name : {"graphs", "digraphs", "tournaments", "3-hypergraphs"}) {
    const auto k = builtin_class(name);
    const auto sampler = named_sampler(std::string("framewise-") + name);
    for (std::uint64_t seed = 0; seed < 40; ++seed) EXPECT_TRUE(k.contains(sampler(5, seed))) << name;
  }
}

TEST(Framewise, TournamentsOnThreePointsAreUniform) {
  const auto sampler = named_sampler("framewise-tournaments");
  std::map<Structure, std::size_t> counts;
  const std::size_t n = 16000;
  for (std::size_t i = 0; i < n; ++i) ++counts[sampler(3, derive_seed(3, 0, i))];
  ASSERT_EQ(counts.size(), 8u);
  for (const auto& [s, c] : counts) expect_frequency(c, n, 0.125);
}

TEST(Framewise, GraphEdgesAreFairCoins) {
  const auto sampler = named_sampler("framewise-graphs");
  std::size_t edges = 0;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) edges += sampler(2, derive_seed(4, 0, i)).holds(0, {1, 2});
  expect_frequency(edges, n, 0.5);
}

// Delegates to `base` for the subset s and answers every other query from
// a different seed.
class PerturbedSource final : public RandomSource {
 public:
  PerturbedSource(const RandomSource& base, std::vector<int> s, std::uint64_t other_seed)
      : base_(base), s_(std::move(s)), other_(other_seed, base.max_arity()) {}
  double xi(std::span<const int> subset) const override {
    return same(subset) ? base_.xi(subset) : other_.xi(subset);
  }
  std::vector<int> ordering(std::span<const int> subset) const override {
    return same(subset) ? base_.ordering(subset) : other_.ordering(subset);
  }
  double uniform(std::string_view tag, std::span<const std::int64_t> key) const override {
    return other_.uniform(tag, key);
  }
  int max_arity() const override { return base_.max_arity(); }

 private:
  bool same(std::span<const int> subset) const {
    std::vector<int> v(subset.begin(), subset.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v == s_;
  }
  const RandomSource& base_;
  std::vector<int> s_;
  HierarchicalRandomSource other_;
};

// The decision at s depends only on the lower structure, xi_s and the order
// of s: replaying it with every other random input changed gives the same
// choice.
TEST(Framewise, FactorsThroughSubstructures) {
  for (const char* name : {"graphs", "tournaments", "3-hypergraphs"}) {
    const auto k = builtin_class(name);
    const int arity = k.signature().max_arity();
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const HierarchicalRandomSource src(seed, arity);
      const Structure m = sample_framewise(k, 4, src);
      for (const std::vector<int>& s : {std::vector<int>{2, 4}, std::vector<int>{1, 3, 4}}) {
        const Structure lower = restrict(m, s);
        const auto a = framewise_step(k, lower, s, src);
        const auto b = framewise_step(k, lower, s, PerturbedSource(src, s, seed + 1000));
        EXPECT_EQ(a.chosen, b.chosen) << name;
        EXPECT_EQ(a.chosen, lower) << name;  // the step reproduces the sample's own choice
      }
    }
  }
}

TEST(Framewise, EquivalenceRelationsHitAmalgamationFailure) {
  const auto k = builtin_class("equivalence");
  bool failed = false;
  for (std::uint64_t seed = 0; seed < 100 && !failed; ++seed) {
    try {
      sample_framewise(k, 4, HierarchicalRandomSource(seed, 2));
    } catch (const AmalgamationFailure& e) {
      failed = true;
      EXPECT_EQ(e.subset().size(), 3u);
      EXPECT_TRUE(amalgams(e.family(), k).all.empty());
    }
  }
  EXPECT_TRUE(failed);
}

TEST(Framewise, CustomWeightsShiftClassFrequencies) {
  const auto k = builtin_class("graphs");
  ClassWeights w;
  w[canonical_form(Structure::from_tuples(k.signature(), 2, {{{1, 2}, {2, 1}}}))] = 3.0;
  std::size_t edges = 0;
  const std::size_t n = 8000;
  for (std::size_t i = 0; i < n; ++i) {
    edges += sample_framewise(k, 2, HierarchicalRandomSource(derive_seed(5, 0, i), 2), w).holds(0, {1, 2});
  }
  expect_frequency(edges, n, 0.75);
  ClassWeights bad;
  bad[canonical_form(Structure(k.signature(), 2))] = 0.0;
  EXPECT_THROW(sample_framewise(k, 2, HierarchicalRandomSource(1, 2), bad), PreconditionError);
}

TEST(MExchangeable, ContextBlindRulesReduceToExchangeable) {
  const auto m = reference_oracle("evens");
  RuleSet rules = load_rule_set(random_graph_rules_json());
  rules.reference_signature = m->signature();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HierarchicalRandomSource src(seed, 2);
    const auto plain = sample_exchangeable(rules, 6, src);
    EXPECT_EQ(sample_m_exchangeable(rules, *m, 6, src), plain);
    EXPECT_EQ(sample_maxseg_exchangeable(rules, *m, 6, src), plain);
  }
}

TEST(MExchangeable, TwoCoinMarginals) {
  const auto sampler = named_sampler("strong-rep");
  std::vector<std::size_t> hits(5, 0);
  const std::size_t n = 6000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = sampler(4, derive_seed(6, 0, i));
    for (int x = 1; x <= 4; ++x) hits[static_cast<std::size_t>(x)] += s.holds(0, {x});
  }
  for (int x = 1; x <= 4; ++x) expect_frequency(hits[static_cast<std::size_t>(x)], n, x % 2 ? 0.3 : 0.7);
}

TEST(Maxseg, WeakRepFormsAgreeInDistribution) {
  const std::vector<int> all = iota_vec(4);
  const auto a = empirical_law(named_sampler("weak-rep"), all, 6000, SeedStream{7, 1});
  const auto b = empirical_law(named_sampler("weak-rep-maxseg"), all, 6000, SeedStream{7, 2});
  EXPECT_TRUE(test_equal_law(a, b, 0.01).pass);
}

TEST(PaperExamples, WeakRepExactlyOneAcrossClasses) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto draw = paper_example("weak-rep", 6, seed);
    const auto m = draw.reference->prefix(6);
    for (int i = 1; i <= 6; ++i)
      for (int j = 1; j <= 6; ++j)
        for (int k = j + 1; k <= 6; ++k) {
          if (j == i || k == i || m.holds(0, {i, j, k})) continue;
          EXPECT_NE(draw.sample.holds(0, {i, j}), draw.sample.holds(0, {i, k}));
        }
  }
  EXPECT_THROW(paper_example("nope", 3, 0), PreconditionError);
}

TEST(PaperExamples, TdcMarginalIsOneThird) {
  std::vector<std::size_t> hits(6, 0);
  const std::size_t n = 9000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = paper_example("tdc-evens", 5, derive_seed(8, 0, i)).sample;
    for (int x = 1; x <= 5; ++x) hits[static_cast<std::size_t>(x)] += s.holds(0, {x});
  }
  for (int x = 1; x <= 5; ++x) expect_frequency(hits[static_cast<std::size_t>(x)], n, 1.0 / 3, std::to_string(x));
}

FiniteClass unary_class() {
  return FiniteClass::from_predicate("unary", Signature{{"P", 1}}, [](const Structure&) { return true; });
}

TEST(AgeIndexed, TwoCoinTablesAndInvariance) {
  const auto m = reference_oracle("evens");
  const auto law = age_indexed_from_sampler(named_sampler("strong-rep"), *m, unary_class(), 2, 4000, 9);
  const Structure p_point = Structure::from_tuples(Signature{{"P", 1}}, 1, {{{1}}});
  const auto& table = law.table_for(p_point);
  double in = 0;
  for (const auto& [x, p] : table) in += x.holds(0, {1}) ? p : 0;
  expect_frequency(static_cast<std::size_t>(std::lround(in * 4000)), 4000, 0.7);
  EXPECT_LT(invariance_discrepancy(law).worst, 0.05);
}

TEST(AgeIndexed, TournamentLawIsInvariant) {
  const auto trivial = reference_oracle("trivial");
  const auto sets = FiniteClass::from_predicate("sets", Signature(), [](const Structure&) { return true; });
  const auto law = age_indexed_from_sampler(named_sampler("tournament"), *trivial, sets, 3, 4000, 10);
  const auto d = invariance_discrepancy(law);
  EXPECT_LT(d.worst, 0.05);
}

TEST(AgeIndexed, ViolatorShowsDiscrepancy) {
  const auto trivial = reference_oracle("trivial");
  const auto sets = FiniteClass::from_predicate("sets", Signature(), [](const Structure&) { return true; });
  const auto law = age_indexed_from_sampler(named_sampler("label-parity"), *trivial, sets, 2, 4000, 11);
  EXPECT_GT(invariance_discrepancy(law).worst, 0.2);
}

TEST(Sequential, DeterministicLawGivesItsStructure) {
  const auto trivial = reference_oracle("trivial");
  AgeIndexedLaw law;
  law.signature = Signature{{"P", 1}};
  Structure target(law.signature, 3);
  target.set(0, {1});
  target.set(0, {3});
  for (int k = 1; k <= 3; ++k) {
    law.ages.push_back(trivial->prefix(k));
    law.tables.push_back({{restrict(target, iota_vec(k)), 1.0}});
  }
  EXPECT_EQ(sample_sequential(law, *trivial, 3, HierarchicalRandomSource(1, 1)), target);
}

TEST(Sequential, InconsistentLawRaises) {
  const auto trivial = reference_oracle("trivial");
  AgeIndexedLaw law;
  law.signature = Signature{{"P", 1}};
  Structure one(law.signature, 1);
  one.set(0, {1});
  law.ages = {trivial->prefix(1), trivial->prefix(2)};
  law.tables = {{{one, 1.0}}, {{Structure(law.signature, 2), 1.0}}};
  try {
    sample_sequential(law, *trivial, 2, HierarchicalRandomSource(1, 1));
    FAIL() << "expected ZeroProbabilityConditioning";
  } catch (const ZeroProbabilityConditioning& e) {
    EXPECT_EQ(e.step(), 2);
  }
}

TEST(Sequential, MatchesDirectSamplingInDistribution) {
  const auto m = reference_oracle("evens");
  const auto direct = named_sampler("strong-rep");
  const auto law = age_indexed_from_sampler(direct, *m, unary_class(), 3, 20000, 12);
  const SamplerFn sequential = [&](int n, std::uint64_t seed) {
    return sample_sequential(law, *m, n, HierarchicalRandomSource(seed, 1));
  };
  const std::vector<int> all = iota_vec(3);
  const auto a = empirical_law(sequential, all, 5000, SeedStream{12, 1});
  const auto b = empirical_law(direct, all, 5000, SeedStream{12, 2});
  EXPECT_TRUE(test_equal_law(a, b, 0.01).pass);
}

}  // namespace
}  // namespace relex
