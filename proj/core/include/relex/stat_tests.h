#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relex/embeddings.h"
#include "relex/samplers.h"
#include "relex/structure.h"

namespace relex {

// Seeds for one batch of samples: seed i is derive_seed(meta_seed, stream, i).
struct SeedStream {
  std::uint64_t meta_seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t operator()(std::uint64_t i) const;
};

// Tally of X|_S over N draws; keys are structures on [1,|S|].
struct EmpiricalLaw {
  std::vector<int> subset;
  std::map<Structure, std::size_t> counts;
  std::size_t n_samples = 0;
};

EmpiricalLaw empirical_law(const SamplerFn& sampler, std::span<const int> subset,
                           std::size_t n_samples, SeedStream seeds);

// Restricts each of `samples` along `images` (element p of the key is
// images[p-1]) and tallies.
EmpiricalLaw tally(const std::vector<Structure>& samples, std::span<const int> images);

struct CellContribution {
  std::string cell;  // serialized key, or "other"
  double observed_a = 0;
  double observed_b = 0;
  double expected_a = 0;
  double expected_b = 0;
  double contribution = 0;
};

struct TestReport {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  double alpha = 0.01;
  bool pass = true;
  std::size_t comparisons = 1;  // Bonferroni family size
  std::size_t skipped = 0;      // probes with nothing to compare
  std::string note;
  std::vector<CellContribution> details;  // for the worst comparison
};

// Upper-tail chi-square probability.
double chi_square_sf(double statistic, int dof);

// Two-sample chi-square on the pooled support; cells with expected count
// below 5 are merged into "other". Throws InsufficientCounts when either
// sample has fewer than 5 draws.
TestReport test_equal_law(const EmpiricalLaw& a, const EmpiricalLaw& b, double alpha);

// Compares X|_[n] with (X^sigma)|_[n] for every non-identity permutation
// sigma of [n], using independent draws for the two sides. The report
// carries the Bonferroni-adjusted smallest p-value.
TestReport test_exchangeability(const SamplerFn& sampler, int n, std::size_t n_samples,
                                double alpha, std::uint64_t meta_seed);

// For subsets S, T of [1,window] with |S| = |T| <= n and every embedding
// phi: M|_S -> M|_T other than the identity, compares law(X|_S) with the
// law of X|_T pulled back along phi.
TestReport test_relative_exchangeability(const SamplerFn& sampler, const RestrictionOracle& m,
                                         int n, int window, std::size_t n_samples, double alpha,
                                         std::uint64_t meta_seed);

// Chi-square independence of X|_S and X|_T for disjoint S and T.
TestReport test_dissociation(const SamplerFn& sampler, std::span<const int> s,
                             std::span<const int> t, std::size_t n_samples, double alpha,
                             std::uint64_t meta_seed);

}  // namespace relex
