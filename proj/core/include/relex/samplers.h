#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "relex/amalgamation.h"
#include "relex/decision.h"
#include "relex/embeddings.h"
#include "relex/finite_class.h"
#include "relex/random_source.h"
#include "relex/structure.h"

namespace relex {

// A projective random structure: (n, seed) -> a sample on [1,n].
using SamplerFn = std::function<Structure(int n, std::uint64_t seed)>;

// x in R_i iff f_i(xi, orders) = 1 for every tuple over [1,n]; rules see no
// context.
Structure sample_exchangeable(const RuleSet& rules, int n, const RandomSource& src);

// As above, but f_i also sees M|_{rng x}, relabelled onto [1,|rng x|] in
// order of first occurrence in x (so position p of the pattern is element p
// of the context).
Structure sample_m_exchangeable(const RuleSet& rules, const RestrictionOracle& m, int n,
                                const RandomSource& src);

// As above, with the whole initial segment M|_[max x] as context, in the
// original labels.
Structure sample_maxseg_exchangeable(const RuleSet& rules, const RestrictionOracle& m, int n,
                                     const RandomSource& src);

// Raised when some subset s has no amalgam over the structure already built
// on its proper subsets; the family is the faces of that structure.
class AmalgamationFailure : public Error {
 public:
  AmalgamationFailure(std::vector<int> subset, Family family);
  const std::vector<int>& subset() const { return subset_; }
  const Family& family() const { return family_; }

 private:
  std::vector<int> subset_;
  Family family_;
};

// Positive weights for amalgam classes, keyed by canonical form. Classes not
// listed weigh 1. An empty map selects classes uniformly.
using ClassWeights = std::map<Structure, double>;

struct FramewiseStep {
  Structure chosen;              // on [1,|s|]
  std::size_t class_count = 0;   // 0 when no randomness was consumed
  std::size_t class_index = 0;
  std::size_t orbit_size = 1;
  std::size_t orbit_index = 0;
};

// The decision at subset s (sorted). `lower` is the structure on [1,|s|]
// whose tuples missing some point are already decided; its tuples covering
// all of [1,|s|] are ignored. Reads only `lower`, xi_s and the order of s.
FramewiseStep framewise_step(const FiniteClass& k, const Structure& lower,
                             std::span<const int> s, const RandomSource& src,
                             const ClassWeights& weights = {});

// Builds M* on [1,n] subset by subset (by size, then lexicographically),
// choosing at each subset an amalgam class with xi_s and a member of the
// class with the order of s. Subsets larger than both the maximum arity and
// k.locality() are skipped; predicate-backed classes check every subset.
Structure sample_framewise(const FiniteClass& k, int n, const RandomSource& src,
                           const ClassWeights& weights = {});

// Per member S of the age (up to a size cap), the law of X restricted along
// the natural embedding of S into M.
struct AgeIndexedLaw {
  Signature signature;                          // signature of X
  std::vector<Structure> ages;                  // members of age(M)
  std::vector<std::map<Structure, double>> tables;

  // Table for S; throws PreconditionError when S is not covered.
  const std::map<Structure, double>& table_for(const Structure& s) const;
};

struct InvarianceDiscrepancy {
  double worst = 0.0;
  std::optional<std::size_t> source;  // index into ages
  std::optional<std::size_t> target;
  std::optional<Injection> embedding;
};

// Worst cell difference between the table at S and the pushforward of the
// table at T along some embedding S -> T.
InvarianceDiscrepancy invariance_discrepancy(const AgeIndexedLaw& law);

// Monte Carlo estimate with N draws per member; member j uses seeds
// derive_seed(meta_seed, j, i).
AgeIndexedLaw age_indexed_from_sampler(const SamplerFn& sampler, const RestrictionOracle& m,
                                       const FiniteClass& age, int cap, std::size_t n_samples,
                                       std::uint64_t meta_seed, int bound = 64);

class ZeroProbabilityConditioning : public Error {
 public:
  explicit ZeroProbabilityConditioning(int step)
      : Error("conditioning event at step " + std::to_string(step) + " has no table mass"),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Grows X|_[1], ..., X|_[n], drawing X|_[k] from the table at M|_[k]
// conditioned on X|_[k-1]. Uses src.uniform("seq", {k}) at step k.
Structure sample_sequential(const AgeIndexedLaw& law, const RestrictionOracle& m, int n,
                            const RandomSource& src, double epsilon = 1e-6);

}  // namespace relex
