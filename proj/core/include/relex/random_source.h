#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace relex {

// Subset-indexed randomness: a uniform value xi(s) and a uniform total order
// of s for every finite s of positive integers with |s| <= max_arity (and
// xi of the empty set). Queries are keyed by the set, so element order and
// repeats in the argument do not matter.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual double xi(std::span<const int> subset) const = 0;
  // Elements of the set from least to greatest under the order of s.
  virtual std::vector<int> ordering(std::span<const int> subset) const = 0;
  // Auxiliary uniform in [0,1) keyed by a tag and integer key; not subject
  // to the arity limit.
  virtual double uniform(std::string_view tag, std::span<const std::int64_t> key) const = 0;
  virtual int max_arity() const = 0;

  double xi(std::initializer_list<int> subset) const {
    return xi(std::span<const int>(subset.begin(), subset.size()));
  }
  std::vector<int> ordering(std::initializer_list<int> subset) const {
    return ordering(std::span<const int>(subset.begin(), subset.size()));
  }
};

// Keyed pseudorandom realisation: every query hashes (seed, tag, sorted set)
// into a 64-bit key and reads a counter-mode splitmix64 stream from it.
// Throws ArityExceeded for non-empty sets larger than max_arity.
class HierarchicalRandomSource final : public RandomSource {
 public:
  HierarchicalRandomSource(std::uint64_t seed, int max_arity);

  std::uint64_t seed() const { return seed_; }
  int max_arity() const override { return max_arity_; }

  using RandomSource::ordering;
  using RandomSource::xi;
  double xi(std::span<const int> subset) const override;
  std::vector<int> ordering(std::span<const int> subset) const override;
  double uniform(std::string_view tag, std::span<const std::int64_t> key) const override;

  // The 64-bit stream key for (seed, tag, sorted set).
  std::uint64_t key(std::string_view tag, std::span<const int> sorted_subset) const;

 private:
  std::vector<int> checked_set(std::span<const int> subset) const;

  std::uint64_t seed_;
  int max_arity_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
// Top 53 bits of x as a double in [0,1).
double to_unit(std::uint64_t x);
// Seed number i of a named stream derived from a meta-seed.
std::uint64_t derive_seed(std::uint64_t meta_seed, std::uint64_t stream, std::uint64_t i);

// Lexicographic rank in [0, k!) of a sequence of k distinct integers among
// all orderings of the same set.
std::uint64_t ordering_rank(std::span<const int> order);
std::uint64_t factorial(int k);

// The order induced on positions 1..|x| by a total order of rng x: i
// precedes j iff x_i comes before x_j; equal entries are incomparable.
struct InducedOrdering {
  std::vector<int> sequence;
  std::vector<int> ranks;  // rank of x_i (0-based) within the order of rng x

  bool precedes(int i, int j) const;
};

// `order` lists rng x from least to greatest; throws PreconditionError when
// it is not an ordering of rng x.
InducedOrdering induced_ordering(std::span<const int> x, std::span<const int> order);

}  // namespace relex
