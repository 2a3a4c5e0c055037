#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "relex/structure.h"

namespace relex {

// H(S,T): every injection phi: |S| -> |T| with T^phi = S.
struct EmbeddingSet {
  Structure source;
  Structure target;
  std::vector<Injection> maps;  // sorted lexicographically by image tuple
};

// Exhaustive backtracking with forward pruning; candidates are tried in
// increasing order, so the output order is deterministic.
EmbeddingSet enumerate_embeddings(const Structure& source, const Structure& target);

// Number of embeddings without materializing them.
std::size_t count_embeddings(const Structure& source, const Structure& target);

// The automorphism group of s as enumerate_embeddings(s, s).
EmbeddingSet automorphisms(const Structure& s);

// Access to a (possibly infinite) structure on N through its initial
// segments. Implementations must answer consistently: prefix(m) must equal
// restrict(prefix(n), [1,m]) for m <= n.
class RestrictionOracle {
 public:
  virtual ~RestrictionOracle() = default;
  virtual const Signature& signature() const = 0;
  // M|_[n]
  virtual Structure prefix(int n) const = 0;
  // Size of the universe when M is finite.
  virtual std::optional<int> universe_size() const { return std::nullopt; }
};

// Oracle defined by a membership predicate over 1-indexed tuples.
class PredicateOracle final : public RestrictionOracle {
 public:
  using Predicate = std::function<bool(std::size_t relation, std::span<const int> tuple)>;

  PredicateOracle(Signature signature, Predicate predicate);
  const Signature& signature() const override { return signature_; }
  Structure prefix(int n) const override;

 private:
  Signature signature_;
  Predicate predicate_;
};

// Oracle backed by a finite structure.
class FiniteOracle final : public RestrictionOracle {
 public:
  explicit FiniteOracle(Structure m);
  const Signature& signature() const override { return m_.signature(); }
  Structure prefix(int n) const override;
  std::optional<int> universe_size() const override { return m_.size(); }

 private:
  Structure m_;
};

// Oracle whose prefixes come from a projective generator n -> M|_[n], for
// example a sampler evaluated at a fixed seed.
class GeneratedOracle final : public RestrictionOracle {
 public:
  GeneratedOracle(Signature signature, std::function<Structure(int)> generate);
  const Signature& signature() const override { return signature_; }
  Structure prefix(int n) const override;

 private:
  Signature signature_;
  std::function<Structure(int)> generate_;
};

// The greedy embedding rho_{S,M}: rho(i) is the least m <= bound for which
// rho restricted to [i] embeds S|_[i] into M. Throws NoEmbeddingWithinBound
// when some step has no candidate.
Injection natural_embedding(const Structure& s, const RestrictionOracle& m, int bound);

}  // namespace relex
