#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relex/partial_structure.h"
#include "relex/structure.h"
#include "relex/theory.h"

namespace relex {

inline constexpr int kDefaultCap = 6;

// A class of finite structures closed under isomorphism and substructures,
// given either by a universal theory or by a membership predicate.
class FiniteClass {
 public:
  using Predicate = std::function<bool(const Structure&)>;

  static FiniteClass from_theory(std::string name, Theory theory);
  // Predicate-backed classes complete partial structures by brute force and
  // refuse inputs with more than kMaxBruteForceAtoms undecided tuples.
  static FiniteClass from_predicate(std::string name, Signature signature, Predicate contains);

  static constexpr std::size_t kMaxBruteForceAtoms = 22;

  const std::string& name() const { return name_; }
  const Signature& signature() const { return signature_; }
  // Null for predicate-backed classes.
  const Theory* theory() const { return theory_ ? theory_.get() : nullptr; }

  bool contains(const Structure& s) const;

  // A size q such that a structure belongs to the class whenever all of its
  // substructures on at most q points do. For a universal theory this is the
  // largest variable count of a sentence; null for predicate-backed classes.
  std::optional<int> locality() const;

  // Members extending the decided part of `partial`, in increasing encoding
  // order, at most `limit` of them.
  std::vector<Structure> completions(const PartialStructure& partial,
                                     std::size_t limit = kNoLimit) const;

  // All members on [1,n], sorted by encoding.
  std::vector<Structure> enumerate(int n) const;

 private:
  std::string name_;
  Signature signature_;
  std::shared_ptr<const Theory> theory_;
  Predicate predicate_;
};

// Theory text of a builtin class. Names: graphs, digraphs, tournaments,
// equivalence, k-hypergraphs (k >= 2, e.g. "3-hypergraphs") and
// parity-hypergraphs. Throws PreconditionError for unknown names.
std::string builtin_theory_text(std::string_view name);
FiniteClass builtin_class(std::string_view name);
std::vector<std::string> builtin_class_names();

// age_n of the class; throws CapExceeded when n > cap.
std::vector<Structure> enumerate_age(const FiniteClass& k, int n, int cap = kDefaultCap);

}  // namespace relex
