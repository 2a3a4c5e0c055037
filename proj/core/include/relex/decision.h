#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relex/random_source.h"
#include "relex/structure.h"

namespace relex {

// What a decision function may look at when deciding one tuple x: the tuple,
// an optional context structure supplied by the sampler, the values xi_s for
// s inside rng x, and the orders induced on subsequences of x.
class RuleInput {
 public:
  RuleInput(std::span<const int> tuple, const Structure* context, const RandomSource& src)
      : tuple_(tuple), context_(context), src_(&src) {}

  std::span<const int> tuple() const { return tuple_; }
  int arity() const { return static_cast<int>(tuple_.size()); }
  int at(int position) const;  // 1-based
  // Null when the sampler supplies no context.
  const Structure* context() const { return context_; }

  // xi of {x_p : p in positions}; no positions means xi of the empty set.
  double xi(std::span<const int> positions) const;
  double xi(std::initializer_list<int> positions) const {
    return xi(std::span<const int>(positions.begin(), positions.size()));
  }
  // Whether position a precedes position b in the order induced on the
  // subsequence y = (x_{sub[0]}, x_{sub[1]}, ...); a and b index y (1-based).
  bool precedes(std::span<const int> sub, int a, int b) const;
  bool precedes(std::initializer_list<int> sub, int a, int b) const {
    return precedes(std::span<const int>(sub.begin(), sub.size()), a, b);
  }
  // First-occurrence pattern: (5,3,5) -> (1,2,1).
  std::vector<int> pattern() const;
  // rng x listed in order of first occurrence.
  std::vector<int> first_occurrence() const;

 private:
  std::span<const int> tuple_;
  const Structure* context_;
  const RandomSource* src_;
};

struct DecisionFunction {
  RelationSymbol target;
  std::function<bool(const RuleInput&)> rule;
};

// Decision functions for every relation of `signature`. Samplers that pass
// a context use structures over `reference_signature`.
struct RuleSet {
  Signature signature;
  Signature reference_signature;
  std::vector<DecisionFunction> functions;

  // The function deciding relation index r. Throws SignatureMismatch when it
  // is missing or its arity disagrees.
  const DecisionFunction& for_relation(std::size_t r) const;
  // Largest subset the rules may query: the largest arity in `signature`.
  int max_arity() const { return signature.max_arity(); }
};

// Loads a rule table:
//   {"signature": [{"name": "R", "arity": 2}],
//    "reference_signature": [...],                       (optional)
//    "rules": {"R": {"cases": [case, ...], "default": false}}}
// A case is {"when": {...}, "value": bool}; the first case whose conditions
// all hold decides the tuple. Conditions:
//   "pattern": [1,2]                    first-occurrence pattern equals
//   "context": {"P": [[1]]}             context relations equal exactly
//   "xi": [{"subset": [1,2], "interval": [0, 0.5]}]   lo <= xi < hi
//   "order": [{"sub": [1,2], "less": [1,2]}]          induced order holds
// Throws PreconditionError on malformed tables.
RuleSet load_rule_set(const nlohmann::json& doc);

}  // namespace relex
