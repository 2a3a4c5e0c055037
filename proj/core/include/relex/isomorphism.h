#pragma once

#include <optional>
#include <string>

#include "relex/structure.h"

namespace relex {

// Returns a bijection phi on [1,n] with relabel(b, phi) == a, i.e. an
// embedding of a onto b, or nullopt when a and b are not isomorphic.
// Backtracking over permutations, pruned by per-element degree invariants.
// Throws SignatureMismatch when the signatures differ.
std::optional<Injection> is_isomorphic(const Structure& a, const Structure& b);

struct CanonicalLabeling {
  Structure form;
  Injection witness;  // relabel(input, witness).structure == form
};

// The isomorphic copy of a on [1,n] whose membership encoding is
// lexicographically least over all n! relabelings. Two structures have the
// same canonical form iff they are isomorphic.
//
// Cost is factorial in n; intended for n <= 8.
Structure canonical_form(const Structure& a);
CanonicalLabeling canonical_labeling(const Structure& a);

}  // namespace relex
