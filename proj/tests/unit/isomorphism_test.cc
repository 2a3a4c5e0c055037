#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.h"
#include "relex/errors.h"
#include "relex/isomorphism.h"

namespace relex {
namespace {

using testing::all_structures;
using testing::permutations;
using testing::random_structure;

const Signature kGraph{{"R", 2}};

// Brute-force canonical form: least pullback over all n! relabelings.
Structure brute_canonical(const Structure& s) {
  Structure best;
  bool first = true;
  for (const auto& p : permutations(s.size())) {
    Structure c = pullback(s, p);
    if (first || c < best) best = c;
    first = false;
  }
  return best;
}

TEST(CanonicalForm, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  const Signature sig{{"P", 1}, {"R", 2}};
  for (int trial = 0; trial < 60; ++trial) {
    const Structure s = random_structure(sig, 1 + trial % 5, rng, 0.3 + 0.01 * trial);
    EXPECT_EQ(canonical_form(s), brute_canonical(s));
  }
}

TEST(CanonicalForm, WitnessRelabelsOntoForm) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Structure s = random_structure(kGraph, 5, rng);
    const auto lab = canonical_labeling(s);
    EXPECT_EQ(relabel(s, lab.witness).structure, lab.form);
  }
}

// Counts of directed graphs with loops up to isomorphism on 1, 2, 3 points,
// obtained independently by orbit counting over all labeled structures.
TEST(CanonicalForm, ClassCountsAgreeWithOrbitEnumeration) {
  for (int n = 1; n <= 3; ++n) {
    std::set<Structure> orbits;
    std::set<Structure> forms;
    for (const auto& s : all_structures(kGraph, n)) {
      forms.insert(canonical_form(s));
      orbits.insert(brute_canonical(s));
    }
    EXPECT_EQ(forms.size(), orbits.size());
  }
}

TEST(IsIsomorphic, AgreesWithCanonicalForms) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Structure a = random_structure(kGraph, 4, rng, 0.5);
    Structure b = random_structure(kGraph, 4, rng, 0.5);
    if (trial % 2 == 0) b = pullback(a, permutations(4)[static_cast<std::size_t>(trial % 24)]);
    const auto phi = is_isomorphic(a, b);
    EXPECT_EQ(phi.has_value(), canonical_form(a) == canonical_form(b));
    if (phi) EXPECT_EQ(relabel(b, *phi).structure, a);
  }
}

TEST(IsIsomorphic, RejectsSignatureMismatch) {
  EXPECT_THROW(is_isomorphic(Structure(kGraph, 2), Structure(Signature{{"P", 1}}, 2)), SignatureMismatch);
  EXPECT_FALSE(is_isomorphic(Structure(kGraph, 2), Structure(kGraph, 3)));
}

}  // namespace
}  // namespace relex
