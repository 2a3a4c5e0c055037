#pragma once

#include <optional>
#include <vector>

#include "relex/finite_class.h"
#include "relex/partial_structure.h"
#include "relex/structure.h"

namespace relex {

// Faces of a family: family[i-1] is S_i, a structure on [n]\{i} re-indexed
// to [1,n-1] in increasing order.
using Family = std::vector<Structure>;

// Index of x in [n]\{i} after re-indexing (x != i).
inline int face_index(int i, int x) { return x < i ? x : x - 1; }

// True when every pair of faces agrees on [n]\{i,j}.
bool pairwise_compatible(const Family& family);

// The structure on [n] whose tuples missing some index are decided by the
// faces; tuples using every element of [n] stay undecided. Throws
// PreconditionError when the faces are incompatible or have wrong sizes.
PartialStructure glue_family(const Family& family);

// The n faces M|_{[n]\{i}} of a structure on [n].
Family faces_of(const Structure& m);

// Whether some permutation of [n] carries one family onto the other.
bool families_isomorphic(const Family& a, const Family& b);

struct NdapReport {
  int n = 0;
  bool holds = true;
  std::optional<Family> witness_family;  // first family without amalgam
  std::optional<Structure> amalgam;      // an amalgam of the first family
  std::size_t families_checked = 0;
};

// Exhaustive n-DAP check: enumerates every pairwise-compatible family of
// members on the faces of [n] and searches each for an amalgam in K.
NdapReport check_ndap(const FiniteClass& k, int n, int cap = kDefaultCap);

struct AmalgamSet {
  std::vector<Structure> all;  // sorted by encoding
  // One entry per isomorphism class present in `all`, ordered by canonical
  // form. representatives[c] is the least member of class c.
  std::vector<Structure> canonical_forms;
  std::vector<Structure> representatives;
  std::vector<std::vector<std::size_t>> members;  // indices into `all`, ascending
};

AmalgamSet amalgams(const Family& family, const FiniteClass& k);
// Same, for an arbitrary partial structure on [n].
AmalgamSet amalgams(const PartialStructure& boundary, const FiniteClass& k);

// Overlap configuration of the disjoint amalgamation property: T and T'
// share the substructure on A (a subset of T's universe) via psi: T|_A -> T'.
struct DapWitness {
  Structure t;
  Structure t_prime;
  std::vector<int> shared;  // A, sorted
  Injection psi;            // positions of A (1..|A|) -> T'
};

struct DapReport {
  int bound = 0;
  bool holds = true;
  bool ndap2_holds = true;
  bool overlap_holds = true;
  bool agree = true;
  std::optional<Family> ndap2_witness;
  std::optional<DapWitness> overlap_witness;
  std::size_t configurations_checked = 0;
};

// 2-DAP together with the overlap formulation over all T, T' of size <=
// bound, with the amalgam searched on |T| + |T'| - |A| points.
DapReport check_dap(const FiniteClass& k, int bound, int cap = kDefaultCap);

struct JepReport {
  int bound = 0;
  bool holds = true;
  std::optional<std::pair<Structure, Structure>> failing_pair;
  std::size_t pairs_checked = 0;
};

// Every pair of members of size <= bound embeds jointly into a member of
// size <= their combined size.
JepReport check_jep(const FiniteClass& k, int bound, int cap = kDefaultCap);

}  // namespace relex
