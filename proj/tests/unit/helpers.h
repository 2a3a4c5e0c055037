#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "relex/structure.h"

namespace relex::testing {

inline Structure random_structure(const Signature& sig, int n, std::mt19937_64& rng, double density = 0.5) {
  Structure s(sig, n);
  std::bernoulli_distribution coin(density);
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for (std::size_t k = 0; k < s.slot_count(r); ++k) s.set_bit(r, k, coin(rng));
  }
  return s;
}

// Every structure over `sig` on [1,n]; only for tiny slot counts.
inline std::vector<Structure> all_structures(const Signature& sig, int n) {
  Structure proto(sig, n);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for (std::size_t k = 0; k < proto.slot_count(r); ++k) slots.emplace_back(r, k);
  }
  std::vector<Structure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    Structure s = proto;
    for (std::size_t b = 0; b < slots.size(); ++b) s.set_bit(slots[b].first, slots[b].second, (mask >> b) & 1);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// All injections [k] -> [n] as image lists, in lexicographic order.
inline std::vector<std::vector<int>> injections(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec);
  return out;
}

inline std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

}  // namespace relex::testing
