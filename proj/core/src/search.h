#pragma once

#include <span>
#include <vector>

#include "relex/structure.h"
#include "tuple_iter.h"

namespace relex::detail {

// True when extending a partial map images[0..i-1] (element i -> images[i-1])
// keeps every tuple over [1,i] that mentions i in agreement between source
// and target.
inline bool extension_consistent(const Structure& source, const Structure& target,
                                 std::span<const int> images, int i) {
  const auto& sig = source.signature();
  const int n_src = source.size();
  const int n_tgt = target.size();
  bool ok = true;
  for (std::size_t r = 0; r < sig.size() && ok; ++r) {
    for_each_tuple_containing(i, sig[r].arity, i, [&](std::span<const int> t) {
      if (!ok) return;
      std::size_t rs = 0;
      std::size_t rt = 0;
      for (int x : t) {
        rs = rs * static_cast<std::size_t>(n_src) + static_cast<std::size_t>(x - 1);
        rt = rt * static_cast<std::size_t>(n_tgt) +
             static_cast<std::size_t>(images[static_cast<std::size_t>(x - 1)] - 1);
      }
      if (source.bit(r, rs) != target.bit(r, rt)) ok = false;
    });
  }
  return ok;
}

// Depth-first enumeration of embeddings source -> target. `allowed(i, m)`
// filters candidate images; `found(images)` returns false to stop.
template <typename Allowed, typename Found>
void search_embeddings(const Structure& source, const Structure& target, Allowed&& allowed,
                       Found&& found) {
  const int k = source.size();
  const int n = target.size();
  if (k > n) return;
  std::vector<int> images(static_cast<std::size_t>(k), 0);
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  bool stop = false;
  auto rec = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i > k) {
      if (!found(std::span<const int>(images))) stop = true;
      return;
    }
    for (int m = 1; m <= n && !stop; ++m) {
      if (used[static_cast<std::size_t>(m)] || !allowed(i, m)) continue;
      images[static_cast<std::size_t>(i - 1)] = m;
      if (!extension_consistent(source, target, images, i)) continue;
      used[static_cast<std::size_t>(m)] = 1;
      self(self, i + 1);
      used[static_cast<std::size_t>(m)] = 0;
    }
  };
  rec(rec, 1);
}

}  // namespace relex::detail
