#pragma once

#include <array>
#include <span>
#include <vector>

namespace relex::detail {

// Visits every tuple of [1,n]^arity in lexicographic order.
template <typename Fn>
void for_each_tuple(int n, int arity, Fn&& fn) {
  if (arity == 0) {
    fn(std::span<const int>());
    return;
  }
  if (n <= 0) return;
  std::vector<int> t(static_cast<std::size_t>(arity), 1);
  while (true) {
    fn(std::span<const int>(t));
    int i = arity - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n) {
      t[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
  }
}

// Visits the tuples of [1,n]^arity that contain x, lexicographically.
template <typename Fn>
void for_each_tuple_containing(int n, int arity, int x, Fn&& fn) {
  for_each_tuple(n, arity, [&](std::span<const int> t) {
    for (int v : t) {
      if (v == x) {
        fn(t);
        return;
      }
    }
  });
}

// Number of distinct values in a tuple.
inline int range_size(std::span<const int> t) {
  int count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j) seen = seen || t[j] == t[i];
    if (!seen) ++count;
  }
  return count;
}

}  // namespace relex::detail
