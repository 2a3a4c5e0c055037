#include "relex/isomorphism.h"

#include <algorithm>
#include <numeric>

#include "relex/errors.h"
#include "search.h"

namespace relex {

namespace {

// Per-element invariants: for each relation and argument position, how many
// tuples carry the element there, plus whether the constant tuple (x,...,x)
// is present.
std::vector<std::vector<int>> element_invariants(const Structure& s) {
  const auto& sig = s.signature();
  const int n = s.size();
  std::size_t width = 0;
  for (const auto& r : sig.relations()) width += static_cast<std::size_t>(r.arity) + 1;
  std::vector<std::vector<int>> inv(static_cast<std::size_t>(n) + 1, std::vector<int>(width, 0));
  std::size_t base = 0;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const int arity = sig[r].arity;
    std::size_t rank = 0;
    detail::for_each_tuple(n, arity, [&](std::span<const int> t) {
      if (s.bit(r, rank++)) {
        for (int p = 0; p < arity; ++p) {
          ++inv[static_cast<std::size_t>(t[static_cast<std::size_t>(p)])][base + static_cast<std::size_t>(p)];
        }
        if (detail::range_size(t) == 1) {
          inv[static_cast<std::size_t>(t[0])][base + static_cast<std::size_t>(arity)] = 1;
        }
      }
    });
    base += static_cast<std::size_t>(arity) + 1;
  }
  return inv;
}

}  // namespace

std::optional<Injection> is_isomorphic(const Structure& a, const Structure& b) {
  if (!(a.signature() == b.signature())) {
    throw SignatureMismatch("is_isomorphic: signatures " + a.signature().to_string() + " and " +
                            b.signature().to_string() + " differ");
  }
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    if (a.tuple_count(r) != b.tuple_count(r)) return std::nullopt;
  }
  const auto inv_a = element_invariants(a);
  const auto inv_b = element_invariants(b);
  {
    auto sa = std::vector<std::vector<int>>(inv_a.begin() + 1, inv_a.end());
    auto sb = std::vector<std::vector<int>>(inv_b.begin() + 1, inv_b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::optional<Injection> witness;
  detail::search_embeddings(
      a, b,
      [&](int i, int m) {
        return inv_a[static_cast<std::size_t>(i)] == inv_b[static_cast<std::size_t>(m)];
      },
      [&](std::span<const int> images) {
        witness = Injection::from_images(std::vector<int>(images.begin(), images.end()));
        return false;
      });
  return witness;
}

CanonicalLabeling canonical_labeling(const Structure& a) {
  const int n = a.size();
  const auto& sig = a.signature();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);

  std::vector<int> best_perm = perm;
  std::vector<std::uint8_t> best = pullback(a, perm).encoding();
  std::vector<std::uint8_t> candidate(best.size());

  // Lexicographic comparison of the relabeled encoding against the current
  // best, aborting as soon as the candidate is known to be larger.
  auto evaluate = [&]() -> bool {
    std::size_t pos = 0;
    int state = 0;  // 0: equal so far, -1: smaller
    for (std::size_t r = 0; r < sig.size(); ++r) {
      const int arity = sig[r].arity;
      bool abort = false;
      detail::for_each_tuple(n, arity, [&](std::span<const int> t) {
        if (abort) return;
        std::size_t src = 0;
        for (int x : t) {
          src = src * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(perm[static_cast<std::size_t>(x - 1)] - 1);
        }
        const std::uint8_t bit = a.bit(r, src) ? 1 : 0;
        candidate[pos] = bit;
        if (state == 0) {
          if (bit < best[pos]) {
            state = -1;
          } else if (bit > best[pos]) {
            abort = true;
          }
        }
        ++pos;
      });
      if (abort) return false;
    }
    return state == -1;
  };

  while (std::next_permutation(perm.begin(), perm.end())) {
    if (evaluate()) {
      best.swap(candidate);
      candidate.resize(best.size());
      best_perm = perm;
    }
  }
  auto phi = Injection::from_images(best_perm);
  return CanonicalLabeling{pullback(a, best_perm), std::move(phi)};
}

Structure canonical_form(const Structure& a) { return canonical_labeling(a).form; }

}  // namespace relex
