#include "relex/random_source.h"

#include <algorithm>

#include "relex/errors.h"

namespace relex {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Counter-mode stream over a key.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}
  std::uint64_t next() { return mix64(key_ + (++counter_) * kGolden); }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t meta_seed, std::uint64_t stream, std::uint64_t i) {
  return mix64(mix64(mix64(meta_seed) ^ stream) + i);
}

HierarchicalRandomSource::HierarchicalRandomSource(std::uint64_t seed, int max_arity)
    : seed_(seed), max_arity_(max_arity) {
  if (max_arity < 0) throw PreconditionError("max_arity must be >= 0");
}

std::uint64_t HierarchicalRandomSource::key(std::string_view tag,
                                            std::span<const int> sorted_subset) const {
  std::uint64_t h = mix64(seed_ ^ 0x5f1e5ca1ab1e0001ULL);
  for (char c : tag) h = mix64(h ^ static_cast<unsigned char>(c));
  h = mix64(h ^ (0x100 + sorted_subset.size()));
  for (int x : sorted_subset) h = mix64(h + static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
  return h;
}

std::vector<int> HierarchicalRandomSource::checked_set(std::span<const int> subset) const {
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (static_cast<int>(s.size()) > max_arity_) {
    throw ArityExceeded("random source of arity " + std::to_string(max_arity_) +
                        " queried on a set of size " + std::to_string(s.size()));
  }
  return s;
}

double HierarchicalRandomSource::xi(std::span<const int> subset) const {
  const auto s = checked_set(subset);
  return to_unit(Stream(key("xi", s)).next());
}

std::vector<int> HierarchicalRandomSource::ordering(std::span<const int> subset) const {
  auto s = checked_set(subset);
  Stream stream(key("ord", s));
  for (std::size_t i = s.size(); i > 1; --i) {
    std::swap(s[i - 1], s[stream.below(i)]);
  }
  return s;
}

double HierarchicalRandomSource::uniform(std::string_view tag,
                                         std::span<const std::int64_t> key_values) const {
  std::uint64_t h = mix64(seed_ ^ 0x0a11ce5eedULL);
  for (char c : tag) h = mix64(h ^ static_cast<unsigned char>(c));
  for (auto v : key_values) h = mix64(h + static_cast<std::uint64_t>(v));
  return to_unit(Stream(h).next());
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t ordering_rank(std::span<const int> order) {
  // Lehmer code: count later entries smaller than each entry.
  const int k = static_cast<int>(order.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < k; ++i) {
    std::uint64_t smaller = 0;
    for (int j = i + 1; j < k; ++j) {
      if (order[static_cast<std::size_t>(j)] < order[static_cast<std::size_t>(i)]) ++smaller;
    }
    rank += smaller * factorial(k - 1 - i);
  }
  return rank;
}

bool InducedOrdering::precedes(int i, int j) const {
  if (i < 1 || j < 1 || i > static_cast<int>(ranks.size()) || j > static_cast<int>(ranks.size())) {
    throw PreconditionError("position outside the tuple");
  }
  return ranks[static_cast<std::size_t>(i - 1)] < ranks[static_cast<std::size_t>(j - 1)];
}

InducedOrdering induced_ordering(std::span<const int> x, std::span<const int> order) {
  std::vector<int> range(x.begin(), x.end());
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  std::vector<int> sorted_order(order.begin(), order.end());
  std::sort(sorted_order.begin(), sorted_order.end());
  if (sorted_order != range) {
    throw PreconditionError("ordering must list each element of the tuple's range exactly once");
  }
  InducedOrdering out;
  out.sequence.assign(x.begin(), x.end());
  for (int v : x) {
    out.ranks.push_back(static_cast<int>(std::find(order.begin(), order.end(), v) - order.begin()));
  }
  return out;
}

}  // namespace relex
