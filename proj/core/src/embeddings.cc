#include "relex/embeddings.h"

#include "relex/errors.h"
#include "search.h"
#include "tuple_iter.h"

namespace relex {

namespace {

void require_same_signature(const Structure& s, const Structure& t, const char* op) {
  if (!(s.signature() == t.signature())) {
    throw SignatureMismatch(std::string(op) + ": signatures " + s.signature().to_string() +
                            " and " + t.signature().to_string() + " differ");
  }
}

}  // namespace

EmbeddingSet enumerate_embeddings(const Structure& source, const Structure& target) {
  require_same_signature(source, target, "enumerate_embeddings");
  EmbeddingSet out{source, target, {}};
  detail::search_embeddings(
      source, target, [](int, int) { return true; },
      [&](std::span<const int> images) {
        out.maps.push_back(Injection::from_images(std::vector<int>(images.begin(), images.end())));
        return true;
      });
  return out;
}

std::size_t count_embeddings(const Structure& source, const Structure& target) {
  require_same_signature(source, target, "count_embeddings");
  std::size_t count = 0;
  detail::search_embeddings(
      source, target, [](int, int) { return true; },
      [&](std::span<const int>) {
        ++count;
        return true;
      });
  return count;
}

EmbeddingSet automorphisms(const Structure& s) { return enumerate_embeddings(s, s); }

PredicateOracle::PredicateOracle(Signature signature, Predicate predicate)
    : signature_(std::move(signature)), predicate_(std::move(predicate)) {}

Structure PredicateOracle::prefix(int n) const {
  Structure out(signature_, n);
  for (std::size_t r = 0; r < signature_.size(); ++r) {
    std::size_t rank = 0;
    detail::for_each_tuple(n, signature_[r].arity, [&](std::span<const int> t) {
      out.set_bit(r, rank++, predicate_(r, t));
    });
  }
  return out;
}

FiniteOracle::FiniteOracle(Structure m) : m_(std::move(m)) {}

Structure FiniteOracle::prefix(int n) const {
  if (n > m_.size()) {
    throw PreconditionError("finite reference structure has only " + std::to_string(m_.size()) +
                            " elements; requested prefix of size " + std::to_string(n));
  }
  std::vector<int> first(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) first[static_cast<std::size_t>(i)] = i + 1;
  return pullback(m_, first);
}

GeneratedOracle::GeneratedOracle(Signature signature, std::function<Structure(int)> generate)
    : signature_(std::move(signature)), generate_(std::move(generate)) {}

Structure GeneratedOracle::prefix(int n) const { return generate_(n); }

Injection natural_embedding(const Structure& s, const RestrictionOracle& m, int bound) {
  if (!(s.signature() == m.signature())) {
    throw SignatureMismatch("natural_embedding: signature of S differs from the reference");
  }
  if (auto size = m.universe_size(); size && *size < bound) bound = *size;
  const Structure window = m.prefix(bound);
  const int k = s.size();
  std::vector<int> images(static_cast<std::size_t>(k), 0);
  std::vector<char> used(static_cast<std::size_t>(bound) + 1, 0);
  for (int i = 1; i <= k; ++i) {
    bool placed = false;
    for (int cand = 1; cand <= bound; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      images[static_cast<std::size_t>(i - 1)] = cand;
      if (detail::extension_consistent(s, window, images, i)) {
        used[static_cast<std::size_t>(cand)] = 1;
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw NoEmbeddingWithinBound("no embedding found within bound " + std::to_string(bound) +
                                   " (greedy step " + std::to_string(i) + " of " +
                                   std::to_string(k) + ")");
    }
  }
  return Injection::from_images(std::move(images));
}

}  // namespace relex
