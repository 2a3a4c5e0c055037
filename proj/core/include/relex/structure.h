#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relex {

// A relation symbol with its arity (>= 1).
struct RelationSymbol {
  std::string name;
  int arity = 1;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

// An ordered, finite list of relation symbols with unique names. The empty
// signature is allowed and corresponds to classical exchangeability.
//
// Copies share the underlying list, so passing signatures by value is cheap.
class Signature {
 public:
  Signature();
  explicit Signature(std::vector<RelationSymbol> relations);
  Signature(std::initializer_list<RelationSymbol> relations);

  const std::vector<RelationSymbol>& relations() const { return *relations_; }
  std::size_t size() const { return relations_->size(); }
  bool empty() const { return relations_->empty(); }
  const RelationSymbol& operator[](std::size_t i) const { return (*relations_)[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws PreconditionError when the symbol is missing.
  std::size_t index_of(std::string_view name) const;
  int max_arity() const;

  friend bool operator==(const Signature& a, const Signature& b);
  std::string to_string() const;

 private:
  std::shared_ptr<const std::vector<RelationSymbol>> relations_;
};

using Tuple = std::vector<int>;

// Number of tuples of the given arity over a universe of size n (n^arity).
std::size_t tuple_space(int n, int arity);
// Lexicographic rank of a 1-indexed tuple over [1,n].
std::size_t tuple_rank(int n, std::span<const int> tuple);
// Inverse of tuple_rank.
Tuple tuple_at(int n, int arity, std::size_t rank);

// A finite relational structure with universe [1,n].
//
// Each relation is stored as a dense membership array indexed by the
// lexicographic rank of the tuple, so iterating it visits tuples in
// lexicographic order. Structures compare by (signature, n, membership
// arrays in signature order); the membership bytes form the canonical
// bit-serialization used by canonical_form.
class Structure {
 public:
  Structure();
  Structure(Signature signature, int universe_size);

  // Builds a structure from explicit tuple lists, one per relation in
  // signature order. Validates ranges and arities.
  static Structure from_tuples(Signature signature, int universe_size,
                               const std::vector<std::vector<Tuple>>& tuples);

  const Signature& signature() const { return signature_; }
  int size() const { return n_; }

  bool holds(std::size_t relation, std::span<const int> tuple) const;
  bool holds(std::size_t relation, std::initializer_list<int> tuple) const {
    return holds(relation, std::span<const int>(tuple.begin(), tuple.size()));
  }
  void set(std::size_t relation, std::span<const int> tuple, bool value = true);
  void set(std::size_t relation, std::initializer_list<int> tuple, bool value = true) {
    set(relation, std::span<const int>(tuple.begin(), tuple.size()), value);
  }

  // Dense access by lexicographic tuple rank.
  std::size_t slot_count(std::size_t relation) const;
  bool bit(std::size_t relation, std::size_t rank) const {
    return bits_[offsets_[relation] + rank] != 0;
  }
  void set_bit(std::size_t relation, std::size_t rank, bool value) {
    bits_[offsets_[relation] + rank] = value ? 1 : 0;
  }

  // Tuples of a relation in lexicographic order.
  std::vector<Tuple> tuples(std::size_t relation) const;
  std::size_t tuple_count(std::size_t relation) const;
  std::size_t total_tuple_count() const;

  // Whole-structure membership bytes (relation-major, lexicographic).
  const std::vector<std::uint8_t>& encoding() const { return bits_; }

  friend bool operator==(const Structure& a, const Structure& b);
  friend std::strong_ordering operator<=>(const Structure& a, const Structure& b);

  // Compact human-readable rendering, e.g. "n=3 R{(1,2),(2,1)}".
  std::string to_string() const;

 private:
  Signature signature_;
  int n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint8_t> bits_;
};

// An injective map from a finite set of positive integers. The domain is
// kept sorted; images()[i] is the image of domain()[i].
class Injection {
 public:
  Injection() = default;
  Injection(std::vector<int> domain, std::vector<int> images);

  // The map i -> images[i-1] on [1, images.size()].
  static Injection from_images(std::vector<int> images);
  static Injection identity(int n);
  static Injection inclusion(std::vector<int> subset);

  const std::vector<int>& domain() const { return domain_; }
  const std::vector<int>& images() const { return images_; }
  std::size_t size() const { return domain_.size(); }
  bool contains(int x) const;
  int operator()(int x) const;

  // (this o inner)(x) = this(inner(x)); inner's image must lie in domain().
  Injection compose(const Injection& inner) const;
  Injection inverse() const;
  // Sorted image set.
  std::vector<int> image_set() const;

  friend bool operator==(const Injection&, const Injection&) = default;
  friend auto operator<=>(const Injection&, const Injection&) = default;

 private:
  std::vector<int> domain_;
  std::vector<int> images_;
};

// M^phi re-indexed to [1, |domain(phi)|] in increasing domain order.
struct Relabeled {
  Structure structure;
  std::vector<int> index_map;  // position p (1-based) <-> index_map[p-1]
};

// s in R^{M^phi} iff phi(s) in R^M. Throws PreconditionError when the image
// of phi leaves the universe of m.
Relabeled relabel(const Structure& m, const Injection& phi);

// Fast form of relabel for phi defined on [1,k]: element i maps to images[i-1].
Structure pullback(const Structure& m, std::span<const int> images);

// M|_S for S a subset of [1,n]; duplicates are ignored.
Structure restrict(const Structure& m, std::span<const int> subset);
Structure restrict(const Structure& m, std::initializer_list<int> subset);

}  // namespace relex
