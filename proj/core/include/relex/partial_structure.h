#pragma once

#include "relex/structure.h"

namespace relex {

// A structure on [1,n] in which only some tuple memberships are decided.
// Undecided tuples read as absent in values().
class PartialStructure {
 public:
  PartialStructure(Signature signature, int universe_size)
      : values_(signature, universe_size), known_(std::move(signature), universe_size) {}

  // Every membership decided.
  static PartialStructure fixed(const Structure& s) {
    PartialStructure p(s.signature(), s.size());
    p.values_ = s;
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
      for (std::size_t i = 0; i < s.slot_count(r); ++i) p.known_.set_bit(r, i, true);
    }
    return p;
  }

  const Signature& signature() const { return values_.signature(); }
  int size() const { return values_.size(); }
  const Structure& values() const { return values_; }

  bool known(std::size_t relation, std::size_t rank) const { return known_.bit(relation, rank); }
  bool value(std::size_t relation, std::size_t rank) const { return values_.bit(relation, rank); }
  void fix(std::size_t relation, std::size_t rank, bool value) {
    known_.set_bit(relation, rank, true);
    values_.set_bit(relation, rank, value);
  }

  std::size_t free_count() const {
    std::size_t c = 0;
    for (std::size_t r = 0; r < signature().size(); ++r) {
      for (std::size_t i = 0; i < known_.slot_count(r); ++i) c += known_.bit(r, i) ? 0 : 1;
    }
    return c;
  }

 private:
  Structure values_;
  Structure known_;
};

}  // namespace relex
