#include "relex/theory.h"

#include <algorithm>

#include "tuple_iter.h"

namespace relex {

std::string to_string(const Formula& f, const Sentence& sentence, const Signature& signature) {
  auto var = [&](int v) { return sentence.variables[static_cast<std::size_t>(v)]; };
  auto wrap = [&](const Formula& c) {
    const bool simple = c.kind == Formula::Kind::kAtom || c.kind == Formula::Kind::kEquals ||
                        c.kind == Formula::Kind::kNot;
    auto s = to_string(c, sentence, signature);
    return simple ? s : "(" + s + ")";
  };
  switch (f.kind) {
    case Formula::Kind::kAtom: {
      std::string s = signature[f.relation].name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? "," : "") + var(f.args[i]);
      return s + ")";
    }
    case Formula::Kind::kEquals:
      return var(f.args[0]) + " = " + var(f.args[1]);
    case Formula::Kind::kNot:
      return "!" + wrap(f.children[0]);
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      const char* op = f.kind == Formula::Kind::kAnd ? " & " : " | ";
      std::string s;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += op;
        s += wrap(f.children[i]);
      }
      return s;
    }
    case Formula::Kind::kImplies:
      return wrap(f.children[0]) + " -> " + wrap(f.children[1]);
  }
  return {};
}

std::string to_string(const Sentence& sentence, const Signature& signature) {
  std::string s = "forall";
  for (const auto& v : sentence.variables) s += " " + v;
  return s + " . " + to_string(sentence.matrix, sentence, signature) + ";";
}

std::string to_string(const Theory& theory) {
  std::string s;
  for (const auto& r : theory.signature.relations()) {
    s += "rel " + r.name + "/" + std::to_string(r.arity) + ";\n";
  }
  for (const auto& sentence : theory.sentences) s += to_string(sentence, theory.signature) + "\n";
  return s;
}

namespace {

void collect_atoms(const Formula& f, std::vector<const Formula*>& out, bool include_equality) {
  if (f.kind == Formula::Kind::kAtom || (include_equality && f.kind == Formula::Kind::kEquals)) {
    out.push_back(&f);
  }
  for (const auto& c : f.children) collect_atoms(c, out, include_equality);
}

}  // namespace

ParametricReport is_parametric(const Theory& theory) {
  for (std::size_t s = 0; s < theory.sentences.size(); ++s) {
    const auto& sentence = theory.sentences[s];
    std::vector<const Formula*> atoms;
    collect_atoms(sentence.matrix, atoms, true);
    const std::size_t k = sentence.variables.size();
    for (const Formula* a : atoms) {
      std::vector<char> seen(k, 0);
      for (int v : a->args) seen[static_cast<std::size_t>(v)] = 1;
      if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(k)) {
        return ParametricReport{false, s, to_string(*a, sentence, theory.signature)};
      }
    }
  }
  return ParametricReport{};
}

namespace {

// Ground-atom addressing over a fixed universe: relation r's tuples occupy
// [offset[r], offset[r] + n^arity) in lexicographic order.
struct AtomSpace {
  int n = 0;
  std::vector<std::size_t> offset;

  AtomSpace(const Signature& sig, int n_) : n(n_) {
    std::size_t total = 0;
    for (const auto& r : sig.relations()) {
      offset.push_back(total);
      total += tuple_space(n, r.arity);
    }
    offset.push_back(total);
  }

  std::size_t total() const { return offset.back(); }

  std::size_t index(const Formula& atom, const int* assignment) const {
    std::size_t rank = 0;
    for (int v : atom.args) {
      rank = rank * static_cast<std::size_t>(n) + static_cast<std::size_t>(assignment[v] - 1);
    }
    return offset[atom.relation] + rank;
  }
};

bool eval(const Formula& f, const int* assignment, const AtomSpace& space,
          const std::vector<std::int8_t>& state) {
  switch (f.kind) {
    case Formula::Kind::kAtom:
      return state[space.index(f, assignment)] == 1;
    case Formula::Kind::kEquals:
      return assignment[f.args[0]] == assignment[f.args[1]];
    case Formula::Kind::kNot:
      return !eval(f.children[0], assignment, space, state);
    case Formula::Kind::kAnd:
      for (const auto& c : f.children) {
        if (!eval(c, assignment, space, state)) return false;
      }
      return true;
    case Formula::Kind::kOr:
      for (const auto& c : f.children) {
        if (eval(c, assignment, space, state)) return true;
      }
      return false;
    case Formula::Kind::kImplies:
      return !eval(f.children[0], assignment, space, state) ||
             eval(f.children[1], assignment, space, state);
  }
  return false;
}

void require_signature(const Theory& theory, const Signature& sig) {
  if (!(theory.signature == sig)) {
    throw SignatureMismatch("theory signature " + theory.signature.to_string() +
                            " differs from structure signature " + sig.to_string());
  }
}

template <typename Fn>
void for_each_assignment(int n, std::size_t k, Fn&& fn) {
  detail::for_each_tuple(n, static_cast<int>(k), [&](std::span<const int> a) { fn(a.data()); });
}

std::vector<std::int8_t> state_of(const Structure& s) {
  std::vector<std::int8_t> state;
  state.reserve(s.encoding().size());
  for (auto b : s.encoding()) state.push_back(static_cast<std::int8_t>(b));
  return state;
}

}  // namespace

std::optional<Violation> first_violation(const Theory& theory, const Structure& s) {
  require_signature(theory, s.signature());
  const AtomSpace space(s.signature(), s.size());
  const auto state = state_of(s);
  for (std::size_t i = 0; i < theory.sentences.size(); ++i) {
    const auto& sentence = theory.sentences[i];
    std::optional<Violation> found;
    for_each_assignment(s.size(), sentence.variables.size(), [&](const int* a) {
      if (found) return;
      if (!eval(sentence.matrix, a, space, state)) {
        found = Violation{i, std::vector<int>(a, a + sentence.variables.size())};
      }
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool satisfies(const Theory& theory, const Structure& s) { return !first_violation(theory, s); }

std::vector<Structure> complete_models(const Theory& theory, const PartialStructure& partial,
                                       std::size_t limit) {
  require_signature(theory, partial.signature());
  const int n = partial.size();
  const AtomSpace space(partial.signature(), n);
  const auto& sig = partial.signature();

  std::vector<std::int8_t> state(space.total(), -1);
  std::vector<std::size_t> free_atoms;
  std::vector<long> free_pos(space.total(), -1);
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for (std::size_t i = 0; i < tuple_space(n, sig[r].arity); ++i) {
      const std::size_t g = space.offset[r] + i;
      if (partial.known(r, i)) {
        state[g] = partial.value(r, i) ? 1 : 0;
      } else {
        free_pos[g] = static_cast<long>(free_atoms.size());
        free_atoms.push_back(g);
      }
    }
  }

  // Ground instances grouped by the position of their last undecided atom.
  struct Instance {
    std::uint32_t sentence;
    std::uint32_t assignment;  // offset into pool
  };
  std::vector<int> pool;
  std::vector<std::vector<Instance>> watch(free_atoms.size());
  for (std::size_t si = 0; si < theory.sentences.size(); ++si) {
    const auto& sentence = theory.sentences[si];
    std::vector<const Formula*> atoms;
    collect_atoms(sentence.matrix, atoms, false);
    const std::size_t k = sentence.variables.size();
    bool contradiction = false;
    for_each_assignment(n, k, [&](const int* a) {
      if (contradiction) return;
      long last = -1;
      for (const Formula* atom : atoms) last = std::max(last, free_pos[space.index(*atom, a)]);
      if (last < 0) {
        if (!eval(sentence.matrix, a, space, state)) contradiction = true;
        return;
      }
      const auto offset = static_cast<std::uint32_t>(pool.size());
      pool.insert(pool.end(), a, a + k);
      watch[static_cast<std::size_t>(last)].push_back({static_cast<std::uint32_t>(si), offset});
    });
    if (contradiction) return {};
  }

  std::vector<Structure> out;
  auto emit = [&]() {
    Structure s(sig, n);
    for (std::size_t r = 0; r < sig.size(); ++r) {
      for (std::size_t i = 0; i < s.slot_count(r); ++i) {
        s.set_bit(r, i, state[space.offset[r] + i] == 1);
      }
    }
    out.push_back(std::move(s));
  };

  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (out.size() >= limit) return;
    if (p == free_atoms.size()) {
      emit();
      return;
    }
    for (std::int8_t v = 0; v <= 1 && out.size() < limit; ++v) {
      state[free_atoms[p]] = v;
      bool ok = true;
      for (const Instance& inst : watch[p]) {
        if (!eval(theory.sentences[inst.sentence].matrix, pool.data() + inst.assignment, space,
                  state)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, p + 1);
    }
    state[free_atoms[p]] = -1;
  };
  rec(rec, 0);
  return out;
}

std::vector<Structure> enumerate_models(const Theory& theory, int n, int cap) {
  if (n < 0) throw PreconditionError("model size must be >= 0");
  if (n > cap) throw CapExceeded(n, cap);
  return complete_models(theory, PartialStructure(theory.signature, n));
}

std::vector<int> sizes_without_models(const Theory& theory, int cap) {
  std::vector<int> missing;
  for (int n = 0; n <= cap; ++n) {
    if (complete_models(theory, PartialStructure(theory.signature, n), 1).empty()) {
      missing.push_back(n);
    }
  }
  return missing;
}

}  // namespace relex
