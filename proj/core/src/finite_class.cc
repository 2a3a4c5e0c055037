#include "relex/finite_class.h"

#include <algorithm>
#include <charconv>

#include "relex/errors.h"

namespace relex {

FiniteClass FiniteClass::from_theory(std::string name, Theory theory) {
  FiniteClass k;
  k.name_ = std::move(name);
  k.signature_ = theory.signature;
  k.theory_ = std::make_shared<const Theory>(std::move(theory));
  return k;
}

FiniteClass FiniteClass::from_predicate(std::string name, Signature signature,
                                        Predicate contains) {
  if (!contains) throw PreconditionError("class predicate must be callable");
  FiniteClass k;
  k.name_ = std::move(name);
  k.signature_ = std::move(signature);
  k.predicate_ = std::move(contains);
  return k;
}

bool FiniteClass::contains(const Structure& s) const {
  if (!(s.signature() == signature_)) {
    throw SignatureMismatch("structure signature " + s.signature().to_string() +
                            " does not match class " + name_ + " " + signature_.to_string());
  }
  return theory_ ? satisfies(*theory_, s) : predicate_(s);
}

std::optional<int> FiniteClass::locality() const {
  if (!theory_) return std::nullopt;
  int q = 0;
  for (const auto& sentence : theory_->sentences) q = std::max(q, static_cast<int>(sentence.variables.size()));
  return q;
}

std::vector<Structure> FiniteClass::completions(const PartialStructure& partial,
                                                std::size_t limit) const {
  if (!(partial.signature() == signature_)) {
    throw SignatureMismatch("partial structure signature " + partial.signature().to_string() +
                            " does not match class " + name_);
  }
  if (theory_) return complete_models(*theory_, partial, limit);

  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t r = 0; r < signature_.size(); ++r) {
    for (std::size_t i = 0; i < partial.values().slot_count(r); ++i) {
      if (!partial.known(r, i)) free.emplace_back(r, i);
    }
  }
  if (free.size() > kMaxBruteForceAtoms) {
    throw PreconditionError("class " + name_ + " is predicate-backed and the completion has " +
                            std::to_string(free.size()) + " undecided tuples (limit " +
                            std::to_string(kMaxBruteForceAtoms) + ")");
  }
  std::vector<Structure> out;
  Structure s = partial.values();
  // Counting with the first free atom as the most significant bit keeps the
  // output in increasing encoding order.
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < total && out.size() < limit; ++mask) {
    for (std::size_t b = 0; b < free.size(); ++b) {
      const bool v = (mask >> (free.size() - 1 - b)) & 1U;
      s.set_bit(free[b].first, free[b].second, v);
    }
    if (predicate_(s)) out.push_back(s);
  }
  return out;
}

std::vector<Structure> FiniteClass::enumerate(int n) const {
  if (n < 0) throw PreconditionError("universe size must be >= 0");
  return completions(PartialStructure(signature_, n));
}

namespace {

std::string var_list(const std::vector<std::string>& vars) {
  std::string s;
  for (const auto& v : vars) s += " " + v;
  return s;
}

std::string atom(const std::vector<std::string>& args) {
  std::string s = "R(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
  return s + ")";
}

std::string hypergraph_text(int k) {
  std::vector<std::string> x;
  for (int i = 1; i <= k; ++i) x.push_back("x" + std::to_string(i));
  std::string t = "# symmetric, anti-reflexive " + std::to_string(k) + "-hypergraphs\n";
  t += "rel R/" + std::to_string(k) + ";\n";
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      auto args = x;
      args[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(i)];
      auto vars = x;
      vars.erase(vars.begin() + j);
      t += "forall" + var_list(vars) + " . !" + atom(args) + ";\n";
    }
  }
  for (int i = 0; i + 1 < k; ++i) {
    auto swapped = x;
    std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(i) + 1]);
    t += "forall" + var_list(x) + " . " + atom(x) + " -> " + atom(swapped) + ";\n";
  }
  return t;
}

std::string parity_text() {
  std::string t = hypergraph_text(3);
  const std::vector<std::string> faces = {"R(x,y,z)", "R(w,y,z)", "R(w,x,z)", "R(w,x,y)"};
  std::string dnf;
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    if (!dnf.empty()) dnf += "\n  | ";
    dnf += "(";
    for (int b = 0; b < 4; ++b) {
      if (b) dnf += " & ";
      dnf += ((mask >> b) & 1 ? "" : "!") + faces[static_cast<std::size_t>(b)];
    }
    dnf += ")";
  }
  t += "# every four points span an even number of triples\n";
  t += "forall w x y z .\n    " + dnf + ";\n";
  return t;
}

std::optional<int> hypergraph_arity(std::string_view name) {
  constexpr std::string_view kSuffix = "-hypergraphs";
  if (name.size() <= kSuffix.size() || name.substr(name.size() - kSuffix.size()) != kSuffix) {
    return std::nullopt;
  }
  auto digits = name.substr(0, name.size() - kSuffix.size());
  int k = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || p != digits.data() + digits.size() || k < 2) return std::nullopt;
  return k;
}

}  // namespace

std::string builtin_theory_text(std::string_view name) {
  if (name == "graphs") {
    return "# undirected loop-free graphs\n"
           "rel R/2;\n"
           "forall x . !R(x,x);\n"
           "forall x y . R(x,y) -> R(y,x);\n";
  }
  if (name == "digraphs") {
    return "# loop-free directed graphs\n"
           "rel R/2;\n"
           "forall x . !R(x,x);\n";
  }
  if (name == "tournaments") {
    return "# tournaments: exactly one direction between distinct points\n"
           "rel R/2;\n"
           "forall x y . x = y | R(x,y) | R(y,x);\n"
           "forall x y . !(R(x,y) & R(y,x));\n";
  }
  if (name == "equivalence") {
    return "# equivalence relations\n"
           "rel R/2;\n"
           "forall x . R(x,x);\n"
           "forall x y . R(x,y) -> R(y,x);\n"
           "forall x y z . (R(x,y) & R(y,z)) -> R(x,z);\n";
  }
  if (name == "parity-hypergraphs") return parity_text();
  if (auto k = hypergraph_arity(name)) return hypergraph_text(*k);
  throw PreconditionError("unknown builtin class '" + std::string(name) + "'");
}

FiniteClass builtin_class(std::string_view name) {
  return FiniteClass::from_theory(std::string(name), parse_theory(builtin_theory_text(name)));
}

std::vector<std::string> builtin_class_names() {
  return {"graphs",  "digraphs", "tournaments", "equivalence", "3-hypergraphs",
          "parity-hypergraphs"};
}

std::vector<Structure> enumerate_age(const FiniteClass& k, int n, int cap) {
  if (n > cap) throw CapExceeded(n, cap);
  return k.enumerate(n);
}

}  // namespace relex
