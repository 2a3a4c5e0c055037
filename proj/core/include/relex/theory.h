#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relex/errors.h"
#include "relex/partial_structure.h"
#include "relex/structure.h"

namespace relex {

// Quantifier-free formula over relation atoms R(v...), equality atoms and the
// connectives !, &, |, ->. Variables are indices into the enclosing
// sentence's variable list.
struct Formula {
  enum class Kind { kAtom, kEquals, kNot, kAnd, kOr, kImplies };

  Kind kind = Kind::kAtom;
  std::size_t relation = 0;  // kAtom
  std::vector<int> args;     // kAtom, kEquals
  std::vector<Formula> children;
  int line = 0;
  int column = 0;
};

struct Sentence {
  std::vector<std::string> variables;
  Formula matrix;
};

// A universal theory: every sentence is forall x1..xk . matrix. Quantifiers
// range over all assignments, including non-injective ones.
struct Theory {
  Signature signature;
  std::vector<Sentence> sentences;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Grammar:
//   theory   := (decl | sentence)*
//   decl     := "rel" IDENT "/" INT ";"
//   sentence := "forall" IDENT+ "." formula ";"
//   formula  := disj ("->" formula)?          (right-associative, loosest)
//   disj     := conj ("|" conj)*
//   conj     := unary ("&" unary)*
//   unary    := "!" unary | "(" formula ")" | atom | IDENT ("=" | "!=") IDENT
//   atom     := IDENT "(" IDENT ("," IDENT)* ")"
// Comments run from '#' to end of line. Relation symbols come from `rel`
// declarations or from `base`.
Theory parse_theory(std::string_view text, const Signature& base = Signature());

// Renders a formula with the sentence's variable names.
std::string to_string(const Formula& f, const Sentence& sentence, const Signature& signature);
std::string to_string(const Sentence& sentence, const Signature& signature);
std::string to_string(const Theory& theory);

struct ParametricReport {
  bool parametric = true;
  std::optional<std::size_t> sentence;  // first offending sentence
  std::string offending_atom;           // e.g. "R(x,y)"
};

// True iff every atomic subformula of every sentence mentions all of that
// sentence's variables.
ParametricReport is_parametric(const Theory& theory);

struct Violation {
  std::size_t sentence = 0;
  std::vector<int> assignment;  // value of each variable
};

std::optional<Violation> first_violation(const Theory& theory, const Structure& s);
bool satisfies(const Theory& theory, const Structure& s);

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

// All models extending the decided memberships of `partial`, in increasing
// encoding order, stopping after `limit`. Backtracks over undecided tuples in
// lexicographic order and evaluates each ground instance of a sentence as
// soon as its last undecided atom is assigned.
std::vector<Structure> complete_models(const Theory& theory, const PartialStructure& partial,
                                       std::size_t limit = kNoLimit);

// All models on [1,n]. Throws CapExceeded when n > cap.
std::vector<Structure> enumerate_models(const Theory& theory, int n, int cap = 6);

// Sizes in [0,cap] at which the theory has no model (empty when the theory
// has models of every size up to cap).
std::vector<int> sizes_without_models(const Theory& theory, int cap);

}  // namespace relex
