#include <cctype>
#include <map>

#include "relex/theory.h"

namespace relex {

namespace {

enum class Tok {
  kIdent,
  kInt,
  kLParen,
  kRParen,
  kComma,
  kDot,
  kSemi,
  kSlash,
  kBang,
  kAmp,
  kBar,
  kArrow,
  kEq,
  kNeq,
  kEnd
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kInt: return "integer";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kDot: return "'.'";
    case Tok::kSemi: return "';'";
    case Tok::kSlash: return "'/'";
    case Tok::kBang: return "'!'";
    case Tok::kAmp: return "'&'";
    case Tok::kBar: return "'|'";
    case Tok::kArrow: return "'->'";
    case Tok::kEq: return "'='";
    case Tok::kNeq: return "'!='";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line;
    const int cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::kInt, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::kArrow, "->", l, cl});
      advance(2);
      continue;
    }
    if (two == "!=") {
      out.push_back({Tok::kNeq, "!=", l, cl});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ',': kind = Tok::kComma; break;
      case '.': kind = Tok::kDot; break;
      case ';': kind = Tok::kSemi; break;
      case '/': kind = Tok::kSlash; break;
      case '!': kind = Tok::kBang; break;
      case '&': kind = Tok::kAmp; break;
      case '|': kind = Tok::kBar; break;
      case '=': kind = Tok::kEq; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({kind, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& base) : toks_(std::move(tokens)) {
    for (const auto& r : base.relations()) declare(r.name, r.arity, 0, 0);
  }

  Theory parse() {
    std::vector<Sentence> sentences;
    while (peek().kind != Tok::kEnd) {
      const Token& t = peek();
      if (t.kind == Tok::kIdent && t.text == "rel") {
        parse_decl();
      } else if (t.kind == Tok::kIdent && t.text == "forall") {
        sentences.push_back(parse_sentence());
      } else {
        fail("expected 'rel' or 'forall'", t);
      }
    }
    return Theory{Signature(relations_), std::move(sentences)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  const Token& expect(Tok kind, const char* context) {
    const Token& t = peek();
    if (t.kind != kind) {
      fail(std::string("expected ") + describe(kind) + " " + context + ", found " +
               (t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'"),
           t);
    }
    return next();
  }

  void declare(const std::string& name, int arity, int line, int col) {
    auto it = arity_.find(name);
    if (it != arity_.end()) {
      if (it->second != arity) {
        throw ParseError("relation " + name + " redeclared with arity " + std::to_string(arity) +
                             " (was " + std::to_string(it->second) + ")",
                         line, col);
      }
      return;
    }
    arity_[name] = arity;
    index_[name] = relations_.size();
    relations_.push_back({name, arity});
  }

  void parse_decl() {
    next();  // rel
    const Token& name = expect(Tok::kIdent, "after 'rel'");
    expect(Tok::kSlash, "in relation declaration");
    const Token& ar = expect(Tok::kInt, "as relation arity");
    const int arity = std::stoi(ar.text);
    if (arity < 1) fail("arity must be at least 1", ar);
    expect(Tok::kSemi, "after relation declaration");
    declare(name.text, arity, name.line, name.column);
  }

  Sentence parse_sentence() {
    next();  // forall
    vars_.clear();
    std::vector<std::string> names;
    while (peek().kind == Tok::kIdent) {
      const Token& v = next();
      if (vars_.count(v.text)) fail("variable " + v.text + " bound twice", v);
      vars_[v.text] = static_cast<int>(names.size());
      names.push_back(v.text);
    }
    if (names.empty()) fail("expected at least one variable after 'forall'", peek());
    expect(Tok::kDot, "after quantified variables");
    Formula f = parse_formula();
    expect(Tok::kSemi, "at end of sentence");
    return Sentence{std::move(names), std::move(f)};
  }

  Formula parse_formula() {
    Formula lhs = parse_disj();
    if (peek().kind == Tok::kArrow) {
      const Token& op = next();
      Formula rhs = parse_formula();
      Formula f;
      f.kind = Formula::Kind::kImplies;
      f.line = op.line;
      f.column = op.column;
      f.children.push_back(std::move(lhs));
      f.children.push_back(std::move(rhs));
      return f;
    }
    return lhs;
  }

  Formula parse_disj() {
    Formula first = parse_conj();
    if (peek().kind != Tok::kBar) return first;
    Formula f;
    f.kind = Formula::Kind::kOr;
    f.line = first.line;
    f.column = first.column;
    f.children.push_back(std::move(first));
    while (peek().kind == Tok::kBar) {
      next();
      f.children.push_back(parse_conj());
    }
    return f;
  }

  Formula parse_conj() {
    Formula first = parse_unary();
    if (peek().kind != Tok::kAmp) return first;
    Formula f;
    f.kind = Formula::Kind::kAnd;
    f.line = first.line;
    f.column = first.column;
    f.children.push_back(std::move(first));
    while (peek().kind == Tok::kAmp) {
      next();
      f.children.push_back(parse_unary());
    }
    return f;
  }

  int variable(const Token& t) {
    auto it = vars_.find(t.text);
    if (it == vars_.end()) fail("variable " + t.text + " is not bound by this sentence", t);
    return it->second;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::kBang) {
      next();
      Formula f;
      f.kind = Formula::Kind::kNot;
      f.line = t.line;
      f.column = t.column;
      f.children.push_back(parse_unary());
      return f;
    }
    if (t.kind == Tok::kLParen) {
      next();
      Formula f = parse_formula();
      expect(Tok::kRParen, "to close parenthesis");
      return f;
    }
    if (t.kind != Tok::kIdent) {
      fail("expected an atom, '!' or '(', found " +
               (t.kind == Tok::kEnd ? std::string("end of input") : "'" + t.text + "'"),
           t);
    }
    const Token& head = next();
    if (peek().kind == Tok::kEq || peek().kind == Tok::kNeq) {
      const bool negated = next().kind == Tok::kNeq;
      Formula eq;
      eq.kind = Formula::Kind::kEquals;
      eq.line = head.line;
      eq.column = head.column;
      eq.args = {variable(head), variable(expect(Tok::kIdent, "after equality sign"))};
      if (!negated) return eq;
      Formula f;
      f.kind = Formula::Kind::kNot;
      f.line = head.line;
      f.column = head.column;
      f.children.push_back(std::move(eq));
      return f;
    }
    auto rel = index_.find(head.text);
    if (rel == index_.end()) fail("unknown relation symbol " + head.text, head);
    expect(Tok::kLParen, "after relation symbol");
    Formula f;
    f.kind = Formula::Kind::kAtom;
    f.relation = rel->second;
    f.line = head.line;
    f.column = head.column;
    f.args.push_back(variable(expect(Tok::kIdent, "as relation argument")));
    while (peek().kind == Tok::kComma) {
      next();
      f.args.push_back(variable(expect(Tok::kIdent, "as relation argument")));
    }
    expect(Tok::kRParen, "to close relation arguments");
    const int arity = arity_.at(head.text);
    if (static_cast<int>(f.args.size()) != arity) {
      fail("arity mismatch: " + head.text + " has arity " + std::to_string(arity) + " but " +
               std::to_string(f.args.size()) + " arguments were given",
           head);
    }
    return f;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<RelationSymbol> relations_;
  std::map<std::string, int> arity_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, int> vars_;
};

}  // namespace

Theory parse_theory(std::string_view text, const Signature& base) {
  return Parser(lex(text), base).parse();
}

}  // namespace relex
