#include "relex/decision.h"

#include <algorithm>
#include <optional>

#include "relex/errors.h"

namespace relex {

int RuleInput::at(int position) const {
  if (position < 1 || position > arity()) {
    throw PreconditionError("position " + std::to_string(position) + " outside a tuple of arity " +
                            std::to_string(arity()));
  }
  return tuple_[static_cast<std::size_t>(position - 1)];
}

double RuleInput::xi(std::span<const int> positions) const {
  std::vector<int> set;
  set.reserve(positions.size());
  for (int p : positions) set.push_back(at(p));
  return src_->xi(set);
}

bool RuleInput::precedes(std::span<const int> sub, int a, int b) const {
  if (a < 1 || b < 1 || a > static_cast<int>(sub.size()) || b > static_cast<int>(sub.size())) {
    throw PreconditionError("order positions must index the subsequence");
  }
  std::vector<int> y;
  y.reserve(sub.size());
  for (int p : sub) y.push_back(at(p));
  const auto order = src_->ordering(y);
  auto rank = [&](int v) { return std::find(order.begin(), order.end(), v) - order.begin(); };
  return rank(y[static_cast<std::size_t>(a - 1)]) < rank(y[static_cast<std::size_t>(b - 1)]);
}

std::vector<int> RuleInput::first_occurrence() const {
  std::vector<int> seen;
  for (int x : tuple_) {
    if (std::find(seen.begin(), seen.end(), x) == seen.end()) seen.push_back(x);
  }
  return seen;
}

std::vector<int> RuleInput::pattern() const {
  const auto seen = first_occurrence();
  std::vector<int> out;
  out.reserve(tuple_.size());
  for (int x : tuple_) {
    out.push_back(static_cast<int>(std::find(seen.begin(), seen.end(), x) - seen.begin()) + 1);
  }
  return out;
}

const DecisionFunction& RuleSet::for_relation(std::size_t r) const {
  const auto& sym = signature[r];
  for (const auto& f : functions) {
    if (f.target.name != sym.name) continue;
    if (f.target.arity != sym.arity) {
      throw SignatureMismatch("decision function for " + sym.name + " has arity " +
                              std::to_string(f.target.arity) + ", signature says " +
                              std::to_string(sym.arity));
    }
    return f;
  }
  throw SignatureMismatch("no decision function for relation " + sym.name);
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw PreconditionError("rule table: " + what);
}

Signature parse_signature(const nlohmann::json& j) {
  if (!j.is_array()) bad("signature must be a list");
  std::vector<RelationSymbol> rels;
  for (const auto& r : j) {
    if (!r.is_object() || !r.contains("name") || !r.contains("arity")) {
      bad("signature entries need name and arity");
    }
    rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<int>()});
  }
  return Signature(std::move(rels));
}

struct XiCondition {
  std::vector<int> positions;
  double lo;
  double hi;
};

struct OrderCondition {
  std::vector<int> sub;
  int a;
  int b;
};

struct Case {
  std::optional<std::vector<int>> pattern;
  std::vector<std::pair<std::size_t, std::vector<Tuple>>> context;
  std::vector<XiCondition> xi;
  std::vector<OrderCondition> order;
  bool value = false;

  bool matches(const RuleInput& in) const {
    if (pattern && in.pattern() != *pattern) return false;
    if (!context.empty()) {
      const Structure* ctx = in.context();
      if (!ctx) bad("a case with a context condition was evaluated without a context");
      for (const auto& [r, tuples] : context) {
        if (ctx->tuples(r) != tuples) return false;
      }
    }
    for (const auto& c : xi) {
      const double v = in.xi(c.positions);
      if (v < c.lo || v >= c.hi) return false;
    }
    for (const auto& c : order) {
      if (!in.precedes(c.sub, c.a, c.b)) return false;
    }
    return true;
  }
};

std::vector<int> positions_of(const nlohmann::json& j, int arity, const char* field) {
  if (!j.is_array()) bad(std::string(field) + " must be a list of positions");
  std::vector<int> out;
  for (const auto& p : j) {
    const int v = p.get<int>();
    if (v < 1 || v > arity) bad(std::string(field) + " position out of range");
    out.push_back(v);
  }
  return out;
}

Case parse_case(const nlohmann::json& j, const RelationSymbol& target, const Signature& ref) {
  if (!j.is_object() || !j.contains("value")) bad("each case needs a value");
  Case c;
  c.value = j.at("value").get<bool>();
  if (!j.contains("when")) return c;
  const auto& when = j.at("when");
  for (const auto& [key, v] : when.items()) {
    if (key == "pattern") {
      c.pattern = positions_of(v, target.arity, "pattern");
      if (static_cast<int>(c.pattern->size()) != target.arity) bad("pattern length must match arity");
    } else if (key == "context") {
      if (!v.is_object()) bad("context must map relation names to tuple lists");
      for (const auto& [name, tuples] : v.items()) {
        auto r = ref.find(name);
        if (!r) bad("context names unknown reference relation " + name);
        std::vector<Tuple> ts = tuples.get<std::vector<Tuple>>();
        for (const auto& t : ts) {
          if (static_cast<int>(t.size()) != ref[*r].arity) bad("context tuple arity mismatch for " + name);
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        c.context.emplace_back(*r, std::move(ts));
      }
    } else if (key == "xi") {
      for (const auto& x : v) {
        auto iv = x.at("interval").get<std::vector<double>>();
        if (iv.size() != 2 || !(iv[0] >= 0.0 && iv[0] <= iv[1] && iv[1] <= 1.0)) {
          bad("xi interval must be [lo, hi] with 0 <= lo <= hi <= 1");
        }
        c.xi.push_back({positions_of(x.at("subset"), target.arity, "xi subset"), iv[0],
                        iv[1] >= 1.0 ? 2.0 : iv[1]});
      }
    } else if (key == "order") {
      for (const auto& o : v) {
        auto sub = positions_of(o.at("sub"), target.arity, "order sub");
        auto less = o.at("less").get<std::vector<int>>();
        if (less.size() != 2) bad("order less must name two positions");
        for (int p : less) {
          if (p < 1 || p > static_cast<int>(sub.size())) bad("order less indexes the subsequence");
        }
        c.order.push_back({std::move(sub), less[0], less[1]});
      }
    } else {
      bad("unknown condition '" + key + "'");
    }
  }
  return c;
}

}  // namespace

RuleSet load_rule_set(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("signature") || !doc.contains("rules")) {
    bad("document needs signature and rules");
  }
  RuleSet set;
  set.signature = parse_signature(doc.at("signature"));
  if (doc.contains("reference_signature")) {
    set.reference_signature = parse_signature(doc.at("reference_signature"));
  }
  const auto& rules = doc.at("rules");
  for (const auto& sym : set.signature.relations()) {
    if (!rules.contains(sym.name)) bad("no rule for relation " + sym.name);
    const auto& r = rules.at(sym.name);
    std::vector<Case> cases;
    for (const auto& c : r.value("cases", nlohmann::json::array())) {
      cases.push_back(parse_case(c, sym, set.reference_signature));
    }
    const bool fallback = r.value("default", false);
    set.functions.push_back(
        {sym, [cases = std::move(cases), fallback](const RuleInput& in) {
           for (const auto& c : cases) {
             if (c.matches(in)) return c.value;
           }
           return fallback;
         }});
  }
  for (const auto& [name, _] : rules.items()) {
    if (!set.signature.find(name)) bad("rule for undeclared relation " + name);
  }
  return set;
}

}  // namespace relex
