#include "relex/reference.h"

#include <mutex>
#include <numeric>

#include "relex/errors.h"
#include "relex/finite_class.h"
#include "tuple_iter.h"

namespace relex {

namespace {

// Memoizes the largest prefix produced by a projective generator.
class CachedOracle final : public RestrictionOracle {
 public:
  CachedOracle(Signature signature, std::function<Structure(int)> generate)
      : signature_(std::move(signature)), generate_(std::move(generate)) {}

  const Signature& signature() const override { return signature_; }

  Structure prefix(int n) const override {
    std::lock_guard<std::mutex> lock(mu_);
    if (!cached_ || cached_->size() < n) cached_ = generate_(n);
    if (cached_->size() == n) return *cached_;
    std::vector<int> first(static_cast<std::size_t>(n));
    std::iota(first.begin(), first.end(), 1);
    return pullback(*cached_, first);
  }

 private:
  Signature signature_;
  std::function<Structure(int)> generate_;
  mutable std::mutex mu_;
  mutable std::optional<Structure> cached_;
};

const Signature& unary(const char* name) {
  static const Signature kP{{"P", 1}};
  static const Signature kX{{"X", 1}};
  return std::string_view(name) == "P" ? kP : kX;
}

Structure random_graph_prefix(int n, std::uint64_t seed) {
  static const FiniteClass kGraphs = builtin_class("graphs");
  static const Signature kR0{{"R0", 2}};
  const Structure g = sample_framewise(kGraphs, n, HierarchicalRandomSource(seed, 2));
  Structure out(kR0, n);
  for (std::size_t i = 0; i < g.slot_count(0); ++i) out.set_bit(0, i, g.bit(0, i));
  return out;
}

Structure parity_prefix(const Structure& graph) {
  static const Signature kR{{"R", 3}};
  const int n = graph.size();
  Structure out(kR, n);
  std::size_t rank = 0;
  detail::for_each_tuple(n, 3, [&](std::span<const int> t) {
    const std::size_t here = rank++;
    if (detail::range_size(t) != 3) return;
    const int edges = graph.holds(0, {t[0], t[1]}) + graph.holds(0, {t[0], t[2]}) +
                      graph.holds(0, {t[1], t[2]});
    out.set_bit(0, here, edges % 2 == 1);
  });
  return out;
}

nlohmann::json xi_cond(std::vector<int> subset, double lo, double hi) {
  return {{"subset", subset}, {"interval", {lo, hi}}};
}

nlohmann::json unary_sig(const char* name) {
  return nlohmann::json::array({{{"name", name}, {"arity", 1}}});
}

}  // namespace

std::shared_ptr<const RestrictionOracle> reference_oracle(std::string_view name,
                                                          std::uint64_t reference_seed) {
  if (name == "evens") {
    return std::make_shared<PredicateOracle>(
        unary("P"), [](std::size_t, std::span<const int> t) { return t[0] % 2 == 0; });
  }
  if (name == "weak-rep") {
    return std::make_shared<PredicateOracle>(
        Signature{{"R", 3}}, [](std::size_t, std::span<const int> t) {
          const int i = t[0], j = t[1], k = t[2];
          if (j == i || k == i) return j == i && k == i;
          return j % 2 == k % 2;
        });
  }
  if (name == "tdc-evens") {
    return std::make_shared<PredicateOracle>(
        Signature{{"R", 2}},
        [](std::size_t, std::span<const int> t) { return t[1] % 2 == 1 && t[1] != t[0]; });
  }
  if (name == "random-graph") {
    return std::make_shared<CachedOracle>(
        Signature{{"R0", 2}}, [reference_seed](int n) { return random_graph_prefix(n, reference_seed); });
  }
  if (name == "parity-overlay") {
    return std::make_shared<CachedOracle>(Signature{{"R", 3}}, [reference_seed](int n) {
      return parity_prefix(random_graph_prefix(n, reference_seed));
    });
  }
  if (name == "trivial") {
    return std::make_shared<PredicateOracle>(Signature(),
                                             [](std::size_t, std::span<const int>) { return false; });
  }
  throw PreconditionError("unknown reference structure '" + std::string(name) + "'");
}

std::vector<std::string> reference_oracle_names() {
  return {"evens", "weak-rep", "tdc-evens", "random-graph", "parity-overlay", "trivial"};
}

nlohmann::json random_graph_rules_json() {
  return {
      {"signature", {{{"name", "R"}, {"arity", 2}}}},
      {"rules",
       {{"R",
         {{"cases",
           {{{"when", {{"pattern", {1, 1}}}}, {"value", false}},
            {{"when", {{"xi", {xi_cond({1, 2}, 0.0, 0.5)}}}}, {"value", true}}}},
          {"default", false}}}}}};
}

nlohmann::json tournament_rules_json() {
  return {
      {"signature", {{{"name", "R"}, {"arity", 2}}}},
      {"rules",
       {{"R",
         {{"cases",
           {{{"when", {{"pattern", {1, 1}}}}, {"value", false}},
            {{"when", {{"order", {{{"sub", {1, 2}}, {"less", {1, 2}}}}}}}, {"value", true}}}},
          {"default", false}}}}}};
}

nlohmann::json strong_rep_rules_json(double theta0, double theta1) {
  const nlohmann::json in_p = {{"P", {{1}}}};
  const nlohmann::json off_p = {{"P", nlohmann::json::array()}};
  return {{"signature", unary_sig("X")},
          {"reference_signature", unary_sig("P")},
          {"rules",
           {{"X",
             {{"cases",
               {{{"when", {{"context", in_p}, {"xi", {xi_cond({1}, 0.0, theta1)}}}}, {"value", true}},
                {{"when", {{"context", off_p}, {"xi", {xi_cond({1}, 0.0, theta0)}}}},
                 {"value", true}}}},
              {"default", false}}}}}};
}

nlohmann::json strong_rep_mixed_rules_json() {
  const nlohmann::json in_p = {{"P", {{1}}}};
  const nlohmann::json off_p = {{"P", nlohmann::json::array()}};
  auto the_case = [](const nlohmann::json& ctx, double lo, double hi, double theta) {
    return nlohmann::json{
        {"when",
         {{"context", ctx}, {"xi", {xi_cond({}, lo, hi), xi_cond({1}, 0.0, theta)}}}},
        {"value", true}};
  };
  return {{"signature", unary_sig("X")},
          {"reference_signature", unary_sig("P")},
          {"rules",
           {{"X",
             {{"cases",
               {the_case(in_p, 0.0, 0.5, 0.5), the_case(in_p, 0.5, 1.0, 0.9),
                the_case(off_p, 0.0, 0.5, 0.1), the_case(off_p, 0.5, 1.0, 0.5)}},
              {"default", false}}}}}};
}

RuleSet weak_rep_maxseg_rules() {
  RuleSet set;
  set.signature = Signature{{"S", 2}};
  set.reference_signature = Signature{{"R", 3}};
  set.functions.push_back({{"S", 2}, [](const RuleInput& in) {
                             const int i = in.at(1);
                             const int j = in.at(2);
                             if (i == j) return false;
                             // Compare j with a fixed anchor outside {i}; the
                             // segment up to max(i,j) always contains it.
                             const int anchor = i == 1 ? 2 : 1;
                             const bool with_anchor = in.context()->holds(0, {i, anchor, j});
                             return with_anchor == (in.xi({1}) < 0.5);
                           }});
  return set;
}

RuleSet tdc_maxseg_rules() {
  RuleSet set;
  set.signature = unary("X");
  set.reference_signature = Signature{{"R", 2}};
  set.functions.push_back({{"X", 1}, [](const RuleInput& in) {
                             const int x = in.at(1);
                             // x is odd iff x = 1 or 1 -> x is an edge.
                             const bool odd = x == 1 || in.context()->holds(0, {1, x});
                             if (in.xi({}) < 1.0 / 3.0) return !odd;
                             return odd && in.xi({1}) < 0.5;
                           }});
  return set;
}

namespace {

SamplerFn rules_sampler(RuleSet rules) {
  auto shared = std::make_shared<const RuleSet>(std::move(rules));
  return [shared](int n, std::uint64_t seed) {
    return sample_exchangeable(*shared, n, HierarchicalRandomSource(seed, shared->max_arity()));
  };
}

SamplerFn m_sampler(RuleSet rules, std::shared_ptr<const RestrictionOracle> m) {
  auto shared = std::make_shared<const RuleSet>(std::move(rules));
  return [shared, m](int n, std::uint64_t seed) {
    return sample_m_exchangeable(*shared, *m, n, HierarchicalRandomSource(seed, shared->max_arity()));
  };
}

SamplerFn maxseg_sampler(RuleSet rules, std::shared_ptr<const RestrictionOracle> m) {
  auto shared = std::make_shared<const RuleSet>(std::move(rules));
  return [shared, m](int n, std::uint64_t seed) {
    return sample_maxseg_exchangeable(*shared, *m, n,
                                      HierarchicalRandomSource(seed, shared->max_arity()));
  };
}

Structure weak_rep_direct(int n, std::uint64_t seed) {
  const HierarchicalRandomSource src(seed, 2);
  Structure out(Signature{{"S", 2}}, n);
  for (int i = 1; i <= n; ++i) {
    const int parity = src.xi({i}) < 0.5 ? 0 : 1;
    for (int j = 1; j <= n; ++j) {
      if (j != i && j % 2 == parity) out.set(0, {i, j});
    }
  }
  return out;
}

Structure parity_overlay_sample(const Structure& graph, std::uint64_t seed) {
  const HierarchicalRandomSource src(seed, 2);
  const int n = graph.size();
  Structure out(Signature{{"S", 2}}, n);
  std::vector<int> bit(static_cast<std::size_t>(n) + 1, 0);
  for (int x = 1; x <= n; ++x) bit[static_cast<std::size_t>(x)] = src.xi({x}) < 0.5 ? 1 : 0;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (x == y) continue;
      const bool differ = bit[static_cast<std::size_t>(x)] != bit[static_cast<std::size_t>(y)];
      out.set(0, {x, y}, graph.holds(0, {x, y}) == differ);
    }
  }
  return out;
}

}  // namespace

SamplerFn named_sampler(std::string_view name) {
  if (name == "random-graph") return rules_sampler(load_rule_set(random_graph_rules_json()));
  if (name == "tournament") return rules_sampler(load_rule_set(tournament_rules_json()));
  if (name.rfind("framewise-", 0) == 0) {
    auto k = std::make_shared<const FiniteClass>(builtin_class(name.substr(10)));
    return [k](int n, std::uint64_t seed) {
      return sample_framewise(*k, n,
                              HierarchicalRandomSource(seed, std::max(1, k->signature().max_arity())));
    };
  }
  if (name == "strong-rep") {
    return m_sampler(load_rule_set(strong_rep_rules_json()), reference_oracle("evens"));
  }
  if (name == "strong-rep-mixed") {
    return m_sampler(load_rule_set(strong_rep_mixed_rules_json()), reference_oracle("evens"));
  }
  if (name == "weak-rep") return weak_rep_direct;
  if (name == "weak-rep-maxseg") return maxseg_sampler(weak_rep_maxseg_rules(), reference_oracle("weak-rep"));
  if (name == "tdc-evens") return maxseg_sampler(tdc_maxseg_rules(), reference_oracle("tdc-evens"));
  if (name == "parity-overlay") {
    auto m0 = reference_oracle("random-graph");
    return [m0](int n, std::uint64_t seed) { return parity_overlay_sample(m0->prefix(n), seed); };
  }
  if (name == "loop-at-1") {
    auto base = std::make_shared<const RuleSet>(load_rule_set(random_graph_rules_json()));
    return [base](int n, std::uint64_t seed) {
      Structure s = sample_exchangeable(*base, n, HierarchicalRandomSource(seed, 2));
      if (n >= 1) s.set(0, {1, 1});
      return s;
    };
  }
  if (name == "label-parity") {
    return [](int n, std::uint64_t seed) {
      const HierarchicalRandomSource src(seed, 1);
      Structure s(unary("X"), n);
      for (int x = 1; x <= n; ++x) s.set(0, {x}, src.xi({x}) < (x % 2 == 0 ? 0.7 : 0.3));
      return s;
    };
  }
  throw PreconditionError("unknown sampler '" + std::string(name) + "'");
}

std::vector<std::string> named_sampler_names() {
  std::vector<std::string> names = {"random-graph", "tournament"};
  for (const auto& k : builtin_class_names()) {
    if (k != "equivalence" && k != "parity-hypergraphs") names.push_back("framewise-" + k);
  }
  for (const char* n : {"strong-rep", "strong-rep-mixed", "weak-rep", "weak-rep-maxseg",
                        "tdc-evens", "parity-overlay", "loop-at-1", "label-parity"}) {
    names.emplace_back(n);
  }
  return names;
}

std::string reference_for_sampler(std::string_view name) {
  if (name == "strong-rep" || name == "strong-rep-mixed") return "evens";
  if (name == "weak-rep" || name == "weak-rep-maxseg") return "weak-rep";
  if (name == "tdc-evens") return "tdc-evens";
  if (name == "parity-overlay") return "parity-overlay";
  return "trivial";
}

PaperExampleDraw paper_example(std::string_view name, int n, std::uint64_t seed) {
  if (name != "weak-rep" && name != "tdc-evens" && name != "parity-overlay" &&
      name != "strong-rep") {
    throw PreconditionError("unknown paper example '" + std::string(name) + "'");
  }
  return PaperExampleDraw{reference_oracle(reference_for_sampler(name)),
                          named_sampler(name)(n, seed)};
}

}  // namespace relex
