#include "relex/catalog.h"

#include <cmath>
#include <functional>
#include <sstream>

#include "relex/errors.h"
#include "relex/random_source.h"
#include "relex/reference.h"
#include "relex/stat_tests.h"
#include "relex/theory.h"

namespace relex {

Family equivalence_triangle_family() {
  const Signature sig{{"R", 2}};
  auto two = [&](bool joined) {
    Structure s(sig, 2);
    s.set(0, {1, 1});
    s.set(0, {2, 2});
    if (joined) {
      s.set(0, {1, 2});
      s.set(0, {2, 1});
    }
    return s;
  };
  return {two(false), two(true), two(true)};
}

namespace {

using Check = std::function<std::pair<bool, std::string>()>;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// |observed - p| within four binomial standard deviations.
bool within_4_sigma(double observed, double p, std::size_t n) {
  return std::abs(observed - p) <= 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

std::pair<bool, std::string> unary_frequencies(const std::string& sampler_name,
                                               const std::vector<std::pair<int, double>>& expect,
                                               std::size_t n_samples, std::uint64_t meta) {
  const auto sampler = named_sampler(sampler_name);
  int top = 0;
  for (const auto& [x, _] : expect) top = std::max(top, x);
  std::vector<std::size_t> hits(static_cast<std::size_t>(top) + 1, 0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Structure s = sampler(top, derive_seed(meta, 11, i));
    for (int x = 1; x <= top; ++x) hits[static_cast<std::size_t>(x)] += s.holds(0, {x});
  }
  bool ok = true;
  std::string detail;
  for (const auto& [x, p] : expect) {
    const double f = static_cast<double>(hits[static_cast<std::size_t>(x)]) / static_cast<double>(n_samples);
    ok = ok && within_4_sigma(f, p, n_samples);
    detail += "freq(" + std::to_string(x) + ")=" + fmt(f) + " expect " + fmt(p) + "; ";
  }
  return {ok, detail};
}

}  // namespace

std::vector<ClaimResult> verify_paper_examples(std::uint64_t meta_seed) {
  std::vector<std::tuple<std::string, std::string, Check>> claims;

  claims.emplace_back("equivalence-no-3dap",
                      "equivalence relations fail 3-DAP on the separated/joined/joined family",
                      [] {
                        auto r = check_ndap(builtin_class("equivalence"), 3);
                        const bool ok = !r.holds && r.witness_family &&
                                        families_isomorphic(*r.witness_family,
                                                            equivalence_triangle_family());
                        return std::make_pair(ok, std::string(r.holds ? "3-DAP held" : "witness found"));
                      });
  claims.emplace_back("equivalence-dap", "equivalence relations still have DAP (bound 3)", [] {
    auto r = check_dap(builtin_class("equivalence"), 3);
    return std::make_pair(r.holds && r.agree, std::string("configurations ") +
                                                  std::to_string(r.configurations_checked));
  });
  claims.emplace_back("parity-no-4dap",
                      "even-parity 3-hypergraphs have 3-DAP but fail 4-DAP", [] {
                        const auto k = builtin_class("parity-hypergraphs");
                        auto r3 = check_ndap(k, 3);
                        auto r4 = check_ndap(k, 4);
                        return std::make_pair(r3.holds && !r4.holds && r4.witness_family.has_value(),
                                              "3-DAP " + std::string(r3.holds ? "holds" : "fails") +
                                                  ", 4-DAP " + (r4.holds ? "holds" : "fails"));
                      });
  claims.emplace_back("graphs-ndap", "graphs satisfy n-DAP for n <= 4", [] {
    const auto k = builtin_class("graphs");
    bool ok = true;
    for (int n = 1; n <= 4; ++n) ok = ok && check_ndap(k, n).holds;
    return std::make_pair(ok, std::string());
  });
  claims.emplace_back("parametric-axioms",
                      "anti-reflexivity and symmetry are parametric, transitivity is not", [] {
                        const auto anti = is_parametric(parse_theory("rel R/2; forall x . !R(x,x);"));
                        const auto sym =
                            is_parametric(parse_theory("rel R/2; forall x y . R(x,y) -> R(y,x);"));
                        const auto trans = is_parametric(
                            parse_theory("rel R/2; forall x y z . (R(x,y) & R(y,z)) -> R(x,z);"));
                        const bool ok = anti.parametric && sym.parametric && !trans.parametric &&
                                        trans.offending_atom == "R(x,y)";
                        return std::make_pair(ok, "offending atom " + trans.offending_atom);
                      });
  claims.emplace_back("induced-order",
                      "(i,i) induces the empty order and (i,j), (j,i) induce opposite orders", [] {
                        bool ok = true;
                        for (std::uint64_t seed = 0; seed < 50; ++seed) {
                          const HierarchicalRandomSource src(seed, 2);
                          const std::vector<int> same = {1, 1};
                          const auto o1 = src.ordering({1});
                          auto e = induced_ordering(same, o1);
                          ok = ok && !e.precedes(1, 2) && !e.precedes(2, 1);
                          const std::vector<int> xy = {1, 2};
                          const std::vector<int> yx = {2, 1};
                          const auto o = src.ordering({1, 2});
                          ok = ok && induced_ordering(xy, o).precedes(1, 2) ==
                                         induced_ordering(yx, o).precedes(2, 1);
                        }
                        return std::make_pair(ok, std::string());
                      });
  claims.emplace_back("tournament-rule", "the ordering rule always yields a tournament", [meta_seed] {
    const auto sampler = named_sampler("tournament");
    const auto k = builtin_class("tournaments");
    bool ok = true;
    for (std::uint64_t i = 0; i < 200 && ok; ++i) ok = k.contains(sampler(5, derive_seed(meta_seed, 12, i)));
    return std::make_pair(ok, std::string());
  });
  claims.emplace_back("strong-rep-marginals",
                      "two-coin sampler includes P-points w.p. 0.7 and others w.p. 0.3",
                      [meta_seed] {
                        return unary_frequencies("strong-rep", {{1, 0.3}, {2, 0.7}, {3, 0.3}, {4, 0.7}},
                                                 4000, meta_seed);
                      });
  claims.emplace_back("strong-rep-mixed-not-dissociated",
                      "mixing the coins through xi_empty couples disjoint restrictions",
                      [meta_seed] {
                        const std::vector<int> s = {1, 2};
                        const std::vector<int> t = {3, 4};
                        auto r = test_dissociation(named_sampler("strong-rep-mixed"), s, t, 10000,
                                                   0.01, meta_seed);
                        return std::make_pair(!r.pass, "p = " + fmt(r.p_value));
                      });
  claims.emplace_back("weak-rep-exactly-one",
                      "for (1,2,3) outside R exactly one of (1,2), (1,3) is in S", [meta_seed] {
                        const auto m = reference_oracle("weak-rep")->prefix(3);
                        if (m.holds(0, {1, 2, 3})) return std::make_pair(false, std::string("(1,2,3) in R"));
                        const auto sampler = named_sampler("weak-rep");
                        for (std::uint64_t i = 0; i < 2000; ++i) {
                          const Structure x = sampler(3, derive_seed(meta_seed, 13, i));
                          if (x.holds(0, {1, 2}) == x.holds(0, {1, 3})) {
                            return std::make_pair(false, "sample " + std::to_string(i));
                          }
                        }
                        return std::make_pair(true, std::string("2000 samples"));
                      });
  claims.emplace_back("tdc-marginal", "every point lies in P with probability 1/3", [meta_seed] {
    return unary_frequencies("tdc-evens", {{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}, {4, 1.0 / 3}},
                             6000, meta_seed);
  });
  claims.emplace_back("parity-overlay",
                      "S spans an even number of pairs on a triple iff the triple is in R",
                      [meta_seed] {
                        const auto m = reference_oracle("parity-overlay")->prefix(6);
                        const auto sampler = named_sampler("parity-overlay");
                        for (std::uint64_t i = 0; i < 200; ++i) {
                          const Structure x = sampler(6, derive_seed(meta_seed, 14, i));
                          for (int a = 1; a <= 6; ++a) {
                            for (int b = a + 1; b <= 6; ++b) {
                              for (int c = b + 1; c <= 6; ++c) {
                                const int pairs = x.holds(0, {a, b}) + x.holds(0, {a, c}) + x.holds(0, {b, c});
                                if ((pairs % 2 == 0) != m.holds(0, {a, b, c})) {
                                  return std::make_pair(false, "sample " + std::to_string(i));
                                }
                              }
                            }
                          }
                        }
                        return std::make_pair(true, std::string("200 samples on [6]"));
                      });
  claims.emplace_back("framewise-equivalence-fails",
                      "the frame-wise sampler hits an amalgamation failure for equivalence relations",
                      [meta_seed] {
                        const auto k = builtin_class("equivalence");
                        for (std::uint64_t i = 0; i < 200; ++i) {
                          try {
                            sample_framewise(k, 4, HierarchicalRandomSource(derive_seed(meta_seed, 15, i), 2));
                          } catch (const AmalgamationFailure& e) {
                            return std::make_pair(true, std::string(e.what()));
                          }
                        }
                        return std::make_pair(false, std::string("no failure in 200 seeds"));
                      });

  std::vector<ClaimResult> out;
  for (auto& [id, claim, check] : claims) {
    ClaimResult r{id, claim, false, ""};
    try {
      auto [ok, detail] = check();
      r.passed = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace relex
