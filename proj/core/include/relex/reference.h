#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "relex/decision.h"
#include "relex/embeddings.h"
#include "relex/samplers.h"

namespace relex {

// Reference structures on the natural numbers, consumed through prefixes.
//   evens          unary P = the even numbers
//   weak-rep       ternary R with (i,j,k) in R iff j = k = i, or j and k
//                  both differ from i and have the same parity
//   tdc-evens      digraph with an edge (i,j) iff j is odd and j != i
//   random-graph   a frame-wise random graph drawn with a fixed seed
//   parity-overlay distinct triples spanning an odd number of edges of the
//                  random graph above
//   trivial        the empty signature
std::shared_ptr<const RestrictionOracle> reference_oracle(std::string_view name,
                                                          std::uint64_t reference_seed = 0);
std::vector<std::string> reference_oracle_names();

// Rule tables in the documented JSON format.
nlohmann::json random_graph_rules_json();
nlohmann::json tournament_rules_json();
// Unary X over (N, P): inclusion probability theta1 on P, theta0 off P.
nlohmann::json strong_rep_rules_json(double theta0 = 0.3, double theta1 = 0.7);
// As above with (theta0, theta1) = (0.1, 0.5) when xi of the empty set is
// below 1/2 and (0.5, 0.9) otherwise.
nlohmann::json strong_rep_mixed_rules_json();

// Rules written directly in C++ that read initial segments of M.
RuleSet weak_rep_maxseg_rules();
RuleSet tdc_maxseg_rules();

// Samplers addressed by name: random-graph, tournament, framewise-<class>
// for each builtin class, strong-rep, strong-rep-mixed, weak-rep,
// weak-rep-maxseg, tdc-evens, parity-overlay, and two deliberate violators:
// loop-at-1 (a symmetric random digraph with a forced loop at 1) and
// label-parity (unary, inclusion probability keyed on label parity).
SamplerFn named_sampler(std::string_view name);
std::vector<std::string> named_sampler_names();
// The reference structure a named sampler is relative to ("trivial" when it
// is plainly exchangeable).
std::string reference_for_sampler(std::string_view name);

struct PaperExampleDraw {
  std::shared_ptr<const RestrictionOracle> reference;
  Structure sample;
};

// name in {weak-rep, tdc-evens, parity-overlay, strong-rep}.
PaperExampleDraw paper_example(std::string_view name, int n, std::uint64_t seed);

}  // namespace relex
