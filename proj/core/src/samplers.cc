#include "relex/samplers.h"

#include <algorithm>
#include <cmath>

#include "relex/errors.h"
#include "tuple_iter.h"

namespace relex {

namespace {

template <typename ContextFor>
Structure run_rules(const RuleSet& rules, int n, const RandomSource& src, ContextFor&& context_for) {
  if (n < 0) throw PreconditionError("sample size must be >= 0");
  Structure out(rules.signature, n);
  for (std::size_t r = 0; r < rules.signature.size(); ++r) {
    const auto& fn = rules.for_relation(r);
    std::size_t rank = 0;
    detail::for_each_tuple(n, rules.signature[r].arity, [&](std::span<const int> t) {
      const Structure* ctx = context_for(t);
      out.set_bit(r, rank++, fn.rule(RuleInput(t, ctx, src)));
    });
  }
  return out;
}

void require_reference(const RuleSet& rules, const RestrictionOracle& m) {
  if (!(rules.reference_signature == m.signature())) {
    throw SignatureMismatch("rules expect reference signature " +
                            rules.reference_signature.to_string() + " but M has " +
                            m.signature().to_string());
  }
}

}  // namespace

Structure sample_exchangeable(const RuleSet& rules, int n, const RandomSource& src) {
  return run_rules(rules, n, src, [](std::span<const int>) { return nullptr; });
}

Structure sample_m_exchangeable(const RuleSet& rules, const RestrictionOracle& m, int n,
                                const RandomSource& src) {
  require_reference(rules, m);
  const Structure window = m.prefix(n);
  Structure ctx;
  std::vector<int> seen;
  return run_rules(rules, n, src, [&](std::span<const int> t) {
    seen.clear();
    for (int x : t) {
      if (std::find(seen.begin(), seen.end(), x) == seen.end()) seen.push_back(x);
    }
    ctx = pullback(window, seen);
    return &ctx;
  });
}

Structure sample_maxseg_exchangeable(const RuleSet& rules, const RestrictionOracle& m, int n,
                                     const RandomSource& src) {
  require_reference(rules, m);
  const Structure window = m.prefix(n);
  std::vector<Structure> segments;
  std::vector<int> first;
  segments.push_back(pullback(window, first));
  for (int k = 1; k <= n; ++k) {
    first.push_back(k);
    segments.push_back(pullback(window, first));
  }
  return run_rules(rules, n, src, [&](std::span<const int> t) {
    const int top = t.empty() ? 0 : *std::max_element(t.begin(), t.end());
    return &segments[static_cast<std::size_t>(top)];
  });
}

AmalgamationFailure::AmalgamationFailure(std::vector<int> subset, Family family)
    : Error([&] {
        std::string s = "no amalgam over subset {";
        for (std::size_t i = 0; i < subset.size(); ++i) s += (i ? "," : "") + std::to_string(subset[i]);
        return s + "}";
      }()),
      subset_(std::move(subset)),
      family_(std::move(family)) {}

FramewiseStep framewise_step(const FiniteClass& k, const Structure& lower,
                             std::span<const int> s, const RandomSource& src,
                             const ClassWeights& weights) {
  const int size = static_cast<int>(s.size());
  if (lower.size() != size) throw PreconditionError("lower structure must live on [1,|s|]");
  const auto& sig = k.signature();

  if (size > sig.max_arity()) {
    // Nothing is left undecided: the subset either already belongs to K or
    // cannot be amalgamated.
    if (!k.contains(lower)) {
      throw AmalgamationFailure(std::vector<int>(s.begin(), s.end()), faces_of(lower));
    }
    return FramewiseStep{lower};
  }

  PartialStructure boundary(sig, size);
  for (std::size_t r = 0; r < sig.size(); ++r) {
    std::size_t rank = 0;
    detail::for_each_tuple(size, sig[r].arity, [&](std::span<const int> t) {
      const std::size_t here = rank++;
      if (detail::range_size(t) < size) boundary.fix(r, here, lower.bit(r, here));
    });
  }
  AmalgamSet set = amalgams(boundary, k);
  if (set.all.empty()) {
    throw AmalgamationFailure(std::vector<int>(s.begin(), s.end()), faces_of(lower));
  }

  FramewiseStep step;
  step.class_count = set.representatives.size();
  const double u = src.xi(s);
  if (weights.empty()) {
    step.class_index = std::min(step.class_count - 1,
                                static_cast<std::size_t>(u * static_cast<double>(step.class_count)));
  } else {
    std::vector<double> w;
    double total = 0.0;
    for (const auto& form : set.canonical_forms) {
      auto it = weights.find(form);
      const double v = it == weights.end() ? 1.0 : it->second;
      if (!(v > 0.0)) throw PreconditionError("class weights must be positive");
      w.push_back(v);
      total += v;
    }
    double acc = 0.0;
    step.class_index = step.class_count - 1;
    for (std::size_t c = 0; c < w.size(); ++c) {
      acc += w[c] / total;
      if (u < acc) {
        step.class_index = c;
        break;
      }
    }
  }
  const auto& orbit = set.members[step.class_index];
  step.orbit_size = orbit.size();
  step.orbit_index = orbit.size() == 1 ? 0 : ordering_rank(src.ordering(s)) % orbit.size();
  step.chosen = std::move(set.all[orbit[step.orbit_index]]);
  return step;
}

Structure sample_framewise(const FiniteClass& k, int n, const RandomSource& src,
                           const ClassWeights& weights) {
  if (n < 0) throw PreconditionError("sample size must be >= 0");
  const auto& sig = k.signature();
  const int max_arity = sig.max_arity();
  // Subsets above the arity only get a membership check, and past the
  // class's locality that check is implied by the smaller ones.
  int top = n;
  if (auto q = k.locality()) top = std::min(n, std::max(max_arity, *q));
  Structure m(sig, n);
  std::vector<int> s;
  for (int size = 1; size <= top; ++size) {
    auto rec = [&](auto&& self, int next) -> void {
      if (static_cast<int>(s.size()) == size) {
        const Structure lower = pullback(m, s);
        FramewiseStep step = framewise_step(k, lower, s, src, weights);
        if (size > max_arity) return;
        for (std::size_t r = 0; r < sig.size(); ++r) {
          std::size_t rank = 0;
          detail::for_each_tuple(size, sig[r].arity, [&](std::span<const int> t) {
            const std::size_t here = rank++;
            if (detail::range_size(t) < size) return;
            std::size_t global = 0;
            for (int x : t) {
              global = global * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(s[static_cast<std::size_t>(x - 1)] - 1);
            }
            m.set_bit(r, global, step.chosen.bit(r, here));
          });
        }
        return;
      }
      for (int x = next; x <= n; ++x) {
        s.push_back(x);
        self(self, x + 1);
        s.pop_back();
      }
    };
    rec(rec, 1);
  }
  return m;
}

const std::map<Structure, double>& AgeIndexedLaw::table_for(const Structure& s) const {
  for (std::size_t i = 0; i < ages.size(); ++i) {
    if (ages[i] == s) return tables[i];
  }
  throw PreconditionError("age indexed law has no table for " + s.to_string());
}

InvarianceDiscrepancy invariance_discrepancy(const AgeIndexedLaw& law) {
  InvarianceDiscrepancy out;
  for (std::size_t a = 0; a < law.ages.size(); ++a) {
    for (std::size_t b = 0; b < law.ages.size(); ++b) {
      if (law.ages[a].size() > law.ages[b].size()) continue;
      for (const auto& phi : enumerate_embeddings(law.ages[a], law.ages[b]).maps) {
        std::map<Structure, double> pushed;
        for (const auto& [y, p] : law.tables[b]) pushed[pullback(y, phi.images())] += p;
        auto diff_at = [&](const Structure& key) {
          auto i = pushed.find(key);
          auto j = law.tables[a].find(key);
          const double x = i == pushed.end() ? 0.0 : i->second;
          const double y = j == law.tables[a].end() ? 0.0 : j->second;
          return std::abs(x - y);
        };
        double worst = 0.0;
        for (const auto& [key, _] : pushed) worst = std::max(worst, diff_at(key));
        for (const auto& [key, _] : law.tables[a]) worst = std::max(worst, diff_at(key));
        if (!out.source || worst > out.worst) {
          out.worst = worst;
          out.source = a;
          out.target = b;
          out.embedding = phi;
        }
      }
    }
  }
  return out;
}

AgeIndexedLaw age_indexed_from_sampler(const SamplerFn& sampler, const RestrictionOracle& m,
                                       const FiniteClass& age, int cap, std::size_t n_samples,
                                       std::uint64_t meta_seed, int bound) {
  if (n_samples < 1) throw PreconditionError("need at least one sample per table");
  if (!(age.signature() == m.signature())) {
    throw SignatureMismatch("age class and reference structure use different signatures");
  }
  AgeIndexedLaw law;
  std::uint64_t stream = 0;
  for (int size = 1; size <= cap; ++size) {
    for (const auto& s : enumerate_age(age, size, cap)) {
      const Injection rho = natural_embedding(s, m, bound);
      const int top = *std::max_element(rho.images().begin(), rho.images().end());
      std::map<Structure, double> table;
      for (std::size_t i = 0; i < n_samples; ++i) {
        const Structure x = sampler(top, derive_seed(meta_seed, stream, i));
        if (law.ages.empty() && table.empty()) law.signature = x.signature();
        table[pullback(x, rho.images())] += 1.0;
      }
      for (auto& [_, p] : table) p /= static_cast<double>(n_samples);
      law.ages.push_back(s);
      law.tables.push_back(std::move(table));
      ++stream;
    }
  }
  return law;
}

Structure sample_sequential(const AgeIndexedLaw& law, const RestrictionOracle& m, int n,
                            const RandomSource& src, double epsilon) {
  if (n < 0) throw PreconditionError("sample size must be >= 0");
  Structure current(law.signature, 0);
  std::vector<int> prefix;
  for (int k = 1; k <= n; ++k) {
    const auto& table = law.table_for(m.prefix(k));
    std::vector<std::pair<const Structure*, double>> options;
    double mass = 0.0;
    for (const auto& [y, p] : table) {
      if (p > 0.0 && pullback(y, prefix) == current) {
        options.emplace_back(&y, p);
        mass += p;
      }
    }
    if (mass < epsilon) throw ZeroProbabilityConditioning(k);
    const std::int64_t key[] = {k};
    const double u = src.uniform("seq", key) * mass;
    double acc = 0.0;
    const Structure* pick = options.back().first;
    for (const auto& [y, p] : options) {
      acc += p;
      if (u < acc) {
        pick = y;
        break;
      }
    }
    current = *pick;
    prefix.push_back(k);
  }
  return current;
}

}  // namespace relex
