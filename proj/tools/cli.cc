#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "relex/amalgamation.h"
#include "relex/catalog.h"
#include "relex/embeddings.h"
#include "relex/errors.h"
#include "relex/finite_class.h"
#include "relex/io.h"
#include "relex/isomorphism.h"
#include "relex/reference.h"
#include "relex/samplers.h"
#include "relex/stat_tests.h"
#include "relex/theory.h"

namespace relex::cli {
namespace {

using nlohmann::json;

struct RunConfig {
  std::uint64_t seed = 0;
  int cap = kDefaultCap;
  double alpha = 0.01;
  std::size_t samples = 2000;
  std::string output;
  bool json = false;
};

// Thrown by handlers for bad flag combinations CLI11 cannot see.
struct UsageError : Error {
  using Error::Error;
};

// A command's result: the rendered document and the exit code.
struct Outcome {
  json doc;
  std::string text;
  int code = kOk;
};

std::string render_structure(const Structure& s) {
  std::ostringstream os;
  os << "universe [1," << s.size() << "]\n";
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    os << "  " << s.signature()[r].name << "/" << s.signature()[r].arity << ":";
    const auto tuples = s.tuples(r);
    if (tuples.empty()) os << " (empty)";
    for (const auto& t : tuples) {
      os << " (";
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

std::string render_family(const Family& family) {
  std::ostringstream os;
  for (std::size_t i = 0; i < family.size(); ++i) {
    os << "face " << i + 1 << " (point " << i + 1 << " deleted):\n" << render_structure(family[i]);
  }
  return os.str();
}

std::string render_report(const TestReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "statistic   " << r.statistic << "\n"
     << "dof         " << r.dof << "\n"
     << "p-value     " << r.p_value << "\n"
     << "alpha       " << r.alpha << "\n"
     << "comparisons " << r.comparisons << "\n"
     << "skipped     " << r.skipped << "\n";
  if (!r.note.empty()) os << "note        " << r.note << "\n";
  os << "verdict     " << (r.pass ? "pass" : "fail") << "\n";
  return os.str();
}

void check_size(int n, const RunConfig& cfg, const char* flag) {
  if (n < 0) throw UsageError(std::string(flag) + " must be non-negative");
  if (n > cfg.cap) {
    throw UsageError(std::string(flag) + " " + std::to_string(n) + " exceeds --cap " +
                     std::to_string(cfg.cap));
  }
}

Outcome ndap_outcome(const NdapReport& r, const std::string& cls) {
  Outcome o{to_json(r), "", r.holds ? kOk : kPropertyFailure};
  o.doc["class"] = cls;
  std::ostringstream os;
  os << cls << ": " << r.n << "-DAP " << (r.holds ? "holds" : "fails") << " ("
     << r.families_checked << " families checked)\n";
  if (r.witness_family) os << "witness family without amalgam:\n" << render_family(*r.witness_family);
  o.text = os.str();
  return o;
}

Outcome dap_outcome(const DapReport& r, const std::string& cls) {
  Outcome o{to_json(r), "", r.holds ? kOk : kPropertyFailure};
  o.doc["class"] = cls;
  std::ostringstream os;
  os << cls << ": DAP up to size " << r.bound << " " << (r.holds ? "holds" : "fails") << " ("
     << r.configurations_checked << " configurations; 2-DAP "
     << (r.ndap2_holds ? "holds" : "fails") << ", overlap form "
     << (r.overlap_holds ? "holds" : "fails") << ")\n";
  if (r.ndap2_witness) os << "2-DAP witness:\n" << render_family(*r.ndap2_witness);
  if (r.overlap_witness) {
    os << "overlap witness T:\n"
       << render_structure(r.overlap_witness->t) << "T':\n"
       << render_structure(r.overlap_witness->t_prime);
  }
  o.text = os.str();
  return o;
}

Outcome jep_outcome(const JepReport& r, const std::string& cls) {
  Outcome o{to_json(r), "", r.holds ? kOk : kPropertyFailure};
  o.doc["class"] = cls;
  std::ostringstream os;
  os << cls << ": JEP up to size " << r.bound << " " << (r.holds ? "holds" : "fails") << " ("
     << r.pairs_checked << " pairs)\n";
  if (r.failing_pair) {
    os << "no joint embedding for:\n"
       << render_structure(r.failing_pair->first) << "and\n"
       << render_structure(r.failing_pair->second);
  }
  o.text = os.str();
  return o;
}

Outcome age_outcome(const FiniteClass& k, int n, const RunConfig& cfg) {
  const auto members = enumerate_age(k, n, cfg.cap);
  std::set<Structure> classes;
  json list = json::array();
  for (const auto& s : members) {
    classes.insert(canonical_form(s));
    list.push_back(to_json(s));
  }
  Outcome o;
  o.doc = {{"class", k.name()},
           {"count", members.size()},
           {"isomorphism_classes", classes.size()},
           {"members", std::move(list)},
           {"n", n}};
  std::ostringstream os;
  os << k.name() << " on [1," << n << "]: " << members.size() << " labeled members, "
     << classes.size() << " up to isomorphism\n";
  for (const auto& s : members) os << dump_structure(s) << "\n";
  o.text = os.str();
  return o;
}

ClassWeights load_weights(const std::string& path) {
  ClassWeights w;
  if (path.empty()) return w;
  for (const auto& entry : read_json_file(path)) {
    w[canonical_form(structure_from_json(entry.at("structure")))] = entry.at("weight").get<double>();
  }
  return w;
}

// Rule tables by file path, or one of the shipped names.
RuleSet load_rules(const std::string& spec) {
  if (spec == "random-graph") return load_rule_set(random_graph_rules_json());
  if (spec == "tournament") return load_rule_set(tournament_rules_json());
  if (spec == "strong-rep") return load_rule_set(strong_rep_rules_json());
  if (spec == "strong-rep-mixed") return load_rule_set(strong_rep_mixed_rules_json());
  if (spec == "weak-rep-maxseg") return weak_rep_maxseg_rules();
  if (spec == "tdc-maxseg") return tdc_maxseg_rules();
  return load_rule_set(read_json_file(spec));
}

Outcome structure_outcome(const Structure& s) {
  return Outcome{to_json(s), render_structure(s), kOk};
}

std::vector<int> parse_set(const std::vector<int>& v, const char* flag) {
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end() || (!s.empty() && s.front() < 1)) {
    throw UsageError(std::string(flag) + " must list distinct positive integers");
  }
  return s;
}

Outcome test_outcome(const TestReport& r, const std::string& what) {
  Outcome o{to_json(r), what + "\n" + render_report(r), r.pass ? kOk : kPropertyFailure};
  o.doc["test"] = what;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite relational structures, amalgamation checks and exchangeable samplers.", "relex"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_flag("--json", cfg.json, "Machine-readable JSON output");
  app.add_option("--seed", cfg.seed, "Seed (sampling) or meta-seed (tests)")->envname("RELEX_SEED");
  app.add_option("--cap", cfg.cap, "Largest structure size to enumerate")
      ->check(CLI::Range(0, 8));
  app.add_option("--alpha", cfg.alpha, "Significance level")
      ->check(CLI::Validator(
          [](std::string& s) {
            const double a = std::stod(s);
            return (a > 0 && a < 1) ? std::string() : std::string("alpha must lie in (0,1)");
          },
          "(0,1)"));
  app.add_option("--samples", cfg.samples, "Samples per law")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Write the result to this file");

  Outcome result;
  std::function<Outcome()> action;

  // check ndap|dap|jep
  auto* check = app.add_subcommand("check", "Amalgamation properties of a class");
  check->require_subcommand(1);
  check->fallthrough();
  std::string cls;
  int n = 0;
  int bound = 0;
  {
    auto* ndap = check->add_subcommand("ndap", "Exhaustive n-DAP check");
    ndap->add_option("--class", cls, "Builtin class or theory file")->required();
    ndap->add_option("--n", n, "Dimension")->required();
    ndap->callback([&] {
      action = [&] {
        check_size(n, cfg, "--n");
        const auto k = load_class(cls);
        return ndap_outcome(check_ndap(k, n, cfg.cap), k.name());
      };
    });
    auto* dap = check->add_subcommand("dap", "Disjoint amalgamation up to a size bound");
    dap->add_option("--class", cls)->required();
    dap->add_option("--bound", bound, "Largest factor size")->required();
    dap->callback([&] {
      action = [&] {
        check_size(bound, cfg, "--bound");
        const auto k = load_class(cls);
        return dap_outcome(check_dap(k, bound, cfg.cap), k.name());
      };
    });
    auto* jep = check->add_subcommand("jep", "Joint embedding up to a size bound");
    jep->add_option("--class", cls)->required();
    jep->add_option("--bound", bound)->required();
    jep->callback([&] {
      action = [&] {
        check_size(bound, cfg, "--bound");
        const auto k = load_class(cls);
        return jep_outcome(check_jep(k, bound, cfg.cap), k.name());
      };
    });
  }

  auto* age = app.add_subcommand("age", "Enumerate the members of a class on [1,n]");
  age->add_option("--class", cls)->required();
  age->add_option("--n", n)->required();
  age->callback([&] {
    action = [&] {
      check_size(n, cfg, "--n");
      return age_outcome(load_class(cls), n, cfg);
    };
  });

  // theory check|models
  auto* theory = app.add_subcommand("theory", "Universal theory files");
  theory->require_subcommand(1);
  theory->fallthrough();
  std::string theory_file;
  std::optional<int> theory_n;
  {
    auto* tcheck = theory->add_subcommand("check", "Parse and classify a theory");
    tcheck->add_option("file", theory_file)->required()->check(CLI::ExistingFile);
    tcheck->add_option("--n", theory_n, "Also report sizes up to n without models");
    tcheck->callback([&] {
      action = [&] {
        const Theory t = parse_theory(read_text_file(theory_file));
        const auto report = is_parametric(t);
        Outcome o{to_json(report), "", report.parametric ? kOk : kPropertyFailure};
        o.doc["sentences"] = t.sentences.size();
        o.doc["signature"] = to_json(t.signature);
        std::ostringstream os;
        os << t.sentences.size() << " sentences over " << t.signature.to_string() << "\n";
        if (report.parametric) {
          os << "parametric\n";
        } else {
          os << "not parametric: sentence " << *report.sentence + 1 << ", atom "
             << report.offending_atom << " misses a variable\n";
        }
        if (theory_n) {
          check_size(*theory_n, cfg, "--n");
          const auto empty = sizes_without_models(t, *theory_n);
          o.doc["sizes_without_models"] = empty;
          os << "sizes without models:";
          if (empty.empty()) os << " none";
          for (int m : empty) os << " " << m;
          os << "\n";
        }
        o.text = os.str();
        return o;
      };
    });
    auto* models = theory->add_subcommand("models", "Enumerate the models on [1,n]");
    models->add_option("file", theory_file)->required()->check(CLI::ExistingFile);
    models->add_option("--n", n)->required();
    models->callback([&] {
      action = [&] {
        check_size(n, cfg, "--n");
        const Theory t = parse_theory(read_text_file(theory_file));
        const auto ms = enumerate_models(t, n, cfg.cap);
        json list = json::array();
        std::ostringstream os;
        os << ms.size() << " models on [1," << n << "]\n";
        for (const auto& m : ms) {
          list.push_back(to_json(m));
          os << dump_structure(m) << "\n";
        }
        return Outcome{json{{"count", ms.size()}, {"models", std::move(list)}, {"n", n}}, os.str(), kOk};
      };
    });
  }

  // sample framewise|exchangeable|m-exch|maxseg
  auto* sample = app.add_subcommand("sample", "Draw one random structure");
  sample->require_subcommand(1);
  sample->fallthrough();
  std::string rules_spec;
  std::string ref;
  std::string weights_file;
  {
    auto* fw = sample->add_subcommand("framewise", "Frame-wise uniform sampler over a class");
    fw->add_option("--class", cls)->required();
    fw->add_option("--n", n)->required();
    fw->add_option("--weights", weights_file, "JSON list of {structure, weight} class weights");
    fw->callback([&] {
      action = [&]() -> Outcome {
        if (n < 0) throw UsageError("--n must be non-negative");
        const auto k = load_class(cls);
        const auto weights = load_weights(weights_file);
        try {
          return structure_outcome(sample_framewise(
              k, n, HierarchicalRandomSource(cfg.seed, std::max(1, k.signature().max_arity())), weights));
        } catch (const AmalgamationFailure& e) {
          json fam = json::array();
          for (const auto& s : e.family()) fam.push_back(to_json(s));
          return Outcome{json{{"error", "amalgamation_failure"}, {"family", std::move(fam)}, {"subset", e.subset()}},
                         std::string(e.what()) + "\n" + render_family(e.family()), kPropertyFailure};
        }
      };
    });
    auto* ex = sample->add_subcommand("exchangeable", "Rule-generated exchangeable structure");
    ex->add_option("--rules", rules_spec, "Rule file or shipped rule name")->required();
    ex->add_option("--n", n)->required();
    ex->callback([&] {
      action = [&] {
        const auto rules = load_rules(rules_spec);
        if (!rules.reference_signature.empty()) {
          throw UsageError("rules read a context; use m-exch or maxseg");
        }
        return structure_outcome(sample_exchangeable(rules, n, HierarchicalRandomSource(cfg.seed, rules.max_arity())));
      };
    });
    for (const char* mode : {"m-exch", "maxseg"}) {
      const bool maxseg = std::string(mode) == "maxseg";
      auto* sc = sample->add_subcommand(mode, maxseg ? "Rules reading the initial segment of M"
                                                     : "Rules reading the substructure of M on the tuple");
      sc->add_option("--rules", rules_spec)->required();
      sc->add_option("--ref", ref, "Reference structure name")->required();
      sc->add_option("--n", n)->required();
      sc->callback([&, maxseg] {
        action = [&, maxseg] {
          const auto rules = load_rules(rules_spec);
          const auto m = reference_oracle(ref);
          const HierarchicalRandomSource src(cfg.seed, rules.max_arity());
          return structure_outcome(maxseg ? sample_maxseg_exchangeable(rules, *m, n, src)
                                          : sample_m_exchangeable(rules, *m, n, src));
        };
      });
    }
  }

  // test exch|rel-exch|dissoc|equal
  auto* test = app.add_subcommand("test", "Statistical invariance tests on a named sampler");
  test->require_subcommand(1);
  test->fallthrough();
  std::string sampler_name;
  std::string other_name;
  std::vector<int> s_set;
  std::vector<int> t_set;
  int window = 6;
  {
    auto* exch = test->add_subcommand("exch", "Exchangeability on [1,n]");
    exch->add_option("--sampler", sampler_name)->required();
    exch->add_option("--n", n)->default_val(3);
    exch->callback([&] {
      action = [&] {
        return test_outcome(test_exchangeability(named_sampler(sampler_name), n, cfg.samples, cfg.alpha, cfg.seed),
                            "exchangeability of " + sampler_name);
      };
    });
    auto* rel = test->add_subcommand("rel-exch", "Relative exchangeability over a reference structure");
    rel->add_option("--sampler", sampler_name)->required();
    rel->add_option("--ref", ref, "Reference structure (default: the sampler's own)");
    rel->add_option("--n", n, "Largest probed subset")->default_val(2);
    rel->add_option("--window", window, "Probe subsets of [1,window]")->default_val(6);
    rel->callback([&] {
      action = [&] {
        const auto m = reference_oracle(ref.empty() ? reference_for_sampler(sampler_name) : ref);
        return test_outcome(test_relative_exchangeability(named_sampler(sampler_name), *m, n, window,
                                                          cfg.samples, cfg.alpha, cfg.seed),
                            "relative exchangeability of " + sampler_name);
      };
    });
    auto* dis = test->add_subcommand("dissoc", "Independence of restrictions to disjoint sets");
    dis->add_option("--sampler", sampler_name)->required();
    dis->add_option("--s", s_set)->required()->delimiter(',');
    dis->add_option("--t", t_set)->required()->delimiter(',');
    dis->callback([&] {
      action = [&] {
        const auto s = parse_set(s_set, "--s");
        const auto t = parse_set(t_set, "--t");
        for (int x : s) {
          if (std::binary_search(t.begin(), t.end(), x)) throw UsageError("--s and --t must be disjoint");
        }
        return test_outcome(test_dissociation(named_sampler(sampler_name), s, t, cfg.samples, cfg.alpha, cfg.seed),
                            "dissociation of " + sampler_name);
      };
    });
    auto* eq = test->add_subcommand("equal", "Equality of two samplers' laws on a subset");
    eq->add_option("--sampler", sampler_name)->required();
    eq->add_option("--other", other_name)->required();
    eq->add_option("--subset", s_set)->required()->delimiter(',');
    eq->callback([&] {
      action = [&] {
        const auto s = parse_set(s_set, "--subset");
        const auto a = empirical_law(named_sampler(sampler_name), s, cfg.samples, SeedStream{cfg.seed, 1});
        const auto b = empirical_law(named_sampler(other_name), s, cfg.samples, SeedStream{cfg.seed, 2});
        return test_outcome(test_equal_law(a, b, cfg.alpha), "equal law of " + sampler_name + " and " + other_name);
      };
    });
  }

  auto* verify = app.add_subcommand("verify-paper-examples", "Run the catalog of worked examples");
  verify->callback([&] {
    action = [&] {
      const auto claims = verify_paper_examples(cfg.seed);
      json list = json::array();
      std::ostringstream os;
      bool all = true;
      for (const auto& c : claims) {
        all = all && c.passed;
        list.push_back({{"claim", c.claim}, {"detail", c.detail}, {"id", c.id}, {"passed", c.passed}});
        os << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.claim;
        if (!c.detail.empty()) os << " [" << c.detail << "]";
        os << "\n";
      }
      return Outcome{json{{"all_passed", all}, {"claims", std::move(list)}}, os.str(),
                     all ? kOk : kPropertyFailure};
    };
  });

  std::string source_file;
  std::string target_file;
  auto* emb = app.add_subcommand("embeddings", "All embeddings between two structure files");
  emb->add_option("--source", source_file)->required()->check(CLI::ExistingFile);
  emb->add_option("--target", target_file)->required()->check(CLI::ExistingFile);
  emb->callback([&] {
    action = [&] {
      const auto set = enumerate_embeddings(structure_from_json(read_json_file(source_file)),
                                            structure_from_json(read_json_file(target_file)));
      std::ostringstream os;
      os << set.maps.size() << " embeddings\n";
      for (const auto& m : set.maps) {
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m.domain()[i] << "->" << m.images()[i];
        os << "\n";
      }
      return Outcome{to_json(set), os.str(), kOk};
    };
  });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    result = action();
  } catch (const UsageError& e) {
    err << "relex: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "relex: parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "relex: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "relex: " << e.what() << "\n";
    return kUsage;
  } catch (const InsufficientCounts& e) {
    err << "relex: " << e.what() << " (raise --samples)\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "relex: " << e.what() << "\n";
    return kPropertyFailure;
  }

  const std::string rendered = cfg.json ? result.doc.dump() + "\n" : result.text;
  if (cfg.output.empty()) {
    out << rendered;
  } else {
    try {
      write_text_file(cfg.output, rendered);
    } catch (const Error& e) {
      err << "relex: " << e.what() << "\n";
      return kUsage;
    }
  }
  return result.code;
}

}  // namespace relex::cli
