#include "relex/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relex/errors.h"

namespace relex {

using nlohmann::json;

json to_json(const Signature& sig) {
  json out = json::array();
  for (const auto& r : sig.relations()) out.push_back({{"arity", r.arity}, {"name", r.name}});
  return out;
}

json to_json(const Structure& s) {
  json relations = json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    json tuples = json::array();
    for (const auto& t : s.tuples(r)) tuples.push_back(t);
    relations[s.signature()[r].name] = std::move(tuples);
  }
  return {{"relations", std::move(relations)},
          {"signature", to_json(s.signature())},
          {"universe", s.size()}};
}

std::string dump_structure(const Structure& s) { return to_json(s).dump(); }

Structure structure_from_json(const json& j) {
  try {
    if (!j.is_object()) throw PreconditionError("structure document must be an object");
    for (const char* key : {"relations", "signature", "universe"}) {
      if (!j.contains(key)) throw PreconditionError(std::string("structure document lacks ") + key);
    }
    std::vector<RelationSymbol> rels;
    for (const auto& r : j.at("signature")) {
      rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<int>()});
    }
    Signature sig(std::move(rels));
    const int n = j.at("universe").get<int>();
    const auto& relations = j.at("relations");
    if (!relations.is_object()) throw PreconditionError("relations must be an object");
    std::vector<std::vector<Tuple>> tuples(sig.size());
    for (const auto& [name, list] : relations.items()) {
      auto r = sig.find(name);
      if (!r) throw PreconditionError("relations lists undeclared symbol " + name);
      tuples[*r] = list.get<std::vector<Tuple>>();
    }
    return Structure::from_tuples(std::move(sig), n, tuples);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed structure document: ") + e.what());
  }
}

json to_json(const Injection& phi) {
  return {{"domain", phi.domain()}, {"images", phi.images()}};
}

json to_json(const EmbeddingSet& set) {
  json maps = json::array();
  for (const auto& m : set.maps) maps.push_back(m.images());
  return {{"count", set.maps.size()},
          {"maps", std::move(maps)},
          {"source", to_json(set.source)},
          {"target", to_json(set.target)}};
}

namespace {

json family_json(const Family& family) {
  json out = json::array();
  for (const auto& s : family) out.push_back(to_json(s));
  return out;
}

}  // namespace

json to_json(const NdapReport& report) {
  json out = {{"families_checked", report.families_checked},
              {"holds", report.holds},
              {"n", report.n}};
  out["witness_family"] = report.witness_family ? family_json(*report.witness_family) : json();
  out["amalgam"] = report.amalgam ? to_json(*report.amalgam) : json();
  return out;
}

json to_json(const DapReport& report) {
  json out = {{"agree", report.agree},
              {"bound", report.bound},
              {"configurations_checked", report.configurations_checked},
              {"holds", report.holds},
              {"ndap2_holds", report.ndap2_holds},
              {"overlap_holds", report.overlap_holds}};
  out["ndap2_witness"] = report.ndap2_witness ? family_json(*report.ndap2_witness) : json();
  if (report.overlap_witness) {
    const auto& w = *report.overlap_witness;
    out["overlap_witness"] = {{"psi", to_json(w.psi)},
                              {"shared", w.shared},
                              {"t", to_json(w.t)},
                              {"t_prime", to_json(w.t_prime)}};
  } else {
    out["overlap_witness"] = json();
  }
  return out;
}

json to_json(const JepReport& report) {
  json out = {{"bound", report.bound}, {"holds", report.holds}, {"pairs_checked", report.pairs_checked}};
  if (report.failing_pair) {
    out["failing_pair"] = {to_json(report.failing_pair->first), to_json(report.failing_pair->second)};
  } else {
    out["failing_pair"] = json();
  }
  return out;
}

json to_json(const AmalgamSet& set) {
  json all = json::array();
  for (const auto& s : set.all) all.push_back(to_json(s));
  json reps = json::array();
  for (const auto& s : set.representatives) reps.push_back(to_json(s));
  return {{"all_amalgams", std::move(all)}, {"representatives", std::move(reps)}};
}

json to_json(const TestReport& report) {
  json details = json::array();
  for (const auto& c : report.details) {
    details.push_back({{"cell", c.cell},
                       {"contribution", c.contribution},
                       {"expected_a", c.expected_a},
                       {"expected_b", c.expected_b},
                       {"observed_a", c.observed_a},
                       {"observed_b", c.observed_b}});
  }
  return {{"alpha", report.alpha},
          {"comparisons", report.comparisons},
          {"details", std::move(details)},
          {"dof", report.dof},
          {"note", report.note},
          {"p_value", report.p_value},
          {"skipped", report.skipped},
          {"statistic", report.statistic},
          {"verdict", report.pass ? "pass" : "fail"}};
}

json to_json(const ParametricReport& report) {
  json out = {{"parametric", report.parametric}};
  out["sentence"] = report.sentence ? json(*report.sentence + 1) : json();
  out["offending_atom"] = report.parametric ? json() : json(report.offending_atom);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

FiniteClass load_class(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    return FiniteClass::from_theory(std::filesystem::path(spec).stem().string(),
                                    parse_theory(read_text_file(spec)));
  }
  return builtin_class(spec);
}

}  // namespace relex
