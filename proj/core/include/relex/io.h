#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "relex/amalgamation.h"
#include "relex/embeddings.h"
#include "relex/finite_class.h"
#include "relex/samplers.h"
#include "relex/stat_tests.h"
#include "relex/structure.h"
#include "relex/theory.h"

namespace relex {

// Structure documents:
//   {"relations":{"R":[[1,2],[2,1]]},"signature":[{"arity":2,"name":"R"}],"universe":3}
// Keys are sorted, tuple lists are sorted, and every relation is listed.
nlohmann::json to_json(const Structure& s);
// The compact serialization above.
std::string dump_structure(const Structure& s);
// Throws PreconditionError on malformed documents.
Structure structure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Signature& sig);
nlohmann::json to_json(const Injection& phi);
nlohmann::json to_json(const EmbeddingSet& set);
nlohmann::json to_json(const NdapReport& report);
nlohmann::json to_json(const DapReport& report);
nlohmann::json to_json(const JepReport& report);
nlohmann::json to_json(const AmalgamSet& set);
nlohmann::json to_json(const TestReport& report);
nlohmann::json to_json(const ParametricReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
nlohmann::json read_json_file(const std::string& path);

// A builtin class name, or a path to a theory file.
FiniteClass load_class(const std::string& spec);

}  // namespace relex
