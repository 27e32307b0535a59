// JSON (schema 1) and plain-text rendering of sieve, elimination and
// construction results.  All big integers are emitted as decimal strings;
// keys are emitted sorted, so identical inputs give byte-identical output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagsieve/construct.hpp"
#include "flagsieve/elimination.hpp"

namespace flagsieve {

nlohmann::json to_json(const DesignParams& p);
nlohmann::json to_json(const SieveReport& r);
nlohmann::json to_json(const EliminationTrace& t);
nlohmann::json to_json(const CellResult& c);

nlohmann::json elimination_report(const std::vector<CellResult>& cells,
                                  const Integer& qmax,
                                  std::optional<int> family,
                                  std::uint64_t seed);
nlohmann::json construct_report(const ConstructReport& rep,
                                std::uint64_t seed);

std::string render_text(const std::vector<CellResult>& cells);
std::string render_text(const ConstructReport& rep);

}  // namespace flagsieve
