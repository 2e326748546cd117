#pragma once

#include <string>

#include <json.hpp>

#include "isospec/jmaps.hpp"
#include "isospec/mat.hpp"

namespace isospec {

// Wire format for complex matrices and j-map pairs. Doubles round-trip
// exactly (shortest representation that parses back to the same bits), and
// emission uses ordered_json so key order is stable across runs.
//
//   matrix: {"dim": m, "re": [[...], ...], "im": [[...], ...]}
//   pair:   {"m": m, "jZ1": <matrix>, "jZ2": <matrix>}

nlohmann::ordered_json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json jmap_to_json(const JMapPair& pair);
JMapPair jmap_from_json(const nlohmann::json& j);

// File helpers. Loading throws ConfigError on unreadable files or invalid
// JSON; writing throws Error on IO failure.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::ordered_json& j);

} // namespace isospec
