#pragma once

#include <string>

#include "pmrac/certifier.hpp"
#include "pmrac/game.hpp"

namespace pmrac {

/// Strategy JSON schema: {"state": 4x4, "unitaries": {"000": 2x2, ...},
/// "observables": [three 4x4]}, every matrix a row-major nested array with
/// complex entries encoded as [re, im].
std::string strategy_to_json(const Strategy& s);

/// Parses and shape-checks; throws std::invalid_argument with a field path
/// ("unitaries/011", ...) on malformed input. Invariant validation is
/// separate (validate_strategy).
Strategy strategy_from_json(const std::string& text);

std::string report_to_json(const CertificationReport& rep);
std::string report_to_table(const CertificationReport& rep);

Strategy load_strategy_file(const std::string& path);
void save_strategy_file(const Strategy& s, const std::string& path);

}  // namespace pmrac
