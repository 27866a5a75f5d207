// profile_io.hpp - declarative *.profile.json parsing and serialization
#pragma once

#include <string>
#include <vector>

#include "cfis/cascade.hpp"

#include "json.hpp"

namespace cfis {

enum class ParseMode { Strict, Lenient };

/// Parse a profile document into a fully validated TestProfile.
/// Strict mode rejects unknown keys and any FIS validation finding;
/// lenient mode downgrades both to warnings (appended to `warnings` when
/// given). Diagnostics name the offending JSON path.
TestProfile parse_profile(const std::string& json_text,
                          ParseMode mode = ParseMode::Strict,
                          std::vector<std::string>* warnings = nullptr);

nlohmann::ordered_json profile_to_json(const TestProfile& profile);

/// Round-trip stable: parse_profile(serialize_profile(p)) == p.
std::string serialize_profile(const TestProfile& profile);

}  // namespace cfis
