#pragma once

#include <json.hpp>

#include "modalpres/kripke.hpp"

namespace modalpres {

nlohmann::json model_to_json(const PointedModel& m);
PointedModel model_from_json(const nlohmann::json& j);

// Parses text as JSON, turning syntax errors into ParseError.
nlohmann::json parse_json_text(std::string_view text);
std::string read_text_file(const std::string& path);

} // namespace modalpres
