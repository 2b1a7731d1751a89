#pragma once

#include <string>
#include <string_view>

#include "scenval/model.hpp"
#include "scenval/parse_error.hpp"

namespace scenval {

/// Parses scenario-DSL text. Fail-fast: throws ParseError at the first
/// syntax error. An omitted sender is normalized to a self-event. Scenario
/// order equals textual order.
ScenarioSpec parse_spec(std::string_view text, const std::string& path);

/// Canonical rendering; parse_spec(render_spec(s)) equals s field by field.
std::string render_spec(const ScenarioSpec& spec);

}  // namespace scenval
