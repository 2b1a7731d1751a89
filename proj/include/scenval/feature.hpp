#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenval/parse_error.hpp"

namespace scenval {

enum class StepKeyword { Given, When, Then, And, But };

const char* to_string(StepKeyword keyword);

struct GherkinStep {
  StepKeyword keyword = StepKeyword::Given;
  std::string text;
  int line = 1;

  bool operator==(const GherkinStep&) const = default;
};

/// One concrete Given/When/Then interaction of a feature.
struct UsageScenario {
  std::string name;
  std::vector<GherkinStep> steps;

  bool operator==(const UsageScenario&) const = default;
};

/// A parsed feature file: name, optional story link from a `@story:<ID>`
/// tag line, and its usage scenarios in textual order.
struct Feature {
  std::string name;
  std::optional<std::string> story_ref;
  std::vector<UsageScenario> usage_scenarios;
  std::string source_path;

  bool operator==(const Feature&) const = default;
};

/// Parses the supported Gherkin subset: Feature, Scenario,
/// Given/When/Then/And/But steps, `#` comments, and a `@story:<ID>` tag
/// line preceding `Feature:`. Everything else (Background, Outline, tables,
/// doc strings, other tags) is rejected with an UnsupportedConstruct error.
Feature parse_feature(std::string_view text, const std::string& path);

}  // namespace scenval
