#include "scenval/feature.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace scenval {

const char* to_string(StepKeyword keyword) {
  switch (keyword) {
    case StepKeyword::Given: return "Given";
    case StepKeyword::When: return "When";
    case StepKeyword::Then: return "Then";
    case StepKeyword::And: return "And";
    case StepKeyword::But: return "But";
  }
  return "Given";
}

namespace {

struct Line {
  std::string_view content;  // trimmed
  int number = 1;
  int indent = 1;  // 1-based column of the first non-space character
};

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    std::size_t first = raw.find_first_not_of(" \t");
    Line line;
    line.number = number;
    if (first == std::string_view::npos) {
      line.content = {};
      line.indent = 1;
    } else {
      line.content = rtrim(raw.substr(first));
      line.indent = static_cast<int>(first) + 1;
    }
    lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
    ++number;
  }
  return lines;
}

bool starts_with_word(std::string_view line, std::string_view word) {
  if (line.substr(0, word.size()) != word) return false;
  if (line.size() == word.size()) return true;
  char next = line[word.size()];
  return next == ' ' || next == '\t' || next == ':';
}

std::string_view after_colon(std::string_view line, std::size_t keyword_len) {
  std::string_view rest = line.substr(keyword_len);
  std::size_t first = rest.find_first_not_of(" \t");
  return first == std::string_view::npos ? std::string_view{} : rest.substr(first);
}

const std::array<std::pair<std::string_view, StepKeyword>, 5> kStepKeywords = {{
    {"Given", StepKeyword::Given},
    {"When", StepKeyword::When},
    {"Then", StepKeyword::Then},
    {"And", StepKeyword::And},
    {"But", StepKeyword::But},
}};

[[noreturn]] void unsupported(const std::string& path, const Line& line,
                              const std::string& construct) {
  throw ParseError(ParseErrorCode::UnsupportedConstruct, path, line.number, line.indent,
                   "unsupported Gherkin construct: " + construct,
                   std::string(line.content.substr(0, 40)));
}

}  // namespace

Feature parse_feature(std::string_view text, const std::string& path) {
  Feature feature;
  feature.source_path = path;

  bool have_feature = false;
  bool in_scenario = false;
  UsageScenario current;
  int current_line = 1;

  auto finish_scenario = [&](const Line& at) {
    if (!in_scenario) return;
    if (current.steps.empty()) {
      throw ParseError(ParseErrorCode::Syntax, path, current_line, 1,
                       "scenario '" + current.name + "' has no steps", current.name);
    }
    StepKeyword first = current.steps.front().keyword;
    if (first != StepKeyword::Given && first != StepKeyword::When) {
      throw ParseError(ParseErrorCode::Syntax, path, current.steps.front().line, 1,
                       "scenario must start with a Given or When step",
                       std::string(to_string(first)));
    }
    feature.usage_scenarios.push_back(std::move(current));
    current = {};
    in_scenario = false;
    (void)at;
  };

  const std::vector<Line> lines = split_lines(text);
  for (const Line& line : lines) {
    if (line.content.empty()) continue;
    if (line.content.front() == '#') continue;

    if (line.content.front() == '@') {
      if (have_feature) unsupported(path, line, "tag after 'Feature:'");
      constexpr std::string_view kStoryTag = "@story:";
      if (line.content.substr(0, kStoryTag.size()) != kStoryTag) {
        unsupported(path, line, "tag '" + std::string(line.content) + "'");
      }
      std::string_view id = rtrim(line.content.substr(kStoryTag.size()));
      if (id.empty() || id.find_first_of(" \t@") != std::string_view::npos) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "malformed @story tag, expected '@story:<ID>'",
                         std::string(line.content));
      }
      if (feature.story_ref) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "a feature may carry at most one @story tag",
                         std::string(line.content));
      }
      feature.story_ref = std::string(id);
      continue;
    }

    for (const char* construct : {"Background", "Scenario Outline", "Scenario Template",
                                  "Examples", "Rule", "Scenarios"}) {
      if (starts_with_word(line.content, construct)) unsupported(path, line, construct);
    }
    if (line.content.front() == '|') unsupported(path, line, "data table");
    if (line.content.substr(0, 3) == "\"\"\"") unsupported(path, line, "doc string");

    if (starts_with_word(line.content, "Feature")) {
      if (line.content.size() < 8 || line.content[7] != ':') {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "expected 'Feature:'", std::string(line.content.substr(0, 40)));
      }
      if (have_feature) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "multiple 'Feature:' sections in one file", "Feature:");
      }
      feature.name = std::string(after_colon(line.content, 8));
      if (feature.name.empty()) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "feature name must not be empty", "Feature:");
      }
      have_feature = true;
      continue;
    }

    if (starts_with_word(line.content, "Scenario")) {
      if (line.content.size() < 9 || line.content[8] != ':') {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "expected 'Scenario:'", std::string(line.content.substr(0, 40)));
      }
      if (!have_feature) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "'Scenario:' before 'Feature:'", "Scenario:");
      }
      finish_scenario(line);
      in_scenario = true;
      current.name = std::string(after_colon(line.content, 9));
      current_line = line.number;
      continue;
    }

    bool matched_step = false;
    for (const auto& [word, keyword] : kStepKeywords) {
      if (!starts_with_word(line.content, word)) continue;
      if (!in_scenario) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "step outside of a scenario", std::string(word));
      }
      std::string step_text(rtrim(line.content.substr(word.size())));
      std::size_t first = step_text.find_first_not_of(" \t");
      step_text = first == std::string::npos ? std::string{} : step_text.substr(first);
      if (step_text.empty()) {
        throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                         "step text must not be empty", std::string(word));
      }
      current.steps.push_back({keyword, step_text, line.number});
      matched_step = true;
      break;
    }
    if (matched_step) continue;

    throw ParseError(ParseErrorCode::Syntax, path, line.number, line.indent,
                     "unrecognized line", std::string(line.content.substr(0, 40)));
  }

  Line eof{{}, lines.back().number, 1};
  finish_scenario(eof);

  if (!have_feature) {
    throw ParseError(ParseErrorCode::Syntax, path, eof.number, 1,
                     "missing 'Feature:' section", "");
  }
  return feature;
}

}  // namespace scenval
