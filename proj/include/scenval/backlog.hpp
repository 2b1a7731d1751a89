#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scenval/model.hpp"
#include "scenval/parse_error.hpp"

namespace scenval {

struct Goal {
  std::string id;
  std::string title;

  bool operator==(const Goal&) const = default;
};

struct Epic {
  std::string id;
  std::string text;
  std::vector<std::string> goal_ids;

  bool operator==(const Epic&) const = default;
};

struct Story {
  std::string id;
  std::string epic_id;
  std::string text;

  bool operator==(const Story&) const = default;
};

/// The project backlog: goals, epics tagged with goals, and stories under
/// epics. Record order equals file order.
struct Backlog {
  std::vector<Goal> goals;
  std::vector<Epic> epics;
  std::vector<Story> stories;

  bool operator==(const Backlog&) const = default;
};

struct ParsedBacklog {
  Backlog backlog;
  std::vector<Diagnostic> diagnostics;  // dangling references, duplicate ids
};

/// Loads a backlog JSON file (top-level keys `goals`, `epics`, `stories`;
/// unknown keys ignored). Malformed JSON or missing required fields throw
/// ParseError; dangling references are reported as diagnostics instead.
ParsedBacklog parse_backlog(std::string_view text, const std::string& path);

}  // namespace scenval
