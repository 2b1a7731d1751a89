#include "scenval/backlog.hpp"

#include <set>

#include <json.hpp>

namespace scenval {

namespace {

using nlohmann::json;

[[noreturn]] void missing_field(const std::string& path, const std::string& where,
                                const std::string& field) {
  throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                   where + ": missing or non-string required field '" + field + "'",
                   field);
}

std::string require_string(const json& object, const char* field, const std::string& path,
                           const std::string& where) {
  if (!object.is_object() || !object.contains(field) || !object[field].is_string()) {
    missing_field(path, where, field);
  }
  return object[field].get<std::string>();
}

}  // namespace

ParsedBacklog parse_backlog(std::string_view text, const std::string& path) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    // nlohmann reports a byte offset; recover line/column from it.
    std::size_t byte = err.byte > 0 ? err.byte - 1 : 0;
    if (byte > text.size()) byte = text.size();
    int line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(ParseErrorCode::Syntax, path, line, column,
                     std::string("malformed JSON: ") + err.what(), "");
  }

  if (!root.is_object()) {
    throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                     "backlog root must be a JSON object", "");
  }

  ParsedBacklog parsed;
  auto& backlog = parsed.backlog;

  auto array_of = [&](const char* key) -> json {
    if (!root.contains(key)) missing_field(path, "backlog", key);
    if (!root[key].is_array()) {
      throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                       std::string("backlog field '") + key + "' must be an array", key);
    }
    return root[key];
  };

  std::set<std::string> goal_ids, epic_ids, story_ids;

  for (const auto& item : array_of("goals")) {
    Goal goal{require_string(item, "id", path, "goal"),
              require_string(item, "title", path, "goal")};
    if (!goal_ids.insert(goal.id).second) {
      parsed.diagnostics.push_back({Severity::Error, "duplicate goal id '" + goal.id + "'"});
      continue;
    }
    backlog.goals.push_back(std::move(goal));
  }

  for (const auto& item : array_of("epics")) {
    Epic epic;
    epic.id = require_string(item, "id", path, "epic");
    epic.text = require_string(item, "text", path, "epic");
    if (item.contains("goals")) {
      if (!item["goals"].is_array()) {
        throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                         "epic '" + epic.id + "': field 'goals' must be an array of ids",
                         "goals");
      }
      for (const auto& ref : item["goals"]) {
        if (!ref.is_string()) {
          throw ParseError(ParseErrorCode::Syntax, path, 1, 1,
                           "epic '" + epic.id + "': goal ids must be strings", "goals");
        }
        epic.goal_ids.push_back(ref.get<std::string>());
      }
    }
    if (!epic_ids.insert(epic.id).second) {
      parsed.diagnostics.push_back({Severity::Error, "duplicate epic id '" + epic.id + "'"});
      continue;
    }
    backlog.epics.push_back(std::move(epic));
  }

  for (const auto& item : array_of("stories")) {
    Story story;
    story.id = require_string(item, "id", path, "story");
    story.epic_id = require_string(item, "epic", path, "story");
    story.text = require_string(item, "text", path, "story");
    if (!story_ids.insert(story.id).second) {
      parsed.diagnostics.push_back(
          {Severity::Error, "duplicate story id '" + story.id + "'"});
      continue;
    }
    backlog.stories.push_back(std::move(story));
  }

  for (const auto& epic : backlog.epics) {
    for (const auto& goal_id : epic.goal_ids) {
      if (!goal_ids.count(goal_id)) {
        parsed.diagnostics.push_back(
            {Severity::Warning,
             "epic '" + epic.id + "' references unknown goal '" + goal_id + "'"});
      }
    }
  }
  for (const auto& story : backlog.stories) {
    if (!epic_ids.count(story.epic_id)) {
      parsed.diagnostics.push_back(
          {Severity::Warning,
           "story '" + story.id + "' references unknown epic '" + story.epic_id + "'"});
    }
  }

  return parsed;
}

}  // namespace scenval
