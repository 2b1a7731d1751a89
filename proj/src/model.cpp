#include "scenval/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace scenval {

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "error";
}

bool event_matches(const EventPattern& pattern, const Event& event) {
  if (pattern.sender != event.sender || pattern.receiver != event.receiver ||
      pattern.message != event.message) {
    return false;
  }
  if (pattern.args.empty()) return true;  // arity-agnostic
  if (pattern.args.size() != event.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (const auto* literal = std::get_if<std::string>(&pattern.args[i])) {
      if (*literal != event.args[i]) return false;
    }
  }
  return true;
}

EventPattern pattern_of(const Event& event) {
  EventPattern pattern{event.sender, event.receiver, event.message, {}};
  pattern.args.reserve(event.args.size());
  for (const auto& arg : event.args) pattern.args.emplace_back(arg);
  return pattern;
}

bool is_ground(const EventPattern& pattern) {
  return std::none_of(pattern.args.begin(), pattern.args.end(),
                      [](const PatternArg& a) { return std::holds_alternative<Wildcard>(a); });
}

std::optional<Event> as_ground_event(const EventPattern& pattern) {
  Event event{pattern.sender, pattern.receiver, pattern.message, {}};
  event.args.reserve(pattern.args.size());
  for (const auto& arg : pattern.args) {
    const auto* literal = std::get_if<std::string>(&arg);
    if (!literal) return std::nullopt;
    event.args.push_back(*literal);
  }
  return event;
}

namespace {

void collect_role_use(const EventPattern& pattern, std::vector<std::string>& order,
                      std::set<std::string>& seen) {
  for (const auto& name : {pattern.sender, pattern.receiver}) {
    if (seen.insert(name).second) order.push_back(name);
  }
}

}  // namespace

std::vector<Diagnostic> validate_spec(const ScenarioSpec& spec) {
  std::vector<Diagnostic> diagnostics;

  std::set<std::string> names;
  for (const auto& scenario : spec.scenarios) {
    if (!names.insert(scenario.name).second) {
      diagnostics.push_back(
          {Severity::Error, "duplicate scenario name '" + scenario.name + "'"});
    }
  }

  for (const auto& scenario : spec.scenarios) {
    for (std::size_t i = 0; i < scenario.steps.size(); ++i) {
      const auto& step = scenario.steps[i];
      if (step.kind == StepKind::Request && !is_ground(step.event)) {
        std::ostringstream message;
        message << "non-ground request in scenario '" << scenario.name << "' (step "
                << i + 1 << "): " << to_string(step.event);
        diagnostics.push_back({Severity::Error, message.str()});
      }
    }
  }

  if (!spec.roles.empty()) {
    std::set<std::string> declared;
    for (const auto& role : spec.roles) declared.insert(role.name);
    std::vector<std::string> used_order;
    std::set<std::string> used;
    for (const auto& scenario : spec.scenarios) {
      collect_role_use(scenario.trigger, used_order, used);
      for (const auto& step : scenario.steps) collect_role_use(step.event, used_order, used);
    }
    for (const auto& name : used_order) {
      if (!declared.count(name)) {
        diagnostics.push_back(
            {Severity::Warning, "role '" + name + "' used but never declared"});
      }
    }
  }

  return diagnostics;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

void render_call(std::ostringstream& out, const std::string& sender,
                 const std::string& receiver, const std::string& message) {
  out << sender << "->" << receiver << "." << message << "(";
}

}  // namespace

std::string to_string(const Event& event) {
  std::ostringstream out;
  render_call(out, event.sender, event.receiver, event.message);
  for (std::size_t i = 0; i < event.args.size(); ++i) {
    if (i) out << ",";
    out << event.args[i];
  }
  out << ")";
  return out.str();
}

std::string to_string(const EventPattern& pattern) {
  std::ostringstream out;
  render_call(out, pattern.sender, pattern.receiver, pattern.message);
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (i) out << ",";
    if (std::holds_alternative<Wildcard>(pattern.args[i])) {
      out << "*";
    } else {
      out << std::get<std::string>(pattern.args[i]);
    }
  }
  out << ")";
  return out.str();
}

}  // namespace scenval
