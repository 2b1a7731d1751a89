#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scenval {

/// A participant in the specified system of systems (vehicle, planner, ...).
struct Role {
  std::string name;

  bool operator==(const Role&) const = default;
};

// Identifiers follow [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view text);

/// A directed message between roles; the atom of all execution semantics.
/// Self-events (sender == receiver) are legal.
struct Event {
  std::string sender;
  std::string receiver;
  std::string message;
  std::vector<std::string> args;

  bool operator==(const Event&) const = default;
};

struct Wildcard {
  bool operator==(const Wildcard&) const = default;
};

/// One pattern argument position: a literal string or `*`.
using PatternArg = std::variant<std::string, Wildcard>;

/// Matches events by sender/receiver/message and per-position args.
/// An empty arg list matches any arity of the same message.
struct EventPattern {
  std::string sender;
  std::string receiver;
  std::string message;
  std::vector<PatternArg> args;

  bool operator==(const EventPattern&) const = default;
};

enum class StepKind { Request, WaitFor, Forbid };

struct ScenarioStep {
  StepKind kind = StepKind::Request;
  EventPattern event;

  bool operator==(const ScenarioStep&) const = default;
};

/// A formal scenario: trigger pattern plus ordered request/waitfor/forbid
/// steps. A trigger-only scenario (no steps) is legal.
struct FormalScenario {
  std::string name;
  EventPattern trigger;
  std::vector<ScenarioStep> steps;

  bool operator==(const FormalScenario&) const = default;
};

/// An executable scenario specification. Role declarations are optional
/// lint metadata; scenario declaration order is preserved because it is
/// the execution tie-break key.
struct ScenarioSpec {
  std::vector<Role> roles;
  std::vector<FormalScenario> scenarios;

  bool operator==(const ScenarioSpec&) const = default;
};

enum class Severity { Error, Warning, Note };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

const char* to_string(Severity severity);

/// True iff sender, receiver and message are equal and every literal arg
/// position equals the event's arg. Wildcard positions match anything; a
/// pattern without args matches any arity.
bool event_matches(const EventPattern& pattern, const Event& event);

/// The exact pattern of a ground event (matches that event and nothing
/// with different args).
EventPattern pattern_of(const Event& event);

/// True iff the pattern has no wildcard args.
bool is_ground(const EventPattern& pattern);

/// Converts a ground pattern to the event it denotes; nullopt if the
/// pattern contains wildcards.
std::optional<Event> as_ground_event(const EventPattern& pattern);

/// Static lint pass: duplicate scenario names (error), non-ground request
/// steps (error), and roles used but never declared when at least one role
/// declaration exists (warning).
std::vector<Diagnostic> validate_spec(const ScenarioSpec& spec);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Canonical one-line rendering `sender->receiver.message(a1,a2)`.
std::string to_string(const Event& event);
std::string to_string(const EventPattern& pattern);

}  // namespace scenval
