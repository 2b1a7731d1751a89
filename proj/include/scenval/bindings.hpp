#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scenval/model.hpp"
#include "scenval/parse_error.hpp"

namespace scenval {

/// One argument of a binding's event template: a literal or a positional
/// reference `{N}` into the pattern's placeholders.
using TemplateArg = std::variant<std::string, int>;

/// Binds a step-text pattern (with optional `{}` placeholders) to an event
/// template. Whether the resolved event is injected or expected is decided
/// by the Gherkin keyword, not stored here.
struct StepBinding {
  std::string pattern;          // verbatim pattern text, `{}` marks a placeholder
  int placeholder_count = 0;
  std::string sender;
  std::string receiver;
  std::string message;
  std::vector<TemplateArg> args;
  int line = 1;                 // for duplicate reporting
  std::regex matcher;           // compiled from `pattern`, empty pattern list => exact match
  bool use_regex = false;
};

struct BindingSet {
  std::vector<StepBinding> bindings;
  std::string source_path;
};

/// Parses a bindings file: one `"<pattern>" => eventexpr` per non-empty,
/// non-comment (`#`) line. Duplicate pattern texts and non-executable
/// templates (wildcards, out-of-range placeholder references) are rejected.
BindingSet parse_bindings(std::string_view text, const std::string& path);

enum class ResolutionStatus { Resolved, Unbound, Ambiguous };

struct StepResolution {
  ResolutionStatus status = ResolutionStatus::Unbound;
  Event event;                          // valid when Resolved
  std::vector<std::string> candidates;  // matching patterns when Ambiguous
};

/// Matches step text against every binding (placeholders consume maximal
/// non-empty substrings between literal segments) and substitutes captures
/// into the event template. Exactly one match resolves; zero is Unbound,
/// more than one is Ambiguous.
StepResolution resolve_step(const BindingSet& bindings, const std::string& step_text);

}  // namespace scenval
