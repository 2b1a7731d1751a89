#include "scenval/spec_parser.hpp"

#include <sstream>

#include "event_syntax.hpp"

namespace scenval {

namespace {

using syntax::EventExprNode;
using syntax::Lexer;
using syntax::Token;
using syntax::TokenKind;

bool at_keyword(const Lexer& lexer, std::string_view keyword) {
  return lexer.peek().kind == TokenKind::Ident && lexer.peek().text == keyword;
}

EventPattern to_pattern(const EventExprNode& node, const std::string& path) {
  EventPattern pattern;
  pattern.sender = node.sender.empty() ? node.receiver : node.sender;
  pattern.receiver = node.receiver;
  pattern.message = node.message;
  for (const auto& arg : node.args) {
    if (std::holds_alternative<syntax::PlaceholderArg>(arg.value)) {
      throw ParseError(ParseErrorCode::Syntax, path, arg.line, arg.column,
                       "placeholder arguments are only valid in binding files", "{");
    }
    if (std::holds_alternative<syntax::WildcardArg>(arg.value)) {
      pattern.args.emplace_back(Wildcard{});
    } else {
      pattern.args.emplace_back(std::get<std::string>(arg.value));
    }
  }
  return pattern;
}

}  // namespace

ScenarioSpec parse_spec(std::string_view text, const std::string& path) {
  Lexer lexer(text, path);
  ScenarioSpec spec;

  while (at_keyword(lexer, "role")) {
    lexer.next();
    if (lexer.peek().kind != TokenKind::Ident) {
      lexer.fail(lexer.peek(), "expected role name");
    }
    Role role{lexer.next().text};
    bool duplicate = false;
    for (const auto& existing : spec.roles) duplicate |= existing == role;
    if (!duplicate) spec.roles.push_back(std::move(role));
  }

  while (lexer.peek().kind != TokenKind::End) {
    if (!at_keyword(lexer, "scenario")) {
      lexer.fail(lexer.peek(), "expected 'scenario'");
    }
    lexer.next();
    if (lexer.peek().kind != TokenKind::Ident) {
      lexer.fail(lexer.peek(), "expected scenario name");
    }
    FormalScenario scenario;
    scenario.name = lexer.next().text;
    if (lexer.peek().kind != TokenKind::LBrace) lexer.fail(lexer.peek(), "expected '{'");
    lexer.next();

    // Clauses are parsed uniformly so that a malformed event expression is
    // reported at its own position; the trigger-first structure is checked
    // afterwards.
    bool have_trigger = false;
    while (at_keyword(lexer, "trigger") || at_keyword(lexer, "request") ||
           at_keyword(lexer, "waitfor") || at_keyword(lexer, "forbid")) {
      Token keyword = lexer.next();
      EventPattern pattern = to_pattern(syntax::parse_event_expr(lexer), path);
      if (keyword.text == "trigger") {
        if (have_trigger) {
          throw ParseError(ParseErrorCode::Syntax, path, keyword.line, keyword.column,
                           "duplicate trigger in scenario '" + scenario.name + "'",
                           keyword.text);
        }
        if (!scenario.steps.empty()) {
          throw ParseError(ParseErrorCode::Syntax, path, keyword.line, keyword.column,
                           "trigger must be the first clause of a scenario", keyword.text);
        }
        scenario.trigger = std::move(pattern);
        have_trigger = true;
        continue;
      }
      if (!have_trigger) {
        throw ParseError(ParseErrorCode::Syntax, path, keyword.line, keyword.column,
                         "expected 'trigger' before the first step", keyword.text);
      }
      ScenarioStep step;
      step.kind = keyword.text == "request"   ? StepKind::Request
                  : keyword.text == "waitfor" ? StepKind::WaitFor
                                              : StepKind::Forbid;
      step.event = std::move(pattern);
      scenario.steps.push_back(std::move(step));
    }
    if (!have_trigger) lexer.fail(lexer.peek(), "expected 'trigger'");

    if (lexer.peek().kind != TokenKind::RBrace) {
      lexer.fail(lexer.peek(), "expected step or '}'");
    }
    lexer.next();
    spec.scenarios.push_back(std::move(scenario));
  }

  return spec;
}

namespace {

std::string render_pattern(const EventPattern& pattern) {
  std::ostringstream out;
  if (pattern.sender == pattern.receiver) {
    out << pattern.receiver;
  } else {
    out << pattern.sender << " -> " << pattern.receiver;
  }
  out << "." << pattern.message << "(";
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (i) out << ", ";
    if (std::holds_alternative<Wildcard>(pattern.args[i])) {
      out << "*";
    } else {
      out << syntax::quote_string(std::get<std::string>(pattern.args[i]));
    }
  }
  out << ")";
  return out.str();
}

const char* step_keyword(StepKind kind) {
  switch (kind) {
    case StepKind::Request: return "request";
    case StepKind::WaitFor: return "waitfor";
    case StepKind::Forbid: return "forbid";
  }
  return "request";
}

}  // namespace

std::string render_spec(const ScenarioSpec& spec) {
  std::ostringstream out;
  for (const auto& role : spec.roles) out << "role " << role.name << "\n";
  if (!spec.roles.empty() && !spec.scenarios.empty()) out << "\n";
  for (std::size_t i = 0; i < spec.scenarios.size(); ++i) {
    if (i) out << "\n";
    const auto& scenario = spec.scenarios[i];
    out << "scenario " << scenario.name << " {\n";
    out << "  trigger " << render_pattern(scenario.trigger) << "\n";
    for (const auto& step : scenario.steps) {
      out << "  " << step_keyword(step.kind) << " " << render_pattern(step.event) << "\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace scenval
