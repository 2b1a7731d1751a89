#include "scenval/bindings.hpp"

#include <map>

#include "event_syntax.hpp"

namespace scenval {

namespace {

std::string regex_escape(std::string_view literal) {
  static const std::string special = R"(\^$.|?*+()[]{})";
  std::string out;
  out.reserve(literal.size());
  for (char c : literal) {
    if (special.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Splits the pattern at `{}` markers and builds an anchored regex whose
// greedy `(.+)` groups implement maximal-munch placeholder capture.
void compile_pattern(StepBinding& binding, const std::string& path) {
  std::string re = "^";
  std::size_t pos = 0;
  int count = 0;
  while (true) {
    std::size_t brace = binding.pattern.find("{}", pos);
    if (brace == std::string::npos) {
      re += regex_escape(std::string_view(binding.pattern).substr(pos));
      break;
    }
    re += regex_escape(std::string_view(binding.pattern).substr(pos, brace - pos));
    re += "(.+)";
    ++count;
    pos = brace + 2;
  }
  re += "$";
  binding.placeholder_count = count;
  binding.use_regex = count > 0;
  if (binding.use_regex) {
    try {
      binding.matcher = std::regex(re);
    } catch (const std::regex_error& err) {
      throw ParseError(ParseErrorCode::Syntax, path, binding.line, 1,
                       std::string("invalid step pattern: ") + err.what(),
                       binding.pattern);
    }
  }
}

}  // namespace

BindingSet parse_bindings(std::string_view text, const std::string& path) {
  BindingSet set;
  set.source_path = path;
  std::map<std::string, int> seen;  // pattern -> first line

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    std::string_view raw = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    std::size_t next = end == std::string_view::npos ? text.size() + 1 : end + 1;
    start = next;

    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (end == std::string_view::npos) break;
      continue;
    }

    syntax::Lexer lexer(raw, path, syntax::CommentStyle::Hash, line_no);
    if (lexer.peek().kind != syntax::TokenKind::String) {
      lexer.fail(lexer.peek(), "expected quoted step pattern");
    }
    syntax::Token pattern_tok = lexer.next();

    StepBinding binding;
    binding.pattern = pattern_tok.text;
    binding.line = line_no;
    if (binding.pattern.empty()) {
      throw ParseError(ParseErrorCode::Syntax, path, pattern_tok.line, pattern_tok.column,
                       "step pattern must not be empty", "\"\"");
    }

    auto [it, inserted] = seen.emplace(binding.pattern, line_no);
    if (!inserted) {
      throw ParseError(ParseErrorCode::DuplicatePattern, path, line_no,
                       pattern_tok.column,
                       "duplicate step pattern (first defined at line " +
                           std::to_string(it->second) + ", duplicated at line " +
                           std::to_string(line_no) + ")",
                       binding.pattern);
    }

    if (lexer.peek().kind != syntax::TokenKind::FatArrow) {
      lexer.fail(lexer.peek(), "expected '=>'");
    }
    lexer.next();

    syntax::EventExprNode node = syntax::parse_event_expr(lexer);
    binding.sender = node.sender.empty() ? node.receiver : node.sender;
    binding.receiver = node.receiver;
    binding.message = node.message;

    compile_pattern(binding, path);

    for (const auto& arg : node.args) {
      if (std::holds_alternative<syntax::WildcardArg>(arg.value)) {
        throw ParseError(ParseErrorCode::Syntax, path, arg.line, arg.column,
                         "wildcard arguments are not allowed in binding templates "
                         "(the resolved event must be executable)",
                         "*");
      }
      if (const auto* ph = std::get_if<syntax::PlaceholderArg>(&arg.value)) {
        if (ph->index >= binding.placeholder_count) {
          throw ParseError(ParseErrorCode::Syntax, path, arg.line, arg.column,
                           "placeholder reference {" + std::to_string(ph->index) +
                               "} out of range, the pattern has " +
                               std::to_string(binding.placeholder_count) +
                               " placeholder(s)",
                           "{" + std::to_string(ph->index) + "}");
        }
        binding.args.emplace_back(ph->index);
      } else {
        binding.args.emplace_back(std::get<std::string>(arg.value));
      }
    }

    if (lexer.peek().kind != syntax::TokenKind::End) {
      lexer.fail(lexer.peek(), "unexpected trailing input after binding");
    }

    set.bindings.push_back(std::move(binding));
    if (end == std::string_view::npos) break;
  }

  return set;
}

StepResolution resolve_step(const BindingSet& bindings, const std::string& step_text) {
  struct Match {
    const StepBinding* binding;
    std::smatch captures;
  };
  std::vector<Match> matches;

  for (const auto& binding : bindings.bindings) {
    if (!binding.use_regex) {
      if (binding.pattern == step_text) matches.push_back({&binding, {}});
      continue;
    }
    std::smatch m;
    if (std::regex_match(step_text, m, binding.matcher)) {
      matches.push_back({&binding, std::move(m)});
    }
  }

  StepResolution result;
  if (matches.empty()) {
    result.status = ResolutionStatus::Unbound;
    return result;
  }
  if (matches.size() > 1) {
    result.status = ResolutionStatus::Ambiguous;
    for (const auto& match : matches) result.candidates.push_back(match.binding->pattern);
    return result;
  }

  const auto& [binding, captures] = matches.front();
  result.status = ResolutionStatus::Resolved;
  result.event.sender = binding->sender;
  result.event.receiver = binding->receiver;
  result.event.message = binding->message;
  for (const auto& arg : binding->args) {
    if (const auto* index = std::get_if<int>(&arg)) {
      result.event.args.push_back(captures[*index + 1].str());
    } else {
      result.event.args.push_back(std::get<std::string>(arg));
    }
  }
  return result;
}

}  // namespace scenval
