#pragma once

// Shared lexer and event-expression parser for the scenario DSL and the
// step-bindings file. Internal to the frontends; not installed.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scenval/parse_error.hpp"

namespace scenval::syntax {

enum class TokenKind {
  Ident,
  String,
  Number,
  Arrow,     // ->
  FatArrow,  // =>
  Dot,
  Comma,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Star,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;   // raw spelling; for String, the decoded value
  int line = 1;
  int column = 1;
};

enum class CommentStyle { Slash, Hash };

/// Hand-rolled scanner with 1-based line/column tracking. The reported
/// position of End is the position just past the last character, which is
/// still a valid cursor position within the input.
class Lexer {
 public:
  Lexer(std::string_view text, std::string path,
        CommentStyle comments = CommentStyle::Slash, int first_line = 1);

  const Token& peek() const { return current_; }
  Token next();

  [[noreturn]] void fail(const Token& at, const std::string& message) const;

 private:
  void advance();
  char look(std::size_t offset = 0) const;
  void consume_char();

  std::string_view text_;
  std::string path_;
  CommentStyle comments_;
  std::size_t pos_ = 0;
  int line_;
  int column_ = 1;
  Token current_;
};

struct PlaceholderArg {
  int index = 0;
};

struct WildcardArg {};

using SyntaxArg = std::variant<std::string, WildcardArg, PlaceholderArg>;

struct ArgNode {
  SyntaxArg value;
  int line = 1;
  int column = 1;
};

/// Parsed `(sender ->)? receiver.message(args?)`. A missing sender denotes
/// a self-event; the callers normalize it.
struct EventExprNode {
  std::string sender;  // empty when omitted
  std::string receiver;
  std::string message;
  std::vector<ArgNode> args;
  int line = 1;
  int column = 1;
};

/// Parses one event expression starting at the lexer's current token.
/// Reports "expected event expression" when the current token cannot
/// start one.
EventExprNode parse_event_expr(Lexer& lexer);

/// Escapes a string for a STRING token (quotes, backslash, newline, tab).
std::string quote_string(std::string_view value);

}  // namespace scenval::syntax
