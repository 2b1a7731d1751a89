#include "event_syntax.hpp"

#include <cctype>

namespace scenval::syntax {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Lexer::Lexer(std::string_view text, std::string path, CommentStyle comments,
             int first_line)
    : text_(text), path_(std::move(path)), comments_(comments), line_(first_line) {
  advance();
}

char Lexer::look(std::size_t offset) const {
  return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
}

void Lexer::consume_char() {
  if (text_[pos_] == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  ++pos_;
}

void Lexer::fail(const Token& at, const std::string& message) const {
  throw ParseError(ParseErrorCode::Syntax, path_, at.line, at.column, message, at.text);
}

Token Lexer::next() {
  Token token = current_;
  advance();
  return token;
}

void Lexer::advance() {
  // Skip whitespace and comments.
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      consume_char();
      continue;
    }
    if (comments_ == CommentStyle::Slash && c == '/' && look(1) == '/') {
      while (pos_ < text_.size() && text_[pos_] != '\n') consume_char();
      continue;
    }
    if (comments_ == CommentStyle::Hash && c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') consume_char();
      continue;
    }
    break;
  }

  current_ = Token{TokenKind::End, "", line_, column_};
  if (pos_ >= text_.size()) return;

  char c = text_[pos_];
  if (ident_start(c)) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) consume_char();
    current_.kind = TokenKind::Ident;
    current_.text = std::string(text_.substr(start, pos_ - start));
    return;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      consume_char();
    }
    current_.kind = TokenKind::Number;
    current_.text = std::string(text_.substr(start, pos_ - start));
    return;
  }
  if (c == '"') {
    consume_char();
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError(ParseErrorCode::Syntax, path_, current_.line, current_.column,
                         "unterminated string literal", "\"");
      }
      char ch = text_[pos_];
      if (ch == '"') {
        consume_char();
        break;
      }
      if (ch == '\\') {
        consume_char();
        if (pos_ >= text_.size()) {
          throw ParseError(ParseErrorCode::Syntax, path_, line_, column_,
                           "unterminated escape sequence", "\\");
        }
        char esc = text_[pos_];
        switch (esc) {
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          default:
            throw ParseError(ParseErrorCode::Syntax, path_, line_, column_,
                             std::string("unknown escape sequence '\\") + esc + "'",
                             std::string(1, esc));
        }
        consume_char();
        continue;
      }
      value.push_back(ch);
      consume_char();
    }
    current_.kind = TokenKind::String;
    current_.text = std::move(value);
    return;
  }

  switch (c) {
    case '-':
      if (look(1) == '>') {
        consume_char();
        consume_char();
        current_.kind = TokenKind::Arrow;
        current_.text = "->";
        return;
      }
      break;
    case '=':
      if (look(1) == '>') {
        consume_char();
        consume_char();
        current_.kind = TokenKind::FatArrow;
        current_.text = "=>";
        return;
      }
      break;
    case '.':
      consume_char();
      current_.kind = TokenKind::Dot;
      current_.text = ".";
      return;
    case ',':
      consume_char();
      current_.kind = TokenKind::Comma;
      current_.text = ",";
      return;
    case '(':
      consume_char();
      current_.kind = TokenKind::LParen;
      current_.text = "(";
      return;
    case ')':
      consume_char();
      current_.kind = TokenKind::RParen;
      current_.text = ")";
      return;
    case '{':
      consume_char();
      current_.kind = TokenKind::LBrace;
      current_.text = "{";
      return;
    case '}':
      consume_char();
      current_.kind = TokenKind::RBrace;
      current_.text = "}";
      return;
    case '*':
      consume_char();
      current_.kind = TokenKind::Star;
      current_.text = "*";
      return;
    default:
      break;
  }
  throw ParseError(ParseErrorCode::Syntax, path_, line_, column_,
                   std::string("unexpected character '") + c + "'", std::string(1, c));
}

namespace {

Token expect(Lexer& lexer, TokenKind kind, const std::string& what) {
  if (lexer.peek().kind != kind) lexer.fail(lexer.peek(), "expected " + what);
  return lexer.next();
}

}  // namespace

EventExprNode parse_event_expr(Lexer& lexer) {
  if (lexer.peek().kind != TokenKind::Ident) {
    lexer.fail(lexer.peek(), "expected event expression");
  }
  EventExprNode node;
  node.line = lexer.peek().line;
  node.column = lexer.peek().column;

  Token first = lexer.next();
  if (lexer.peek().kind == TokenKind::Arrow) {
    lexer.next();
    node.sender = first.text;
    node.receiver = expect(lexer, TokenKind::Ident, "receiver name").text;
  } else {
    node.receiver = first.text;  // self-event, sender omitted
  }
  expect(lexer, TokenKind::Dot, "'.'");
  node.message = expect(lexer, TokenKind::Ident, "message name").text;
  expect(lexer, TokenKind::LParen, "'('");

  if (lexer.peek().kind != TokenKind::RParen) {
    while (true) {
      const Token& tok = lexer.peek();
      ArgNode arg;
      arg.line = tok.line;
      arg.column = tok.column;
      switch (tok.kind) {
        case TokenKind::String:
          arg.value = lexer.next().text;
          break;
        case TokenKind::Star:
          lexer.next();
          arg.value = WildcardArg{};
          break;
        case TokenKind::LBrace: {
          lexer.next();
          Token number = expect(lexer, TokenKind::Number, "placeholder index");
          expect(lexer, TokenKind::RBrace, "'}'");
          arg.value = PlaceholderArg{std::stoi(number.text)};
          break;
        }
        default:
          lexer.fail(tok, "expected argument (string, '*' or '{N}')");
      }
      node.args.push_back(std::move(arg));
      if (lexer.peek().kind == TokenKind::Comma) {
        lexer.next();
        continue;
      }
      break;
    }
  }
  expect(lexer, TokenKind::RParen, "')'");
  return node;
}

std::string quote_string(std::string_view value) {
  std::string out;
  out.reserve(value.size() + 2);
  out.push_back('"');
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace scenval::syntax
