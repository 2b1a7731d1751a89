#pragma once

#include <stdexcept>
#include <string>

namespace scenval {

enum class ParseErrorCode {
  Syntax,
  UnsupportedConstruct,
  DuplicatePattern,
};

/// Fatal input error with a 1-based position inside the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, std::string path, int line, int column,
             const std::string& message, std::string offending = "")
      : std::runtime_error(path + ":" + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        code_(code),
        path_(std::move(path)),
        line_(line),
        column_(column),
        message_(message),
        offending_(std::move(offending)) {}

  ParseErrorCode code() const { return code_; }
  const std::string& path() const { return path_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  /// Snippet of the offending token, possibly empty (e.g. at end of input).
  const std::string& offending() const { return offending_; }

 private:
  ParseErrorCode code_;
  std::string path_;
  int line_;
  int column_;
  std::string message_;
  std::string offending_;
};

}  // namespace scenval
