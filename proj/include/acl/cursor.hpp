#pragma once

// Minimal scanner shared by the literal parsers.

#include <string>
#include <string_view>

#include "acl/errors.hpp"

namespace acl {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws();
  bool at_end();
  char peek();
  /// Consumes `token` (after whitespace) if present.
  bool accept(std::string_view token);
  void expect(std::string_view token);
  /// Identifier: letters, digits, '_', '*', '\'' and '.'; may start with a digit.
  std::string identifier();
  bool peek_identifier();
  int integer();
  bool peek_digit();
  std::size_t position() const { return pos_; }
  std::string_view rest() const { return text_.substr(pos_); }
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace acl
