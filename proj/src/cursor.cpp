#include "acl/cursor.hpp"

#include <cctype>

namespace acl {

namespace {
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' ||
         c == '\'';
}
}  // namespace

void Cursor::skip_ws() {
  while (pos_ < text_.size() &&
         std::isspace(static_cast<unsigned char>(text_[pos_])))
    ++pos_;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Cursor::accept(std::string_view token) {
  skip_ws();
  if (text_.substr(pos_, token.size()) == token) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void Cursor::expect(std::string_view token) {
  if (!accept(token)) fail("expected '" + std::string(token) + "'");
}

bool Cursor::peek_identifier() {
  skip_ws();
  return pos_ < text_.size() && ident_char(text_[pos_]);
}

std::string Cursor::identifier() {
  skip_ws();
  std::size_t start = pos_;
  while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
  if (start == pos_) fail("expected identifier");
  return std::string(text_.substr(start, pos_ - start));
}

bool Cursor::peek_digit() {
  skip_ws();
  return pos_ < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_]));
}

int Cursor::integer() {
  skip_ws();
  std::size_t start = pos_;
  while (pos_ < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_])))
    ++pos_;
  if (start == pos_) fail("expected integer");
  return std::stoi(std::string(text_.substr(start, pos_ - start)));
}

void Cursor::fail(const std::string& what) const {
  throw ParseError(what + " at offset " + std::to_string(pos_) + " near '" +
                   std::string(text_.substr(pos_, 20)) + "'");
}

}  // namespace acl
