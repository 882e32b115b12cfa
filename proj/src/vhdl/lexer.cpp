// Copyright 2026 The VCodes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcodes/vhdl/lexer.hpp"

#include <cctype>

namespace vcodes::vhdl {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  size_t remaining() const { return text_.size() - pos_; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  int line() const { return line_; }
  int col() const { return col_; }
  size_t pos() const { return pos_; }
  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c));
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Cursor cur(text);

  auto make_span = [&](int sl, int sc) {
    SourceSpan span;
    span.start_line = sl;
    span.start_col = sc;
    span.end_line = cur.line();
    span.end_col = cur.col() > 1 ? cur.col() - 1 : 1;
    return span;
  };

  while (!cur.done()) {
    char c = cur.peek();
    if (std::isspace(static_cast<unsigned char>(c))) {
      cur.advance();
      continue;
    }

    int sl = cur.line();
    int sc = cur.col();
    size_t start = cur.pos();

    // Comment: "--" to end of line.
    if (c == '-' && cur.peek(1) == '-') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      tokens.push_back({TokenKind::Comment,
                        std::string(text.substr(start, cur.pos() - start)),
                        make_span(sl, sc)});
      continue;
    }

    if (is_ident_start(c)) {
      while (!cur.done() && is_ident_char(cur.peek())) cur.advance();
      std::string lexeme(text.substr(start, cur.pos() - start));
      TokenKind kind = is_reserved_word(lexeme) ? TokenKind::Keyword
                                                : TokenKind::Identifier;
      tokens.push_back({kind, std::move(lexeme), make_span(sl, sc)});
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        cur.advance();
      tokens.push_back({TokenKind::LiteralInt,
                        std::string(text.substr(start, cur.pos() - start)),
                        make_span(sl, sc)});
      continue;
    }

    if (c == '\'') {
      // 'x' is a character literal; a lone tick (attributes etc.) stays a
      // symbol so the parser can reject it with a precise message.
      if (cur.remaining() < 3) {
        SourceSpan span{sl, sc, sl, sc};
        throw LexError(span, "unterminated character literal");
      }
      if (cur.peek(2) == '\'' && cur.peek(1) != '\n') {
        cur.advance();
        char inner = cur.advance();
        cur.advance();
        TokenKind kind = (inner == '0' || inner == '1') ? TokenKind::LiteralBit
                                                        : TokenKind::LiteralChar;
        tokens.push_back({kind,
                          std::string(text.substr(start, cur.pos() - start)),
                          make_span(sl, sc)});
      } else {
        cur.advance();
        tokens.push_back({TokenKind::Symbol, "'", make_span(sl, sc)});
      }
      continue;
    }

    if (c == '"') {
      cur.advance();
      bool closed = false;
      bool all_bits = true;
      size_t content_len = 0;
      while (!cur.done()) {
        char d = cur.peek();
        if (d == '\n') break;
        cur.advance();
        if (d == '"') {
          if (cur.peek() == '"') {  // doubled quote escapes a quote
            cur.advance();
            all_bits = false;
            ++content_len;
            continue;
          }
          closed = true;
          break;
        }
        if (d != '0' && d != '1') all_bits = false;
        ++content_len;
      }
      if (!closed) {
        SourceSpan span{sl, sc, cur.line(), cur.col()};
        throw LexError(span, "unterminated string literal");
      }
      TokenKind kind = (all_bits && content_len > 0)
                           ? TokenKind::LiteralBitVector
                           : TokenKind::LiteralString;
      tokens.push_back({kind,
                        std::string(text.substr(start, cur.pos() - start)),
                        make_span(sl, sc)});
      continue;
    }

    // Multi-char symbols before single-char ones.
    auto two = [&](char a, char b) {
      return cur.peek() == a && cur.peek(1) == b;
    };
    if (two('<', '=') || two('>', '=') || two('/', '=') || two(':', '=') ||
        two('=', '>')) {
      cur.advance();
      cur.advance();
      tokens.push_back({TokenKind::Symbol,
                        std::string(text.substr(start, 2)), make_span(sl, sc)});
      continue;
    }
    static const std::string kSingles = "()|;:,.&+-=<>*/";
    if (kSingles.find(c) != std::string::npos) {
      cur.advance();
      tokens.push_back({TokenKind::Symbol, std::string(1, c),
                        make_span(sl, sc)});
      continue;
    }

    cur.advance();
    tokens.push_back({TokenKind::Error, std::string(1, c), make_span(sl, sc)});
  }
  return tokens;
}

}  // namespace vcodes::vhdl
