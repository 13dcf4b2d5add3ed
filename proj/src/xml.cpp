// Copyright 2026 The tenantconf Authors
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

#include "tenantconf/xml.hpp"

#include <cstdint>

namespace tenantconf::xml {

namespace {

constexpr int kMaxDepth = 64;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Length of the UTF-8 sequence starting at `s[i]`, or 0 if it is invalid.
std::size_t utf8_sequence(std::string_view s, std::size_t i) {
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) return 1;
  std::size_t len;
  std::uint32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  Element document() {
    check_encoding();
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") advance(3);
    if (looking_at("<?xml")) skip_processing_instruction();
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    Element root = element(0);
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_, column_, message);
  }
  [[noreturn]] void fail_at(int line, int column, const std::string& message) const {
    throw SyntaxError(line, column, message);
  }

  bool at_end() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  bool looking_at(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && pos_ < in_.size(); ++k, ++pos_) {
      if (in_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void check_encoding() {
    std::size_t i = 0;
    int line = 1;
    int column = 1;
    while (i < in_.size()) {
      std::size_t len = utf8_sequence(in_, i);
      if (len == 0) fail_at(line, column, "invalid UTF-8");
      unsigned char c = static_cast<unsigned char>(in_[i]);
      if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') {
        fail_at(line, column, "control character in document");
      }
      if (c == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      i += len;
    }
  }

  void skip_spaces() {
    while (!at_end() && is_space(peek())) advance();
  }

  void skip_comment() {
    advance(4);  // "<!--"
    auto end = in_.find("-->", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    advance(end + 3 - pos_);
  }

  void skip_processing_instruction() {
    auto end = in_.find("?>", pos_);
    if (end == std::string_view::npos) fail("unterminated processing instruction");
    advance(end + 2 - pos_);
  }

  void skip_misc() {
    for (;;) {
      skip_spaces();
      if (looking_at("<!--")) {
        skip_comment();
      } else if (looking_at("<!")) {
        fail("DTDs are not supported");
      } else {
        return;
      }
    }
  }

  std::string name() {
    if (at_end() || !is_name_start(peek())) fail("expected element name");
    std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) advance();
    return std::string(in_.substr(start, pos_ - start));
  }

  Element element(int depth) {
    if (depth >= kMaxDepth) fail("elements nested too deeply");
    Element e;
    e.line = line_;
    e.column = column_;
    advance();  // '<'
    e.name = name();
    skip_spaces();
    if (looking_at("/>")) {
      advance(2);
      return e;
    }
    if (at_end() || peek() != '>') fail("attributes are not supported in <" + e.name + ">");
    advance();

    std::string raw;
    int text_line = 0;
    int text_column = 0;
    for (;;) {
      if (at_end()) fail_at(e.line, e.column, "unterminated element <" + e.name + ">");
      if (looking_at("</")) {
        int close_line = line_;
        int close_column = column_;
        advance(2);
        std::string closing = name();
        skip_spaces();
        if (at_end() || peek() != '>') fail("malformed closing tag");
        advance();
        if (closing != e.name) {
          fail_at(close_line, close_column,
                  "closing tag </" + closing + "> does not match <" + e.name + ">");
        }
        break;
      }
      if (looking_at("<!--")) {
        skip_comment();
      } else if (looking_at("<![CDATA[")) {
        fail("CDATA sections are not supported");
      } else if (looking_at("<?") || looking_at("<!")) {
        fail("unexpected markup");
      } else if (peek() == '<') {
        e.children.push_back(element(depth + 1));
      } else {
        if (text_line == 0) {
          text_line = line_;
          text_column = column_;
        }
        std::size_t start = pos_;
        while (!at_end() && peek() != '<') advance();
        raw.append(in_.substr(start, pos_ - start));
      }
    }
    finish_text(e, raw, text_line, text_column);
    return e;
  }

  void finish_text(Element& e, std::string_view raw, int line, int column) {
    std::size_t b = 0;
    std::size_t t = raw.size();
    while (b < t && is_space(raw[b])) ++b;
    while (t > b && is_space(raw[t - 1])) --t;
    raw = raw.substr(b, t - b);
    if (raw.empty()) return;
    e.has_text = true;
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
      raw = raw.substr(1, raw.size() - 2);
    }
    e.text = decode(raw, line, column);
  }

  std::string decode(std::string_view raw, int line, int column) const {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail_at(line, column, "unterminated entity reference");
      std::string_view ref = raw.substr(i + 1, semi - i - 1);
      if (ref == "amp") {
        out += '&';
      } else if (ref == "lt") {
        out += '<';
      } else if (ref == "gt") {
        out += '>';
      } else if (ref == "quot") {
        out += '"';
      } else if (ref == "apos") {
        out += '\'';
      } else if (ref.size() > 1 && ref[0] == '#') {
        append_utf8(out, code_point(ref.substr(1), line, column));
      } else {
        fail_at(line, column, "unknown entity &" + std::string(ref) + ";");
      }
      i = semi;
    }
    return out;
  }

  std::uint32_t code_point(std::string_view digits, int line, int column) const {
    int base = 10;
    if (!digits.empty() && digits[0] == 'x') {
      base = 16;
      digits.remove_prefix(1);
    }
    if (digits.empty() || digits.size() > 8) fail_at(line, column, "bad character reference");
    std::uint32_t cp = 0;
    for (char c : digits) {
      int v;
      if (c >= '0' && c <= '9') {
        v = c - '0';
      } else if (base == 16 && c >= 'a' && c <= 'f') {
        v = c - 'a' + 10;
      } else if (base == 16 && c >= 'A' && c <= 'F') {
        v = c - 'A' + 10;
      } else {
        fail_at(line, column, "bad character reference");
      }
      cp = cp * base + v;
      if (cp > 0x10FFFF) fail_at(line, column, "character reference out of range");
    }
    if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail_at(line, column, "invalid character reference");
    }
    return cp;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const char kHex[] = "0123456789ABCDEF";

void append_char_ref(std::string& out, unsigned char c) {
  out += "&#x";
  if (c >= 0x10) out += kHex[c >> 4];
  out += kHex[c & 0xF];
  out += ';';
}

}  // namespace

Element parse(std::string_view bytes) { return Reader(bytes).document(); }

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case ' ':
        // The reader trims literal whitespace at both ends.
        if (i == 0 || i + 1 == text.size()) {
          append_char_ref(out, c);
        } else {
          out += ' ';
        }
        break;
      default:
        if (c < 0x20) {
          append_char_ref(out, c);
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

void Writer::indent() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

void Writer::open(std::string_view tag) {
  indent();
  out_ += '<';
  out_ += tag;
  out_ += ">\n";
  ++depth_;
}

void Writer::close(std::string_view tag) {
  --depth_;
  indent();
  out_ += "</";
  out_ += tag;
  out_ += ">\n";
}

void Writer::leaf(std::string_view tag, std::string_view text) {
  indent();
  out_ += '<';
  out_ += tag;
  out_ += '>';
  out_ += escape_text(text);
  out_ += "</";
  out_ += tag;
  out_ += ">\n";
}

}  // namespace tenantconf::xml
