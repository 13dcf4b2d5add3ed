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

#ifndef TENANTCONF_XML_HPP
#define TENANTCONF_XML_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tenantconf::xml {

/// Element-only XML tree. Attributes, CDATA, DTDs and namespaces are not
/// part of the configuration grammar and are rejected by the reader.
struct Element {
  std::string name;
  /// Character data after trimming surrounding whitespace, stripping one
  /// optional pair of literal double quotes and decoding references.
  std::string text;
  /// True when the element held non-whitespace character data.
  bool has_text = false;
  std::vector<Element> children;
  int line = 1;
  int column = 1;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : std::runtime_error(message), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses a complete UTF-8 document with exactly one root element. An XML
/// declaration and comments are accepted.
Element parse(std::string_view bytes);

/// Escapes character data so that parse() restores it exactly: markup
/// characters and quotes become entities; control characters and leading or
/// trailing whitespace become character references.
std::string escape_text(std::string_view text);

/// Canonical writer: two-space indentation, one element per line, leaf
/// elements on a single line, trailing newline.
class Writer {
 public:
  void open(std::string_view tag);
  void close(std::string_view tag);
  void leaf(std::string_view tag, std::string_view text);

  std::string take() && { return std::move(out_); }

 private:
  void indent();

  std::string out_;
  int depth_ = 0;
};

}  // namespace tenantconf::xml

#endif  // TENANTCONF_XML_HPP
