#pragma once

// Text syntax for cells and polygraphs.
//
//   expr  := ident | "id(" expr ")" | expr "*" nat expr | "(" expr ")"
//
// "*k" is left-associative and all composition operators share one precedence
// level.  Identifiers are runs of letters, digits, '_', '\'' and any non-ASCII
// character (so "•" and "θ" are fine); "-" is not allowed, making "->" a
// separator.  "#" starts a comment.
//
// A polygraph file is a sequence of dimension sections:
//
//   polygraph loops        (optional header)
//   dim 0
//     • x                  (0-generators: names only)
//   dim 1
//     a : • -> •
//   dim 2
//     f : id(•) -> id(•)

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polykit/term.hpp"

namespace polykit {

struct SourcePos {
  int line = 1;
  int column = 1;
};

// Parses an expression denoting a cell of dimension `dim`; when dim is not
// given every dimension is tried and an ambiguous reading is rejected.
CellTerm parse_cell(const Polygraph& p, std::string_view text, std::optional<Dim> dim = {},
                    SourcePos at = {});

Polygraph parse_polygraph(std::string_view text, std::string name = "");

std::string print_cell(const CellTerm& x);
std::string print_polygraph(const Polygraph& p);

// Style warnings for a well-formed polygraph (names reused across dimensions,
// generators whose boundaries mention nothing but units, ...).
std::vector<std::string> lint_polygraph(const Polygraph& p);

namespace detail {

struct Line {
  int number = 0;
  int indent = 0;    // byte offset of the first non-blank character
  std::string text;  // comment stripped, trimmed
};

// Splits into non-blank lines with comments removed.
std::vector<Line> split_lines(std::string_view text);

// Identifier characters as described above.
bool is_ident_byte(unsigned char c);
bool is_identifier(std::string_view s);

// Reads one polygraph body (dim sections) from lines[pos...] and stops at the
// first line that is neither a "dim" header nor indented/declaration content
// belonging to the current section, as decided by `stop`.
Polygraph parse_polygraph_body(const std::vector<Line>& lines, std::size_t& pos,
                               std::string name, bool (*stop)(const Line&));

[[noreturn]] void syntax_error(SourcePos at, const std::string& msg);

}  // namespace detail

}  // namespace polykit
