#include "polykit/syntax.hpp"

#include <cctype>
#include <memory>
#include <set>
#include <sstream>

#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"

namespace polykit {

namespace detail {

void syntax_error(SourcePos at, const std::string& msg) {
  throw Error(ErrorKind::Syntax,
              "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " +
                  msg);
}

bool is_ident_byte(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!is_ident_byte(c)) return false;
  return true;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t b = 0;
    while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    std::size_t e = raw.size();
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    if (e > b) out.push_back({number, static_cast<int>(b), std::string(raw.substr(b, e - b))});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace detail

namespace {

using detail::syntax_error;

// ---- expressions -------------------------------------------------------------

struct Expr {
  enum class Kind { Ident, Unit, Comp } kind = Kind::Ident;
  std::string name;
  Dim axis = 0;
  std::unique_ptr<Expr> a, b;
  SourcePos at;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, SourcePos at) : s_(text), base_(at) {}

  std::unique_ptr<Expr> parse() {
    auto e = expr();
    skip_ws();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  SourcePos base_;
  std::size_t i_ = 0;

  SourcePos here() const { return {base_.line, base_.column + static_cast<int>(i_)}; }
  [[noreturn]] void fail(const std::string& msg) const { syntax_error(here(), msg); }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::unique_ptr<Expr> expr() {
    auto left = primary();
    for (;;) {
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != '*') return left;
      SourcePos op = here();
      ++i_;
      skip_ws();
      std::size_t d0 = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (d0 == i_) fail("expected a composition index after '*'");
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Comp;
      node->axis = std::stoi(std::string(s_.substr(d0, i_ - d0)));
      node->at = op;
      node->a = std::move(left);
      node->b = primary();
      left = std::move(node);
    }
  }

  std::unique_ptr<Expr> primary() {
    skip_ws();
    if (i_ >= s_.size()) fail("expected an expression");
    SourcePos at = here();
    if (s_[i_] == '(') {
      ++i_;
      auto e = expr();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return e;
    }
    std::size_t b = i_;
    while (i_ < s_.size() && detail::is_ident_byte(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    std::string name(s_.substr(b, i_ - b));
    std::size_t save = i_;
    skip_ws();
    if (name == "id" && i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Unit;
      node->at = at;
      node->a = expr();
      skip_ws();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return node;
    }
    i_ = save;
    auto node = std::make_unique<Expr>();
    node->name = std::move(name);
    node->at = at;
    return node;
  }
};

std::string located(SourcePos at, const std::string& msg) {
  return "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + msg;
}

CellTerm elaborate(const Polygraph& p, const Expr& e, Dim dim) {
  switch (e.kind) {
    case Expr::Kind::Ident: {
      if (auto g = p.find(e.name, dim)) return cell(g);
      auto dims = p.dims_named(e.name);
      if (dims.empty())
        throw Error(ErrorKind::UnresolvedReference, located(e.at, "unknown generator '" + e.name + "'"));
      throw Error(ErrorKind::DimensionMismatch,
                  located(e.at, "'" + e.name + "' is a " + std::to_string(dims.front()) +
                                    "-generator, expected dimension " + std::to_string(dim)));
    }
    case Expr::Kind::Unit:
      if (dim < 1)
        throw Error(ErrorKind::DimensionMismatch, located(e.at, "id(...) cannot be a 0-cell"));
      return CellTerm::unit(elaborate(p, *e.a, dim - 1));
    case Expr::Kind::Comp: {
      if (e.axis >= dim)
        throw Error(ErrorKind::DimensionMismatch,
                    located(e.at, "*" + std::to_string(e.axis) + " between " +
                                      std::to_string(dim) + "-cells"));
      CellTerm l = elaborate(p, *e.a, dim);
      CellTerm r = elaborate(p, *e.b, dim);
      try {
        return compose(e.axis, l, r);
      } catch (const Error& err) {
        throw Error(err.kind(), located(e.at, err.what()));
      }
    }
  }
  return {};
}

}  // namespace

CellTerm parse_cell(const Polygraph& p, std::string_view text, std::optional<Dim> dim,
                    SourcePos at) {
  auto expr = ExprParser(text, at).parse();
  if (dim) return elaborate(p, *expr, *dim);

  std::vector<CellTerm> readings;
  std::optional<Error> first_error;
  std::optional<Error> typing_error;
  for (Dim d = 0; d <= p.max_dim(); ++d) {
    try {
      readings.push_back(elaborate(p, *expr, d));
    } catch (const Error& err) {
      if (!first_error) first_error = err;
      if (!typing_error && err.kind() != ErrorKind::DimensionMismatch &&
          err.kind() != ErrorKind::UnresolvedReference)
        typing_error = err;
    }
  }
  if (readings.size() == 1) return readings.front();
  if (readings.size() > 1)
    syntax_error(at, "ambiguous expression: it reads as cells of several dimensions");
  if (typing_error) throw *typing_error;
  if (first_error) throw *first_error;
  throw Error(ErrorKind::DimensionMismatch, "polygraph has no dimensions");
}

namespace detail {

Polygraph parse_polygraph_body(const std::vector<Line>& lines, std::size_t& pos, std::string name,
                               bool (*stop)(const Line&)) {
  Polygraph p(std::move(name));
  std::optional<Dim> current;
  for (; pos < lines.size(); ++pos) {
    const Line& ln = lines[pos];
    if (stop && stop(ln)) break;
    SourcePos at{ln.number, ln.indent + 1};
    const std::string& t = ln.text;

    if (t.rfind("dim", 0) == 0 && (t.size() == 3 || std::isspace(static_cast<unsigned char>(t[3])))) {
      std::string rest = t.substr(3);
      std::size_t b = rest.find_first_not_of(" \t");
      if (b == std::string::npos) syntax_error(at, "expected a dimension after 'dim'");
      rest = rest.substr(b);
      if (rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 6)
        syntax_error(at, "expected a dimension after 'dim'");
      Dim n = std::stoi(rest);
      if (current && n <= *current) syntax_error(at, "dimension sections must increase");
      p.declare_dim(n);
      current = n;
      continue;
    }
    if (!current) syntax_error(at, "expected 'dim <n>'");

    if (*current == 0) {
      std::string names = t;
      for (char& c : names)
        if (c == ',') c = ' ';
      std::istringstream in(names);
      std::string w;
      while (in >> w) {
        if (!is_identifier(w) || w == "id")
          syntax_error(at, "invalid generator name '" + w + "'");
        if (p.find(w, 0)) syntax_error(at, "duplicate generator '" + w + "'");
        p.add_generator(w, 0);
      }
      continue;
    }

    std::size_t colon = t.find(':');
    if (colon == std::string::npos) syntax_error(at, "expected 'name : source -> target'");
    std::string gname = t.substr(0, colon);
    while (!gname.empty() && std::isspace(static_cast<unsigned char>(gname.back()))) gname.pop_back();
    if (!is_identifier(gname) || gname == "id")
      syntax_error(at, "invalid generator name '" + gname + "'");
    if (p.find(gname, *current)) syntax_error(at, "duplicate generator '" + gname + "'");
    std::size_t arrow = t.find("->", colon);
    if (arrow == std::string::npos) syntax_error(at, "expected '->'");
    if (t.find("->", arrow + 2) != std::string::npos)
      syntax_error({ln.number, ln.indent + 1 + static_cast<int>(t.find("->", arrow + 2))},
                   "unexpected second '->'");
    std::string_view tv(t);
    SourcePos s_at{ln.number, ln.indent + 2 + static_cast<int>(colon)};
    SourcePos t_at{ln.number, ln.indent + 3 + static_cast<int>(arrow)};
    CellTerm src = parse_cell(p, tv.substr(colon + 1, arrow - colon - 1), *current - 1, s_at);
    CellTerm tgt = parse_cell(p, tv.substr(arrow + 2), *current - 1, t_at);
    if (!parallel(src, tgt))
      throw Error(ErrorKind::NotParallel,
                  located(at, "boundary of '" + gname + "' is not a parallel pair"));
    p.add_generator(gname, *current, {src, tgt});
  }
  return p;
}

}  // namespace detail

Polygraph parse_polygraph(std::string_view text, std::string name) {
  auto lines = detail::split_lines(text);
  std::size_t pos = 0;
  if (!lines.empty() && lines[0].text.rfind("polygraph", 0) == 0 &&
      (lines[0].text.size() == 9 || std::isspace(static_cast<unsigned char>(lines[0].text[9])))) {
    std::string n = lines[0].text.substr(9);
    std::size_t b = n.find_first_not_of(" \t");
    n = b == std::string::npos ? "" : n.substr(b);
    if (!detail::is_identifier(n))
      detail::syntax_error({lines[0].number, lines[0].indent + 1}, "expected 'polygraph <name>'");
    name = n;
    pos = 1;
  }
  return detail::parse_polygraph_body(lines, pos, std::move(name), nullptr);
}

std::string print_cell(const CellTerm& x) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return x.gen()->name;
    case CellTerm::Kind::Unit:
      return "id(" + print_cell(x.body()) + ")";
    case CellTerm::Kind::Comp: {
      std::string r = print_cell(x.right());
      if (x.right().kind() == CellTerm::Kind::Comp) r = "(" + r + ")";
      return print_cell(x.left()) + " *" + std::to_string(x.axis()) + " " + r;
    }
  }
  return {};
}

std::string print_polygraph(const Polygraph& p) {
  std::string out;
  if (!p.name().empty()) out += "polygraph " + p.name() + "\n";
  for (Dim n = 0; n <= p.max_dim(); ++n) {
    out += "dim " + std::to_string(n) + "\n";
    const auto& gens = p.generators(n);
    if (n == 0) {
      if (gens.empty()) continue;
      out += " ";
      for (const auto& g : gens) out += " " + g->name;
      out += "\n";
      continue;
    }
    for (const auto& g : gens)
      out += "  " + g->name + " : " + print_cell(g->source) + " -> " + print_cell(g->target) + "\n";
  }
  return out;
}

std::vector<std::string> lint_polygraph(const Polygraph& p) {
  std::vector<std::string> out;
  std::set<std::string> reported;
  for (const auto& g : p.all_generators()) {
    auto dims = p.dims_named(g->name);
    if (dims.size() > 1 && reported.insert(g->name).second) {
      std::string ds;
      for (Dim d : dims) ds += (ds.empty() ? "" : ", ") + std::to_string(d);
      out.push_back("name '" + g->name + "' is used in dimensions " + ds);
    }
  }
  if (p.size() == 0) out.push_back("polygraph declares no generators");
  return out;
}

}  // namespace polykit
