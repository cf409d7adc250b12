#include "polykit/workspace.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"
#include "polykit/syntax.hpp"

namespace polykit {

namespace {

using detail::Line;
using detail::syntax_error;

const std::set<std::string> kHeaders = {"polygraph", "morphism", "presented", "fibration",
                                        "lift",      "iso",      "include"};

std::string first_word(const std::string& t) {
  std::size_t e = 0;
  while (e < t.size() && !std::isspace(static_cast<unsigned char>(t[e]))) ++e;
  return t.substr(0, e);
}

bool is_header(const Line& ln) { return ln.indent == 0 && kHeaders.count(first_word(ln.text)); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(const std::string& t) {
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

SourcePos pos_of(const Line& ln, std::size_t offset = 0) {
  return {ln.number, ln.indent + 1 + static_cast<int>(offset)};
}

std::string name_arg(const Line& ln, const std::string& w) {
  if (!detail::is_identifier(w)) syntax_error(pos_of(ln), "invalid name '" + w + "'");
  return w;
}

// "a" or "a@1".
GeneratorPtr resolve_generator(const Polygraph& p, const std::string& token, SourcePos at) {
  std::string name = token;
  std::optional<Dim> dim;
  if (auto k = token.find('@'); k != std::string::npos) {
    name = token.substr(0, k);
    std::string d = token.substr(k + 1);
    if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos || d.size() > 6)
      syntax_error(at, "expected a dimension after '@'");
    dim = std::stoi(d);
  }
  if (!detail::is_identifier(name)) syntax_error(at, "invalid generator name '" + name + "'");
  if (dim) {
    if (auto g = p.find(name, *dim)) return g;
    throw Error(ErrorKind::UnresolvedReference,
                "line " + std::to_string(at.line) + ": no generator " + token + " in " + p.name());
  }
  auto dims = p.dims_named(name);
  if (dims.empty())
    throw Error(ErrorKind::UnresolvedReference, "line " + std::to_string(at.line) +
                                                    ": no generator '" + name + "' in " + p.name());
  if (dims.size() > 1)
    syntax_error(at, "'" + name + "' names generators of several dimensions; write " + name + "@" +
                         std::to_string(dims.front()));
  return p.find(name, dims.front());
}

struct MorphismHeader {
  std::string name, source, target;
};

MorphismHeader read_morphism_header(const Line& ln) {
  // morphism NAME : P -> Q
  std::string t = ln.text.substr(8);
  std::size_t colon = t.find(':'), arrow = t.find("->");
  if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
    syntax_error(pos_of(ln), "expected 'morphism <name> : <source> -> <target>'");
  MorphismHeader h{trim(t.substr(0, colon)), trim(t.substr(colon + 1, arrow - colon - 1)),
                   trim(t.substr(arrow + 2))};
  for (const auto* s : {&h.name, &h.source, &h.target})
    if (!detail::is_identifier(*s))
      syntax_error(pos_of(ln), "expected 'morphism <name> : <source> -> <target>'");
  return h;
}

Morphism read_morphism_body(const MorphismHeader& hd, const PolygraphPtr& S, const PolygraphPtr& T,
                            const std::vector<Line>& body) {
  Morphism f(hd.name, S, T);
  std::map<GeneratorId, int> seen;
  for (const Line& ln : body) {
    std::size_t arrow = ln.text.find("->");
    if (arrow == std::string::npos) syntax_error(pos_of(ln), "expected '<generator> -> <cell>'");
    GeneratorPtr g = resolve_generator(*S, trim(ln.text.substr(0, arrow)), pos_of(ln));
    if (seen.count(g->id()))
      syntax_error(pos_of(ln), "second image for " + g->name + " (first on line " +
                                   std::to_string(seen[g->id()]) + ")");
    seen[g->id()] = ln.number;
    std::string_view rhs(ln.text);
    CellTerm img = parse_cell(*T, rhs.substr(arrow + 2), g->dim, pos_of(ln, arrow + 2));
    f.assign(g->id(), img);
  }
  return f;
}

void require_complete(const Morphism& f, int line) {
  for (const auto& g : f.source()->all_generators())
    if (!f.assigned(g->id()))
      throw Error(ErrorKind::InvalidMorphism, "line " + std::to_string(line) + ": morphism " +
                                                  f.name() + " gives no image for " + g->name);
}

void require_issues_empty(const MorphismReport& rep, const Morphism& f, int line) {
  if (rep.ok()) return;
  const auto& is = rep.issues.front();
  throw Error(is.kind == ErrorKind::Inconclusive ? ErrorKind::Inconclusive : ErrorKind::InvalidMorphism,
              "line " + std::to_string(line) + ": morphism " + f.name() + ": " + is.message);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnresolvedReference, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

// ---- loading -----------------------------------------------------------------

void Workspace::claim(const std::string& name, const std::string& kind) {
  if (auto it = kinds_.find(name); it != kinds_.end())
    throw Error(ErrorKind::Syntax, "name '" + name + "' already used for a " + it->second);
  kinds_[name] = kind;
}

void Workspace::add_polygraph(const Polygraph& p) {
  claim(p.name(), "polygraph");
  polys_[p.name()] = std::make_shared<const Polygraph>(p);
  poly_order_.push_back(p.name());
}

void Workspace::add_morphism(const Morphism& f, const std::string& codomain) {
  claim(f.name(), "morphism");
  morphs_.emplace(f.name(), f);
  if (!codomain.empty()) morph_codomain_[f.name()] = codomain;
  morph_order_.push_back(f.name());
}

void Workspace::load_file(const std::filesystem::path& path) {
  std::string key = std::filesystem::weakly_canonical(path).string();
  if (!loaded_files_.insert(key).second) return;
  std::string text = read_file(path);
  std::string stem = path.stem().string();
  // A file holding a bare polygraph body is named after the file.
  auto lines = detail::split_lines(text);
  if (!lines.empty() && first_word(lines[0].text) == "dim") {
    try {
      add_polygraph(parse_polygraph(text, stem));
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ": " + e.what());
    }
    return;
  }
  load(text, path.string(), path.parent_path());
}

void Workspace::load(std::string_view text, const std::string& origin,
                     const std::filesystem::path& dir) {
  auto lines = detail::split_lines(text);
  std::size_t pos = 0;
  auto body_until_header = [&]() {
    std::vector<Line> body;
    while (pos < lines.size() && !is_header(lines[pos])) body.push_back(lines[pos++]);
    return body;
  };

  while (pos < lines.size()) {
    const Line ln = lines[pos];
    std::vector<std::string> w = words(ln.text);
    if (w.front() == "include") {
      ++pos;
      if (w.size() != 2) throw Error(ErrorKind::Syntax, origin + ": line " + std::to_string(ln.number) +
                                                            ": expected 'include <path>'");
      load_file(dir / w[1]);
      continue;
    }
    try {
      if (!is_header(ln)) syntax_error(pos_of(ln), "expected a block header");
      const std::string& kw = w.front();
      if (kw == "polygraph") {
        if (w.size() != 2) syntax_error(pos_of(ln), "expected 'polygraph <name>'");
        std::string name = name_arg(ln, w[1]);
        ++pos;
        add_polygraph(detail::parse_polygraph_body(lines, pos, name, is_header));
      } else if (kw == "morphism") {
        MorphismHeader hd = read_morphism_header(ln);
        ++pos;
        std::vector<Line> body = body_until_header();
        PolygraphPtr S = polygraph(hd.source);
        std::string codomain = presented_.count(hd.target) ? hd.target : "";
        PolygraphPtr T = codomain.empty() ? polygraph(hd.target) : presented_.at(codomain).base();
        Morphism f = read_morphism_body(hd, S, T, body);
        require_complete(f, ln.number);
        if (codomain.empty())
          require_issues_empty(validate_morphism(f), f, ln.number);
        else
          require_issues_empty(validate_morphism_into(f, presented_.at(codomain), default_budget()),
                               f, ln.number);
        add_morphism(f, codomain);
      } else if (kw == "presented") {
        // presented NAME = BASE
        if (w.size() != 4 || w[2] != "=") syntax_error(pos_of(ln), "expected 'presented <name> = <polygraph>'");
        std::string name = name_arg(ln, w[1]);
        PolygraphPtr base = polygraph(w[3]);
        ++pos;
        std::vector<std::pair<GeneratorId, GeneratorId>> pairs;
        for (const Line& b : body_until_header()) {
          auto bw = words(b.text);
          if (bw.size() != 4 || bw[0] != "identify" || bw[2] != "=")
            syntax_error(pos_of(b), "expected 'identify <generator> = <generator>'");
          GeneratorPtr drop = resolve_generator(*base, bw[1], pos_of(b));
          GeneratorPtr keep = resolve_generator(*base, bw[3], pos_of(b));
          pairs.push_back({keep->id(), drop->id()});
        }
        claim(name, "presented complex");
        presented_.emplace(name, PresentedComplex::identify(name, base, pairs));
      } else if (kw == "fibration") {
        // fibration NAME : p
        if (w.size() != 4 || w[2] != ":") syntax_error(pos_of(ln), "expected 'fibration <name> : <morphism>'");
        FibrationScript fs{name_arg(ln, w[1]), w[3], {}};
        const Morphism& p = morphism(fs.morphism);
        ++pos;
        for (const Line& b : body_until_header()) {
          if (first_word(b.text) != "fill") syntax_error(pos_of(b), "expected 'fill ...'");
          std::string rest = b.text.substr(4);
          std::size_t off = 4;
          ScriptedFill entry;
          std::size_t lb = rest.find('[');
          if (lb != std::string::npos) {
            std::size_t rb = rest.find(']'), comma = rest.find(',');
            if (rb == std::string::npos || comma == std::string::npos || comma > rb)
              syntax_error(pos_of(b, off + lb), "expected '[<source>, <target>]'");
            entry.boundary.source =
                parse_cell(*p.source(), std::string_view(rest).substr(lb + 1, comma - lb - 1), {},
                           pos_of(b, off + lb + 1));
            entry.boundary.target =
                parse_cell(*p.source(), std::string_view(rest).substr(comma + 1, rb - comma - 1),
                           entry.boundary.source.dim(), pos_of(b, off + comma + 1));
            off += rb + 1;
            rest = rest.substr(rb + 1);
          }
          std::size_t arrow = rest.find("=>");
          if (arrow == std::string::npos) syntax_error(pos_of(b, off), "expected '=>'");
          Dim n = entry.boundary.empty() ? 0 : entry.boundary.source.dim() + 1;
          entry.z = parse_cell(*p.target(), std::string_view(rest).substr(0, arrow), n, pos_of(b, off));
          entry.w = parse_cell(*p.source(), std::string_view(rest).substr(arrow + 2), n,
                               pos_of(b, off + arrow + 2));
          fs.table.push_back(std::move(entry));
        }
        claim(fs.name, "fibration");
        fibrations_.emplace(fs.name, std::move(fs));
      } else if (kw == "lift") {
        ++pos;
        if (w.size() != 4 || w[2] != "via") syntax_error(pos_of(ln), "expected 'lift <morphism> via <fibration>'");
        morphism(w[1]);
        fibration_script(w[3]);
        statements_.push_back({Statement::Kind::Lift, {w[1], w[3]}, std::nullopt, origin, ln.number});
      } else if (kw == "iso") {
        ++pos;
        if (!(w.size() == 3 || (w.size() == 5 && w[3] == "dim")))
          syntax_error(pos_of(ln), "expected 'iso <p> <q> [dim <n>]'");
        morphism(w[1]);
        morphism(w[2]);
        Statement st{Statement::Kind::Iso, {w[1], w[2]}, std::nullopt, origin, ln.number};
        if (w.size() == 5) {
          if (w[4].find_first_not_of("0123456789") != std::string::npos || w[4].size() > 6)
            syntax_error(pos_of(ln), "expected a dimension after 'dim'");
          st.dim = std::stoi(w[4]);
        }
        statements_.push_back(std::move(st));
      }
    } catch (const Error& e) {
      throw Error(e.kind(), origin + ": " + e.what());
    }
  }
}

// ---- lookup ------------------------------------------------------------------

namespace {

[[noreturn]] void unresolved(const std::string& what, const std::string& name) {
  throw Error(ErrorKind::UnresolvedReference, "no " + what + " named '" + name + "'");
}

}  // namespace

PolygraphPtr Workspace::polygraph(const std::string& name) const {
  auto it = polys_.find(name);
  if (it == polys_.end()) unresolved("polygraph", name);
  return it->second;
}

const Morphism& Workspace::morphism(const std::string& name) const {
  auto it = morphs_.find(name);
  if (it == morphs_.end()) unresolved("morphism", name);
  return it->second;
}

PresentedComplex Workspace::complex(const std::string& name) const {
  if (auto it = presented_.find(name); it != presented_.end()) return it->second;
  return PresentedComplex::free(polygraph(name));
}

PresentedComplex Workspace::codomain(const std::string& name) const {
  const Morphism& f = morphism(name);
  if (auto it = morph_codomain_.find(name); it != morph_codomain_.end()) return complex(it->second);
  return PresentedComplex::free(f.target());
}

const FibrationScript& Workspace::fibration_script(const std::string& name) const {
  auto it = fibrations_.find(name);
  if (it == fibrations_.end()) unresolved("fibration", name);
  return it->second;
}

FillerOracle Workspace::fibration(const std::string& name, std::size_t budget) const {
  const FibrationScript& fs = fibration_script(name);
  return scripted_oracle(fs.name, morphism(fs.morphism), codomain(fs.morphism), fs.table, budget);
}

// ---- standalone morphism blocks --------------------------------------------

Morphism parse_morphism(std::string_view text, const Workspace& ws) {
  auto lines = detail::split_lines(text);
  if (lines.empty() || first_word(lines[0].text) != "morphism")
    syntax_error({lines.empty() ? 1 : lines[0].number, 1}, "expected 'morphism <name> : <source> -> <target>'");
  MorphismHeader hd = read_morphism_header(lines[0]);
  std::vector<Line> body(lines.begin() + 1, lines.end());
  for (const Line& b : body)
    if (is_header(b)) syntax_error(pos_of(b), "unexpected block header");
  PresentedComplex C = ws.complex(hd.target);
  Morphism f = read_morphism_body(hd, ws.polygraph(hd.source), C.base(), body);
  require_complete(f, lines[0].number);
  if (C.is_free())
    require_issues_empty(validate_morphism(f), f, lines[0].number);
  else
    require_issues_empty(validate_morphism_into(f, C, default_budget()), f, lines[0].number);
  return f;
}

std::string print_morphism(const Morphism& f, const std::string& target) {
  std::string out = "morphism " + f.name() + " : " + f.source()->name() + " -> " +
                    (target.empty() ? f.target()->name() : target) + "\n";
  for (const auto& g : f.source()->all_generators()) {
    std::string lhs = g->name;
    if (f.source()->dims_named(g->name).size() > 1) lhs += "@" + std::to_string(g->dim);
    out += "  " + lhs + " -> " + print_cell(f.image(g->id())) + "\n";
  }
  return out;
}

}  // namespace polykit
