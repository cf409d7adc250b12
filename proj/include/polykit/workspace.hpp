#pragma once

// Workspace files: several named objects in one text.
//
//   polygraph S              a polygraph body follows (see syntax.hpp)
//   morphism h : S -> S      then one "gen -> expr" line per generator of S;
//     a -> b *0 a *0 b       write a@1 when the name a is used in several
//     b -> id(•)             dimensions
//   presented C = S          S modulo identifications of generators
//     identify b = a
//   fibration fib : p        a scripted filler table for p
//     fill • => •
//     fill [•, •] b => a
//   lift f via fib
//   iso p q [dim N]
//   include other.ws         path relative to the including file
//
// Block headers start in the first column.  A morphism may name a presented
// complex as its target; it then lands in the underlying polygraph and
// equalities on that side are taken modulo the identifications.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polykit/lifting.hpp"
#include "polykit/morphism.hpp"

namespace polykit {

struct Statement {
  enum class Kind { Lift, Iso } kind = Kind::Lift;
  std::vector<std::string> args;  // lift: f, fib.  iso: p, q
  std::optional<Dim> dim;
  std::string origin;
  int line = 0;
};

struct FibrationScript {
  std::string name;
  std::string morphism;
  std::vector<ScriptedFill> table;
};

class Workspace {
 public:
  // `origin` prefixes error messages; includes are resolved against `dir`.
  void load(std::string_view text, const std::string& origin = "<input>",
            const std::filesystem::path& dir = {});
  void load_file(const std::filesystem::path& path);

  void add_polygraph(const Polygraph& p);
  // `codomain` names a presented complex when f lands in one; empty otherwise.
  void add_morphism(const Morphism& f, const std::string& codomain = "");

  bool has(const std::string& name) const { return kinds_.count(name) != 0; }
  PolygraphPtr polygraph(const std::string& name) const;
  const Morphism& morphism(const std::string& name) const;
  // A presented complex by name, or the free complex on a polygraph.
  PresentedComplex complex(const std::string& name) const;
  // Where a morphism lands: its presented target if it has one.
  PresentedComplex codomain(const std::string& morphism) const;
  const FibrationScript& fibration_script(const std::string& name) const;
  FillerOracle fibration(const std::string& name, std::size_t budget) const;

  const std::vector<std::string>& polygraph_names() const { return poly_order_; }
  const std::vector<std::string>& morphism_names() const { return morph_order_; }
  const std::vector<Statement>& statements() const { return statements_; }

 private:
  void claim(const std::string& name, const std::string& kind);

  std::map<std::string, std::string> kinds_;
  std::map<std::string, PolygraphPtr> polys_;
  std::map<std::string, Morphism> morphs_;
  std::map<std::string, std::string> morph_codomain_;
  std::map<std::string, PresentedComplex> presented_;
  std::map<std::string, std::string> presented_text_;  // for printing
  std::map<std::string, FibrationScript> fibrations_;
  std::vector<std::string> poly_order_, morph_order_;
  std::vector<Statement> statements_;
  std::set<std::string> loaded_files_;
};

// A single "morphism" block over the polygraphs of ws.
Morphism parse_morphism(std::string_view text, const Workspace& ws);
// The block format read by parse_morphism; `target` overrides the printed
// target name (for morphisms into presented complexes).
std::string print_morphism(const Morphism& f, const std::string& target = "");

}  // namespace polykit
