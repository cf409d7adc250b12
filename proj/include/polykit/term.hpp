#pragma once

// Polygraphs and cell terms of the free strict higher categories they generate.
//
// A CellTerm is an immutable, structurally shared expression built from three
// constructors: a generator, a unit 1(x) raising the dimension by one, and a
// composite x *i y.  Terms are not quotiented; equality of the cells they
// denote is decided by the normal-form module.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace polykit {

using Dim = int;

struct GeneratorId {
  std::string name;
  Dim dim = 0;

  auto operator<=>(const GeneratorId&) const = default;
  bool operator==(const GeneratorId&) const = default;
};

std::string to_string(const GeneratorId& id);

struct Generator;
using GeneratorPtr = std::shared_ptr<const Generator>;

class CellTerm {
 public:
  enum class Kind { Gen, Unit, Comp };

  CellTerm() = default;

  static CellTerm generator(GeneratorPtr g);
  static CellTerm unit(CellTerm body);
  // No typing check: callers must guarantee left and right are axis-composable.
  // Use polykit::compose for checked construction.
  static CellTerm composite(Dim axis, CellTerm left, CellTerm right);

  bool empty() const noexcept { return node_ == nullptr; }
  explicit operator bool() const noexcept { return node_ != nullptr; }

  Kind kind() const;
  Dim dim() const;
  // Composition axis of a Comp node.
  Dim axis() const;
  const GeneratorPtr& gen() const;
  const CellTerm& body() const;
  const CellTerm& left() const;
  const CellTerm& right() const;

  // Fully parenthesised structural key; two terms are identical iff keys match.
  const std::string& key() const;
  std::size_t hash() const;
  // Generator occurrences at every level, units included.
  int leaves() const;
  // Occurrences of dim()-generators that are not under a unit.
  int top_weight() const;

  friend bool operator==(const CellTerm& a, const CellTerm& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    return a.key() == b.key();
  }
  friend bool operator<(const CellTerm& a, const CellTerm& b) { return a.key() < b.key(); }

 struct Node;  // defined in term.cpp

 private:
  std::shared_ptr<const Node> node_;
};

struct CellTermHash {
  std::size_t operator()(const CellTerm& t) const { return t.hash(); }
};

// An ordered pair of parallel cells, the boundary of a prospective cell one
// dimension up.  Both members are empty for the boundary of a 0-cell.
struct ParallelPair {
  CellTerm source;
  CellTerm target;

  bool empty() const { return source.empty(); }
  Dim dim() const { return source.empty() ? -1 : source.dim(); }
};

struct Generator {
  std::string name;
  Dim dim = 0;
  CellTerm source;  // empty at dimension 0
  CellTerm target;

  GeneratorId id() const { return {name, dim}; }
  ParallelPair boundary() const { return {source, target}; }
};

// A finite polygraph truncated at max_dim().  Generators are shared and
// immutable; extending a polygraph copies the index, not the generators.
class Polygraph {
 public:
  Polygraph() = default;
  explicit Polygraph(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Highest declared dimension; sections may be empty.  -1 when nothing is declared.
  Dim max_dim() const { return static_cast<Dim>(by_dim_.size()) - 1; }
  void declare_dim(Dim n);

  // Throws Error(DimensionMismatch) on a duplicate (name, dim).
  GeneratorPtr add_generator(std::string name, Dim dim, ParallelPair boundary = {});
  GeneratorPtr add_generator(GeneratorPtr g);

  GeneratorPtr find(std::string_view name, Dim dim) const;
  GeneratorPtr at(const GeneratorId& id) const;
  bool contains(const GeneratorId& id) const { return index_.count(id) != 0; }
  std::vector<Dim> dims_named(std::string_view name) const;

  const std::vector<GeneratorPtr>& generators(Dim n) const;
  std::vector<GeneratorPtr> all_generators() const;
  std::size_t size() const { return index_.size(); }

 private:
  std::string name_;
  std::vector<std::vector<GeneratorPtr>> by_dim_;
  std::map<GeneratorId, GeneratorPtr> index_;
};

// ---- boundaries and construction -------------------------------------------

// Iterated i-source / i-target.  Throws Error(DimensionMismatch) unless 0 <= i < dim(x).
CellTerm source(const CellTerm& x, Dim i);
CellTerm target(const CellTerm& x, Dim i);
inline CellTerm source(const CellTerm& x) { return source(x, x.dim() - 1); }
inline CellTerm target(const CellTerm& x) { return target(x, x.dim() - 1); }
ParallelPair type_of(const CellTerm& x);

// Checked composite x *i y; the i-target of x must equal the i-source of y.
CellTerm compose(Dim i, const CellTerm& x, const CellTerm& y);
// Applies the unit constructor n - dim(x) times.
CellTerm unit_to(const CellTerm& x, Dim n);
inline CellTerm cell(const GeneratorPtr& g) { return CellTerm::generator(g); }

// True when the two cells are parallel (same source and target), or both 0-cells.
bool parallel(const CellTerm& x, const CellTerm& y);

// ---- weight calculus --------------------------------------------------------

int weight(const CellTerm& x, const GeneratorId& alpha);
int total_weight(const CellTerm& x);
// Top-dimension occurrence counts, keyed by generator.
std::map<GeneratorId, int> weight_vector(const CellTerm& x);

// For x with total weight 0 and dim >= 1: the (dim-1)-cell y with x = 1(y).
CellTerm collapse_unit(const CellTerm& x);
// Degeneracy level computed from weights alone (no normalisation needed).
Dim thickness(const CellTerm& x);

struct DeUnit {
  Dim thickness = 0;
  CellTerm core;  // normal form of the thickness-dimensional cell z with x = 1^n_p(z)
};
DeUnit de_unit(const CellTerm& x);
int size(const CellTerm& x);

// Occurrences of the generator anywhere in the term, at any level.
bool mentions(const CellTerm& x, const GeneratorId& id);
// Replaces every occurrence of a top-dimension generator leaf.
CellTerm replace_leaf(const CellTerm& x, const GeneratorId& id, const CellTerm& replacement);

}  // namespace polykit
