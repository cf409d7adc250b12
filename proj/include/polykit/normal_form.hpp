#pragma once

// Equality of cells modulo associativity, units and exchange.
//
// Up to dimension 2 normalize() is a canonical form: two terms denote the same
// cell exactly when their normal forms are identical.  A 1-cell is a list of
// generators.  A 2-cell is a sequence of whiskered steps l *0 phi *0 r taken in
// the lexicographically least order reachable by exchanging independent steps.
//
// From dimension 3 on, a cell is still flattened into a *(n-1)-sequence of
// whiskered atoms, each atom being a generator placed in a canonical
// (n-1)-dimensional context.  Reordering of independent atoms is not attempted,
// so the form is sound but not canonical; cells_equal() then falls back to a
// bounded search and may answer Unknown.

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polykit/term.hpp"

namespace polykit {

enum class EqVerdict { Equal, Distinct, Unknown };
const char* to_string(EqVerdict v);

class NormalCell {
 public:
  const CellTerm& term() const { return term_; }
  const std::string& key() const { return term_.key(); }
  Dim dim() const { return term_.dim(); }

  friend bool operator==(const NormalCell& a, const NormalCell& b) { return a.term_ == b.term_; }
  friend bool operator<(const NormalCell& a, const NormalCell& b) { return a.term_ < b.term_; }

 private:
  explicit NormalCell(CellTerm t) : term_(std::move(t)) {}
  friend NormalCell normalize(const CellTerm& x);
  CellTerm term_;
};

NormalCell normalize(const CellTerm& x);

// Budget taken from POLYKIT_BUDGET when set, 20000 otherwise.
std::size_t default_budget();

// Equal / Distinct are always sound.  Unknown only for dimension >= 3.
EqVerdict cells_equal(const CellTerm& x, const CellTerm& y, std::size_t budget);
EqVerdict cells_equal(const CellTerm& x, const CellTerm& y);

// Closure under single axiom rewrites (both directions), grown from both ends,
// expanding at most `budget` distinct terms, smallest terms first.  No normal
// forms are consulted: terms are compared structurally.  Never answers Distinct.
// Terms with more than max_leaves generator occurrences are not explored; the
// default allows two more than the larger input.
EqVerdict oracle_equal_bounded(const CellTerm& x, const CellTerm& y, std::size_t budget,
                               std::optional<int> max_leaves = std::nullopt);

// Throws Error(Inconclusive) on Unknown; otherwise Equal -> true.
bool same_cell(const CellTerm& x, const CellTerm& y, std::size_t budget);
bool same_cell(const CellTerm& x, const CellTerm& y);

// ---- single axiom rewrites --------------------------------------------------

enum class Axiom {
  AssociateRight,   // (x *i y) *i z  ->  x *i (y *i z)
  AssociateLeft,    // x *i (y *i z)  ->  (x *i y) *i z
  UnitRemove,       // 1^n_i(a) *i u  ->  u,  u *i 1^n_i(b)  ->  u
  UnitInsert,       // the reverse
  ExchangeOut,      // (x *i y) *j (z *i t)  ->  (x *j z) *i (y *j t),  i < j
  ExchangeIn,       // the reverse
  UnitSplit,        // 1(a *i b)  ->  1(a) *i 1(b)
  UnitMerge,        // the reverse
};
const char* to_string(Axiom a);

struct Rewrite {
  Axiom axiom;
  CellTerm result;
};

// Every term obtained from x by one axiom instance applied at one position.
// Results with more than max_leaves generator occurrences are dropped.
std::vector<Rewrite> single_rewrites(const CellTerm& x, int max_leaves = INT_MAX);

namespace detail {

// Exhaustive variant of the dimension-2 canonical form: enumerates the whole
// exchange class of the step sequence and returns its least element.  The
// result matches normalize() on every 2-cell; tests use it as an oracle.
CellTerm normalize_dim2_exhaustive(const CellTerm& x);

// Equality search used by cells_equal at dimension >= 3: like the oracle, but
// two frontiers meet as soon as they share a normal form.
EqVerdict normal_form_search(const CellTerm& x, const CellTerm& y, std::size_t budget);

}  // namespace detail

}  // namespace polykit
