#pragma once

// Contexts: cells with exactly one occurrence of an indeterminate.
//
// An indeterminate of type (a, b) is a fresh generator a -> b added to a copy
// of the host polygraph; a context is a cell of that extension in which the
// indeterminate occurs exactly once.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "polykit/morphism.hpp"
#include "polykit/term.hpp"

namespace polykit {

struct Indeterminate {
  GeneratorPtr gen;
  GeneratorId id() const { return gen->id(); }
  Dim dim() const { return gen->dim; }
  ParallelPair type() const { return gen->boundary(); }
};

struct Extension {
  PolygraphPtr polygraph;  // host plus the indeterminate
  Indeterminate indet;
};

// The name is `stem` followed by enough primes to avoid every name of p.
// Throws NotParallel for a non-parallel type.  An empty type gives a 0-cell.
Extension adjoin_indeterminate(const Polygraph& p, const ParallelPair& type,
                               const std::string& stem = "x");

class Context {
 public:
  // `term` lives over `extended`; throws ContractViolation unless the
  // indeterminate occurs exactly once and term has its dimension.
  Context(PolygraphPtr host, Extension extended, CellTerm term);

  const PolygraphPtr& host() const { return host_; }
  const PolygraphPtr& extended() const { return ext_.polygraph; }
  const Indeterminate& indet() const { return ext_.indet; }
  const CellTerm& term() const { return term_; }
  Dim dim() const { return term_.dim(); }

 private:
  PolygraphPtr host_;
  Extension ext_;
  CellTerm term_;
};

// Builds a context over p whose hole has the given type; `body` receives the
// indeterminate cell and returns the context term.
Context make_context(const PolygraphPtr& p, const ParallelPair& type,
                     const std::function<CellTerm(const CellTerm&)>& body);

// z must be adapted: parallel to the indeterminate (NotParallel otherwise).
CellTerm substitute(const Context& c, const CellTerm& z);

// c^u over u's target, with u(c[z]) = c^u[u(z)].
Context map_context(const Morphism& u, const Context& c);

bool is_thin(const Context& c);

// Computed on the normal form, indeterminate excluded.  For a non-thin context
// this is the remaining top-dimensional weight; for a thin one it is the number
// of generator occurrences at the highest dimension that still has any.
int context_size(const Context& c);

// For thin c of dimension n > 1: the (n-1)-context d with
// s(c[z]) = d[s(z)] (resp. t(c[z]) = d[t(z)]) for every adapted z.
Context source_context(const Context& c);
Context target_context(const Context& c);

struct FixpointCheck {
  bool fixpoint = false;  // c[z] = z
  bool trivial = false;   // context_size(c) == 0
  bool consistent() const { return !fixpoint || trivial; }
};

// Throws Inconclusive when c[z] = z cannot be decided within the budget.
FixpointCheck check_trivial_forced(const Context& c, const CellTerm& z, std::size_t budget);
FixpointCheck check_trivial_forced(const Context& c, const CellTerm& z);

// For thin c with c[z] parallel to z: returns z, which then equals c[z].
// Throws ContractViolation / NotParallel when the hypotheses fail.
CellTerm thin_parallel_collapse(const Context& c, const CellTerm& z);

// Enumerates contexts over p, one per normal form.  A context arises from the
// bare indeterminate by repeatedly composing, on either side, with a piece: an
// n-cell of p with no indeterminate (a degenerate one when thin_only).  Pieces
// are enumerated once; `max_leaves` bounds the whole context, hole included.
class ContextEnumerator {
 public:
  ContextEnumerator(PolygraphPtr p, Dim n, int max_leaves, bool thin_only,
                    std::size_t budget = 2'000'000);

  std::vector<Context> contexts(const ParallelPair& type) const;
  std::size_t pieces() const { return pieces_.size(); }

 private:
  struct Piece {
    CellTerm term;
    int leaves = 0;
  };
  PolygraphPtr p_;
  Dim n_;
  int max_leaves_;
  std::vector<Piece> pieces_;
  // (axis, leaves, normal form of the i-source / i-target) -> pieces
  std::map<std::tuple<Dim, int, std::string>, std::vector<std::size_t>> by_source_, by_target_;
};

}  // namespace polykit
