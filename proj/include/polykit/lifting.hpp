#pragma once

// Lifting against trivial fibrations, given operationally by filler oracles,
// and the retract-to-isomorphism pipeline built on idempotent splitting.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polykit/morphism.hpp"
#include "polykit/splitting.hpp"

namespace polykit {

// A complex given by a polygraph and a reduction map picking a representative
// of each cell; equality is equality of representatives.  The free complex
// uses the normal form.
class PresentedComplex {
 public:
  using Reducer = std::function<CellTerm(const CellTerm&)>;

  PresentedComplex() = default;
  PresentedComplex(std::string name, PolygraphPtr base, Reducer reduce);

  static PresentedComplex free(const PolygraphPtr& base);
  // Quotient of F(base) identifying each `second` generator with `first`.  The
  // two must have the same dimension and, after identification, the same boundary.
  static PresentedComplex identify(std::string name, const PolygraphPtr& base,
                                   const std::vector<std::pair<GeneratorId, GeneratorId>>& pairs);

  const std::string& name() const { return name_; }
  const PolygraphPtr& base() const { return base_; }
  bool is_free() const { return identified_.empty() && !custom_; }
  const std::vector<std::pair<GeneratorId, GeneratorId>>& identifications() const {
    return identified_;
  }

  CellTerm reduce(const CellTerm& x) const;
  EqVerdict equal(const CellTerm& x, const CellTerm& y, std::size_t budget) const;
  bool same(const CellTerm& x, const CellTerm& y, std::size_t budget) const;

  // Idempotence and boundary compatibility of the reducer on every cell with
  // at most max_leaves leaves; returns the problems found.
  std::vector<std::string> check_reducer(int max_leaves) const;

 private:
  std::string name_;
  PolygraphPtr base_;
  Reducer reduce_;
  bool custom_ = false;
  std::vector<std::pair<GeneratorId, GeneratorId>> identified_;
};

// Boundary compatibility of f : F S -> C with equality taken in C.
MorphismReport validate_morphism_into(const Morphism& f, const PresentedComplex& c,
                                      std::size_t budget);

// A morphism p : F D -> C with a way to fill lifting squares: given parallel
// cells x, y of F D (empty for dimension 0) and z : p(x) -> p(y) in C, a cell
// w : x -> y with p(w) = z.
class FillerOracle {
 public:
  using Fill = std::function<std::optional<CellTerm>(const ParallelPair&, const CellTerm&)>;

  FillerOracle(std::string name, Morphism p, PresentedComplex codomain, Fill fill);

  const std::string& name() const { return name_; }
  const Morphism& p() const { return p_; }
  const PresentedComplex& codomain() const { return codomain_; }

  // Fills and checks the result; throws ContractViolation describing the
  // square when the oracle has no answer or a wrong one.
  CellTerm fill(const ParallelPair& xy, const CellTerm& z, std::size_t budget) const;

 private:
  std::string name_;
  Morphism p_;
  PresentedComplex codomain_;
  Fill fill_;
};

struct ScriptedFill {
  ParallelPair boundary;  // in F D
  CellTerm z;             // in C
  CellTerm w;             // the filler, in F D
};

// Answers from a fixed table, matching squares up to equality.
FillerOracle scripted_oracle(std::string name, Morphism p, PresentedComplex codomain,
                             std::vector<ScriptedFill> table, std::size_t budget);

// For p with a section q (p.q = id): fills with q(z).  Only squares whose
// boundary already lies in the image of q can be filled this way.
FillerOracle section_oracle(std::string name, Morphism p, Morphism q, PresentedComplex codomain);

struct LiftResult {
  Morphism g;  // F S -> F D
  std::vector<Check> checks;
};

// g built dimension by dimension: g(a) = fill(g(s a), g(t a), f(a)).  Then p.g = f
// is checked on every generator.
LiftResult lift_generators(const PolygraphPtr& S, const Morphism& f, const FillerOracle& fib,
                           std::size_t budget);

struct Square {
  Dim dim = 0;
  ParallelPair boundary;
  CellTerm z;
};

struct FibrationReport {
  Dim from = 0, to = 0;
  std::size_t squares = 0;
  std::size_t filled = 0;
  std::vector<Square> unfilled;  // all of them, in enumeration order
  std::optional<std::string> budget_note;
  bool ok() const { return unfilled.empty() && !budget_note; }
};

// Every square with boundary and target of at most max_leaves leaves, in
// dimensions [from, to] (default: 0 up to the larger max_dim), searched for a
// filler among the enumerated cells of F D.
FibrationReport check_trivial_fibration_bounded(const Morphism& p, int max_leaves,
                                                std::optional<Dim> from = std::nullopt,
                                                std::optional<Dim> to = std::nullopt,
                                                std::size_t enum_budget = 200000);

struct RetractIso {
  SplitResult split;
  Morphism h;  // q.p
  Morphism f;  // p.u : F T -> C
  Morphism g;  // r.q : C -> F T
  std::vector<Check> checks;
  bool verified() const;
};

// p : F S -> C, q : C -> F S with p.q = id.  Splits h = q.p and checks that
// f = p.u and g = r.q are mutually inverse on generators.
RetractIso free_retract_iso(const PolygraphPtr& S, const Morphism& p, const Morphism& q,
                            const PresentedComplex& C, std::optional<Dim> max_dim,
                            std::size_t budget);

}  // namespace polykit
