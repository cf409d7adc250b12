#pragma once

// Morphisms of polygraphs, given on generators and extended to all cells.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"
#include "polykit/term.hpp"

namespace polykit {

using PolygraphPtr = std::shared_ptr<const Polygraph>;

class Morphism {
 public:
  Morphism() = default;
  Morphism(std::string name, PolygraphPtr source, PolygraphPtr target);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const PolygraphPtr& source() const { return source_; }
  const PolygraphPtr& target() const { return target_; }

  // Throws UnresolvedReference for a generator outside the source and
  // DimensionMismatch when the image has the wrong dimension.
  void assign(const GeneratorId& g, CellTerm image);
  bool assigned(const GeneratorId& g) const { return images_.count(g) != 0; }
  const CellTerm& image(const GeneratorId& g) const;
  const std::map<GeneratorId, CellTerm>& images() const { return images_; }

 private:
  std::string name_;
  PolygraphPtr source_;
  PolygraphPtr target_;
  std::map<GeneratorId, CellTerm> images_;
};

// Replaces every generator leaf, at every level, by f(leaf).
CellTerm map_leaves(const CellTerm& x, const std::function<CellTerm(const GeneratorPtr&)>& f);

// The homomorphic extension.  Throws UnresolvedReference on an unassigned leaf.
CellTerm apply(const Morphism& f, const CellTerm& x);

struct MorphismIssue {
  GeneratorId generator;
  ErrorKind kind;
  std::string message;
};

struct MorphismReport {
  std::vector<MorphismIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Checks, dimension by dimension, that every source generator has an image over
// the target whose boundary is the image of its boundary.
MorphismReport validate_morphism(const Morphism& f, std::size_t budget);
MorphismReport validate_morphism(const Morphism& f);
// Throws Error(InvalidMorphism) (or Inconclusive) describing the first issue.
void require_valid(const Morphism& f);

Morphism identity_morphism(const PolygraphPtr& p);

// g after f; images are normalized.
Morphism compose_morphisms(const Morphism& g, const Morphism& f, std::string name = "");

struct IdempotencyReport {
  EqVerdict verdict = EqVerdict::Equal;  // Equal: idempotent
  std::optional<GeneratorId> witness;    // first generator where h(h(a)) = h(a) fails or is undecided
  std::string detail;
};

// Compares h(h(a)) with h(a) for every generator a.
IdempotencyReport is_idempotent(const Morphism& h, std::size_t budget);
IdempotencyReport is_idempotent(const Morphism& h);

}  // namespace polykit
