#pragma once

// Splitting an idempotent h : F S -> F S through a free complex F T, as
// h = u . r with r . u = id, built one dimension at a time.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polykit/morphism.hpp"

namespace polykit {

// S_n split by the shape of h(a): degenerate (s0), a single non-degenerate
// occurrence of a itself (s1), anything else (s2).
struct GeneratorPartition {
  Dim dim = 0;
  std::vector<GeneratorId> s0, s1, s2;
};

GeneratorPartition partition_generators(const Morphism& h, Dim n);

// One recorded verification step.
struct Check {
  std::string equation;  // e.g. "r.u = id"
  std::string subject;   // generator name
  std::string method;    // how it was established
  bool ok = false;
};

struct TGenerator {
  GeneratorPtr gen;                           // the new generator of T
  CellTerm upsilon;                           // its image in F S, fixed by h
  std::vector<GeneratorId> representatives;  // S1 generators with h(a) = upsilon
};

struct LevelRecord {
  Dim dim = 0;
  GeneratorPartition partition;
  std::vector<TGenerator> t_generators;
  std::vector<GeneratorId> u_alphabet;    // U_n = s0 + s1
  std::map<GeneratorId, CellTerm> k;      // h(a) read over U, for a in S_n
  std::map<GeneratorId, CellTerm> rho;    // U_n -> F T
  std::vector<Check> checks;
};

// Mutable state of the induction; after level n, T, u and r are defined up to n.
struct SplitState {
  PolygraphPtr S;
  Morphism h;
  std::shared_ptr<Polygraph> T;
  Morphism u;  // F T -> F S
  Morphism r;  // F S -> F T
  std::size_t budget = 0;
  std::vector<LevelRecord> levels;
};

// Validates h, checks idempotency and builds dimension 0.
SplitState start_split(const PolygraphPtr& S, const Morphism& h, std::size_t budget);

// T_n with boundaries r(s(v)), r(t(v)); extends u by u(theta) = v.
void build_T_level(SplitState& st, LevelRecord& level);

struct ULevel {
  PolygraphPtr U;
  Morphism k;        // F S -> F U
  Morphism h_prime;  // restriction of h to F U
};

// Asserts weight(h(a), g) = 0 for every a in S_n and g in S2.
ULevel build_U_and_k(const SplitState& st, LevelRecord& level);

// rho on U_n, with the boundary conditions checked.  Returns r' : F U -> F T.
Morphism build_r_level(const SplitState& st, LevelRecord& level, const ULevel& ul);

// r'(u'(theta)) = theta via a thin context and parallelism.
void verify_split_level(const SplitState& st, LevelRecord& level, const ULevel& ul,
                        const Morphism& r_prime);

// Defines r = r'.k on S_n and checks u.r = h and r.u = id on the new generators.
void finish_level(SplitState& st, LevelRecord& level, const Morphism& r_prime);

struct SplitResult {
  PolygraphPtr S;
  PolygraphPtr T;
  Morphism h;
  Morphism u;
  Morphism r;
  Dim dim = 0;
  std::vector<LevelRecord> levels;

  bool verified() const;
};

// Throws InvalidMorphism / Verification for bad input, Inconclusive when an
// equality needed along the way is undecided.  Works through dimension
// max_dim (default: that of S).
SplitResult split_idempotent(const PolygraphPtr& S, const Morphism& h,
                             std::optional<Dim> max_dim, std::size_t budget);
SplitResult split_idempotent(const PolygraphPtr& S, const Morphism& h,
                             std::optional<Dim> max_dim = std::nullopt);

// t is a cell of F T with one top-dimensional generator occurrence, theta, and
// parallel to theta: then t = theta.  Returns false if these do not hold.
bool thin_certificate(const CellTerm& t, const GeneratorPtr& theta, std::size_t budget);

}  // namespace polykit
