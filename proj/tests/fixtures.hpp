#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polykit/morphism.hpp"
#include "polykit/syntax.hpp"

namespace fixtures {

// Two loops on one point, with a few 2-generators between words.
inline polykit::Polygraph loops2() {
  return polykit::parse_polygraph(R"(
polygraph loops2
dim 0
  •
dim 1
  a : • -> •
  b : • -> •
dim 2
  phi : a -> b
  psi : b -> a
  mu : a *0 a -> a
  eps : id(•) -> id(•)
)");
}

// A walking adjunction.
inline polykit::Polygraph adjunction() {
  return polykit::parse_polygraph(R"(
polygraph adj
dim 0
  x y
dim 1
  f : x -> y
  g : y -> x
dim 2
  counit : g *0 f -> id(y)
  unit : id(x) -> f *0 g
)");
}

// A 3-dimensional polygraph: a loop, 2-cells on it and 3-cells between those.
inline polykit::Polygraph globes3() {
  return polykit::parse_polygraph(R"(
polygraph globes3
dim 0
  •
dim 1
  a : • -> •
dim 2
  phi : a -> a
  psi : a -> a
  eps : id(•) -> id(•)
dim 3
  A : phi -> psi
  B : psi -> phi
  E : eps -> id(id(•))
)");
}

// Two loops on one point and nothing else.
inline polykit::Polygraph loops1() {
  return polykit::parse_polygraph(R"(
polygraph loops1
dim 0
  •
dim 1
  a : • -> •
  b : • -> •
)");
}

inline polykit::PolygraphPtr share(polykit::Polygraph p) {
  return std::make_shared<const polykit::Polygraph>(std::move(p));
}

inline polykit::CellTerm cell(const polykit::Polygraph& p, const std::string& expr) {
  return polykit::parse_cell(p, expr);
}

// Images given by generator name; a name must be unique across dimensions.
inline polykit::Morphism morph(const std::string& name, const polykit::PolygraphPtr& s,
                               const polykit::PolygraphPtr& t,
                               const std::vector<std::pair<std::string, std::string>>& images) {
  polykit::Morphism f(name, s, t);
  for (const auto& [g, expr] : images) {
    auto dims = s->dims_named(g);
    f.assign({g, dims.at(0)}, polykit::parse_cell(*t, expr, dims.at(0)));
  }
  return f;
}

// The running example: h(a) = b a b, h(b) = 1.
inline polykit::Morphism bab(const polykit::PolygraphPtr& s) {
  return morph("h", s, s, {{"•", "•"}, {"a", "b *0 a *0 b"}, {"b", "id(•)"}});
}

}  // namespace fixtures
