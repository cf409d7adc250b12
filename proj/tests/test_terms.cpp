#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "polykit/enumerate.hpp"
#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"

using namespace polykit;
using fixtures::cell;

namespace {

Polygraph two_points() {
  return parse_polygraph(R"(
dim 0
  • ⋆
dim 1
  a : • -> •
  b : • -> ⋆
  c : ⋆ -> ⋆
)");
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Verification;
}

}  // namespace

TEST(Polygraph, GraphIsValid) {
  auto p = parse_polygraph("dim 0\n •\ndim 1\n a : • -> •\n b : • -> •\n");
  EXPECT_EQ(p.max_dim(), 1);
  EXPECT_EQ(p.generators(1).size(), 2u);
}

TEST(Polygraph, NonParallelBoundaryRejected) {
  std::string text = "dim 0\n • ⋆\ndim 1\n a : • -> •\n b : • -> ⋆\ndim 2\n f : a -> b\n";
  EXPECT_EQ(kind_of([&] { parse_polygraph(text); }), ErrorKind::NotParallel);
}

TEST(Polygraph, CompositeBoundaryAccepted) {
  auto p = parse_polygraph("dim 0\n •\ndim 1\n a : • -> •\n b : • -> •\ndim 2\n f : a *0 b -> b *0 a\n");
  EXPECT_EQ(p.generators(2).size(), 1u);
}

TEST(Polygraph, DanglingReference) {
  EXPECT_EQ(kind_of([] { parse_polygraph("dim 0\n •\ndim 1\n a : • -> q\n"); }),
            ErrorKind::UnresolvedReference);
}

TEST(Boundaries, Basics) {
  auto p = fixtures::loops2();
  auto ab = cell(p, "a *0 b");
  EXPECT_EQ(print_cell(source(ab, 0)), "•");
  EXPECT_EQ(print_cell(target(ab, 0)), "•");
  auto ua = cell(p, "id(a)");
  EXPECT_EQ(source(ua, 1), cell(p, "a"));
  EXPECT_EQ(target(ua, 1), cell(p, "a"));
  // phi : a => b, psi : b => a, so phi *0 psi : a *0 b => b *0 a
  auto h = cell(p, "phi *0 psi");
  EXPECT_EQ(source(h, 1), cell(p, "a *0 b"));
  EXPECT_EQ(target(h, 1), cell(p, "b *0 a"));
  EXPECT_EQ(kind_of([&] { source(ab, 1); }), ErrorKind::DimensionMismatch);
}

TEST(Boundaries, Globularity) {
  auto p = fixtures::globes3();
  for (const auto& t : enumerate_terms(p, 3, 4)) {
    for (Dim j = 1; j < 3; ++j)
      for (Dim i = 0; i < j; ++i) {
        EXPECT_EQ(normalize(source(source(t, j), i)), normalize(source(target(t, j), i)));
        EXPECT_EQ(normalize(target(source(t, j), i)), normalize(target(target(t, j), i)));
      }
  }
}

TEST(Compose, CheckedComposition) {
  auto p = two_points();
  auto a = cell(p, "a");
  auto b = cell(p, "b");
  auto c = cell(p, "c");
  EXPECT_EQ(compose(0, a, b), CellTerm::composite(0, a, b));
  EXPECT_EQ(kind_of([&] { compose(0, a, c); }), ErrorKind::NotComposable);
  EXPECT_EQ(kind_of([&] { parse_cell(p, "a *0 c"); }), ErrorKind::NotComposable);
  auto u = unit_to(a, 3);
  EXPECT_EQ(u.dim(), 3);
  EXPECT_EQ(print_cell(u), "id(id(a))");
}

TEST(Weights, Counts) {
  auto p = fixtures::loops2();
  EXPECT_EQ(weight(cell(p, "a *0 b *0 a"), {"a", 1}), 2);
  EXPECT_EQ(total_weight(cell(p, "id(a *0 b)")), 0);
  EXPECT_EQ(total_weight(cell(p, "(phi *0 id(a)) *1 (psi *0 id(a))")), 2);
  EXPECT_EQ(kind_of([&] { weight(cell(p, "a"), {"phi", 2}); }), ErrorKind::DimensionMismatch);
}

TEST(Weights, Additive) {
  auto p = fixtures::loops2();
  auto ts = enumerate_terms(p, 2, 3);
  int checked = 0;
  for (const auto& x : ts)
    for (const auto& y : ts) {
      if (normalize(target(x, 0)) == normalize(source(y, 0))) {
        auto xy = compose(0, x, y);
        for (const auto& g : p.generators(2))
          EXPECT_EQ(weight(xy, g->id()), weight(x, g->id()) + weight(y, g->id()));
        ++checked;
      }
      if (checked > 4000) return;
    }
}

TEST(Thickness, Examples) {
  auto p = fixtures::loops2();
  auto u = unit_to(cell(p, "a"), 3);
  EXPECT_EQ(thickness(u), 1);
  auto d = de_unit(u);
  EXPECT_EQ(d.thickness, 1);
  EXPECT_EQ(d.core, cell(p, "a"));
  EXPECT_EQ(size(u), 1);
  EXPECT_EQ(size(cell(p, "phi")), 1);
  auto uu = cell(p, "id(a) *1 id(a)");
  EXPECT_EQ(normalize(uu).term(), cell(p, "id(a)"));
  EXPECT_EQ(thickness(uu), 1);
  EXPECT_EQ(thickness(cell(p, "•")), 0);
  EXPECT_EQ(thickness(cell(p, "id(id(•))")), 0);
  EXPECT_EQ(size(cell(p, "id(a *0 b *0 a)")), 3);
  // re-applying units to the core gives back x
  for (const auto& t : enumerate_terms(p, 2, 3)) {
    auto du = de_unit(t);
    EXPECT_EQ(normalize(unit_to(du.core, 2)), normalize(t));
  }
}

TEST(Enumerate, OneLoop) {
  auto p = parse_polygraph("dim 0\n •\ndim 1\n a : • -> •\n");
  auto cells = enumerate_cells(p, 1, 3);
  std::vector<std::string> printed;
  for (const auto& c : cells) printed.push_back(print_cell(c.term()));
  std::sort(printed.begin(), printed.end());
  EXPECT_EQ(printed, (std::vector<std::string>{"a", "a *0 a", "a *0 a *0 a", "id(•)"}));
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(enumerate_cells(p, 1, k).size(), static_cast<std::size_t>(k + 1));
  }
}

TEST(Enumerate, Monotone) {
  auto p = fixtures::adjunction();
  for (int k = 1; k < 4; ++k) {
    auto small = enumerate_cells(p, 2, k);
    auto big = enumerate_cells(p, 2, k + 1);
    for (const auto& c : small) EXPECT_TRUE(std::binary_search(big.begin(), big.end(), c));
  }
}

TEST(Enumerate, LowAndDegenerate) {
  auto p = fixtures::adjunction();
  auto zero = enumerate_cells(p, 0, 5);
  EXPECT_EQ(zero.size(), 2u);
  auto q = parse_polygraph("dim 0\n •\ndim 1\n a : • -> •\ndim 2\n");
  for (const auto& c : enumerate_cells(q, 2, 4)) EXPECT_EQ(c.term().kind(), CellTerm::Kind::Unit);
}

TEST(Enumerate, BudgetReported) {
  auto p = fixtures::loops2();
  EXPECT_EQ(kind_of([&] { enumerate_terms(p, 2, 5, 100); }), ErrorKind::BudgetExceeded);
}
