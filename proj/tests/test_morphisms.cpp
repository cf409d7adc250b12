#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "polykit/context.hpp"
#include "polykit/error.hpp"
#include "polykit/morphism.hpp"
#include "polykit/normal_form.hpp"

using namespace polykit;
using fixtures::cell;
using fixtures::share;

namespace {

class MorphismTest : public ::testing::Test {
 protected:
  PolygraphPtr S = share(fixtures::loops1());
  Morphism h = fixtures::bab(S);
};

}  // namespace

TEST_F(MorphismTest, BabIsValid) {
  EXPECT_TRUE(validate_morphism(h).ok());
  EXPECT_TRUE(validate_morphism(identity_morphism(S)).ok());
}

TEST_F(MorphismTest, ApplyIsHomomorphic) {
  CellTerm aa = cell(*S, "a *0 a");
  EXPECT_EQ(apply(h, aa), cell(*S, "(b *0 a *0 b) *0 (b *0 a *0 b)"));
  EXPECT_EQ(apply(h, cell(*S, "id(•)")), CellTerm::unit(h.image({"•", 0})));
  EXPECT_EQ(apply(identity_morphism(S), aa), aa);
}

TEST_F(MorphismTest, BoundaryMismatchIsReported) {
  auto P = share(fixtures::loops2());
  Morphism f = fixtures::morph("f", P, P,
                               {{"•", "•"}, {"a", "a"}, {"b", "b"}, {"phi", "psi"},
                                {"psi", "psi"}, {"mu", "mu"}, {"eps", "eps"}});
  MorphismReport rep = validate_morphism(f);
  ASSERT_EQ(rep.issues.size(), 1u);
  EXPECT_EQ(rep.issues[0].generator, (GeneratorId{"phi", 2}));
  EXPECT_THROW(require_valid(f), Error);
}

TEST_F(MorphismTest, MissingImage) {
  Morphism f("f", S, S);
  f.assign({"•", 0}, cell(*S, "•"));
  f.assign({"a", 1}, cell(*S, "a"));
  EXPECT_FALSE(validate_morphism(f).ok());
  EXPECT_THROW(apply(f, cell(*S, "b")), Error);
}

TEST_F(MorphismTest, Idempotency) {
  EXPECT_EQ(is_idempotent(h).verdict, EqVerdict::Equal);
  EXPECT_EQ(is_idempotent(identity_morphism(S)).verdict, EqVerdict::Equal);

  Morphism d = fixtures::morph("d", S, S, {{"•", "•"}, {"a", "a *0 a"}, {"b", "b"}});
  IdempotencyReport rep = is_idempotent(d);
  EXPECT_EQ(rep.verdict, EqVerdict::Distinct);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->name, "a");
  EXPECT_NE(rep.detail.find("4"), std::string::npos);
}

TEST_F(MorphismTest, CompositionAgreesWithApply) {
  Morphism hh = compose_morphisms(h, h);
  for (const char* e : {"a", "a *0 b *0 a", "id(•)", "b *0 id(•) *0 a"}) {
    CellTerm x = cell(*S, e);
    EXPECT_EQ(normalize(apply(hh, x)), normalize(apply(h, apply(h, x)))) << e;
    EXPECT_EQ(normalize(apply(hh, x)), normalize(apply(h, x))) << e;
  }
}

// ---- contexts ---------------------------------------------------------------

namespace {

class ContextTest : public ::testing::Test {
 protected:
  PolygraphPtr P = share(fixtures::loops2());
  CellTerm a = cell(*P, "a");
  CellTerm b = cell(*P, "b");
  CellTerm pt = cell(*P, "•");
};

}  // namespace

TEST_F(ContextTest, AdjoinIndeterminate) {
  Extension e = adjoin_indeterminate(*P, {a, a});
  EXPECT_EQ(e.indet.dim(), 2);
  EXPECT_EQ(e.indet.gen->name, "x");
  EXPECT_TRUE(e.polygraph->contains({"phi", 2}));

  Extension e1 = adjoin_indeterminate(*P, {pt, pt});
  EXPECT_EQ(e1.indet.dim(), 1);
  Polygraph adj = fixtures::adjunction();
  EXPECT_THROW(adjoin_indeterminate(adj, {cell(adj, "f"), cell(adj, "g")}), Error);
  EXPECT_THROW(adjoin_indeterminate(*P, {a, cell(*P, "phi")}), Error);

  Extension e2 = adjoin_indeterminate(*P, {a, a}, "phi");
  EXPECT_EQ(e2.indet.gen->name, "phi'");
}

TEST_F(ContextTest, SubstituteAndThinness) {
  Context trivial = make_context(P, {a, b}, [](const CellTerm& x) { return x; });
  CellTerm phi = cell(*P, "phi");
  EXPECT_EQ(substitute(trivial, phi), phi);
  EXPECT_TRUE(is_thin(trivial));
  EXPECT_EQ(context_size(trivial), 0);

  Context unit_left = make_context(P, {a, b}, [&](const CellTerm& x) {
    return CellTerm::composite(1, CellTerm::unit(a), x);
  });
  EXPECT_EQ(normalize(substitute(unit_left, phi)), normalize(phi));
  EXPECT_TRUE(is_thin(unit_left));

  Context whisker = make_context(P, {a, b}, [&](const CellTerm& x) {
    return CellTerm::composite(0, CellTerm::unit(b), x);
  });
  EXPECT_TRUE(is_thin(whisker));
  EXPECT_EQ(context_size(whisker), 1);
  EXPECT_EQ(substitute(whisker, phi), cell(*P, "id(b) *0 phi"));

  Context heavy = make_context(P, {b, a}, [&](const CellTerm& x) {
    return CellTerm::composite(1, phi, x);
  });
  EXPECT_FALSE(is_thin(heavy));
  EXPECT_EQ(context_size(heavy), 1);

  EXPECT_THROW(substitute(whisker, cell(*P, "psi")), Error);
}

TEST_F(ContextTest, SourceContext) {
  CellTerm phi = cell(*P, "phi");
  Context c = make_context(P, {a, b}, [](const CellTerm& x) { return x; });
  Context d = source_context(c);
  EXPECT_EQ(d.dim(), 1);
  EXPECT_EQ(substitute(d, a), a);

  Context w = make_context(P, {a, b}, [&](const CellTerm& x) {
    return CellTerm::composite(0, CellTerm::unit(a), x);
  });
  Context ws = source_context(w);
  Context wt = target_context(w);
  EXPECT_EQ(context_size(ws), context_size(w));
  EXPECT_EQ(normalize(substitute(ws, a)), normalize(source(substitute(w, phi))));
  EXPECT_EQ(normalize(substitute(wt, b)), normalize(target(substitute(w, phi))));
}

TEST_F(ContextTest, MapContext) {
  auto S = share(fixtures::loops1());
  Morphism h = fixtures::bab(S);
  CellTerm sa = cell(*S, "a");
  Context c = make_context(S, {cell(*S, "•"), cell(*S, "•")}, [&](const CellTerm& x) {
    return CellTerm::composite(0, sa, x);
  });
  Context cu = map_context(h, c);
  for (const char* e : {"a", "b", "a *0 b", "id(•)"}) {
    CellTerm z = cell(*S, e);
    EXPECT_EQ(normalize(apply(h, substitute(c, z))), normalize(substitute(cu, apply(h, z)))) << e;
  }
  Context ci = map_context(identity_morphism(S), c);
  EXPECT_EQ(substitute(ci, sa), substitute(c, sa));
}

TEST_F(ContextTest, FixpointAndCollapse) {
  CellTerm phi = cell(*P, "phi");
  Context c = make_context(P, {a, b}, [](const CellTerm& x) { return x; });
  FixpointCheck fc = check_trivial_forced(c, phi);
  EXPECT_TRUE(fc.fixpoint);
  EXPECT_TRUE(fc.trivial);
  EXPECT_EQ(thin_parallel_collapse(c, phi), phi);

  Context w = make_context(P, {pt, pt}, [&](const CellTerm& x) {
    return CellTerm::composite(0, a, x);
  });
  FixpointCheck fw = check_trivial_forced(w, b);
  EXPECT_FALSE(fw.fixpoint);
  EXPECT_TRUE(fw.consistent());

  // Thin, with degenerate whiskers on both sides of the hole.
  Context u = make_context(P, {a, b}, [&](const CellTerm& x) {
    return CellTerm::composite(1, CellTerm::composite(1, CellTerm::unit(a), x), CellTerm::unit(b));
  });
  EXPECT_EQ(thin_parallel_collapse(u, phi), phi);
  EXPECT_EQ(oracle_equal_bounded(substitute(u, phi), phi, 2000), EqVerdict::Equal);

  Context heavy = make_context(P, {b, a}, [&](const CellTerm& x) {
    return CellTerm::composite(1, phi, x);
  });
  EXPECT_THROW(thin_parallel_collapse(heavy, cell(*P, "psi")), Error);
}
