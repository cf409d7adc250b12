#include "polykit/splitting.hpp"

#include <algorithm>
#include <set>

#include "polykit/context.hpp"

namespace polykit {

namespace {

bool contains(const std::vector<GeneratorId>& v, const GeneratorId& g) {
  return std::find(v.begin(), v.end(), g) != v.end();
}

// Equal -> true, Distinct -> false, Unknown -> Inconclusive naming `what`.
bool decide(const CellTerm& a, const CellTerm& b, std::size_t budget, const std::string& what) {
  switch (cells_equal(a, b, budget)) {
    case EqVerdict::Equal:
      return true;
    case EqVerdict::Distinct:
      return false;
    case EqVerdict::Unknown:
      break;
  }
  throw Error(ErrorKind::Inconclusive, what + ": equality undecided within budget " +
                                           std::to_string(budget));
}

void record(LevelRecord& level, std::string equation, std::string subject, std::string method,
            bool ok) {
  level.checks.push_back({std::move(equation), std::move(subject), std::move(method), ok});
  if (!ok)
    throw Error(ErrorKind::Verification, "dimension " + std::to_string(level.dim) + ", " +
                                             level.checks.back().subject + ": " +
                                             level.checks.back().equation + " fails");
}

// The unique top-dimensional leaf of x outside `s0`.
GeneratorPtr single_live_leaf(const CellTerm& x, const std::vector<GeneratorId>& s0) {
  GeneratorPtr found;
  std::function<void(const CellTerm&)> walk = [&](const CellTerm& t) {
    switch (t.kind()) {
      case CellTerm::Kind::Gen:
        if (!contains(s0, t.gen()->id())) {
          if (found) throw Error(ErrorKind::Verification, "image with two live generators");
          found = t.gen();
        }
        return;
      case CellTerm::Kind::Unit:
        return;
      case CellTerm::Kind::Comp:
        walk(t.left());
        walk(t.right());
        return;
    }
  };
  walk(x);
  if (!found) throw Error(ErrorKind::Verification, "image without a live generator");
  return found;
}

}  // namespace

GeneratorPartition partition_generators(const Morphism& h, Dim n) {
  GeneratorPartition part;
  part.dim = n;
  const auto& gens = h.source()->generators(n);
  for (const auto& g : gens)
    if (h.image(g->id()).top_weight() == 0) part.s0.push_back(g->id());
  for (const auto& g : gens) {
    const GeneratorId id = g->id();
    if (contains(part.s0, id)) continue;
    const CellTerm& y = h.image(id);
    bool one = true;
    for (const auto& [other, w] : weight_vector(y)) {
      if (other == id) {
        one = one && w == 1;
      } else if (!contains(part.s0, other)) {
        one = false;
      }
    }
    one = one && weight(y, id) == 1;
    (one ? part.s1 : part.s2).push_back(id);
  }
  return part;
}

bool thin_certificate(const CellTerm& t, const GeneratorPtr& theta, std::size_t budget) {
  (void)budget;
  if (t.dim() != theta->dim || t.top_weight() != 1 || weight(t, theta->id()) != 1) return false;
  if (theta->dim == 0) return t == cell(theta);
  auto host = std::make_shared<Polygraph>();
  // The host only has to know the generators occurring in t.
  std::function<void(const CellTerm&)> collect = [&](const CellTerm& x) {
    switch (x.kind()) {
      case CellTerm::Kind::Gen:
        if (!host->contains(x.gen()->id())) host->add_generator(x.gen());
        return;
      case CellTerm::Kind::Unit:
        collect(x.body());
        return;
      case CellTerm::Kind::Comp:
        collect(x.left());
        collect(x.right());
        return;
    }
  };
  collect(t);
  collect(theta->source);
  collect(theta->target);
  Extension ext = adjoin_indeterminate(*host, theta->boundary(), "x");
  CellTerm body = replace_leaf(t, theta->id(), cell(ext.indet.gen));
  Context c(host, std::move(ext), std::move(body));
  try {
    thin_parallel_collapse(c, cell(theta));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Inconclusive) throw;
    return false;
  }
  return true;
}

SplitState start_split(const PolygraphPtr& S, const Morphism& h, std::size_t budget) {
  if (h.source()->name() != S->name() || h.target()->name() != S->name())
    throw Error(ErrorKind::InvalidMorphism, "morphism " + h.name() + " is not an endomorphism of " +
                                                S->name());
  auto report = validate_morphism(h, budget);
  if (!report.ok()) {
    const auto& i = report.issues.front();
    throw Error(i.kind == ErrorKind::Inconclusive ? ErrorKind::Inconclusive
                                                  : ErrorKind::InvalidMorphism,
                "morphism " + h.name() + ": " + i.message);
  }
  auto idem = is_idempotent(h, budget);
  if (idem.verdict == EqVerdict::Distinct)
    throw Error(ErrorKind::Verification, "morphism " + h.name() + " is not idempotent: " + idem.detail);
  if (idem.verdict == EqVerdict::Unknown)
    throw Error(ErrorKind::Inconclusive, "idempotency of " + h.name() + " at " +
                                             to_string(*idem.witness) + ": " + idem.detail);

  SplitState st;
  st.S = S;
  st.h = h;
  st.budget = budget;
  st.T = std::make_shared<Polygraph>("T_" + h.name());
  st.T->declare_dim(0);
  st.u = Morphism("u", st.T, S);
  st.r = Morphism("r", S, st.T);

  LevelRecord level;
  level.dim = 0;
  level.partition.dim = 0;
  for (const auto& x : S->generators(0)) {
    const CellTerm& y = h.image(x->id());
    const GeneratorPtr& yg = y.gen();
    (yg->id() == x->id() ? level.partition.s1 : level.partition.s2).push_back(x->id());
    GeneratorPtr t = st.T->find(yg->name, 0);
    if (!t) {
      t = st.T->add_generator(yg->name, 0);
      st.u.assign(t->id(), cell(S->at(yg->id())));
      level.t_generators.push_back({t, y, {}});
    }
    for (auto& tg : level.t_generators)
      if (tg.gen == t) tg.representatives.push_back(x->id());
    st.r.assign(x->id(), cell(t));
  }
  for (const auto& x : S->generators(0))
    record(level, "u.r = h", x->name, "generator identity",
           apply(st.u, st.r.image(x->id())) == h.image(x->id()));
  for (const auto& t : st.T->generators(0))
    record(level, "r.u = id", t->name, "generator identity",
           apply(st.r, st.u.image(t->id())) == cell(t));
  st.levels.push_back(std::move(level));
  return st;
}

void build_T_level(SplitState& st, LevelRecord& level) {
  const Dim n = level.dim;
  level.partition = partition_generators(st.h, n);
  st.T->declare_dim(n);
  for (const auto& a : level.partition.s1) {
    CellTerm v = normalize(st.h.image(a)).term();
    TGenerator* match = nullptr;
    for (auto& tg : level.t_generators)
      if (tg.upsilon == v || decide(tg.upsilon, v, st.budget, "merging h-images of " + a.name)) {
        match = &tg;
        break;
      }
    if (match) {
      match->representatives.push_back(a);
      continue;
    }
    CellTerm s = normalize(apply(st.r, source(v))).term();
    CellTerm t = normalize(apply(st.r, target(v))).term();
    if (!parallel(s, t))
      throw Error(ErrorKind::Verification, "boundary of the T-generator for " + a.name +
                                               " is not parallel");
    GeneratorPtr theta = st.T->add_generator(a.name, n, {s, t});
    st.u.assign(theta->id(), v);
    level.t_generators.push_back({theta, v, {a}});
  }
  for (const auto& tg : level.t_generators) {
    const std::string& name = tg.gen->name;
    record(level, "h.v = v", name, "equality",
           decide(apply(st.h, tg.upsilon), tg.upsilon, st.budget, "h.v = v at " + name));
    record(level, "u.sT = s.v", name, "equality",
           decide(apply(st.u, tg.gen->source), source(tg.upsilon), st.budget, "u.sT at " + name));
    record(level, "u.tT = t.v", name, "equality",
           decide(apply(st.u, tg.gen->target), target(tg.upsilon), st.budget, "u.tT at " + name));
  }
}

ULevel build_U_and_k(const SplitState& st, LevelRecord& level) {
  const Dim n = level.dim;
  const auto& part = level.partition;
  auto U = std::make_shared<Polygraph>("U" + std::to_string(n));
  for (Dim d = 0; d < n; ++d) {
    U->declare_dim(d);
    for (const auto& g : st.S->generators(d)) U->add_generator(g);
  }
  U->declare_dim(n);
  for (const auto& g : st.S->generators(n))
    if (!contains(part.s2, g->id())) {
      U->add_generator(g);
      level.u_alphabet.push_back(g->id());
    }

  ULevel ul{U, Morphism("k", st.S, U), Morphism("h'", U, U)};
  for (Dim d = 0; d <= n; ++d)
    for (const auto& g : st.S->generators(d)) {
      const CellTerm& y = st.h.image(g->id());
      if (d == n) {
        bool clean = true;
        for (const auto& c : part.s2) clean = clean && weight(y, c) == 0;
        record(level, "weight(h(a), S2) = 0", g->name, "weight count", clean);
        level.k[g->id()] = y;
      }
      ul.k.assign(g->id(), y);
      if (U->contains(g->id())) ul.h_prime.assign(g->id(), y);
    }
  return ul;
}

Morphism build_r_level(const SplitState& st, LevelRecord& level, const ULevel& ul) {
  const Dim n = level.dim;
  Morphism rp("r'", ul.U, st.T);
  for (Dim d = 0; d < n; ++d)
    for (const auto& g : st.S->generators(d)) rp.assign(g->id(), st.r.image(g->id()));

  for (const auto& a : level.partition.s0) {
    DeUnit du = de_unit(st.h.image(a));
    CellTerm rho = unit_to(normalize(apply(st.r, du.core)).term(), n);
    level.rho[a] = rho;
    rp.assign(a, rho);
  }
  for (const auto& tg : level.t_generators)
    for (const auto& a : tg.representatives) {
      level.rho[a] = cell(tg.gen);
      rp.assign(a, cell(tg.gen));
    }

  for (const auto& a : level.u_alphabet) {
    const GeneratorPtr g = st.S->at(a);
    const CellTerm& rho = level.rho.at(a);
    const char* how = contains(level.partition.s0, a) ? "degenerate case" : "generator case";
    record(level, "sT(rho(a)) = r'(sU(a))", a.name, how,
           decide(source(rho), apply(rp, g->source), st.budget, "boundary of rho(" + a.name + ")"));
    record(level, "tT(rho(a)) = r'(tU(a))", a.name, how,
           decide(target(rho), apply(rp, g->target), st.budget, "boundary of rho(" + a.name + ")"));
  }
  return rp;
}

void verify_split_level(const SplitState& st, LevelRecord& level, const ULevel& ul,
                        const Morphism& r_prime) {
  for (const auto& tg : level.t_generators) {
    // u'(theta) = d[a] for the single live occurrence a.
    GeneratorPtr a = single_live_leaf(tg.upsilon, level.partition.s0);
    Extension ext = adjoin_indeterminate(*ul.U, a->boundary(), "x");
    Context d(ul.U, ext, replace_leaf(tg.upsilon, a->id(), cell(ext.indet.gen)));
    Context c = map_context(r_prime, d);
    const std::string& name = tg.gen->name;
    record(level, "r'.u' = id", name, "context is thin", is_thin(c));
    CellTerm ctheta = substitute(c, cell(tg.gen));
    record(level, "r'.u' = id", name, "c[theta] = r'(u'(theta))",
           ctheta == apply(r_prime, tg.upsilon));
    bool collapsed = false;
    try {
      thin_parallel_collapse(c, cell(tg.gen));
      collapsed = true;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Inconclusive) throw;
    }
    record(level, "r'.u' = id", name, "thin and parallel", collapsed);
  }
  (void)st;
}

void finish_level(SplitState& st, LevelRecord& level, const Morphism& r_prime) {
  const Dim n = level.dim;
  for (const auto& g : st.S->generators(n))
    st.r.assign(g->id(), normalize(apply(r_prime, level.k.at(g->id()))).term());

  for (const auto& g : st.S->generators(n)) {
    const CellTerm& want = st.h.image(g->id());
    CellTerm got = apply(st.u, st.r.image(g->id()));
    EqVerdict v = cells_equal(got, want, st.budget);
    if (v != EqVerdict::Unknown) {
      record(level, "u.r = h", g->name, "equality", v == EqVerdict::Equal);
      continue;
    }
    // u(r(a)) is h(a) with every U-leaf b replaced by u(rho(b)), and lower
    // leaves by u(r(.)) = h(.).  So it equals h(h(a)) = h(a) once
    // u(rho(b)) = h(b) holds for the generators b of this level.
    bool leaves_ok = true;
    for (const auto& [b, w] : weight_vector(want)) {
      (void)w;
      leaves_ok = leaves_ok && decide(apply(st.u, level.rho.at(b)), st.h.image(b), st.budget,
                                      "u(rho(" + b.name + ")) = h(" + b.name + ")");
    }
    record(level, "u.r = h", g->name, "congruence and idempotency", leaves_ok);
  }

  for (const auto& tg : level.t_generators) {
    CellTerm back = normalize(apply(st.r, tg.upsilon)).term();
    if (thin_certificate(back, tg.gen, st.budget)) {
      record(level, "r.u = id", tg.gen->name, "thin and parallel", true);
      continue;
    }
    record(level, "r.u = id", tg.gen->name, "equality",
           decide(back, cell(tg.gen), st.budget, "r.u = id at " + tg.gen->name));
  }
}

bool SplitResult::verified() const {
  for (const auto& l : levels)
    for (const auto& c : l.checks)
      if (!c.ok) return false;
  return true;
}

SplitResult split_idempotent(const PolygraphPtr& S, const Morphism& h, std::optional<Dim> max_dim) {
  return split_idempotent(S, h, max_dim, default_budget());
}

SplitResult split_idempotent(const PolygraphPtr& S, const Morphism& h, std::optional<Dim> max_dim,
                             std::size_t budget) {
  const Dim top = max_dim.value_or(S->max_dim());
  if (top < 0 || top > S->max_dim())
    throw Error(ErrorKind::DimensionMismatch, "cannot split through dimension " +
                                                  std::to_string(top) + " of " + S->name());
  SplitState st = start_split(S, h, budget);
  for (Dim n = 1; n <= top; ++n) {
    LevelRecord level;
    level.dim = n;
    build_T_level(st, level);
    ULevel ul = build_U_and_k(st, level);
    Morphism rp = build_r_level(st, level, ul);
    verify_split_level(st, level, ul, rp);
    finish_level(st, level, rp);
    st.levels.push_back(std::move(level));
  }
  SplitResult out;
  out.S = S;
  out.T = st.T;
  out.h = st.h;
  out.u = st.u;
  out.r = st.r;
  out.dim = top;
  out.levels = std::move(st.levels);
  return out;
}

}  // namespace polykit
