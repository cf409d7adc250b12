#include "polykit/lifting.hpp"

#include <map>
#include <set>
#include <sstream>

#include "polykit/enumerate.hpp"
#include "polykit/syntax.hpp"

namespace polykit {

namespace {

bool decide(EqVerdict v, const std::string& what) {
  if (v == EqVerdict::Unknown)
    throw Error(ErrorKind::Inconclusive, what + ": equality undecided within budget");
  return v == EqVerdict::Equal;
}

std::string describe(const ParallelPair& xy, const CellTerm& z) {
  std::string out = "square ";
  if (!xy.empty()) out += "[" + print_cell(xy.source) + ", " + print_cell(xy.target) + "] ";
  return out + print_cell(z);
}

}  // namespace

// ---- presented complexes -----------------------------------------------------

PresentedComplex::PresentedComplex(std::string name, PolygraphPtr base, Reducer reduce)
    : name_(std::move(name)), base_(std::move(base)), reduce_(std::move(reduce)), custom_(true) {}

PresentedComplex PresentedComplex::free(const PolygraphPtr& base) {
  PresentedComplex c;
  c.name_ = base->name();
  c.base_ = base;
  return c;
}

PresentedComplex PresentedComplex::identify(
    std::string name, const PolygraphPtr& base,
    const std::vector<std::pair<GeneratorId, GeneratorId>>& pairs) {
  PresentedComplex c;
  c.name_ = std::move(name);
  c.base_ = base;
  std::map<GeneratorId, GeneratorPtr> to;
  for (const auto& [keep, drop] : pairs) {
    if (keep.dim != drop.dim)
      throw Error(ErrorKind::DimensionMismatch,
                  "cannot identify " + to_string(drop) + " with " + to_string(keep));
    GeneratorPtr k = base->at(keep);
    base->at(drop);
    if (k->id() == drop)
      throw Error(ErrorKind::ContractViolation, "generator identified with itself");
    if (to.count(keep))
      throw Error(ErrorKind::ContractViolation, to_string(keep) + " is itself identified away");
    to[drop] = k;
  }
  // Chains resolve to their final representative.
  for (auto& [drop, k] : to)
    while (to.count(k->id())) k = to.at(k->id());
  c.identified_ = pairs;
  c.reduce_ = [to](const CellTerm& x) {
    return map_leaves(x, [&](const GeneratorPtr& g) {
      auto it = to.find(g->id());
      return cell(it == to.end() ? g : it->second);
    });
  };
  for (const auto& [drop, k] : to) {
    if (k->dim == 0) continue;
    const GeneratorPtr d = base->at(drop);
    if (c.reduce(d->source) != c.reduce(k->source) || c.reduce(d->target) != c.reduce(k->target))
      throw Error(ErrorKind::NotParallel, "identified generators " + d->name + " and " + k->name +
                                              " have different boundaries");
  }
  return c;
}

CellTerm PresentedComplex::reduce(const CellTerm& x) const {
  return normalize(reduce_ ? reduce_(x) : x).term();
}

EqVerdict PresentedComplex::equal(const CellTerm& x, const CellTerm& y, std::size_t budget) const {
  return cells_equal(reduce(x), reduce(y), budget);
}

bool PresentedComplex::same(const CellTerm& x, const CellTerm& y, std::size_t budget) const {
  return decide(equal(x, y, budget), "equality in " + name_);
}

std::vector<std::string> PresentedComplex::check_reducer(int max_leaves) const {
  std::vector<std::string> out;
  for (Dim n = 0; n <= base_->max_dim(); ++n) {
    for (const auto& t : enumerate_terms(*base_, n, max_leaves)) {
      CellTerm once = reduce(t);
      if (reduce(once) != once) out.push_back("not idempotent on " + print_cell(t));
      if (n == 0) continue;
      if (reduce(source(once)) != reduce(source(t)) || reduce(target(once)) != reduce(target(t)))
        out.push_back("changes the boundary of " + print_cell(t));
    }
  }
  return out;
}

MorphismReport validate_morphism_into(const Morphism& f, const PresentedComplex& c,
                                      std::size_t budget) {
  MorphismReport report;
  for (Dim n = 0; n <= f.source()->max_dim(); ++n)
    for (const auto& g : f.source()->generators(n)) {
      if (!f.assigned(g->id())) {
        report.issues.push_back({g->id(), ErrorKind::InvalidMorphism, "no image for " + g->name});
        continue;
      }
      if (n == 0) continue;
      const CellTerm& img = f.image(g->id());
      for (auto [have, want, side] :
           {std::tuple{source(img), apply(f, g->source), "source"},
            std::tuple{target(img), apply(f, g->target), "target"}}) {
        EqVerdict v = c.equal(have, want, budget);
        if (v == EqVerdict::Equal) continue;
        report.issues.push_back(
            {g->id(), v == EqVerdict::Distinct ? ErrorKind::InvalidMorphism : ErrorKind::Inconclusive,
             std::string(side) + " of the image of " + g->name + " does not match in " + c.name()});
        break;
      }
    }
  return report;
}

// ---- filler oracles ------------------------------------------------------------

FillerOracle::FillerOracle(std::string name, Morphism p, PresentedComplex codomain, Fill fill)
    : name_(std::move(name)), p_(std::move(p)), codomain_(std::move(codomain)), fill_(std::move(fill)) {}

CellTerm FillerOracle::fill(const ParallelPair& xy, const CellTerm& z, std::size_t budget) const {
  const Dim n = z.dim();
  std::optional<CellTerm> w = fill_(xy, z);
  if (!w)
    throw Error(ErrorKind::ContractViolation, name_ + " has no filler for the " + describe(xy, z));
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ContractViolation,
                name_ + " returned " + print_cell(*w) + " for the " + describe(xy, z) + ": " + why);
  };
  if (w->dim() != n) fail("wrong dimension");
  if (n > 0) {
    if (!decide(cells_equal(source(*w), xy.source, budget), "filler source"))
      fail("source differs from the square's");
    if (!decide(cells_equal(target(*w), xy.target, budget), "filler target"))
      fail("target differs from the square's");
  }
  if (!codomain_.same(apply(p_, *w), z, budget)) fail("its image under " + p_.name() + " is not the target cell");
  return *w;
}

FillerOracle scripted_oracle(std::string name, Morphism p, PresentedComplex codomain,
                             std::vector<ScriptedFill> table, std::size_t budget) {
  PresentedComplex cod = codomain;
  auto fill = [table = std::move(table), cod, budget](const ParallelPair& xy,
                                                      const CellTerm& z) -> std::optional<CellTerm> {
    for (const auto& e : table) {
      if (e.z.dim() != z.dim() || e.boundary.empty() != xy.empty()) continue;
      if (!xy.empty() && (cells_equal(e.boundary.source, xy.source, budget) != EqVerdict::Equal ||
                          cells_equal(e.boundary.target, xy.target, budget) != EqVerdict::Equal))
        continue;
      if (cod.equal(e.z, z, budget) == EqVerdict::Equal) return e.w;
    }
    return std::nullopt;
  };
  return FillerOracle(std::move(name), std::move(p), std::move(codomain), std::move(fill));
}

FillerOracle section_oracle(std::string name, Morphism p, Morphism q, PresentedComplex codomain) {
  auto fill = [q = std::move(q)](const ParallelPair&, const CellTerm& z) -> std::optional<CellTerm> {
    return normalize(apply(q, z)).term();
  };
  return FillerOracle(std::move(name), std::move(p), std::move(codomain), std::move(fill));
}

LiftResult lift_generators(const PolygraphPtr& S, const Morphism& f, const FillerOracle& fib,
                           std::size_t budget) {
  LiftResult out{Morphism("lift_" + f.name(), S, fib.p().source()), {}};
  for (Dim n = 0; n <= S->max_dim(); ++n)
    for (const auto& a : S->generators(n)) {
      ParallelPair xy;
      if (n > 0)
        xy = {normalize(apply(out.g, a->source)).term(), normalize(apply(out.g, a->target)).term()};
      out.g.assign(a->id(), fib.fill(xy, f.image(a->id()), budget));
    }
  for (Dim n = 0; n <= S->max_dim(); ++n)
    for (const auto& a : S->generators(n)) {
      bool ok = fib.codomain().same(apply(fib.p(), out.g.image(a->id())), f.image(a->id()), budget);
      out.checks.push_back({"p.g = f", a->name, "equality in " + fib.codomain().name(), ok});
    }
  return out;
}

// ---- bounded fibration check -----------------------------------------------

FibrationReport check_trivial_fibration_bounded(const Morphism& p, int max_leaves,
                                                std::optional<Dim> from, std::optional<Dim> to,
                                                std::size_t enum_budget) {
  FibrationReport report;
  Polygraph D = *p.source();
  Polygraph C = *p.target();
  report.from = from.value_or(0);
  report.to = to.value_or(std::max(D.max_dim(), C.max_dim()));
  D.declare_dim(report.to);
  C.declare_dim(report.to);

  try {
    for (Dim n = report.from; n <= report.to; ++n) {
      std::vector<ParallelPair> pairs;
      if (n == 0) {
        pairs.push_back({});
      } else {
        auto low = enumerate_cells(D, n - 1, max_leaves, enum_budget);
        for (const auto& x : low)
          for (const auto& y : low)
            if (n - 1 == 0 || (normalize(source(x.term())) == normalize(source(y.term())) &&
                               normalize(target(x.term())) == normalize(target(y.term()))))
              pairs.push_back({x.term(), y.term()});
      }
      // Fillers available in F D, keyed by (source, target, image).
      std::set<std::tuple<std::string, std::string, std::string>> available;
      for (const auto& w : enumerate_cells(D, n, max_leaves, enum_budget)) {
        std::string s = n ? normalize(source(w.term())).key() : "";
        std::string t = n ? normalize(target(w.term())).key() : "";
        available.insert({s, t, normalize(apply(p, w.term())).key()});
      }
      std::map<std::pair<std::string, std::string>, std::vector<CellTerm>> targets;
      for (const auto& z : enumerate_cells(C, n, max_leaves, enum_budget)) {
        std::string s = n ? normalize(source(z.term())).key() : "";
        std::string t = n ? normalize(target(z.term())).key() : "";
        targets[{s, t}].push_back(z.term());
      }
      for (const auto& xy : pairs) {
        std::string ps = n ? normalize(apply(p, xy.source)).key() : "";
        std::string pt = n ? normalize(apply(p, xy.target)).key() : "";
        auto it = targets.find({ps, pt});
        if (it == targets.end()) continue;
        std::string xs = n ? normalize(xy.source).key() : "";
        std::string xt = n ? normalize(xy.target).key() : "";
        for (const auto& z : it->second) {
          ++report.squares;
          if (available.count({xs, xt, normalize(z).key()}))
            ++report.filled;
          else
            report.unfilled.push_back({n, xy, z});
        }
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    report.budget_note = e.what();
  }
  return report;
}

// ---- retracts ----------------------------------------------------------------

bool RetractIso::verified() const {
  if (!split.verified()) return false;
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

RetractIso free_retract_iso(const PolygraphPtr& S, const Morphism& p, const Morphism& q,
                            const PresentedComplex& C, std::optional<Dim> max_dim,
                            std::size_t budget) {
  const Dim top = max_dim.value_or(S->max_dim());
  std::vector<Check> checks;
  auto record = [&](std::string eq, std::string subject, std::string method, bool ok) {
    checks.push_back({eq, subject, method, ok});
    if (!ok) throw Error(ErrorKind::Verification, eq + " fails at " + subject);
  };

  for (Dim n = 0; n <= std::min(top, C.base()->max_dim()); ++n)
    for (const auto& c : C.base()->generators(n))
      record("p.q = id", c->name, "equality in " + C.name(),
             C.same(apply(p, q.image(c->id())), cell(c), budget));
  for (const auto& [keep, drop] : C.identifications())
    record("q respects " + drop.name + " = " + keep.name, drop.name, "equality",
           decide(cells_equal(q.image(keep), q.image(drop), budget), "q on identified generators"));

  Morphism h("h", S, S);
  for (Dim n = 0; n <= S->max_dim(); ++n)
    for (const auto& a : S->generators(n))
      h.assign(a->id(), normalize(apply(q, p.image(a->id()))).term());

  SplitResult split = split_idempotent(S, h, top, budget);

  Morphism f("f", split.T, C.base());
  for (const auto& t : split.T->all_generators())
    f.assign(t->id(), C.reduce(apply(p, split.u.image(t->id()))));
  Morphism g("g", C.base(), split.T);
  for (Dim n = 0; n <= std::min(top, C.base()->max_dim()); ++n)
    for (const auto& c : C.base()->generators(n))
      g.assign(c->id(), normalize(apply(split.r, q.image(c->id()))).term());

  for (const auto& t : split.T->all_generators())
    record("g.f = id", t->name, "equality",
           decide(cells_equal(apply(g, f.image(t->id())), cell(t), budget), "g.f = id at " + t->name));
  for (Dim n = 0; n <= std::min(top, C.base()->max_dim()); ++n)
    for (const auto& c : C.base()->generators(n))
      record("f.g = id", c->name, "equality in " + C.name(),
             C.same(apply(f, g.image(c->id())), cell(c), budget));

  return {std::move(split), std::move(h), std::move(f), std::move(g), std::move(checks)};
}

}  // namespace polykit
