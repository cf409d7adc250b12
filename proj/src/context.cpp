#include "polykit/context.hpp"

#include <algorithm>
#include <set>

#include "polykit/enumerate.hpp"

namespace polykit {

namespace {

bool over(const CellTerm& x, const Polygraph& p) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return p.find(x.gen()->name, x.gen()->dim) != nullptr;
    case CellTerm::Kind::Unit:
      return over(x.body(), p);
    case CellTerm::Kind::Comp:
      return over(x.left(), p) && over(x.right(), p);
  }
  return false;
}

bool equal_or_throw(const CellTerm& a, const CellTerm& b, const char* what) {
  switch (cells_equal(a, b)) {
    case EqVerdict::Equal:
      return true;
    case EqVerdict::Distinct:
      return false;
    case EqVerdict::Unknown:
      break;
  }
  throw Error(ErrorKind::Inconclusive, std::string(what) + " undecided within budget");
}

}  // namespace

Extension adjoin_indeterminate(const Polygraph& p, const ParallelPair& type, const std::string& stem) {
  Dim n = 0;
  if (!type.empty()) {
    if (type.target.empty() || type.source.dim() != type.target.dim())
      throw Error(ErrorKind::NotParallel, "indeterminate type with cells of different dimensions");
    if (!over(type.source, p) || !over(type.target, p))
      throw Error(ErrorKind::UnresolvedReference, "indeterminate type not over " + p.name());
    if (!parallel(type.source, type.target))
      throw Error(ErrorKind::NotParallel, "indeterminate type is not a parallel pair");
    n = type.source.dim() + 1;
  }
  std::string name = stem;
  while (!p.dims_named(name).empty()) name += "'";
  auto ext = std::make_shared<Polygraph>(p);
  ext->set_name(p.name() + "[" + name + "]");
  auto g = ext->add_generator(name, n, type);
  return {ext, {g}};
}

Context::Context(PolygraphPtr host, Extension extended, CellTerm term)
    : host_(std::move(host)), ext_(std::move(extended)), term_(std::move(term)) {
  if (term_.empty() || term_.dim() != ext_.indet.dim())
    throw Error(ErrorKind::ContractViolation, "context and indeterminate dimensions differ");
  if (weight(term_, ext_.indet.id()) != 1)
    throw Error(ErrorKind::ContractViolation,
                "a context needs exactly one occurrence of " + ext_.indet.gen->name);
}

Context make_context(const PolygraphPtr& p, const ParallelPair& type,
                     const std::function<CellTerm(const CellTerm&)>& body) {
  Extension ext = adjoin_indeterminate(*p, type);
  CellTerm term = body(cell(ext.indet.gen));
  return Context(p, std::move(ext), std::move(term));
}

CellTerm substitute(const Context& c, const CellTerm& z) {
  const Indeterminate& x = c.indet();
  if (z.empty() || z.dim() != x.dim())
    throw Error(ErrorKind::DimensionMismatch, "substituted cell has the wrong dimension");
  if (x.dim() > 0) {
    ParallelPair t = x.type();
    if (!equal_or_throw(source(z), t.source, "adaptedness") ||
        !equal_or_throw(target(z), t.target, "adaptedness"))
      throw Error(ErrorKind::NotParallel, "cell is not adapted to the context");
  }
  return replace_leaf(c.term(), x.id(), z);
}

Context map_context(const Morphism& u, const Context& c) {
  const Indeterminate& x = c.indet();
  ParallelPair type;
  if (x.dim() > 0)
    type = {normalize(apply(u, x.type().source)).term(), normalize(apply(u, x.type().target)).term()};
  Extension ext = adjoin_indeterminate(*u.target(), type, x.gen->name);
  const GeneratorId xid = x.id();
  CellTerm term = map_leaves(c.term(), [&](const GeneratorPtr& g) {
    return g->id() == xid ? cell(ext.indet.gen) : u.image(g->id());
  });
  return Context(u.target(), std::move(ext), std::move(term));
}

bool is_thin(const Context& c) { return c.term().top_weight() == 1; }

int context_size(const Context& c) {
  CellTerm nf = normalize(c.term()).term();
  if (nf.top_weight() > 1) return nf.top_weight() - 1;
  const GeneratorId xid = c.indet().id();
  Dim best = -1;
  int count = 0;
  std::function<void(const CellTerm&)> walk = [&](const CellTerm& t) {
    switch (t.kind()) {
      case CellTerm::Kind::Gen:
        if (t.gen()->id() == xid) return;
        if (t.dim() > best) {
          best = t.dim();
          count = 0;
        }
        if (t.dim() == best) ++count;
        return;
      case CellTerm::Kind::Unit:
        walk(t.body());
        return;
      case CellTerm::Kind::Comp:
        walk(t.left());
        walk(t.right());
        return;
    }
  };
  walk(nf);
  return count;
}

namespace {

Context face_context(const Context& c, bool src) {
  if (!is_thin(c)) throw Error(ErrorKind::ContractViolation, "face context of a non-thin context");
  const Dim n = c.dim();
  if (n <= 1) throw Error(ErrorKind::ContractViolation, "face context needs dimension > 1");
  const Indeterminate& x = c.indet();
  const CellTerm& xs = src ? x.type().source : x.type().target;
  Extension ext = adjoin_indeterminate(*c.host(), {source(xs), target(xs)}, "y");
  const GeneratorId xid = x.id();
  CellTerm y = cell(ext.indet.gen);
  auto face = [&](const CellTerm& t) { return src ? source(t, n - 1) : target(t, n - 1); };

  std::function<CellTerm(const CellTerm&)> go = [&](const CellTerm& t) -> CellTerm {
    switch (t.kind()) {
      case CellTerm::Kind::Gen:
        if (t.gen()->id() == xid) return y;
        break;
      case CellTerm::Kind::Unit:
        break;
      case CellTerm::Kind::Comp: {
        const bool in_left = weight(t.left(), xid) > 0;
        if (t.axis() == n - 1) return go(in_left ? t.left() : t.right());
        if (in_left) return CellTerm::composite(t.axis(), go(t.left()), face(t.right()));
        return CellTerm::composite(t.axis(), face(t.left()), go(t.right()));
      }
    }
    throw Error(ErrorKind::ContractViolation, "indeterminate not found in context");
  };
  CellTerm term = go(c.term());
  return Context(c.host(), std::move(ext), std::move(term));
}

}  // namespace

Context source_context(const Context& c) { return face_context(c, true); }
Context target_context(const Context& c) { return face_context(c, false); }

FixpointCheck check_trivial_forced(const Context& c, const CellTerm& z) {
  return check_trivial_forced(c, z, default_budget());
}

FixpointCheck check_trivial_forced(const Context& c, const CellTerm& z, std::size_t budget) {
  CellTerm cz = substitute(c, z);
  FixpointCheck out;
  switch (cells_equal(cz, z, budget)) {
    case EqVerdict::Equal:
      out.fixpoint = true;
      break;
    case EqVerdict::Distinct:
      break;
    case EqVerdict::Unknown:
      throw Error(ErrorKind::Inconclusive, "c[z] = z undecided within budget");
  }
  out.trivial = context_size(c) == 0;
  return out;
}

CellTerm thin_parallel_collapse(const Context& c, const CellTerm& z) {
  if (!is_thin(c)) throw Error(ErrorKind::ContractViolation, "context is not thin");
  CellTerm cz = substitute(c, z);
  if (!parallel(cz, z)) throw Error(ErrorKind::NotParallel, "c[z] is not parallel to z");
  return z;
}

}  // namespace polykit

namespace polykit {

ContextEnumerator::ContextEnumerator(PolygraphPtr p, Dim n, int max_leaves, bool thin_only,
                                     std::size_t budget)
    : p_(std::move(p)), n_(n), max_leaves_(max_leaves) {
  if (n_ < 1 || max_leaves_ < 2) return;
  Polygraph q(p_->name());
  q.declare_dim(n_);
  for (Dim d = 0; d <= std::min(n_, p_->max_dim()); ++d) {
    if (thin_only && d == n_) break;
    for (const auto& g : p_->generators(d)) q.add_generator(g);
  }
  for (const auto& c : enumerate_cells(q, n_, max_leaves_ - 1, budget)) {
    std::size_t k = pieces_.size();
    pieces_.push_back({c.term(), c.term().leaves()});
    for (Dim i = 0; i < n_; ++i) {
      by_source_[{i, c.term().leaves(), normalize(source(c.term(), i)).key()}].push_back(k);
      by_target_[{i, c.term().leaves(), normalize(target(c.term(), i)).key()}].push_back(k);
    }
  }
}

std::vector<Context> ContextEnumerator::contexts(const ParallelPair& type) const {
  Extension ext = adjoin_indeterminate(*p_, type);
  std::vector<Context> out;
  if (ext.indet.dim() != n_) return out;
  std::vector<std::vector<CellTerm>> level(max_leaves_ + 1);
  std::set<std::string> seen;
  CellTerm x = cell(ext.indet.gen);
  level[1].push_back(x);
  seen.insert(x.key());
  for (int l = 2; l <= max_leaves_; ++l) {
    for (int l1 = 1; l1 < l; ++l1) {
      for (const auto& c : level[l1]) {
        for (Dim i = 0; i < n_; ++i) {
          auto add = [&](const CellTerm& t) {
            CellTerm nf = normalize(t).term();
            if (seen.insert(nf.key()).second) level[l].push_back(nf);
          };
          if (auto it = by_source_.find({i, l - l1, normalize(target(c, i)).key()});
              it != by_source_.end())
            for (std::size_t k : it->second) add(CellTerm::composite(i, c, pieces_[k].term));
          if (auto it = by_target_.find({i, l - l1, normalize(source(c, i)).key()});
              it != by_target_.end())
            for (std::size_t k : it->second) add(CellTerm::composite(i, pieces_[k].term, c));
        }
      }
    }
  }
  for (const auto& lv : level)
    for (const auto& t : lv) out.emplace_back(p_, ext, t);
  return out;
}

}  // namespace polykit
