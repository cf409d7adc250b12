#include "polykit/term.hpp"

#include <algorithm>
#include <functional>

#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"

namespace polykit {

std::string to_string(const GeneratorId& id) { return id.name + "@" + std::to_string(id.dim); }

struct CellTerm::Node {
  Kind kind = Kind::Gen;
  Dim dim = 0;
  Dim axis = -1;
  GeneratorPtr gen;
  CellTerm a;
  CellTerm b;
  std::string key;
  std::size_t hash = 0;
  int leaves = 0;
  int top_weight = 0;
};

namespace {

const CellTerm::Node& checked(const std::shared_ptr<const CellTerm::Node>& n) {
  if (!n) throw Error(ErrorKind::ContractViolation, "empty cell term");
  return *n;
}

}  // namespace

CellTerm CellTerm::generator(GeneratorPtr g) {
  if (!g) throw Error(ErrorKind::ContractViolation, "null generator");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gen;
  n->dim = g->dim;
  n->key = g->name + "#" + std::to_string(g->dim);
  n->hash = std::hash<std::string>{}(n->key);
  n->leaves = 1;
  n->top_weight = 1;
  n->gen = std::move(g);
  CellTerm t;
  t.node_ = std::move(n);
  return t;
}

CellTerm CellTerm::unit(CellTerm body) {
  const Node& b = checked(body.node_);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  n->dim = b.dim + 1;
  n->key = "id(" + b.key + ")";
  n->hash = std::hash<std::string>{}(n->key);
  n->leaves = b.leaves;
  n->top_weight = 0;
  n->a = std::move(body);
  CellTerm t;
  t.node_ = std::move(n);
  return t;
}

CellTerm CellTerm::composite(Dim axis, CellTerm left, CellTerm right) {
  const Node& l = checked(left.node_);
  const Node& r = checked(right.node_);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comp;
  n->dim = l.dim;
  n->axis = axis;
  n->key.reserve(l.key.size() + r.key.size() + 8);
  n->key = "(" + l.key + " *" + std::to_string(axis) + " " + r.key + ")";
  n->hash = std::hash<std::string>{}(n->key);
  n->leaves = l.leaves + r.leaves;
  n->top_weight = l.top_weight + r.top_weight;
  n->a = std::move(left);
  n->b = std::move(right);
  CellTerm t;
  t.node_ = std::move(n);
  return t;
}

CellTerm::Kind CellTerm::kind() const { return checked(node_).kind; }
Dim CellTerm::dim() const { return checked(node_).dim; }
Dim CellTerm::axis() const { return checked(node_).axis; }
const GeneratorPtr& CellTerm::gen() const { return checked(node_).gen; }
const CellTerm& CellTerm::body() const { return checked(node_).a; }
const CellTerm& CellTerm::left() const { return checked(node_).a; }
const CellTerm& CellTerm::right() const { return checked(node_).b; }
const std::string& CellTerm::key() const { return checked(node_).key; }
std::size_t CellTerm::hash() const { return checked(node_).hash; }
int CellTerm::leaves() const { return checked(node_).leaves; }
int CellTerm::top_weight() const { return checked(node_).top_weight; }

// ---- Polygraph -------------------------------------------------------------

void Polygraph::declare_dim(Dim n) {
  if (n < 0) return;
  if (static_cast<Dim>(by_dim_.size()) <= n) by_dim_.resize(static_cast<std::size_t>(n) + 1);
}

GeneratorPtr Polygraph::add_generator(std::string name, Dim dim, ParallelPair boundary) {
  auto g = std::make_shared<Generator>();
  g->name = std::move(name);
  g->dim = dim;
  g->source = std::move(boundary.source);
  g->target = std::move(boundary.target);
  return add_generator(GeneratorPtr(std::move(g)));
}

GeneratorPtr Polygraph::add_generator(GeneratorPtr g) {
  if (!g || g->dim < 0) throw Error(ErrorKind::DimensionMismatch, "invalid generator");
  auto id = g->id();
  if (index_.count(id))
    throw Error(ErrorKind::DimensionMismatch, "duplicate generator " + to_string(id));
  declare_dim(g->dim);
  by_dim_[static_cast<std::size_t>(g->dim)].push_back(g);
  index_.emplace(std::move(id), g);
  return g;
}

GeneratorPtr Polygraph::find(std::string_view name, Dim dim) const {
  auto it = index_.find(GeneratorId{std::string(name), dim});
  return it == index_.end() ? nullptr : it->second;
}

GeneratorPtr Polygraph::at(const GeneratorId& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(ErrorKind::UnresolvedReference,
                "unknown generator " + to_string(id) + " in polygraph " + name_);
  return it->second;
}

std::vector<Dim> Polygraph::dims_named(std::string_view name) const {
  std::vector<Dim> out;
  for (Dim n = 0; n <= max_dim(); ++n)
    if (find(name, n)) out.push_back(n);
  return out;
}

const std::vector<GeneratorPtr>& Polygraph::generators(Dim n) const {
  static const std::vector<GeneratorPtr> none;
  if (n < 0 || n > max_dim()) return none;
  return by_dim_[static_cast<std::size_t>(n)];
}

std::vector<GeneratorPtr> Polygraph::all_generators() const {
  std::vector<GeneratorPtr> out;
  for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
  return out;
}

// ---- boundaries --------------------------------------------------------------

namespace {

void require_face(const CellTerm& x, Dim i) {
  if (x.empty()) throw Error(ErrorKind::ContractViolation, "empty cell term");
  if (i < 0 || i >= x.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "face " + std::to_string(i) + " of a " + std::to_string(x.dim()) + "-cell");
}

}  // namespace

CellTerm source(const CellTerm& x, Dim i) {
  require_face(x, i);
  const Dim n = x.dim();
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return i == n - 1 ? x.gen()->source : source(x.gen()->source, i);
    case CellTerm::Kind::Unit:
      return i == n - 1 ? x.body() : source(x.body(), i);
    case CellTerm::Kind::Comp: {
      const Dim j = x.axis();
      if (i <= j) return source(x.left(), i);
      return CellTerm::composite(j, source(x.left(), i), source(x.right(), i));
    }
  }
  return {};
}

CellTerm target(const CellTerm& x, Dim i) {
  require_face(x, i);
  const Dim n = x.dim();
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return i == n - 1 ? x.gen()->target : target(x.gen()->target, i);
    case CellTerm::Kind::Unit:
      return i == n - 1 ? x.body() : target(x.body(), i);
    case CellTerm::Kind::Comp: {
      const Dim j = x.axis();
      if (i < j) return target(x.left(), i);
      if (i == j) return target(x.right(), i);
      return CellTerm::composite(j, target(x.left(), i), target(x.right(), i));
    }
  }
  return {};
}

ParallelPair type_of(const CellTerm& x) {
  if (x.dim() == 0) return {};
  return {source(x), target(x)};
}

CellTerm compose(Dim i, const CellTerm& x, const CellTerm& y) {
  if (x.empty() || y.empty()) throw Error(ErrorKind::ContractViolation, "empty cell term");
  if (x.dim() != y.dim())
    throw Error(ErrorKind::DimensionMismatch, "composing cells of dimensions " +
                                                  std::to_string(x.dim()) + " and " +
                                                  std::to_string(y.dim()));
  if (i < 0 || i >= x.dim())
    throw Error(ErrorKind::DimensionMismatch, "composition *" + std::to_string(i) + " of " +
                                                  std::to_string(x.dim()) + "-cells");
  switch (cells_equal(target(x, i), source(y, i))) {
    case EqVerdict::Equal:
      return CellTerm::composite(i, x, y);
    case EqVerdict::Distinct:
      throw Error(ErrorKind::NotComposable, "not " + std::to_string(i) +
                                                "-composable: " + x.key() + " and " + y.key());
    case EqVerdict::Unknown:
      break;
  }
  throw Error(ErrorKind::Inconclusive,
              "composability of " + x.key() + " and " + y.key() + " is undecided");
}

CellTerm unit_to(const CellTerm& x, Dim n) {
  if (n < x.dim())
    throw Error(ErrorKind::DimensionMismatch, "unit_to below the cell's dimension");
  CellTerm out = x;
  for (Dim d = x.dim(); d < n; ++d) out = CellTerm::unit(out);
  return out;
}

bool parallel(const CellTerm& x, const CellTerm& y) {
  if (x.dim() != y.dim()) return false;
  if (x.dim() == 0) return true;
  auto verdict = [](EqVerdict v, const char* side) {
    if (v == EqVerdict::Unknown)
      throw Error(ErrorKind::Inconclusive, std::string("parallelism undecided at ") + side);
    return v == EqVerdict::Equal;
  };
  return verdict(cells_equal(source(x), source(y)), "source") &&
         verdict(cells_equal(target(x), target(y)), "target");
}

// ---- weights -----------------------------------------------------------------

namespace {

template <class F>
void for_each_top_leaf(const CellTerm& x, F&& f) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      f(*x.gen());
      return;
    case CellTerm::Kind::Unit:
      return;
    case CellTerm::Kind::Comp:
      for_each_top_leaf(x.left(), f);
      for_each_top_leaf(x.right(), f);
      return;
  }
}

}  // namespace

int weight(const CellTerm& x, const GeneratorId& alpha) {
  if (alpha.dim != x.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "weight at " + to_string(alpha) + " of a " + std::to_string(x.dim()) + "-cell");
  int count = 0;
  for_each_top_leaf(x, [&](const Generator& g) {
    if (g.name == alpha.name) ++count;
  });
  return count;
}

int total_weight(const CellTerm& x) { return x.top_weight(); }

std::map<GeneratorId, int> weight_vector(const CellTerm& x) {
  std::map<GeneratorId, int> out;
  for_each_top_leaf(x, [&](const Generator& g) { ++out[g.id()]; });
  return out;
}

CellTerm collapse_unit(const CellTerm& x) {
  if (x.dim() == 0 || x.top_weight() != 0)
    throw Error(ErrorKind::ContractViolation, "collapse_unit on a non-degenerate cell");
  switch (x.kind()) {
    case CellTerm::Kind::Unit:
      return x.body();
    case CellTerm::Kind::Comp:
      // 1(a) *(n-1) 1(a) = 1(a);  1(a) *i 1(b) = 1(a *i b) below that.
      if (x.axis() == x.dim() - 1) return collapse_unit(x.left());
      return CellTerm::composite(x.axis(), collapse_unit(x.left()), collapse_unit(x.right()));
    case CellTerm::Kind::Gen:
      break;
  }
  throw Error(ErrorKind::ContractViolation, "collapse_unit on a generator");
}

Dim thickness(const CellTerm& x) {
  CellTerm z = x;
  while (z.dim() > 0 && z.top_weight() == 0) z = collapse_unit(z);
  return z.dim();
}

DeUnit de_unit(const CellTerm& x) {
  CellTerm z = x;
  while (z.dim() > 0 && z.top_weight() == 0) z = collapse_unit(z);
  return {z.dim(), normalize(z).term()};
}

int size(const CellTerm& x) { return de_unit(x).core.top_weight(); }

bool mentions(const CellTerm& x, const GeneratorId& id) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return x.gen()->dim == id.dim && x.gen()->name == id.name;
    case CellTerm::Kind::Unit:
      return mentions(x.body(), id);
    case CellTerm::Kind::Comp:
      return mentions(x.left(), id) || mentions(x.right(), id);
  }
  return false;
}

CellTerm replace_leaf(const CellTerm& x, const GeneratorId& id, const CellTerm& replacement) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return x.gen()->id() == id ? replacement : x;
    case CellTerm::Kind::Unit:
      return x;
    case CellTerm::Kind::Comp:
      return CellTerm::composite(x.axis(), replace_leaf(x.left(), id, replacement),
                                 replace_leaf(x.right(), id, replacement));
  }
  return x;
}

}  // namespace polykit
