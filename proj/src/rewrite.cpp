#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "polykit/error.hpp"
#include "polykit/normal_form.hpp"

namespace polykit {

const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::AssociateRight:
      return "associate-right";
    case Axiom::AssociateLeft:
      return "associate-left";
    case Axiom::UnitRemove:
      return "unit-remove";
    case Axiom::UnitInsert:
      return "unit-insert";
    case Axiom::ExchangeOut:
      return "exchange-out";
    case Axiom::ExchangeIn:
      return "exchange-in";
    case Axiom::UnitSplit:
      return "unit-split";
    case Axiom::UnitMerge:
      return "unit-merge";
  }
  return "?";
}

namespace {

using Kind = CellTerm::Kind;

// Typing side condition for rebracketed composites.  For dimension >= 3 faces
// this is sound only, so some valid rewrites may be missed.
bool joinable(const CellTerm& a, const CellTerm& b, Dim i) {
  return normalize(target(a, i)) == normalize(source(b, i));
}

bool degenerate_below(const CellTerm& u, Dim i) {
  return u.top_weight() == 0 && thickness(u) <= i;
}

void local_rewrites(const CellTerm& u, int slack, std::vector<Rewrite>& out) {
  const Dim n = u.dim();
  if (u.kind() == Kind::Comp) {
    const Dim i = u.axis();
    const CellTerm& l = u.left();
    const CellTerm& r = u.right();
    if (l.kind() == Kind::Comp && l.axis() == i)
      out.push_back({Axiom::AssociateRight,
                     CellTerm::composite(i, l.left(), CellTerm::composite(i, l.right(), r))});
    if (r.kind() == Kind::Comp && r.axis() == i)
      out.push_back({Axiom::AssociateLeft,
                     CellTerm::composite(i, CellTerm::composite(i, l, r.left()), r.right())});
    if (degenerate_below(l, i)) out.push_back({Axiom::UnitRemove, r});
    if (degenerate_below(r, i)) out.push_back({Axiom::UnitRemove, l});

    // (x *i y) *j (z *i t) with i < j
    if (l.kind() == Kind::Comp && r.kind() == Kind::Comp && l.axis() == r.axis() &&
        l.axis() < i) {
      const Dim k = l.axis();
      if (joinable(l.left(), r.left(), i) && joinable(l.right(), r.right(), i))
        out.push_back({Axiom::ExchangeOut,
                       CellTerm::composite(k, CellTerm::composite(i, l.left(), r.left()),
                                           CellTerm::composite(i, l.right(), r.right()))});
    }
    // (x *j z) *i (y *j t) with i < j
    if (l.kind() == Kind::Comp && r.kind() == Kind::Comp && l.axis() == r.axis() &&
        l.axis() > i) {
      const Dim j = l.axis();
      if (joinable(l.left(), r.left(), i) && joinable(l.right(), r.right(), i))
        out.push_back({Axiom::ExchangeIn,
                       CellTerm::composite(j, CellTerm::composite(i, l.left(), r.left()),
                                           CellTerm::composite(i, l.right(), r.right()))});
    }
    if (l.kind() == Kind::Unit && r.kind() == Kind::Unit && i < n - 1)
      out.push_back({Axiom::UnitMerge, CellTerm::unit(CellTerm::composite(i, l.body(), r.body()))});
  }
  if (u.kind() == Kind::Unit && u.body().kind() == Kind::Comp) {
    const CellTerm& b = u.body();
    out.push_back({Axiom::UnitSplit, CellTerm::composite(b.axis(), CellTerm::unit(b.left()),
                                                         CellTerm::unit(b.right()))});
  }
  // A unit flank carries at least one leaf.
  if (slack < 1) return;
  for (Dim i = 0; i < n; ++i) {
    CellTerm a = unit_to(normalize(source(u, i)).term(), n);
    CellTerm b = unit_to(normalize(target(u, i)).term(), n);
    out.push_back({Axiom::UnitInsert, CellTerm::composite(i, a, u)});
    out.push_back({Axiom::UnitInsert, CellTerm::composite(i, u, b)});
  }
}

// slack: how many leaves may still be added without exceeding the cap.
void all_rewrites(const CellTerm& u, int slack, std::vector<Rewrite>& out) {
  local_rewrites(u, slack, out);
  switch (u.kind()) {
    case Kind::Gen:
      return;
    case Kind::Unit: {
      std::vector<Rewrite> inner;
      all_rewrites(u.body(), slack, inner);
      for (auto& r : inner) out.push_back({r.axiom, CellTerm::unit(std::move(r.result))});
      return;
    }
    case Kind::Comp: {
      std::vector<Rewrite> inner;
      all_rewrites(u.left(), slack, inner);
      for (auto& r : inner)
        out.push_back({r.axiom, CellTerm::composite(u.axis(), std::move(r.result), u.right())});
      inner.clear();
      all_rewrites(u.right(), slack, inner);
      for (auto& r : inner)
        out.push_back({r.axiom, CellTerm::composite(u.axis(), u.left(), std::move(r.result))});
      return;
    }
  }
}

// Bidirectional closure search.  Each side expands its terms smallest first
// (fewest leaves, then fewest rewrites from the start, then discovery order),
// and `budget` bounds the number of expansions.  `meet_key` maps a term to the
// key on which the two sides are compared.
EqVerdict bidirectional(const CellTerm& x, const CellTerm& y, std::size_t budget, int max_leaves,
                        const std::function<std::string(const CellTerm&)>& meet_key) {
  struct Item {
    int leaves;
    int depth;
    std::size_t order;
    CellTerm term;
    bool operator>(const Item& o) const {
      return std::tie(leaves, depth, order) > std::tie(o.leaves, o.depth, o.order);
    }
  };
  struct Side {
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    std::unordered_set<std::string> visited;
    std::unordered_set<std::string> met;
  };
  std::size_t order = 0;
  Side sides[2];
  sides[0].queue.push({x.leaves(), 0, order++, x});
  sides[0].visited.insert(x.key());
  sides[0].met.insert(meet_key(x));
  sides[1].queue.push({y.leaves(), 0, order++, y});
  sides[1].visited.insert(y.key());
  std::string ky = meet_key(y);
  if (sides[0].met.count(ky)) return EqVerdict::Equal;
  sides[1].met.insert(ky);

  std::size_t expanded = 0;
  int turn = 0;
  while (!sides[0].queue.empty() || !sides[1].queue.empty()) {
    int s = sides[turn].queue.empty() ? 1 - turn : turn;
    turn = 1 - turn;
    Side& me = sides[s];
    Side& other = sides[1 - s];
    if (++expanded > budget) return EqVerdict::Unknown;
    Item it = me.queue.top();
    me.queue.pop();
    for (auto& r : single_rewrites(it.term, max_leaves)) {
      if (!me.visited.insert(r.result.key()).second) continue;
      std::string k = meet_key(r.result);
      if (other.met.count(k)) return EqVerdict::Equal;
      me.met.insert(std::move(k));
      int leaves = r.result.leaves();
      me.queue.push({leaves, it.depth + 1, order++, std::move(r.result)});
    }
  }
  return EqVerdict::Unknown;
}

}  // namespace

std::vector<Rewrite> single_rewrites(const CellTerm& x, int max_leaves) {
  std::vector<Rewrite> all;
  const long slack = static_cast<long>(max_leaves) - x.leaves();
  all_rewrites(x, static_cast<int>(std::min<long>(slack, INT_MAX)), all);
  std::vector<Rewrite> out;
  out.reserve(all.size());
  std::unordered_set<std::string> seen;
  for (auto& r : all) {
    if (r.result.leaves() > max_leaves) continue;
    if (!seen.insert(to_string(r.axiom) + r.result.key()).second) continue;
    out.push_back(std::move(r));
  }
  return out;
}

EqVerdict oracle_equal_bounded(const CellTerm& x, const CellTerm& y, std::size_t budget,
                               std::optional<int> max_leaves) {
  if (x.dim() != y.dim())
    throw Error(ErrorKind::DimensionMismatch, "comparing cells of different dimensions");
  int cap = max_leaves.value_or(std::max(x.leaves(), y.leaves()) + 2);
  return bidirectional(x, y, budget, cap, [](const CellTerm& t) { return t.key(); });
}

namespace detail {

EqVerdict normal_form_search(const CellTerm& x, const CellTerm& y, std::size_t budget) {
  int cap = std::max(x.leaves(), y.leaves()) + 4;
  return bidirectional(x, y, budget, cap,
                       [](const CellTerm& t) { return normalize(t).key(); });
}

}  // namespace detail

}  // namespace polykit
