#include "polykit/normal_form.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "polykit/error.hpp"

namespace polykit {

const char* to_string(EqVerdict v) {
  switch (v) {
    case EqVerdict::Equal:
      return "equal";
    case EqVerdict::Distinct:
      return "distinct";
    case EqVerdict::Unknown:
      return "unknown";
  }
  return "?";
}

std::size_t default_budget() {
  if (const char* env = std::getenv("POLYKIT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

namespace {

// ---- dimension 1: words ------------------------------------------------------

struct Word {
  GeneratorPtr base;  // source 0-cell, kept so that the empty word has a type
  std::vector<GeneratorPtr> letters;
};

Word word_of(const CellTerm& x) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen: {
      const auto& src = x.gen()->source;
      if (src.empty() || src.kind() != CellTerm::Kind::Gen)
        throw Error(ErrorKind::ContractViolation, "1-generator without a 0-cell source");
      return {src.gen(), {x.gen()}};
    }
    case CellTerm::Kind::Unit:
      return {x.body().gen(), {}};
    case CellTerm::Kind::Comp: {
      Word w = word_of(x.left());
      Word r = word_of(x.right());
      w.letters.insert(w.letters.end(), r.letters.begin(), r.letters.end());
      return w;
    }
  }
  return {};
}

CellTerm word_term(const GeneratorPtr& base, const std::vector<GeneratorPtr>& letters,
                   std::size_t from, std::size_t to) {
  if (from >= to) return CellTerm::unit(cell(base));
  CellTerm out = cell(letters[from]);
  for (std::size_t k = from + 1; k < to; ++k)
    out = CellTerm::composite(0, out, cell(letters[k]));
  return out;
}

CellTerm word_term(const Word& w) { return word_term(w.base, w.letters, 0, w.letters.size()); }

// ---- dimension 2: sequences of whiskered steps ------------------------------

struct Step2 {
  int pos = 0;
  GeneratorPtr gen;
  int in = 0;   // length of the source word of gen
  int out = 0;  // length of the target word of gen
};

bool step_less(const Step2& a, const Step2& b) {
  if (a.pos != b.pos) return a.pos < b.pos;
  return a.gen->name < b.gen->name;
}

bool step_same(const Step2& a, const Step2& b) {
  return a.pos == b.pos && a.gen->name == b.gen->name;
}

using Steps = std::vector<Step2>;

bool steps_less(const Steps& a, const Steps& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), step_less);
}

std::string steps_key(const Steps& s, std::size_t from = 0) {
  std::string k;
  for (std::size_t i = from; i < s.size(); ++i) {
    k += std::to_string(s[i].pos);
    k += ':';
    k += s[i].gen->name;
    k += ';';
  }
  return k;
}

Step2 make_step(int pos, const GeneratorPtr& g) {
  return {pos, g, static_cast<int>(word_of(g->source).letters.size()),
          static_cast<int>(word_of(g->target).letters.size())};
}

struct Diagram2 {
  Word source;
  Steps steps;
  int target_len = 0;
};

Diagram2 decompose2(const CellTerm& x) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen: {
      Step2 s = make_step(0, x.gen());
      return {word_of(x.gen()->source), {s}, s.out};
    }
    case CellTerm::Kind::Unit: {
      Word w = word_of(x.body());
      int len = static_cast<int>(w.letters.size());
      return {std::move(w), {}, len};
    }
    case CellTerm::Kind::Comp: {
      Diagram2 l = decompose2(x.left());
      Diagram2 r = decompose2(x.right());
      if (x.axis() == 1) {
        l.steps.insert(l.steps.end(), r.steps.begin(), r.steps.end());
        l.target_len = r.target_len;
        return l;
      }
      // Horizontal: run the left diagram first, then the right one shifted past
      // the left target.
      for (auto s : r.steps) {
        s.pos += l.target_len;
        l.steps.push_back(s);
      }
      l.source.letters.insert(l.source.letters.end(), r.source.letters.begin(),
                              r.source.letters.end());
      l.target_len += r.target_len;
      return l;
    }
  }
  return {};
}

// All ways of performing b before a, when a is immediately followed by b.
std::vector<std::pair<Step2, Step2>> exchange(const Step2& a, const Step2& b) {
  std::vector<std::pair<Step2, Step2>> out;
  if (b.pos + b.in <= a.pos) {
    Step2 a2 = a;
    a2.pos = a.pos - b.in + b.out;
    out.emplace_back(b, a2);
  }
  if (b.pos >= a.pos + a.out) {
    Step2 b2 = b;
    b2.pos = b.pos - a.out + a.in;
    if (out.empty() || !step_same(out.front().first, b2)) out.emplace_back(b2, a);
  }
  return out;
}

// Sequences equivalent to s in which the step originally at index k comes first.
std::vector<Steps> bring_to_front(const Steps& s, std::size_t k) {
  std::vector<Steps> states{s};
  for (std::size_t idx = k; idx > 0; --idx) {
    std::vector<Steps> next;
    std::unordered_set<std::string> seen;
    for (const auto& st : states) {
      for (const auto& [b2, a2] : exchange(st[idx - 1], st[idx])) {
        Steps t = st;
        t[idx - 1] = b2;
        t[idx] = a2;
        if (seen.insert(steps_key(t)).second) next.push_back(std::move(t));
      }
    }
    states = std::move(next);
    if (states.empty()) break;
  }
  return states;
}

class LeastOrder {
 public:
  Steps least(const Steps& s) {
    if (s.size() <= 1) return s;
    std::string key = steps_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Steps> fronts;
    for (std::size_t k = 0; k < s.size(); ++k)
      for (auto& t : bring_to_front(s, k)) fronts.push_back(std::move(t));

    const Step2* best_front = nullptr;
    for (const auto& t : fronts)
      if (!best_front || step_less(t.front(), *best_front)) best_front = &t.front();
    Step2 front = *best_front;

    std::optional<Steps> best_rest;
    std::unordered_set<std::string> seen;
    for (const auto& t : fronts) {
      if (!step_same(t.front(), front)) continue;
      if (!seen.insert(steps_key(t, 1)).second) continue;
      Steps rest = least(Steps(t.begin() + 1, t.end()));
      if (!best_rest || steps_less(rest, *best_rest)) best_rest = std::move(rest);
    }
    Steps out{front};
    out.insert(out.end(), best_rest->begin(), best_rest->end());
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  std::unordered_map<std::string, Steps> memo_;
};

CellTerm rebuild2(const Word& source, const Steps& steps) {
  if (steps.empty()) return CellTerm::unit(word_term(source));
  std::vector<GeneratorPtr> cur = source.letters;
  CellTerm out;
  for (const auto& s : steps) {
    const auto pos = static_cast<std::size_t>(s.pos);
    const auto in = static_cast<std::size_t>(s.in);
    CellTerm whisker = cell(s.gen);
    if (pos > 0)
      whisker = CellTerm::composite(0, CellTerm::unit(word_term(source.base, cur, 0, pos)), whisker);
    if (pos + in < cur.size())
      whisker = CellTerm::composite(
          0, whisker, CellTerm::unit(word_term(source.base, cur, pos + in, cur.size())));
    out = out.empty() ? whisker : CellTerm::composite(1, out, whisker);

    Word t = word_of(s.gen->target);
    std::vector<GeneratorPtr> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos));
    next.insert(next.end(), t.letters.begin(), t.letters.end());
    next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos + in), cur.end());
    cur = std::move(next);
  }
  return out;
}

CellTerm normalize2(const CellTerm& x) {
  Diagram2 d = decompose2(x);
  LeastOrder order;
  return rebuild2(d.source, order.least(d.steps));
}

// ---- dimension >= 3: sequences of atoms in context ----------------------------

const std::string kHole = "?";

struct Atom {
  GeneratorPtr gen;
  CellTerm context;  // (n-1)-cell with exactly one top-level hole leaf
};

struct DiagramN {
  CellTerm source;
  std::vector<Atom> atoms;
};

GeneratorPtr hole_for(const Generator& alpha) {
  auto g = std::make_shared<Generator>();
  g->name = kHole;
  g->dim = alpha.dim - 1;
  g->source = source(cell(std::make_shared<Generator>(alpha)), alpha.dim - 2);
  g->target = target(cell(std::make_shared<Generator>(alpha)), alpha.dim - 2);
  return g;
}

DiagramN decomposeN(const CellTerm& x) {
  const Dim n = x.dim();
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return {x.gen()->source, {{x.gen(), cell(hole_for(*x.gen()))}}};
    case CellTerm::Kind::Unit:
      return {x.body(), {}};
    case CellTerm::Kind::Comp: {
      const Dim i = x.axis();
      DiagramN l = decomposeN(x.left());
      DiagramN r = decomposeN(x.right());
      if (i == n - 1) {
        l.atoms.insert(l.atoms.end(), r.atoms.begin(), r.atoms.end());
        return l;
      }
      // (l1 *(n-1) ... ) *i (r1 *(n-1) ...) = (l1 *i s(r)) *(n-1) ... *(n-1) (t(l) *i r1) ...
      CellTerm tl = target(x.left(), n - 1);
      DiagramN out{CellTerm::composite(i, l.source, r.source), {}};
      for (auto& a : l.atoms)
        out.atoms.push_back({a.gen, CellTerm::composite(i, a.context, r.source)});
      for (auto& a : r.atoms) out.atoms.push_back({a.gen, CellTerm::composite(i, tl, a.context)});
      return out;
    }
  }
  return {};
}

bool has_hole(const CellTerm& e) {
  switch (e.kind()) {
    case CellTerm::Kind::Gen:
      return e.gen()->name == kHole;
    case CellTerm::Kind::Unit:
      return false;
    case CellTerm::Kind::Comp:
      return has_hole(e.left()) || has_hole(e.right());
  }
  return false;
}

// Turns an (n-1)-context into the n-cell obtained by putting alpha in the hole.
CellTerm lift_atom(const CellTerm& e, const GeneratorPtr& alpha) {
  if (!has_hole(e)) return CellTerm::unit(e);
  if (e.kind() == CellTerm::Kind::Gen) return cell(alpha);
  return CellTerm::composite(e.axis(), lift_atom(e.left(), alpha), lift_atom(e.right(), alpha));
}

CellTerm normalize_term(const CellTerm& x);

CellTerm normalizeN(const CellTerm& x) {
  const Dim n = x.dim();
  DiagramN d = decomposeN(x);
  if (d.atoms.empty()) return CellTerm::unit(normalize_term(d.source));
  CellTerm out;
  for (const auto& a : d.atoms) {
    CellTerm t = lift_atom(normalize_term(a.context), a.gen);
    out = out.empty() ? t : CellTerm::composite(n - 1, out, t);
  }
  return out;
}

CellTerm normalize_term(const CellTerm& x) {
  if (x.empty()) throw Error(ErrorKind::ContractViolation, "normalize of an empty term");
  switch (x.dim()) {
    case 0:
      return x;
    case 1:
      return word_term(word_of(x));
    case 2:
      return normalize2(x);
    default:
      return normalizeN(x);
  }
}

}  // namespace

NormalCell normalize(const CellTerm& x) { return NormalCell(normalize_term(x)); }

namespace detail {

CellTerm normalize_dim2_exhaustive(const CellTerm& x) {
  if (x.dim() != 2) return normalize(x).term();
  Diagram2 d = decompose2(x);
  std::unordered_set<std::string> seen{steps_key(d.steps)};
  std::deque<Steps> queue{d.steps};
  Steps best = d.steps;
  while (!queue.empty()) {
    Steps s = std::move(queue.front());
    queue.pop_front();
    if (steps_less(s, best)) best = s;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      for (const auto& [b2, a2] : exchange(s[k], s[k + 1])) {
        Steps t = s;
        t[k] = b2;
        t[k + 1] = a2;
        if (seen.insert(steps_key(t)).second) queue.push_back(std::move(t));
      }
    }
  }
  return rebuild2(d.source, best);
}

}  // namespace detail

EqVerdict cells_equal(const CellTerm& x, const CellTerm& y) {
  return cells_equal(x, y, default_budget());
}

EqVerdict cells_equal(const CellTerm& x, const CellTerm& y, std::size_t budget) {
  if (x.empty() || y.empty()) throw Error(ErrorKind::ContractViolation, "empty cell term");
  if (x.dim() != y.dim())
    throw Error(ErrorKind::DimensionMismatch, "comparing a " + std::to_string(x.dim()) +
                                                  "-cell with a " + std::to_string(y.dim()) +
                                                  "-cell");
  if (x == y) return EqVerdict::Equal;
  NormalCell nx = normalize(x);
  NormalCell ny = normalize(y);
  if (nx == ny) return EqVerdict::Equal;
  if (x.dim() <= 2) return EqVerdict::Distinct;

  // Axiom invariants: any difference settles the question.
  if (weight_vector(x) != weight_vector(y)) return EqVerdict::Distinct;
  if (thickness(x) != thickness(y)) return EqVerdict::Distinct;
  EqVerdict vs = cells_equal(source(x), source(y), budget);
  if (vs == EqVerdict::Distinct) return vs;
  EqVerdict vt = cells_equal(target(x), target(y), budget);
  if (vt == EqVerdict::Distinct) return vt;
  if (x.top_weight() == 0)
    return cells_equal(collapse_unit(x), collapse_unit(y), budget);
  return detail::normal_form_search(nx.term(), ny.term(), budget);
}

bool same_cell(const CellTerm& x, const CellTerm& y) { return same_cell(x, y, default_budget()); }

bool same_cell(const CellTerm& x, const CellTerm& y, std::size_t budget) {
  switch (cells_equal(x, y, budget)) {
    case EqVerdict::Equal:
      return true;
    case EqVerdict::Distinct:
      return false;
    case EqVerdict::Unknown:
      break;
  }
  throw Error(ErrorKind::Inconclusive,
              "equality of " + x.key() + " and " + y.key() + " undecided within budget " +
                  std::to_string(budget));
}

}  // namespace polykit
