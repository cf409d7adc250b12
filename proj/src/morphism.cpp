#include "polykit/morphism.hpp"

#include <sstream>

namespace polykit {

Morphism::Morphism(std::string name, PolygraphPtr source, PolygraphPtr target)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw Error(ErrorKind::ContractViolation, "morphism without endpoints");
}

void Morphism::assign(const GeneratorId& g, CellTerm image) {
  if (!source_->contains(g))
    throw Error(ErrorKind::UnresolvedReference,
                "'" + g.name + "' is not a " + std::to_string(g.dim) + "-generator of " +
                    source_->name());
  if (image.empty() || image.dim() != g.dim)
    throw Error(ErrorKind::DimensionMismatch,
                "image of " + to_string(g) + " must be a " + std::to_string(g.dim) + "-cell");
  images_[g] = std::move(image);
}

const CellTerm& Morphism::image(const GeneratorId& g) const {
  auto it = images_.find(g);
  if (it == images_.end())
    throw Error(ErrorKind::UnresolvedReference,
                "morphism " + name_ + " has no image for " + to_string(g));
  return it->second;
}

CellTerm map_leaves(const CellTerm& x, const std::function<CellTerm(const GeneratorPtr&)>& f) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen:
      return f(x.gen());
    case CellTerm::Kind::Unit:
      return CellTerm::unit(map_leaves(x.body(), f));
    case CellTerm::Kind::Comp:
      return CellTerm::composite(x.axis(), map_leaves(x.left(), f), map_leaves(x.right(), f));
  }
  return {};
}

CellTerm apply(const Morphism& f, const CellTerm& x) {
  return map_leaves(x, [&](const GeneratorPtr& g) { return f.image(g->id()); });
}

namespace {

// Every leaf of x must be a generator of p with the same boundary.
std::optional<std::string> foreign_leaf(const CellTerm& x, const Polygraph& p) {
  switch (x.kind()) {
    case CellTerm::Kind::Gen: {
      auto g = p.find(x.gen()->name, x.gen()->dim);
      if (!g) return to_string(x.gen()->id());
      if (g != x.gen() && (g->source.empty() != x.gen()->source.empty() ||
                           (!g->source.empty() && (normalize(g->source) != normalize(x.gen()->source) ||
                                                   normalize(g->target) != normalize(x.gen()->target)))))
        return to_string(x.gen()->id());
      return std::nullopt;
    }
    case CellTerm::Kind::Unit:
      return foreign_leaf(x.body(), p);
    case CellTerm::Kind::Comp:
      if (auto l = foreign_leaf(x.left(), p)) return l;
      return foreign_leaf(x.right(), p);
  }
  return std::nullopt;
}

}  // namespace

MorphismReport validate_morphism(const Morphism& f) { return validate_morphism(f, default_budget()); }

MorphismReport validate_morphism(const Morphism& f, std::size_t budget) {
  MorphismReport report;
  const Polygraph& src = *f.source();
  const Polygraph& tgt = *f.target();
  for (Dim n = 0; n <= src.max_dim(); ++n) {
    for (const auto& g : src.generators(n)) {
      const GeneratorId id = g->id();
      if (!f.assigned(id)) {
        report.issues.push_back({id, ErrorKind::InvalidMorphism, "no image for " + to_string(id)});
        continue;
      }
      const CellTerm& img = f.image(id);
      if (auto bad = foreign_leaf(img, tgt)) {
        report.issues.push_back({id, ErrorKind::UnresolvedReference,
                                 "image of " + to_string(id) + " uses " + *bad + ", unknown in " +
                                     tgt.name()});
        continue;
      }
      if (n == 0) continue;
      CellTerm want_s, want_t;
      try {
        want_s = apply(f, g->source);
        want_t = apply(f, g->target);
      } catch (const Error&) {
        continue;  // a lower generator is already reported
      }
      for (auto [have, want, side] : {std::tuple{source(img), want_s, "source"},
                                      std::tuple{target(img), want_t, "target"}}) {
        EqVerdict v = cells_equal(have, want, budget);
        if (v == EqVerdict::Equal) continue;
        std::ostringstream msg;
        msg << side << " of the image of " << to_string(id)
            << (v == EqVerdict::Distinct ? " differs from" : " could not be compared with")
            << " the image of its " << side;
        report.issues.push_back(
            {id, v == EqVerdict::Distinct ? ErrorKind::InvalidMorphism : ErrorKind::Inconclusive,
             msg.str()});
        break;
      }
    }
  }
  return report;
}

void require_valid(const Morphism& f) {
  auto report = validate_morphism(f);
  if (report.ok()) return;
  const auto& first = report.issues.front();
  throw Error(first.kind == ErrorKind::Inconclusive ? ErrorKind::Inconclusive
                                                    : ErrorKind::InvalidMorphism,
              "morphism " + f.name() + ": " + first.message);
}

Morphism identity_morphism(const PolygraphPtr& p) {
  Morphism id("id_" + p->name(), p, p);
  for (const auto& g : p->all_generators()) id.assign(g->id(), cell(g));
  return id;
}

Morphism compose_morphisms(const Morphism& g, const Morphism& f, std::string name) {
  if (name.empty()) name = g.name() + "." + f.name();
  Morphism out(std::move(name), f.source(), g.target());
  for (const auto& [id, img] : f.images()) out.assign(id, normalize(apply(g, img)).term());
  return out;
}

IdempotencyReport is_idempotent(const Morphism& h) { return is_idempotent(h, default_budget()); }

IdempotencyReport is_idempotent(const Morphism& h, std::size_t budget) {
  IdempotencyReport report;
  if (h.source() != h.target() && h.source()->name() != h.target()->name())
    throw Error(ErrorKind::ContractViolation, "idempotency of a non-endomorphism");
  for (Dim n = 0; n <= h.source()->max_dim(); ++n) {
    for (const auto& g : h.source()->generators(n)) {
      const CellTerm& once = h.image(g->id());
      CellTerm twice = apply(h, once);
      EqVerdict v = cells_equal(twice, once, budget);
      if (v == EqVerdict::Equal) continue;
      if (v == EqVerdict::Unknown) {
        if (report.verdict == EqVerdict::Equal) {
          report.verdict = EqVerdict::Unknown;
          report.witness = g->id();
          report.detail = "h(h(" + g->name + ")) = h(" + g->name + ") undecided within budget";
        }
        continue;
      }
      report.verdict = EqVerdict::Distinct;
      report.witness = g->id();
      std::ostringstream msg;
      auto w2 = weight_vector(twice);
      auto w1 = weight_vector(once);
      if (w1 != w2) {
        msg << "weight mismatch at " << g->name << ":";
        std::map<GeneratorId, std::pair<int, int>> both;
        for (auto& [k, c] : w2) both[k].first = c;
        for (auto& [k, c] : w1) both[k].second = c;
        for (auto& [k, c] : both)
          if (c.first != c.second)
            msg << " weight(h(h(" << g->name << ")), " << k.name << ") = " << c.first << " but weight(h("
                << g->name << "), " << k.name << ") = " << c.second << ";";
      } else {
        msg << "h(h(" << g->name << ")) differs from h(" << g->name << ")";
      }
      report.detail = msg.str();
      if (!report.detail.empty() && report.detail.back() == ';') report.detail.pop_back();
      return report;
    }
  }
  return report;
}

}  // namespace polykit
