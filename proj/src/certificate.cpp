#include "polykit/certificate.hpp"

#include <json.hpp>

#include "polykit/syntax.hpp"

namespace polykit {

namespace {

using Json = nlohmann::ordered_json;

Json names(const std::vector<GeneratorId>& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id.name);
  return out;
}

Json assignments(const std::map<GeneratorId, CellTerm>& m) {
  Json out = Json::object();
  for (const auto& [id, x] : m) out[id.name] = print_cell(x);
  return out;
}

Json images(const Morphism& f, Dim n) {
  Json out = Json::object();
  if (n > f.source()->max_dim()) return out;
  for (const auto& g : f.source()->generators(n))
    if (f.assigned(g->id())) out[g->name] = print_cell(f.image(g->id()));
  return out;
}

Json checks(const std::vector<Check>& cs) {
  Json out = Json::array();
  for (const auto& c : cs)
    out.push_back({{"equation", c.equation}, {"subject", c.subject}, {"method", c.method}, {"ok", c.ok}});
  return out;
}

Json split_json(const SplitResult& res) {
  Json doc;
  doc["polygraph"] = res.S->name();
  doc["idempotent"] = res.h.name();
  doc["dimension"] = res.dim;
  doc["verified"] = res.verified();
  Json levels = Json::array();
  for (const auto& l : res.levels) {
    Json lv;
    lv["dim"] = l.dim;
    lv["partition"] = {{"S0", names(l.partition.s0)},
                       {"S1", names(l.partition.s1)},
                       {"S2", names(l.partition.s2)}};
    Json ts = Json::array();
    for (const auto& t : l.t_generators) {
      Json tj;
      tj["name"] = t.gen->name;
      if (t.gen->dim > 0) {
        tj["source"] = print_cell(t.gen->source);
        tj["target"] = print_cell(t.gen->target);
      }
      tj["upsilon"] = print_cell(t.upsilon);
      tj["representatives"] = names(t.representatives);
      ts.push_back(std::move(tj));
    }
    lv["T"] = std::move(ts);
    lv["U"] = names(l.u_alphabet);
    lv["k"] = assignments(l.k);
    lv["rho"] = assignments(l.rho);
    lv["u"] = images(res.u, l.dim);
    lv["r"] = images(res.r, l.dim);
    lv["checks"] = checks(l.checks);
    levels.push_back(std::move(lv));
  }
  doc["levels"] = std::move(levels);
  return doc;
}

}  // namespace

std::string split_certificate(const SplitResult& res) { return split_json(res).dump(2) + "\n"; }

std::string iso_certificate(const RetractIso& iso) {
  Json doc;
  doc["verified"] = iso.verified();
  doc["split"] = split_json(iso.split);
  Json f = Json::object(), g = Json::object();
  for (const auto& [id, x] : iso.f.images()) f[id.name + "@" + std::to_string(id.dim)] = print_cell(x);
  for (const auto& [id, x] : iso.g.images()) g[id.name + "@" + std::to_string(id.dim)] = print_cell(x);
  doc["f"] = std::move(f);
  doc["g"] = std::move(g);
  doc["checks"] = checks(iso.checks);
  return doc.dump(2) + "\n";
}

}  // namespace polykit
