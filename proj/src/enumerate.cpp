#include "polykit/enumerate.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

#include "polykit/error.hpp"

namespace polykit {

namespace {

struct Entry {
  CellTerm term;
  std::vector<std::string> src;  // normal-form key of the i-source, per i
  std::vector<std::string> tgt;
};

Entry make_entry(CellTerm t) {
  Entry e;
  const Dim d = t.dim();
  for (Dim i = 0; i < d; ++i) {
    e.src.push_back(normalize(source(t, i)).key());
    e.tgt.push_back(normalize(target(t, i)).key());
  }
  e.term = std::move(t);
  return e;
}

}  // namespace

std::vector<CellTerm> enumerate_terms(const Polygraph& p, Dim n, int max_leaves,
                                      std::size_t budget) {
  if (n < 0 || n > p.max_dim())
    throw Error(ErrorKind::DimensionMismatch,
                "enumeration at dimension " + std::to_string(n) + " of " + p.name());
  std::size_t produced = 0;
  auto bump = [&] {
    if (++produced > budget)
      throw Error(ErrorKind::BudgetExceeded,
                  "more than " + std::to_string(budget) + " terms to enumerate");
  };

  // below[k] = terms of the previous dimension with exactly k leaves.
  std::vector<std::vector<Entry>> below;
  for (Dim d = 0; d <= n; ++d) {
    std::vector<std::vector<Entry>> here(static_cast<std::size_t>(max_leaves) + 1);
    // (i, k) -> source key -> indices into here[k]
    std::vector<std::vector<std::unordered_map<std::string, std::vector<std::size_t>>>> by_src(
        static_cast<std::size_t>(d),
        std::vector<std::unordered_map<std::string, std::vector<std::size_t>>>(
            static_cast<std::size_t>(max_leaves) + 1));

    for (int k = 1; k <= max_leaves; ++k) {
      auto& out = here[static_cast<std::size_t>(k)];
      if (k == 1)
        for (const auto& g : p.generators(d)) {
          bump();
          out.push_back(make_entry(cell(g)));
        }
      if (d > 0)
        for (const auto& b : below[static_cast<std::size_t>(k)]) {
          bump();
          out.push_back(make_entry(CellTerm::unit(b.term)));
        }
      for (Dim i = 0; i < d; ++i)
        for (int kl = 1; kl < k; ++kl) {
          const int kr = k - kl;
          const auto& rights = by_src[static_cast<std::size_t>(i)][static_cast<std::size_t>(kr)];
          for (const auto& l : here[static_cast<std::size_t>(kl)]) {
            auto it = rights.find(l.tgt[static_cast<std::size_t>(i)]);
            if (it == rights.end()) continue;
            for (std::size_t ri : it->second) {
              bump();
              out.push_back(make_entry(CellTerm::composite(
                  i, l.term, here[static_cast<std::size_t>(kr)][ri].term)));
            }
          }
        }
      for (Dim i = 0; i < d; ++i)
        for (std::size_t idx = 0; idx < out.size(); ++idx)
          by_src[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                [out[idx].src[static_cast<std::size_t>(i)]]
                    .push_back(idx);
    }
    below = std::move(here);
  }

  std::vector<CellTerm> result;
  for (auto& level : below)
    for (auto& e : level) result.push_back(std::move(e.term));
  return result;
}

std::vector<NormalCell> enumerate_cells(const Polygraph& p, Dim n, int max_leaves,
                                        std::size_t budget) {
  std::vector<NormalCell> out;
  std::set<std::string> seen;
  for (const auto& t : enumerate_terms(p, n, max_leaves, budget)) {
    NormalCell c = normalize(t);
    if (seen.insert(c.key()).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polykit
