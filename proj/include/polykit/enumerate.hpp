#pragma once

// Brute-force enumeration of small cells, used by the test harnesses.
//
// The bound is on expression size: the number of generator occurrences at all
// levels in a generating term (1(•) counts 1, a *0 b counts 2).

#include <cstddef>
#include <vector>

#include "polykit/normal_form.hpp"
#include "polykit/term.hpp"

namespace polykit {

// Every well-typed term of dimension n with at most max_leaves leaves, built
// from generators, units and composites.  Distinct terms may denote the same
// cell.  Throws Error(BudgetExceeded) when more than `budget` terms would be
// produced in total.
std::vector<CellTerm> enumerate_terms(const Polygraph& p, Dim n, int max_leaves,
                                      std::size_t budget = 2'000'000);

// The distinct n-cells obtained from those terms, as sorted normal forms.
std::vector<NormalCell> enumerate_cells(const Polygraph& p, Dim n, int max_leaves,
                                        std::size_t budget = 2'000'000);

}  // namespace polykit
