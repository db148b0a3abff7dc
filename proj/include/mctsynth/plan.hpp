#pragma once

/// Schematic planner for the conditionally-clean-ancilla constructions: a
/// greedy borrow allocator that splits the controls into halving rows, plus
/// the per-step depth ledger and a text rendering of the row schematic.

#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mctsynth/formulas.hpp"

namespace mctsynth {

/// One halving row. Row 0 is the ancilla-compute step (width 2*m1 ending at
/// m1 in one layer); each later row consumes a fresh block of controls and
/// halves it to a single borrow qubit. `widths[i]` is the count of live
/// values at the i-th halving layer; an odd width leaves one value carried
/// into the next layer, marked in `injections` as the layer that absorbs it.
/// Rows after row 0 satisfy widths[i+1] = ceil(widths[i]/2) and end at 1.
struct Row {
  uint32_t start_layer = 0;          // staircase index: row r starts at layer r
  std::vector<uint32_t> widths;      // live values per layer, first entry = intake
  std::set<uint32_t> injections;     // layers whose width includes a carried value
};

/// Per-step depth ledger for the five-step construction:
/// d1 ancilla compute, d2 row halving, d3_effective the middle multi-control
/// hit, d4 the mirrored halving, d5 the ancilla uncompute (0 when the
/// uncompute is measurement-free and falls out of the depth count).
struct StepDepths {
  uint32_t d1 = 0, d2 = 0, d3_effective = 0, d4 = 0, d5 = 0;
};

struct Plan {
  uint64_t n = 0;
  uint64_t m1 = 0;
  std::vector<Row> rows;  // rows[0] = ancilla compute, rows[1..k] = halving rows
  uint32_t k = 0;         // number of halving rows (excludes row 0)
  uint32_t sigma = 0;     // middle hit arity = k + m1
  StepDepths step_depths;
};

namespace detail {

inline Row make_halving_row(uint32_t start_layer, uint32_t intake) {
  Row row;
  row.start_layer = start_layer;
  uint32_t v = intake;
  row.widths.push_back(v);
  if (v % 2 == 1 && v > 1) row.injections.insert(0);
  while (v > 1) {
    uint32_t carried = v % 2;
    v = (v + 1) / 2;
    row.widths.push_back(v);
    if (carried && v > 1) row.injections.insert(static_cast<uint32_t>(row.widths.size()) - 1);
  }
  return row;
}

}  // namespace detail

/// Number of halving layers a row needs (0 for a single-control row).
inline uint32_t row_halving_layers(const Row& row) {
  return static_cast<uint32_t>(row.widths.size()) - 1;
}

/// Greedy allocator: row r may absorb one borrowed value per halving layer,
/// so its capacity doubles per row index; intake_r = min(m1*2^r + 1,
/// remaining). Controls are conserved: 2*m1 + sum(intakes) = n.
inline Plan plan_conditionally_clean(uint64_t n, uint64_t m1) {
  if (n < 4) throw std::invalid_argument("plan_conditionally_clean: n >= 4");
  if (m1 < 1) throw std::invalid_argument("plan_conditionally_clean: m1 >= 1");
  if (n < 2 * m1 + 2)
    throw std::invalid_argument("plan_conditionally_clean: n >= 2*m1 + 2 required");

  Plan plan;
  plan.n = n;
  plan.m1 = m1;

  Row step1;
  step1.start_layer = 0;
  step1.widths = {static_cast<uint32_t>(2 * m1), static_cast<uint32_t>(m1)};
  plan.rows.push_back(std::move(step1));

  uint64_t remaining = n - 2 * m1;
  uint32_t r = 1;
  while (remaining > 0) {
    uint64_t cap = m1 * (uint64_t{1} << r) + 1;
    uint32_t intake = static_cast<uint32_t>(std::min(cap, remaining));
    plan.rows.push_back(detail::make_halving_row(r, intake));
    remaining -= intake;
    ++r;
  }
  plan.k = static_cast<uint32_t>(plan.rows.size()) - 1;
  plan.sigma = plan.k + static_cast<uint32_t>(m1);

  StepDepths d;
  d.d1 = 1;
  uint32_t last_merge_layer = 1;
  for (uint32_t i = 1; i < plan.rows.size(); ++i) {
    const Row& row = plan.rows[i];
    last_merge_layer = std::max(last_merge_layer, row.start_layer + row_halving_layers(row));
  }
  d.d2 = last_merge_layer - 1;
  d.d3_effective = plan.sigma == 2 ? 1 : 3;
  d.d4 = d.d2;
  d.d5 = m1 == 1 ? 1 : 0;
  plan.step_depths = d;
  return plan;
}

/// Total schematic depth: d1 + d2 + d3_effective + d4 + d5.
inline uint32_t plan_depth(const Plan& plan) {
  const StepDepths& d = plan.step_depths;
  return d.d1 + d.d2 + d.d3_effective + d.d4 + d.d5;
}

/// Intake of halving row r (1-based), i.e. how many fresh controls it eats.
inline uint32_t row_intake(const Plan& plan, uint32_t r) {
  return plan.rows.at(r).widths.front();
}

/// Debug rendering of the row schematic, one row per line. Odd widths print
/// as (w,+1): w values produced by pairing plus one carried in.
inline std::string render_plan(const Plan& plan) {
  std::ostringstream os;
  os << "plan n=" << plan.n << " m1=" << plan.m1 << " k=" << plan.k
     << " sigma=" << plan.sigma << "\n";
  const StepDepths& d = plan.step_depths;
  os << "depths d1=" << d.d1 << " d2=" << d.d2 << " d3_eff=" << d.d3_effective
     << " d4=" << d.d4 << " d5=" << d.d5 << " total=" << plan_depth(plan) << "\n";
  for (size_t i = 0; i < plan.rows.size(); ++i) {
    const Row& row = plan.rows[i];
    os << (i == 0 ? "step1" : "row" + std::to_string(i)) << " @" << row.start_layer << ": ";
    for (size_t l = 0; l < row.widths.size(); ++l) {
      if (l) os << " -> ";
      uint32_t w = row.widths[l];
      if (row.injections.count(static_cast<uint32_t>(l)))
        os << "(" << w - 1 << ",+1)";
      else
        os << w;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace mctsynth
