#pragma once

/// Gate emitters for the borrowed-control constructions: a single-ancilla
/// product chain, and the staircase-of-rows construction that turns already
/// consumed controls into temporary ancillae ("conditionally clean": a control
/// that an earlier Toffoli plus X relabeling pins to a known value until the
/// mirrored uncompute releases it).
///
/// Both emitters produce only {ccx, x} compute halves that are their own
/// inverse, so the full circuit is compute + hit + reversed(compute).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mctsynth/circuit.hpp"
#include "mctsynth/plan.hpp"

namespace mctsynth {

namespace detail {

/// Emits the compute half of an AND-chain over the inputs `s` onto `comp` and
/// returns the closing hit gate (not appended). The chain pairs inputs into
/// "feet" hosted on already-consumed inputs, then folds the feet along a
/// spine; `anc` hosts the first pair's product and carries it into the hit.
/// Every consumed input is X-flipped so it reads as a cleared borrow.
/// Requires s.size() >= 2; `anc` may be empty only when s.size() == 2.
inline Gate sigma_chain(const std::vector<uint32_t>& s, std::optional<uint32_t> anc,
                        uint32_t target, std::vector<Gate>& comp) {
  const size_t sig = s.size();
  if (sig < 2) throw std::logic_error("sigma_chain: need at least 2 inputs");
  if (sig == 2) return gccx(s[0], s[1], target);
  if (!anc) throw std::logic_error("sigma_chain: 3+ inputs need a host ancilla");
  comp.push_back(gccx(s[0], s[1], *anc));
  comp.push_back(gx(s[0]));
  comp.push_back(gx(s[1]));
  std::vector<uint32_t> r(s.begin() + 2, s.end());
  const size_t m = r.size();
  uint32_t root = 0;
  if (m == 1) {
    root = r[0];
  } else {
    const size_t half = m / 2;
    std::vector<uint32_t> feet;
    for (size_t i = 1; i <= half; ++i) {
      uint32_t a = r[2 * i - 2], b = r[2 * i - 1];
      uint32_t t = i == 1 ? s[0] : r[2 * i - 4];
      comp.push_back(gccx(a, b, t));
      comp.push_back(gx(a));
      comp.push_back(gx(b));
      feet.push_back(t);
    }
    uint32_t acc = 0;
    if (m % 2 == 1) {
      uint32_t tgt = half >= 2 ? r[2 * half - 3] : s[1];
      comp.push_back(gccx(feet[half - 1], r[m - 1], tgt));
      comp.push_back(gx(r[m - 1]));
      acc = tgt;
    } else {
      acc = feet[half - 1];
    }
    for (size_t k = half - 1; k >= 1; --k) {
      uint32_t t = k == 1 ? s[1] : r[2 * k - 3];
      comp.push_back(gccx(feet[k - 1], acc, t));
      acc = t;
    }
    root = acc;
    if (m % 2 == 1 && half == 1) root = s[1];
  }
  return gccx(root, *anc, target);
}

/// Orders three (qubit, ready-layer) pairs as [earliest, latest, middle] so
/// the chain pairs the two extremes first and folds through the middle,
/// keeping the hit as early as the latest input allows.
inline std::vector<uint32_t> order3(std::vector<std::pair<uint32_t, uint32_t>> items) {
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  return {items[0].first, items[2].first, items[1].first};
}

/// A consumed control available for reuse as a row target. `death` is the
/// staircase layer whose pairing consumed it; it may only host a product for
/// a strictly later layer. `hi` is the rightmost leaf of the span it carried
/// (empty for the pre-step pairs, which have no span).
struct Donor {
  uint32_t h = 0;
  uint32_t death = 0;
  uint32_t row = 0;
  std::optional<uint32_t> hi;
};

/// One live value inside a row's halving: the hosting qubit and the leaf span
/// [lo, hi] of raw controls folded into it.
struct Element {
  uint32_t q = 0, lo = 0, hi = 0;
};

struct RowsEmission {
  std::vector<Gate> pre;           // step I: clean-ancilla pair loads
  std::vector<Gate> rowseq;        // step II: staircase row halvings
  std::vector<uint32_t> slots;     // row end products (step I slots first)
  std::vector<uint32_t> ready;     // layer at which each slot settles
};

/// Emits steps I-II of the staircase construction over the rows of `plan`.
/// Donor selection is just-in-time: each pairing takes the registered dead
/// control with the latest death layer (ties prefer the lower row), among
/// those whose reuse cannot collide with the borrower's own span.
class RowEmitter {
 public:
  RowEmitter(const Plan& plan, Flavor pre_flavor)
      : n_(static_cast<uint32_t>(plan.n)), m1_(static_cast<uint32_t>(plan.m1)) {
    emission_.slots.reserve(m1_ + plan.k);
    for (uint32_t i = 0; i < m1_; ++i) {
      uint32_t a = 2 * i, b = 2 * i + 1, host = n_ + 1 + i;
      emission_.pre.push_back(gccx(a, b, host, pre_flavor));
      emission_.pre.push_back(gx(a));
      emission_.pre.push_back(gx(b));
      dead_.push_back({a, 1, 0, std::nullopt});
      dead_.push_back({b, 1, 0, std::nullopt});
      emission_.slots.push_back(host);
      emission_.ready.push_back(1);
    }
    uint32_t next_leaf = 2 * m1_;
    for (uint32_t r = 1; r < plan.rows.size(); ++r) {
      uint32_t intake = row_intake(plan, r);
      std::vector<uint32_t> leaves(intake);
      for (uint32_t i = 0; i < intake; ++i) leaves[i] = next_leaf + i;
      next_leaf += intake;
      auto [end, settle] = emit_row(r, plan.rows[r].start_layer, leaves);
      emission_.slots.push_back(end);
      emission_.ready.push_back(settle);
    }
  }

  RowsEmission take_emission() { return std::move(emission_); }

 private:
  uint32_t take(uint32_t row, uint32_t layer, std::optional<uint32_t> span_lo) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(dead_.size()); ++i) {
      const Donor& d = dead_[i];
      if (d.death >= layer) continue;
      bool eligible = d.row < row ||
                      (span_lo && d.row == row && d.hi && *d.hi < *span_lo);
      if (!eligible) continue;
      if (best < 0 ||
          std::pair<uint32_t, int64_t>(d.death, -static_cast<int64_t>(d.row)) >
              std::pair<uint32_t, int64_t>(dead_[best].death,
                                           -static_cast<int64_t>(dead_[best].row))) {
        best = i;
      }
    }
    if (best < 0) throw std::logic_error("row emitter: donor registry exhausted");
    uint32_t h = dead_[best].h;
    dead_.erase(dead_.begin() + best);
    return h;
  }

  /// Halves `leaves` pairwise until one product remains; returns the hosting
  /// qubit and the layer at which it settles. Pair targets are taken from the
  /// donor registry; consumed values join the registry for later rows.
  std::pair<uint32_t, uint32_t> emit_row(uint32_t row, uint32_t start,
                                         const std::vector<uint32_t>& leaves) {
    std::vector<Element> elements;
    elements.reserve(leaves.size());
    for (uint32_t q : leaves) elements.push_back({q, q, q});
    uint32_t layer = start + 1;
    uint32_t last_layer = start;
    bool first = true;
    while (elements.size() > 1) {
      const size_t pairs = elements.size() / 2;
      std::vector<Element> next;
      next.reserve(pairs + 1);
      for (size_t i = 0; i < pairs; ++i) {
        const Element ea = elements[2 * i], eb = elements[2 * i + 1];
        const bool leftmost = i == 0;
        std::optional<uint32_t> span_lo;
        if (!first && !leftmost) span_lo = ea.lo;
        uint32_t t = take(row, layer, span_lo);
        emission_.rowseq.push_back(gccx(ea.q, eb.q, t));
        emission_.rowseq.push_back(gx(ea.q));
        emission_.rowseq.push_back(gx(eb.q));
        dead_.push_back({ea.q, layer, row, ea.hi});
        dead_.push_back({eb.q, layer, row, eb.hi});
        next.push_back({t, ea.lo, eb.hi});
      }
      if (elements.size() % 2 == 1) next.push_back(elements.back());
      elements = std::move(next);
      last_layer = layer;
      ++layer;
      first = false;
    }
    return {elements.front().q, last_layer};
  }

  uint32_t n_, m1_;
  std::vector<Donor> dead_;
  RowsEmission emission_;
};

}  // namespace detail

/// Gate list for the single-borrow chain MCT: controls 0..n-1, target n,
/// host ancilla n+1 (unused when n == 2). Toffoli count and depth 2n-3.
inline std::vector<Gate> chain_mct(uint64_t n) {
  if (n < 2) throw std::invalid_argument("chain_mct: n >= 2");
  std::vector<uint32_t> s(static_cast<size_t>(n));
  for (uint32_t i = 0; i < n; ++i) s[i] = i;
  std::vector<Gate> comp;
  Gate hit = detail::sigma_chain(s, static_cast<uint32_t>(n + 1),
                                 static_cast<uint32_t>(n), comp);
  std::vector<Gate> gates = comp;
  gates.push_back(hit);
  gates.insert(gates.end(), comp.rbegin(), comp.rend());
  return gates;
}

struct RowsCircuit {
  std::vector<Gate> gates;
  uint32_t width = 0;   // qubits actually touched: n+1 plus live hosts
  uint32_t k = 0;       // staircase row count
  uint32_t sigma = 0;   // inputs of the middle hit, k + m1
};

/// Full staircase construction: step I loads m1 clean-ancilla pairs, step II
/// runs the halving rows, step III folds the k+m1 products through up to
/// `helpers` clean hosts into the hit on the target, then steps IV-V mirror
/// II and I. Step I/V are emitted as an and-compute/and-uncompute pair when
/// m1 >= 2 (the uncompute rides free); the two-ancilla base case keeps both
/// plain so every emitted Toffoli is counted.
inline RowsCircuit rows_mct(uint64_t n, uint64_t m1, uint32_t helpers) {
  if (helpers < 1 || helpers > 2) throw std::invalid_argument("rows_mct: helpers in {1, 2}");
  Plan plan = plan_conditionally_clean(n, m1);
  const uint32_t target = static_cast<uint32_t>(n);
  const uint32_t b0 = static_cast<uint32_t>(n + 1 + m1);
  const uint32_t b1 = b0 + 1;
  const Flavor pre_flavor = m1 >= 2 ? Flavor::AndCompute : Flavor::Plain;
  detail::RowEmitter emitter(plan, pre_flavor);
  detail::RowsEmission em = emitter.take_emission();

  // Order slots by settle layer (ties by position) before the middle fold.
  std::vector<size_t> order(em.slots.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::pair(em.ready[a], a) < std::pair(em.ready[b], b);
  });
  std::vector<uint32_t> slots, ready;
  for (size_t i : order) {
    slots.push_back(em.slots[i]);
    ready.push_back(em.ready[i]);
  }

  const uint32_t sigma = static_cast<uint32_t>(slots.size());
  std::vector<Gate> s3;
  Gate hit;
  if (sigma == 2) {
    hit = detail::sigma_chain(slots, std::nullopt, target, s3);
  } else if (sigma == 3) {
    hit = detail::sigma_chain(
        detail::order3({{slots[0], ready[0]}, {slots[1], ready[1]}, {slots[2], ready[2]}}),
        b0, target, s3);
  } else if (helpers == 1) {
    hit = detail::sigma_chain(slots, b0, target, s3);
  } else {
    // Two hosts: pair the two earliest products onto b0, halve the rest onto
    // consumed slots, then fold the inner products (earliest first) via b1.
    s3.push_back(gccx(slots[0], slots[1], b0));
    s3.push_back(gx(slots[0]));
    s3.push_back(gx(slots[1]));
    std::vector<std::pair<uint32_t, uint32_t>> rest;
    for (size_t i = 2; i < slots.size(); ++i) rest.push_back({slots[i], ready[i]});
    std::optional<std::pair<uint32_t, uint32_t>> leftover;
    if (rest.size() % 2 == 1) {
      leftover = rest.front();
      rest.erase(rest.begin());
    }
    std::vector<uint32_t> pool = {slots[0], slots[1]};
    std::vector<std::pair<uint32_t, uint32_t>> inner;
    inner.push_back({b0, std::max(ready[0], ready[1]) + 1});
    for (size_t i = 0; 2 * i + 1 < rest.size(); ++i) {
      auto [a, ra] = rest[2 * i];
      auto [b, rb] = rest[2 * i + 1];
      uint32_t t = pool[i];
      s3.push_back(gccx(a, b, t));
      s3.push_back(gx(a));
      s3.push_back(gx(b));
      pool.push_back(a);
      pool.push_back(b);
      inner.push_back({t, std::max(ra, rb) + 1});
    }
    if (leftover) inner.push_back(*leftover);
    if (inner.size() == 2) {
      hit = gccx(inner[0].first, inner[1].first, target);
    } else {
      std::stable_sort(inner.begin(), inner.end(),
                       [](const auto& a, const auto& b) { return a.second < b.second; });
      std::vector<uint32_t> hosts;
      for (auto& [h, r] : inner) hosts.push_back(h);
      hit = detail::sigma_chain(hosts, b1, target, s3);
    }
  }

  std::vector<Gate> mirror_pre(em.pre.rbegin(), em.pre.rend());
  if (m1 >= 2) {
    for (Gate& g : mirror_pre)
      if (g.kind == Kind::Toffoli) g.flavor = Flavor::AndUncompute;
  }

  RowsCircuit out;
  out.k = plan.k;
  out.sigma = sigma;
  auto& gates = out.gates;
  gates = em.pre;
  gates.insert(gates.end(), em.rowseq.begin(), em.rowseq.end());
  gates.insert(gates.end(), s3.begin(), s3.end());
  gates.push_back(hit);
  gates.insert(gates.end(), s3.rbegin(), s3.rend());
  gates.insert(gates.end(), em.rowseq.rbegin(), em.rowseq.rend());
  gates.insert(gates.end(), mirror_pre.begin(), mirror_pre.end());

  uint32_t hi = target;
  for (const Gate& g : gates)
    for (uint32_t q : g.qubits()) hi = std::max(hi, q);
  out.width = hi + 1;
  return out;
}

}  // namespace mctsynth
