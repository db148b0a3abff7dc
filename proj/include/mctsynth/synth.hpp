#pragma once

/// Strategy front-end: one entry point that builds a complete
/// Clifford+Toffoli circuit for an n-controlled Toffoli under each supported
/// construction, with qubit layout controls 0..n-1, target n, ancillae above.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mctsynth/circuit.hpp"
#include "mctsynth/emit.hpp"
#include "mctsynth/revsim.hpp"

namespace mctsynth {

enum class Strategy { BinaryTree, Khattar1Anc, Khattar2Anc, Tradeoff, GidneyLadder };

inline constexpr std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::BinaryTree: return "binary-tree";
    case Strategy::Khattar1Anc: return "khattar-1anc";
    case Strategy::Khattar2Anc: return "khattar-2anc";
    case Strategy::Tradeoff: return "tradeoff";
    case Strategy::GidneyLadder: return "gidney-ladder";
  }
  return "?";
}

inline std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (Strategy s : {Strategy::BinaryTree, Strategy::Khattar1Anc, Strategy::Khattar2Anc,
                     Strategy::Tradeoff, Strategy::GidneyLadder})
    if (name == strategy_name(s)) return s;
  return std::nullopt;
}

/// Invalid (kind, n, m1, cleanup) combination. Callers distinguish this
/// (user error) from logic_error (emitter invariant breach).
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StrategySpec {
  Strategy kind = Strategy::BinaryTree;
  uint64_t n = 0;
  std::optional<uint64_t> m1;  // tradeoff only
  bool cleanup = false;        // binary-tree only
};

namespace detail {

/// Complete-binary-tree pairing: repeatedly pairs adjacent values (odd value
/// carried last) onto fresh ancillae until two remain, then hits the target.
/// cleanup=true marks the tree as an and-compute half and appends its
/// and-uncompute mirror so the ancillae end restored.
inline Circuit binary_tree(uint64_t n, bool cleanup) {
  if (n < 3) throw SpecError("binary-tree: n >= 3");
  const uint32_t target = static_cast<uint32_t>(n);
  Circuit c;
  c.width = static_cast<uint32_t>(2 * n - 1);
  c.roles = std::string(n, 'c') + "t" + std::string(n - 2, 'a');
  const Flavor tree_flavor = cleanup ? Flavor::AndCompute : Flavor::Plain;
  std::vector<uint32_t> level(n);
  for (uint32_t i = 0; i < n; ++i) level[i] = i;
  uint32_t next_anc = target + 1;
  std::vector<Gate> tree;
  while (level.size() > 2) {
    std::vector<uint32_t> up;
    for (size_t i = 0; 2 * i + 1 < level.size(); ++i) {
      tree.push_back(gccx(level[2 * i], level[2 * i + 1], next_anc, tree_flavor));
      up.push_back(next_anc++);
    }
    if (level.size() % 2 == 1) up.push_back(level.back());
    level = std::move(up);
  }
  c.gates = tree;
  c.gates.push_back(gccx(level[0], level[1], target));
  if (cleanup) {
    for (auto it = tree.rbegin(); it != tree.rend(); ++it) {
      Gate g = *it;
      g.flavor = Flavor::AndUncompute;
      c.gates.push_back(g);
    }
  }
  return c;
}

/// Ladder: controls split into three groups, each folded by a complete
/// binary tree of and-computes; the three roots feed one 3-controlled hit on
/// the target, then the trees uncompute. Allocates n-2 ancillae to match the
/// published accounting; the construction touches n-3 of them.
inline Circuit gidney_ladder(uint64_t n) {
  if (n < 4) throw SpecError("gidney-ladder: n >= 4");
  const uint32_t target = static_cast<uint32_t>(n);
  Circuit c;
  c.width = static_cast<uint32_t>(2 * n - 1);
  c.roles = std::string(n, 'c') + "t" + std::string(n - 2, 'a');
  const uint64_t a = (n + 2) / 3;
  const uint64_t b = (n - a + 1) / 2;
  std::vector<Gate> tree;
  uint32_t next_anc = target + 1;
  uint32_t first = 0;
  std::vector<uint32_t> roots;
  for (uint64_t size : {a, b, n - a - b}) {
    std::vector<uint32_t> level(size);
    for (uint32_t i = 0; i < size; ++i) level[i] = first + i;
    first += static_cast<uint32_t>(size);
    while (level.size() > 1) {
      std::vector<uint32_t> up;
      for (size_t i = 0; 2 * i + 1 < level.size(); ++i) {
        tree.push_back(gccx(level[2 * i], level[2 * i + 1], next_anc, Flavor::AndCompute));
        up.push_back(next_anc++);
      }
      if (level.size() % 2 == 1) up.push_back(level.back());
      level = std::move(up);
    }
    roots.push_back(level.front());
  }
  c.gates = tree;
  c.gates.push_back(gcccx(roots[0], roots[1], roots[2], target));
  for (auto it = tree.rbegin(); it != tree.rend(); ++it) {
    Gate g = *it;
    g.flavor = Flavor::AndUncompute;
    c.gates.push_back(g);
  }
  return c;
}

inline Circuit bare_toffoli() {
  Circuit c;
  c.width = 3;
  c.roles = "cct";
  c.gates = {gccx(0, 1, 2)};
  return c;
}

inline Circuit chain_circuit(uint64_t n) {
  Circuit c;
  c.gates = chain_mct(n);
  c.width = n == 2 ? 3 : static_cast<uint32_t>(n + 2);
  c.roles = std::string(n, 'c') + "t" + std::string(c.width - n - 1, 'a');
  return c;
}

}  // namespace detail

/// Builds the circuit for `spec`. Throws SpecError on invalid parameters.
inline Circuit synthesize(const StrategySpec& spec) {
  const uint64_t n = spec.n;
  if (n < 2) throw SpecError("n >= 2 required");
  if (spec.m1 && spec.kind != Strategy::Tradeoff)
    throw SpecError("m1 applies to the tradeoff strategy only");
  if (spec.cleanup && spec.kind != Strategy::BinaryTree)
    throw SpecError("cleanup applies to the binary-tree strategy only");

  Circuit c;
  std::string label{strategy_name(spec.kind)};
  label += " n=" + std::to_string(n);
  switch (spec.kind) {
    case Strategy::BinaryTree:
      c = n == 2 ? detail::bare_toffoli() : detail::binary_tree(n, spec.cleanup);
      if (spec.cleanup) label += " cleanup";
      break;
    case Strategy::Khattar1Anc:
      c = detail::chain_circuit(n);
      break;
    case Strategy::Khattar2Anc: {
      if (n <= 3) {
        c = detail::chain_circuit(n);
      } else {
        RowsCircuit rc = rows_mct(n, 1, 1);
        c.width = rc.width;
        c.gates = std::move(rc.gates);
        c.roles = std::string(n, 'c') + "t" + std::string(c.width - n - 1, 'a');
      }
      break;
    }
    case Strategy::Tradeoff: {
      if (!spec.m1) throw SpecError("tradeoff: m1 required");
      const uint64_t m1 = *spec.m1;
      if (m1 < 2) throw SpecError("tradeoff: m1 >= 2");
      if (n < 2 * m1 + 2) throw SpecError("tradeoff: n >= 2*m1 + 2");
      RowsCircuit rc = rows_mct(n, m1, 2);
      c.width = rc.width;
      c.gates = std::move(rc.gates);
      c.roles = std::string(n, 'c') + "t" + std::string(c.width - n - 1, 'a');
      label += " m1=" + std::to_string(m1);
      break;
    }
    case Strategy::GidneyLadder:
      if (n < 4) throw SpecError("gidney-ladder: n >= 4");
      c = detail::gidney_ladder(n);
      break;
  }
  c.label = label;
  return c;
}

/// Whether the built circuit returns its ancillae to |0>. Only the
/// binary tree without cleanup leaves its ancillae holding products; every
/// other construction uncomputes. Verification should check restoration
/// exactly when this holds.
inline bool restores_ancillae(const StrategySpec& spec) {
  return spec.kind != Strategy::BinaryTree || spec.cleanup || spec.n == 2;
}

/// Derives the verification wiring from a circuit's role string: every 'c' is
/// a control, the unique 't' the target, every 'a' a clean ancilla.
inline MctSpec wires_of(const Circuit& c) {
  MctSpec spec;
  spec.n = 0;
  bool target_seen = false;
  for (uint32_t q = 0; q < c.width; ++q) {
    switch (c.roles.at(q)) {
      case 'c':
        spec.controls.push_back(q);
        break;
      case 't':
        if (target_seen) throw std::invalid_argument("wires_of: multiple targets");
        spec.target = q;
        target_seen = true;
        break;
      case 'a':
        spec.ancillae.push_back(q);
        break;
      default:
        throw std::invalid_argument("wires_of: unknown role");
    }
  }
  if (!target_seen) throw std::invalid_argument("wires_of: no target");
  spec.n = static_cast<uint32_t>(spec.controls.size());
  return spec;
}

}  // namespace mctsynth
