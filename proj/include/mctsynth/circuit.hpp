#pragma once

/// Gate-level IR for reversible/Clifford+T circuits.
///
/// A Circuit is a flat gate list over `width` qubits, each qubit tagged with a
/// role: 'c' (control input), 't' (target), 'a' (ancilla, starts at |0>).
/// Multi-controlled-X gates carry a flavor so that compute/uncompute pairs of
/// temporary products can be told apart by the resource accounting.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mctsynth {

enum class Kind : uint8_t { X, Cnot, Toffoli, Cccx, H, S, Sdg, T, Tdg, Z, Cz };

/// Toffoli flavor. AndCompute/AndUncompute mark a temporary logical-AND pair:
/// the uncompute half is free in the Toffoli/T accounting (it participates in
/// dependency layering only).
enum class Flavor : uint8_t { Plain, AndCompute, AndUncompute };

struct Gate {
  Kind kind = Kind::X;
  Flavor flavor = Flavor::Plain;  // meaningful for Kind::Toffoli only
  std::array<uint32_t, 4> qs{};
  uint8_t arity = 1;

  std::span<const uint32_t> qubits() const { return {qs.data(), arity}; }
  uint32_t target() const { return qs[arity - 1]; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

inline Gate gx(uint32_t q) { return {Kind::X, Flavor::Plain, {q, 0, 0, 0}, 1}; }
inline Gate gcnot(uint32_t c, uint32_t t) { return {Kind::Cnot, Flavor::Plain, {c, t, 0, 0}, 2}; }
inline Gate gccx(uint32_t a, uint32_t b, uint32_t t, Flavor f = Flavor::Plain) {
  return {Kind::Toffoli, f, {a, b, t, 0}, 3};
}
inline Gate gcccx(uint32_t a, uint32_t b, uint32_t c, uint32_t t) {
  return {Kind::Cccx, Flavor::Plain, {a, b, c, t}, 4};
}
inline Gate g1(Kind k, uint32_t q) { return {k, Flavor::Plain, {q, 0, 0, 0}, 1}; }
inline Gate gcz(uint32_t a, uint32_t b) { return {Kind::Cz, Flavor::Plain, {a, b, 0, 0}, 2}; }

struct Circuit {
  uint32_t width = 0;
  std::string roles;  // one of c/t/a per qubit
  std::vector<Gate> gates;
  std::string label;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// True for gates that count toward toffoli_count/toffoli_depth: plain and
/// and-compute Toffolis plus the 3-controlled X. And-uncompute gates are free.
inline bool counted_toffoli(const Gate& g) {
  if (g.kind == Kind::Cccx) return true;
  return g.kind == Kind::Toffoli && g.flavor != Flavor::AndUncompute;
}

inline bool is_clifford(const Gate& g) {
  switch (g.kind) {
    case Kind::X:
    case Kind::Cnot:
    case Kind::H:
    case Kind::S:
    case Kind::Sdg:
    case Kind::Z:
    case Kind::Cz:
      return true;
    default:
      return false;
  }
}

inline uint8_t kind_arity(Kind k) {
  switch (k) {
    case Kind::Cnot:
    case Kind::Cz:
      return 2;
    case Kind::Toffoli:
      return 3;
    case Kind::Cccx:
      return 4;
    default:
      return 1;
  }
}

/// Structural checks. Returns human-readable violations; empty means valid.
inline std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> out;
  if (c.roles.size() != c.width)
    out.push_back("roles length " + std::to_string(c.roles.size()) +
                  " does not match width " + std::to_string(c.width));
  for (size_t i = 0; i < c.roles.size(); ++i) {
    char r = c.roles[i];
    if (r != 'c' && r != 't' && r != 'a')
      out.push_back("qubit " + std::to_string(i) + " has unknown role '" + std::string(1, r) + "'");
  }
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    std::string at = "gate " + std::to_string(gi) + ": ";
    if (g.arity != kind_arity(g.kind)) {
      out.push_back(at + "arity " + std::to_string(g.arity) + " wrong for gate kind");
      continue;
    }
    bool range_ok = true;
    for (uint32_t q : g.qubits())
      if (q >= c.width) {
        out.push_back(at + "qubit " + std::to_string(q) + " out of range (width " +
                      std::to_string(c.width) + ")");
        range_ok = false;
      }
    if (!range_ok) continue;
    auto qs = g.qubits();
    for (size_t i = 0; i < qs.size(); ++i)
      for (size_t j = i + 1; j < qs.size(); ++j)
        if (qs[i] == qs[j])
          out.push_back(at + "repeated qubit " + std::to_string(qs[i]));
    if (g.kind != Kind::Toffoli && g.flavor != Flavor::Plain)
      out.push_back(at + "flavor only applies to 2-controlled gates");
  }
  return out;
}

namespace detail {

/// ASAP levels under a per-gate integer weight. A gate's level is
/// weight(g) + max level among earlier gates sharing a qubit; depth is the
/// max level. Weight-0 gates order their qubits without consuming a level.
template <class WeightFn>
inline std::vector<uint32_t> asap_levels(const Circuit& c, WeightFn weight) {
  std::vector<uint32_t> qlevel(c.width, 0), out;
  out.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    uint32_t lv = 0;
    for (uint32_t q : g.qubits()) lv = std::max(lv, qlevel[q]);
    lv += weight(g);
    for (uint32_t q : g.qubits()) qlevel[q] = lv;
    out.push_back(lv);
  }
  return out;
}

template <class WeightFn>
inline uint32_t asap_depth(const Circuit& c, WeightFn weight) {
  uint32_t d = 0;
  for (uint32_t lv : asap_levels(c, weight)) d = std::max(d, lv);
  return d;
}

inline uint32_t toffoli_weight(const Gate& g) { return counted_toffoli(g) ? 1u : 0u; }

}  // namespace detail

/// Counted Toffoli-like gates grouped into dependency layers (gate indices).
/// Layer k holds the gates at ASAP level k+1; gates within a layer act on
/// pairwise disjoint qubits.
inline std::vector<std::vector<size_t>> toffoli_layers(const Circuit& c) {
  auto levels = detail::asap_levels(c, detail::toffoli_weight);
  uint32_t depth = 0;
  for (size_t i = 0; i < c.gates.size(); ++i)
    if (counted_toffoli(c.gates[i])) depth = std::max(depth, levels[i]);
  std::vector<std::vector<size_t>> layers(depth);
  for (size_t i = 0; i < c.gates.size(); ++i)
    if (counted_toffoli(c.gates[i])) layers[levels[i] - 1].push_back(i);
  return layers;
}

struct ResourceReport {
  uint64_t toffoli_count = 0;
  uint64_t cccx_count = 0;  // 3-controlled gates, also included in toffoli_count
  uint32_t toffoli_depth = 0;
  uint64_t clifford_count = 0;
  uint32_t total_depth = 0;
  uint32_t width = 0;
  uint32_t ancilla_count = 0;
  std::optional<uint64_t> t_count;
  std::optional<uint32_t> t_depth;
};

inline ResourceReport resource_report(const Circuit& c) {
  ResourceReport r;
  r.width = c.width;
  for (char ch : c.roles)
    if (ch == 'a') ++r.ancilla_count;
  uint64_t tgates = 0;
  for (const Gate& g : c.gates) {
    if (counted_toffoli(g)) ++r.toffoli_count;
    if (g.kind == Kind::Cccx) ++r.cccx_count;
    if (is_clifford(g)) ++r.clifford_count;
    if (g.kind == Kind::T || g.kind == Kind::Tdg) ++tgates;
  }
  r.toffoli_depth = detail::asap_depth(c, detail::toffoli_weight);
  r.total_depth = detail::asap_depth(c, [](const Gate&) { return 1u; });
  if (tgates) {
    r.t_count = tgates;
    r.t_depth = detail::asap_depth(c, [](const Gate& g) {
      return (g.kind == Kind::T || g.kind == Kind::Tdg) ? 1u : 0u;
    });
  }
  return r;
}

/// Exact inverse circuit: reversed gate order with each gate inverted
/// (S<->Sdg, T<->Tdg, and-compute<->and-uncompute; the rest are involutions).
inline Circuit reverse(const Circuit& c) {
  Circuit out = c;
  out.gates.assign(c.gates.rbegin(), c.gates.rend());
  for (Gate& g : out.gates) {
    switch (g.kind) {
      case Kind::S: g.kind = Kind::Sdg; break;
      case Kind::Sdg: g.kind = Kind::S; break;
      case Kind::T: g.kind = Kind::Tdg; break;
      case Kind::Tdg: g.kind = Kind::T; break;
      case Kind::Toffoli:
        if (g.flavor == Flavor::AndCompute) g.flavor = Flavor::AndUncompute;
        else if (g.flavor == Flavor::AndUncompute) g.flavor = Flavor::AndCompute;
        break;
      default: break;
    }
  }
  return out;
}

inline std::string_view mnemonic(Kind k, Flavor f = Flavor::Plain) {
  switch (k) {
    case Kind::X: return "x";
    case Kind::Cnot: return "cnot";
    case Kind::Toffoli:
      return f == Flavor::AndCompute ? "ccx+" : f == Flavor::AndUncompute ? "ccx-" : "ccx";
    case Kind::Cccx: return "cccx";
    case Kind::H: return "h";
    case Kind::S: return "s";
    case Kind::Sdg: return "sdg";
    case Kind::T: return "t";
    case Kind::Tdg: return "tdg";
    case Kind::Z: return "z";
    case Kind::Cz: return "cz";
  }
  return "?";
}

/// Plain-text serialization:
///   qubits N
///   roles <c|t|a>{N}
///   <gate lines, one per gate>
/// '#' starts a comment; a non-empty label rides in a `# label:` comment so
/// that parse(serialize(c)) == c field for field.
inline std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.width << "\n";
  os << "roles " << c.roles << "\n";
  if (!c.label.empty()) os << "# label: " << c.label << "\n";
  for (const Gate& g : c.gates) {
    os << mnemonic(g.kind, g.flavor);
    for (uint32_t q : g.qubits()) os << ' ' << q;
    os << "\n";
  }
  return os.str();
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<std::pair<Kind, Flavor>> kind_of(std::string_view m) {
  if (m == "x") return {{Kind::X, Flavor::Plain}};
  if (m == "cnot") return {{Kind::Cnot, Flavor::Plain}};
  if (m == "ccx") return {{Kind::Toffoli, Flavor::Plain}};
  if (m == "ccx+") return {{Kind::Toffoli, Flavor::AndCompute}};
  if (m == "ccx-") return {{Kind::Toffoli, Flavor::AndUncompute}};
  if (m == "cccx") return {{Kind::Cccx, Flavor::Plain}};
  if (m == "h") return {{Kind::H, Flavor::Plain}};
  if (m == "s") return {{Kind::S, Flavor::Plain}};
  if (m == "sdg") return {{Kind::Sdg, Flavor::Plain}};
  if (m == "t") return {{Kind::T, Flavor::Plain}};
  if (m == "tdg") return {{Kind::Tdg, Flavor::Plain}};
  if (m == "z") return {{Kind::Z, Flavor::Plain}};
  if (m == "cz") return {{Kind::Cz, Flavor::Plain}};
  return std::nullopt;
}

}  // namespace detail

/// Parses the serialize() format. Throws ParseError naming the line and
/// reason on malformed input.
inline Circuit parse(std::string_view text) {
  Circuit c;
  bool have_qubits = false, have_roles = false;
  size_t lineno = 0, pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("line " + std::to_string(lineno) + ": " + why);
  };
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    // Strip comments, keeping the label marker.
    if (line.starts_with("# label: ")) {
      c.label = std::string(line.substr(9));
      continue;
    }
    if (size_t h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::istringstream is{std::string(line)};
    std::string tok;
    if (!(is >> tok)) continue;  // blank line
    if (tok == "qubits") {
      if (have_qubits) fail("duplicate qubits line");
      long long w = -1;
      if (!(is >> w) || w < 0) fail("qubits needs a non-negative count");
      c.width = static_cast<uint32_t>(w);
      have_qubits = true;
      continue;
    }
    if (tok == "roles") {
      if (!have_qubits) fail("roles before qubits");
      if (have_roles) fail("duplicate roles line");
      std::string r;
      if (!(is >> r)) fail("roles needs a role string");
      if (r.size() != c.width) fail("roles length does not match qubits");
      for (char ch : r)
        if (ch != 'c' && ch != 't' && ch != 'a') fail(std::string("unknown role '") + ch + "'");
      c.roles = r;
      have_roles = true;
      continue;
    }
    auto kf = detail::kind_of(tok);
    if (!kf) fail("unknown gate '" + tok + "'");
    if (!have_roles) fail("gate before roles");
    Gate g{kf->first, kf->second, {}, kind_arity(kf->first)};
    for (uint8_t i = 0; i < g.arity; ++i) {
      long long q = -1;
      if (!(is >> q) || q < 0) fail("gate '" + tok + "' needs " + std::to_string(g.arity) + " qubit operands");
      if (q >= c.width) fail("qubit " + std::to_string(q) + " out of range");
      g.qs[i] = static_cast<uint32_t>(q);
    }
    std::string extra;
    if (is >> extra) fail("trailing token '" + extra + "'");
    auto qs = g.qubits();
    for (size_t i = 0; i < qs.size(); ++i)
      for (size_t j = i + 1; j < qs.size(); ++j)
        if (qs[i] == qs[j]) fail("repeated qubit " + std::to_string(qs[i]));
    c.gates.push_back(g);
  }
  if (!have_qubits) throw ParseError("line 1: missing qubits line");
  if (!have_roles) throw ParseError("line 1: missing roles line");
  return c;
}

}  // namespace mctsynth
