#pragma once

/// Toffoli lowering into Clifford+T.
///
/// The catalog lists realizations of the doubly-controlled X over the
/// Clifford+T gate set, each with its declared resource figures (helper
/// qubits, T count, T depth, Clifford count, total depth). Entries that
/// realize the full unitary carry an inline gate template which
/// verify_entry() checks against the Toffoli matrix; the two
/// measurement-assisted entries are accounted for by their declared figures.
/// lower_report() prices a synthesized circuit under a chosen entry, and
/// expand() rewrites plain-Toffoli circuits into explicit Clifford+T gates.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mctsynth/circuit.hpp"
#include "mctsynth/synth.hpp"

namespace mctsynth {

/// One lowering option. Declared figures are the catalog's contract: they are
/// what reports and pricing use, even where a template schedules slightly
/// differently (deviations are covered by the template tests).
struct CatalogEntry {
  std::string_view id;
  uint32_t helpers = 0;       // qubits beyond the two controls and the target
  uint32_t t_count = 0;
  uint32_t t_depth = 0;       // declared, as a number (the AND pair's 1+1 is 2)
  std::string_view t_depth_text;  // declared, as printed
  uint32_t layer_t_depth = 0; // T layers one lowered gate adds to its layer
  uint32_t clifford = 0;
  uint32_t depth = 0;
  bool unitary = false;       // template realizes the exact Toffoli unitary
  std::string_view gates;     // template text over wires a b t h0..h3
};

namespace detail {

// Templates are written over named wires: a, b = controls, t = target,
// h0..h3 = helpers. One gate per line, serialize() mnemonics.

inline constexpr std::string_view kNcTd6 = R"(h t
cnot b t
tdg t
cnot a t
t t
cnot b t
tdg t
cnot a t
t t
h t
s b
tdg b
t a
cnot b a
tdg a
cnot b a
)";

inline constexpr std::string_view kAmyTd4 = R"(h t
t b
cnot a b
tdg b
cnot t a
cnot t b
tdg a
t b
cnot t a
cnot a b
t a
tdg b
t t
cnot t b
h t
)";

inline constexpr std::string_view kAmyTd3 = R"(h t
t a
cnot b t
cnot t a
cnot a b
t a
tdg b
tdg t
cnot a b
cnot b t
cnot t a
tdg a
t b
t t
cnot b a
h t
)";

inline constexpr std::string_view kAmyTd2 = R"(h t
t a
t b
t t
cnot a b
cnot b h0
cnot t a
cnot a b
cnot h0 t
tdg a
tdg b
t t
tdg h0
cnot a b
cnot b t
cnot b h0
cnot t a
cnot a b
h t
)";

inline constexpr std::string_view kSelingerTd1 = R"(h t
cnot a h0
cnot b h2
cnot b h0
cnot a h1
cnot t h1
cnot t h2
cnot h0 h3
cnot t h3
t a
t b
t t
t h3
tdg h0
tdg h1
tdg h2
cnot t h3
cnot h0 h3
cnot t h2
cnot t h1
cnot a h1
cnot b h0
cnot b h2
cnot a h0
h t
)";

// Compute half of the AND pair: target enters |0> and leaves holding the
// product. The uncompute half is a measurement with a classically controlled
// fixup, so the pair's T depth prints as 1+1 and only the compute half is a
// template.
inline constexpr std::string_view kGidneyAnd = R"(h t
cnot a b
cnot t a
cnot t b
tdg a
t b
cnot t a
cnot a b
tdg b
t t
cnot t b
h t
s t
)";

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"nc-td6", 0, 7, 6, "6", 6, 9, 12, true, detail::kNcTd6},
      {"amy-td4", 0, 7, 4, "4", 4, 8, 8, true, detail::kAmyTd4},
      {"amy-td3", 0, 7, 3, "3", 3, 9, 9, true, detail::kAmyTd3},
      {"amy-td2", 1, 7, 2, "2", 2, 12, 11, true, detail::kAmyTd2},
      {"selinger-td1", 4, 7, 1, "1", 1, 18, 8, true, detail::kSelingerTd1},
      {"jones-td1", 1, 4, 1, "1", 1, 11, 8, false, {}},
      {"gidney-and", 0, 4, 2, "1+1", 1, 9, 9, false, detail::kGidneyAnd},
  };
  return entries;
}

inline const CatalogEntry& entry_by_id(std::string_view id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return e;
  throw SpecError("unknown lowering entry: " + std::string(id));
}

/// Parses an entry's template into a circuit over 3 + helpers wires
/// (a=0, b=1, t=2, h0..=3..).
inline Circuit entry_template(const CatalogEntry& e) {
  if (e.gates.empty())
    throw SpecError("entry " + std::string(e.id) + " has no gate template");
  std::map<std::string, uint32_t, std::less<>> wire{{"a", 0}, {"b", 1}, {"t", 2}};
  for (uint32_t i = 0; i < e.helpers; ++i) wire.emplace("h" + std::to_string(i), 3 + i);
  Circuit c;
  c.width = 3 + e.helpers;
  c.roles = "cct" + std::string(e.helpers, 'a');
  c.label = std::string(e.id) + " template";
  std::istringstream is{std::string(e.gates)};
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    std::istringstream ls{line};
    std::string mn;
    ls >> mn;
    auto kf = detail::kind_of(mn);
    std::vector<uint32_t> qs;
    for (std::string tok; ls >> tok;) {
      auto it = wire.find(tok);
      if (it == wire.end()) throw std::logic_error("template wire: " + tok);
      qs.push_back(it->second);
    }
    if (!kf) throw std::logic_error("template mnemonic: " + mn);
    if (kf->first == Kind::Cnot && qs.size() == 2)
      c.gates.push_back(gcnot(qs[0], qs[1]));
    else if (kf->first == Kind::Cz && qs.size() == 2)
      c.gates.push_back(gcz(qs[0], qs[1]));
    else if (qs.size() == 1)
      c.gates.push_back(g1(kf->first, qs[0]));
    else
      throw std::logic_error("template arity: " + line);
  }
  if (auto problems = validate(c); !problems.empty())
    throw std::logic_error("template: " + problems.front());
  return c;
}

// ---------------------------------------------------------------------------
// Catalog entry files

/// Catalog entries serialize to the circuit text format with two header
/// lines in front:
///   entry <id>
///   meta t=<n> tdepth=<n> clifford=<n> depth=<n> ancilla=<n>
/// Measurement-assisted entries serialize with an empty gate list.
inline std::string entry_file_text(const CatalogEntry& e) {
  Circuit tpl;
  if (e.gates.empty()) {
    tpl.width = 3 + e.helpers;
    tpl.roles = "cct" + std::string(e.helpers, 'a');
  } else {
    tpl = entry_template(e);
    tpl.label.clear();
  }
  std::ostringstream os;
  os << "entry " << e.id << "\n"
     << "meta t=" << e.t_count << " tdepth=" << e.t_depth << " clifford="
     << e.clifford << " depth=" << e.depth << " ancilla=" << e.helpers << "\n"
     << serialize(tpl);
  return os.str();
}

struct EntryFile {
  std::string id;
  uint32_t t_count = 0, t_depth = 0, clifford = 0, depth = 0, helpers = 0;
  Circuit tpl;  // empty gate list for measurement-assisted entries
};

inline EntryFile parse_entry_file(std::string_view text) {
  std::istringstream is{std::string(text)};
  EntryFile out;
  std::string line, word;
  if (!std::getline(is, line)) throw ParseError("line 1: empty entry file");
  {
    std::istringstream ls{line};
    if (!(ls >> word >> out.id) || word != "entry")
      throw ParseError("line 1: expected `entry <id>`");
  }
  if (!std::getline(is, line)) throw ParseError("line 2: missing meta line");
  {
    std::istringstream ls{line};
    if (!(ls >> word) || word != "meta")
      throw ParseError("line 2: expected `meta`");
    while (ls >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos)
        throw ParseError("line 2: meta field without `=`: " + word);
      const std::string key = word.substr(0, eq);
      uint32_t val = 0;
      try {
        val = static_cast<uint32_t>(std::stoul(word.substr(eq + 1)));
      } catch (const std::exception&) {
        throw ParseError("line 2: bad meta value: " + word);
      }
      if (key == "t") out.t_count = val;
      else if (key == "tdepth") out.t_depth = val;
      else if (key == "clifford") out.clifford = val;
      else if (key == "depth") out.depth = val;
      else if (key == "ancilla") out.helpers = val;
      else throw ParseError("line 2: unknown meta field: " + key);
    }
  }
  std::string rest;
  for (std::string l; std::getline(is, l);) rest += l + "\n";
  out.tpl = parse(rest);
  return out;
}

// ---------------------------------------------------------------------------
// Dense unitaries for template verification

/// Column-major 2^width x 2^width matrix; qubit q is bit q of the basis index.
using Unitary = std::vector<std::complex<double>>;

namespace detail {

inline void apply_gate(std::vector<std::complex<double>>& v, const Gate& g) {
  const size_t dim = v.size();
  const auto qs = g.qubits();
  const size_t tm = size_t{1} << g.target();
  constexpr std::complex<double> kI{0.0, 1.0};
  constexpr double kR = 1.0 / std::numbers::sqrt2;
  const std::complex<double> kT{kR, kR};
  switch (g.kind) {
    case Kind::X:
    case Kind::Cnot:
    case Kind::Toffoli:
    case Kind::Cccx:
      for (size_t i = 0; i < dim; ++i) {
        if (i & tm) continue;
        bool on = true;
        for (size_t c = 0; c + 1 < qs.size(); ++c) on = on && ((i >> qs[c]) & 1);
        if (on) std::swap(v[i], v[i | tm]);
      }
      break;
    case Kind::H:
      for (size_t i = 0; i < dim; ++i) {
        if (i & tm) continue;
        const auto x = v[i], y = v[i | tm];
        v[i] = (x + y) * kR;
        v[i | tm] = (x - y) * kR;
      }
      break;
    case Kind::S:
    case Kind::Sdg:
    case Kind::T:
    case Kind::Tdg:
    case Kind::Z:
      for (size_t i = 0; i < dim; ++i) {
        if (!(i & tm)) continue;
        if (g.kind == Kind::S) v[i] *= kI;
        else if (g.kind == Kind::Sdg) v[i] *= -kI;
        else if (g.kind == Kind::T) v[i] *= kT;
        else if (g.kind == Kind::Tdg) v[i] *= std::conj(kT);
        else v[i] = -v[i];
      }
      break;
    case Kind::Cz:
      for (size_t i = 0; i < dim; ++i)
        if (((i >> qs[0]) & 1) && ((i >> qs[1]) & 1)) v[i] = -v[i];
      break;
  }
}

}  // namespace detail

/// Dense unitary of a circuit, width capped at 11 qubits.
inline Unitary unitary_of(const Circuit& c) {
  if (c.width > 11) throw std::invalid_argument("unitary_of: width > 11");
  const size_t dim = size_t{1} << c.width;
  Unitary u(dim * dim);
  std::vector<std::complex<double>> v(dim);
  for (size_t col = 0; col < dim; ++col) {
    std::fill(v.begin(), v.end(), std::complex<double>{});
    v[col] = 1.0;
    for (const Gate& g : c.gates) detail::apply_gate(v, g);
    std::copy(v.begin(), v.end(), u.begin() + static_cast<ptrdiff_t>(col * dim));
  }
  return u;
}

struct EntryCheck {
  bool checked = false;  // false when the entry carries no template
  bool ok = true;
  double max_err = 0.0;
};

/// Checks a template against the Toffoli matrix up to one global phase.
/// Helpers must enter and leave |0>: columns with any helper bit set are not
/// compared, and leakage onto them shows up as error in the compared columns.
/// The AND compute half is compared only on target-|0> input columns, where
/// its action agrees with the Toffoli's.
inline EntryCheck verify_entry(const CatalogEntry& e, double tol = 1e-10) {
  EntryCheck res;
  if (e.gates.empty()) return res;
  res.checked = true;
  Circuit tpl = entry_template(e);
  Circuit ref;
  ref.width = tpl.width;
  ref.roles = tpl.roles;
  ref.gates = {gccx(0, 1, 2)};
  const Unitary u = unitary_of(tpl);
  const Unitary r = unitary_of(ref);
  const size_t dim = size_t{1} << tpl.width;
  std::complex<double> phase{};
  bool have_phase = false;
  for (size_t col = 0; col < dim; ++col) {
    if (col >> 3) continue;                    // helper bit set
    if (!e.unitary && (col & 4)) continue;     // AND pair: target must enter 0
    for (size_t row = 0; row < dim; ++row) {
      const auto uv = u[col * dim + row], rv = r[col * dim + row];
      if (!have_phase && std::abs(rv) > 0.5) {
        phase = uv / rv;
        have_phase = true;
      }
      res.max_err = std::max(res.max_err, std::abs(uv - phase * rv));
    }
  }
  res.ok = have_phase && res.max_err <= tol &&
           std::abs(std::abs(phase) - 1.0) <= tol;
  return res;
}

// ---------------------------------------------------------------------------
// Pricing and expansion

struct LowerReport {
  std::string entry_id;
  uint64_t lowered_gates = 0;  // counted gates priced (3-controlled included)
  uint64_t t_count = 0;
  uint64_t t_depth = 0;
  uint64_t clifford = 0;       // Clifford total, pass-through gates included
  uint64_t helper_qubits = 0;  // wires added beyond the circuit's own
};

namespace detail {

// The 3-controlled X is priced at a fixed Clifford+T cost independent of the
// chosen entry.
inline constexpr uint64_t kCccxT = 6, kCccxTd = 6, kCccxClifford = 11;

}  // namespace detail

/// Prices a circuit lowered through one catalog entry.
///
/// Plain Toffolis cost the entry's declared figures. Compute-half Toffolis
/// always go through the AND pair (4 T, 9 Clifford); their uncompute mirrors
/// are measurement plus fixup and cost no T and no counted Clifford. T depth
/// adds, per scheduling layer, the costliest member's T layers, plus one
/// global fixup layer when any gate went through the AND pair. Helper wires:
/// the measurement-assisted entry takes a fresh helper per gate; template
/// helpers are returned to |0> and shared, so the pool is sized by the
/// busiest layer.
inline LowerReport lower_report(const Circuit& c, const CatalogEntry& e) {
  LowerReport r;
  r.entry_id = std::string(e.id);
  bool used_and = false;
  for (const Gate& g : c.gates) {
    if (g.kind == Kind::Cccx) {
      r.t_count += detail::kCccxT;
      r.clifford += detail::kCccxClifford;
      ++r.lowered_gates;
    } else if (g.kind == Kind::Toffoli) {
      if (g.flavor == Flavor::Plain) {
        r.t_count += e.t_count;
        r.clifford += e.clifford;
        ++r.lowered_gates;
        if (!e.unitary && !e.gates.empty()) used_and = true;
        if (!e.unitary && e.gates.empty()) r.helper_qubits += e.helpers;
      } else if (g.flavor == Flavor::AndCompute) {
        r.t_count += 4;
        r.clifford += 9;
        ++r.lowered_gates;
        used_and = true;
      } else {
        used_and = true;
      }
    } else if (is_clifford(g)) {
      ++r.clifford;
    }
  }
  if (e.unitary && e.helpers > 0) {
    uint64_t peak = 0;
    for (const auto& layer : toffoli_layers(c)) {
      uint64_t plain = 0;
      for (size_t gi : layer)
        if (c.gates[gi].kind == Kind::Toffoli && c.gates[gi].flavor == Flavor::Plain)
          ++plain;
      peak = std::max(peak, plain);
    }
    r.helper_qubits = e.helpers * peak;
  }
  for (const auto& layer : toffoli_layers(c)) {
    uint64_t cost = 0;
    for (size_t gi : layer) {
      const Gate& g = c.gates[gi];
      const uint64_t gc = g.kind == Kind::Cccx          ? detail::kCccxTd
                          : g.flavor == Flavor::AndCompute ? 1
                                                           : e.layer_t_depth;
      cost = std::max(cost, gc);
    }
    r.t_depth += cost;
  }
  if (used_and) r.t_depth += 1;
  return r;
}

/// Rewrites every plain Toffoli through the entry's template. Only unitary
/// entries expand, and only circuits whose counted gates are all plain
/// Toffolis (compute/uncompute pairs and the 3-controlled X stay opaque).
/// Template helpers are allocated per scheduling slot, so concurrent gates
/// get disjoint blocks and consecutive layers reuse them.
inline Circuit expand(const Circuit& c, const CatalogEntry& e) {
  if (!e.unitary)
    throw SpecError("entry " + std::string(e.id) + " does not expand to a unitary template");
  for (const Gate& g : c.gates)
    if (g.kind == Kind::Cccx || (g.kind == Kind::Toffoli && g.flavor != Flavor::Plain))
      throw SpecError("only plain-Toffoli circuits expand; this one carries " +
                      std::string(g.kind == Kind::Cccx ? "a 3-controlled gate"
                                                       : "compute/uncompute pairs"));
  const Circuit tpl = entry_template(e);
  const auto layers = toffoli_layers(c);
  std::vector<uint32_t> slot(c.gates.size(), 0);
  uint64_t peak = 0;
  for (const auto& layer : layers) {
    peak = std::max<uint64_t>(peak, layer.size());
    for (size_t i = 0; i < layer.size(); ++i)
      slot[layer[i]] = static_cast<uint32_t>(i);
  }
  Circuit out;
  out.width = c.width + static_cast<uint32_t>(e.helpers * peak);
  out.roles = c.roles + std::string(e.helpers * peak, 'a');
  out.label = c.label.empty() ? std::string(e.id)
                              : c.label + " via " + std::string(e.id);
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    if (g.kind != Kind::Toffoli) {
      out.gates.push_back(g);
      continue;
    }
    const uint32_t base = c.width + slot[gi] * e.helpers;
    auto map = [&](uint32_t q) { return q < 3 ? g.qs[q] : base + (q - 3); };
    for (const Gate& tg : tpl.gates) {
      Gate ng = tg;
      for (uint32_t i = 0; i < ng.arity; ++i) ng.qs[i] = map(ng.qs[i]);
      out.gates.push_back(ng);
    }
  }
  if (auto problems = validate(out); !problems.empty())
    throw std::logic_error("expand: " + problems.front());
  return out;
}

}  // namespace mctsynth
