#pragma once

/// Brute-force reversible simulation used as the correctness oracle.
///
/// Simulation is over computational basis states: X/CNOT/CCX/CCCX permute
/// basis states, diagonal gates (Z/S/Sdg/T/Tdg/CZ) fix them (phases are
/// dropped), and H is rejected. qubit 0 is the least significant bit.

#include <cstdlib>
#include <random>
#include <string>

#include "mctsynth/circuit.hpp"

namespace mctsynth {

/// Basis state as packed bits, qubit q at bit (q % 64) of word (q / 64).
struct Basis {
  std::vector<uint64_t> w;

  explicit Basis(uint32_t width = 0) : w((width + 63) / 64, 0) {}
  bool get(uint32_t q) const { return (w[q >> 6] >> (q & 63)) & 1; }
  void flip(uint32_t q) { w[q >> 6] ^= uint64_t{1} << (q & 63); }
  void set(uint32_t q, bool v) {
    if (get(q) != v) flip(q);
  }
  friend bool operator==(const Basis&, const Basis&) = default;
};

inline void apply_gate_basis(const Gate& g, Basis& s) {
  switch (g.kind) {
    case Kind::X:
      s.flip(g.qs[0]);
      return;
    case Kind::Cnot:
      if (s.get(g.qs[0])) s.flip(g.qs[1]);
      return;
    case Kind::Toffoli:
      if (s.get(g.qs[0]) && s.get(g.qs[1])) s.flip(g.qs[2]);
      return;
    case Kind::Cccx:
      if (s.get(g.qs[0]) && s.get(g.qs[1]) && s.get(g.qs[2])) s.flip(g.qs[3]);
      return;
    case Kind::H:
      throw std::invalid_argument("basis simulation cannot apply h");
    default:
      return;  // diagonal: basis states are fixed points
  }
}

inline void apply_basis_inplace(const Circuit& c, Basis& s) {
  for (const Gate& g : c.gates) apply_gate_basis(g, s);
}

/// Bitstring convenience wrapper; bits[q] is qubit q ('0'/'1').
inline std::string apply_basis(const Circuit& c, const std::string& bits) {
  if (bits.size() != c.width) throw std::invalid_argument("bitstring length != width");
  Basis s(c.width);
  for (uint32_t q = 0; q < c.width; ++q) {
    if (bits[q] != '0' && bits[q] != '1') throw std::invalid_argument("bitstring must be 0/1");
    s.set(q, bits[q] == '1');
  }
  apply_basis_inplace(c, s);
  std::string out(c.width, '0');
  for (uint32_t q = 0; q < c.width; ++q) out[q] = s.get(q) ? '1' : '0';
  return out;
}

/// Fast single-word path for width <= 64.
inline uint64_t apply_basis_word(const Circuit& c, uint64_t state) {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case Kind::X:
        state ^= uint64_t{1} << g.qs[0];
        break;
      case Kind::Cnot:
        if (state >> g.qs[0] & 1) state ^= uint64_t{1} << g.qs[1];
        break;
      case Kind::Toffoli:
        if ((state >> g.qs[0] & 1) && (state >> g.qs[1] & 1)) state ^= uint64_t{1} << g.qs[2];
        break;
      case Kind::Cccx:
        if ((state >> g.qs[0] & 1) && (state >> g.qs[1] & 1) && (state >> g.qs[2] & 1))
          state ^= uint64_t{1} << g.qs[3];
        break;
      case Kind::H:
        throw std::invalid_argument("basis simulation cannot apply h");
      default:
        break;
    }
  }
  return state;
}

/// Full truth table of the circuit as a permutation of [0, 2^width).
/// Capped at width 22 to keep the table in memory.
inline std::vector<uint32_t> as_permutation(const Circuit& c) {
  if (c.width > 22) throw std::invalid_argument("as_permutation capped at width 22");
  std::vector<uint32_t> perm(uint64_t{1} << c.width);
  for (uint64_t x = 0; x < perm.size(); ++x)
    perm[x] = static_cast<uint32_t>(apply_basis_word(c, x));
  return perm;
}

/// What an n-controlled Toffoli is supposed to do on the given wires.
struct MctSpec {
  uint32_t n = 0;  // number of controls; must equal controls.size(), >= 2
  std::vector<uint32_t> controls;
  uint32_t target = 0;
  std::vector<uint32_t> ancillae;  // start at |0>, must be restored
};

enum class VerifyMode : uint8_t { Auto, Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  uint64_t sample_count = 10000;
  uint64_t seed = 0xC0FFEE;
  /// When false, ancilla restoration is not required (partial-product trees
  /// without a cleanup pass leave their ancillae dirty by design).
  bool check_ancilla_restored = true;
  /// Auto mode goes exhaustive up to this many controls (env MCT_ORACLE_CAP
  /// overrides).
  uint32_t exhaustive_cap = 16;
};

struct Counterexample {
  std::string input;     // bits[q] = qubit q
  std::string expected;
  std::string actual;
};

struct VerificationResult {
  bool ok = false;
  std::string mode;  // "exhaustive" or "sampled"
  uint64_t cases_checked = 0;
  std::optional<Counterexample> counterexample;
};

namespace detail {

inline uint32_t oracle_cap(uint32_t fallback) {
  if (const char* env = std::getenv("MCT_ORACLE_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 2 && v <= 30) return static_cast<uint32_t>(v);
  }
  return fallback;
}

inline std::string basis_bits(const Basis& s, uint32_t width) {
  std::string out(width, '0');
  for (uint32_t q = 0; q < width; ++q) out[q] = s.get(q) ? '1' : '0';
  return out;
}

}  // namespace detail

/// Checks the circuit against the n-controlled Toffoli truth table:
/// target ^= AND(controls), controls preserved, ancillae restored to 0
/// (unless waived). spec wires must exactly partition the circuit width.
inline VerificationResult verify_mct(const Circuit& c, const MctSpec& spec,
                                     const VerifyOptions& opt = {}) {
  if (spec.n < 2) throw std::invalid_argument("MctSpec needs n >= 2");
  if (spec.controls.size() != spec.n)
    throw std::invalid_argument("MctSpec n does not match controls list");
  std::vector<char> seen(c.width, 0);
  auto claim = [&](uint32_t q) {
    if (q >= c.width) throw std::invalid_argument("MctSpec wire out of range");
    if (seen[q]) throw std::invalid_argument("MctSpec wires overlap");
    seen[q] = 1;
  };
  for (uint32_t q : spec.controls) claim(q);
  claim(spec.target);
  for (uint32_t q : spec.ancillae) claim(q);
  for (uint32_t q = 0; q < c.width; ++q)
    if (!seen[q]) throw std::invalid_argument("MctSpec does not cover qubit " + std::to_string(q));

  bool exhaustive;
  switch (opt.mode) {
    case VerifyMode::Exhaustive: exhaustive = true; break;
    case VerifyMode::Sampled: exhaustive = false; break;
    default: exhaustive = spec.n <= detail::oracle_cap(opt.exhaustive_cap); break;
  }

  VerificationResult res;
  res.mode = exhaustive ? "exhaustive" : "sampled";

  auto run_case = [&](const std::vector<char>& cbits, bool tbit) -> bool {
    Basis in(c.width);
    for (uint32_t i = 0; i < spec.n; ++i) in.set(spec.controls[i], cbits[i]);
    in.set(spec.target, tbit);
    Basis out = in;
    apply_basis_inplace(c, out);
    bool all = true;
    for (char b : cbits) all = all && b;
    Basis want = in;
    if (all) want.flip(spec.target);
    bool ok = out.get(spec.target) == want.get(spec.target);
    for (uint32_t i = 0; ok && i < spec.n; ++i)
      ok = out.get(spec.controls[i]) == in.get(spec.controls[i]);
    if (opt.check_ancilla_restored)
      for (size_t i = 0; ok && i < spec.ancillae.size(); ++i) ok = !out.get(spec.ancillae[i]);
    ++res.cases_checked;
    if (!ok) {
      Counterexample ce;
      ce.input = detail::basis_bits(in, c.width);
      if (opt.check_ancilla_restored) {
        ce.expected = detail::basis_bits(want, c.width);
      } else {
        // Expected ancilla values are unconstrained; show them as the actual.
        Basis w2 = want;
        for (uint32_t q : spec.ancillae) w2.set(q, out.get(q));
        ce.expected = detail::basis_bits(w2, c.width);
      }
      ce.actual = detail::basis_bits(out, c.width);
      res.counterexample = ce;
    }
    return ok;
  };

  std::vector<char> cbits(spec.n, 0);
  if (exhaustive) {
    for (uint64_t mask = 0; mask < (uint64_t{1} << (spec.n)); ++mask) {
      for (uint32_t i = 0; i < spec.n; ++i) cbits[i] = (mask >> i) & 1;
      for (int t = 0; t < 2; ++t)
        if (!run_case(cbits, t)) return res;
    }
  } else {
    // Boundary patterns first: all ones, then each single zero, both target
    // bits each.
    auto run_both = [&]() {
      return run_case(cbits, false) && run_case(cbits, true);
    };
    std::fill(cbits.begin(), cbits.end(), 1);
    if (!run_both()) return res;
    for (uint32_t z = 0; z < spec.n; ++z) {
      std::fill(cbits.begin(), cbits.end(), 1);
      cbits[z] = 0;
      if (!run_both()) return res;
    }
    std::mt19937_64 rng(opt.seed);
    while (res.cases_checked < opt.sample_count) {
      for (uint32_t i = 0; i < spec.n; i += 64) {
        uint64_t word = rng();
        for (uint32_t j = i; j < std::min(i + 64, spec.n); ++j) cbits[j] = (word >> (j - i)) & 1;
      }
      if (!run_case(cbits, rng() & 1)) return res;
    }
  }
  res.ok = true;
  return res;
}

}  // namespace mctsynth
