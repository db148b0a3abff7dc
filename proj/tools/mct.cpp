/// Command-line front end: synthesize multi-controlled Toffolis, verify
/// circuit files against the reversible oracle, price Clifford+T lowerings,
/// sweep resource tables to CSV, and audit depth bounds.
///
/// Exit codes: 0 success; 1 verification failure, audit violations, or an
/// internal synthesis error; 2 invalid parameters or unparseable input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mctsynth/circuit.hpp"
#include "mctsynth/formulas.hpp"
#include "mctsynth/reconcile.hpp"
#include "mctsynth/revsim.hpp"
#include "mctsynth/synth.hpp"
#include "mctsynth/tgate.hpp"

namespace {

using namespace mctsynth;

constexpr uint64_t kDefaultSeed = 0xC0FFEE;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text))
    throw std::runtime_error("cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is{s};
  for (std::string tok; std::getline(is, tok, sep);)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

uint32_t parse_u32(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos != s.size() || v > UINT32_MAX) throw std::invalid_argument(s);
    return static_cast<uint32_t>(v);
  } catch (const std::exception&) {
    throw ParseError("bad " + what + ": " + s);
  }
}

/// Wire lists: a single index `5`, an inclusive range `0..6`, or an explicit
/// list `0+2+5`.
std::vector<uint32_t> parse_wires(const std::string& s, const std::string& what) {
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const uint32_t lo = parse_u32(s.substr(0, dots), what);
    const uint32_t hi = parse_u32(s.substr(dots + 2), what);
    if (hi < lo) throw ParseError("bad " + what + " range: " + s);
    std::vector<uint32_t> out;
    for (uint32_t q = lo; q <= hi; ++q) out.push_back(q);
    return out;
  }
  std::vector<uint32_t> out;
  for (const std::string& tok : split(s, '+')) out.push_back(parse_u32(tok, what));
  if (out.empty()) throw ParseError("empty " + what + " list");
  return out;
}

/// `n=7,target=7,controls=0..6,ancilla=8..12` (ancilla may be omitted).
MctSpec parse_spec_string(const std::string& s) {
  MctSpec spec;
  bool have_n = false, have_target = false, have_controls = false;
  for (const std::string& field : split(s, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos)
      throw ParseError("spec field without `=`: " + field);
    const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "n") {
      spec.n = parse_u32(val, "n");
      have_n = true;
    } else if (key == "target") {
      spec.target = parse_u32(val, "target");
      have_target = true;
    } else if (key == "controls") {
      spec.controls = parse_wires(val, "controls");
      have_controls = true;
    } else if (key == "ancilla") {
      spec.ancillae = parse_wires(val, "ancilla");
    } else {
      throw ParseError("unknown spec field: " + key);
    }
  }
  if (!have_n || !have_target || !have_controls)
    throw ParseError("spec needs n=, target=, controls=");
  return spec;
}

uint64_t circuit_ancilla(const Circuit& c, uint64_t n) { return c.width - n - 1; }

Strategy strategy_arg(const std::string& name) {
  if (const auto s = strategy_from_name(name)) return *s;
  throw SpecError("unknown strategy: " + name);
}

void print_report(const StrategySpec& spec, const Circuit& c) {
  const ResourceReport rep = resource_report(c);
  std::cout << "strategy=" << strategy_name(spec.kind) << "\n"
            << "n=" << spec.n << "\n";
  if (spec.kind == Strategy::Tradeoff) std::cout << "m1=" << *spec.m1 << "\n";
  if (spec.kind == Strategy::BinaryTree)
    std::cout << "cleanup=" << (spec.cleanup ? 1 : 0) << "\n";
  std::cout << "width=" << c.width << "\n"
            << "ancilla=" << circuit_ancilla(c, spec.n) << "\n"
            << "toffoli_count=" << rep.toffoli_count << "\n"
            << "toffoli_depth=" << rep.toffoli_depth << "\n"
            << "total_depth=" << rep.total_depth << "\n";
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string strategy;
  uint64_t n = 0;
  uint64_t m1 = 0;
  bool has_m1 = false;
  bool cleanup = false;
  std::string out;
};

int do_synth(const SynthArgs& a) {
  StrategySpec spec{strategy_arg(a.strategy), a.n,
                    a.has_m1 ? std::optional<uint64_t>(a.m1) : std::nullopt,
                    a.cleanup};
  const Circuit c = synthesize(spec);
  if (!a.out.empty()) write_file(a.out, serialize(c));
  print_report(spec, c);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string circuit;
  std::string spec;
  std::string mode = "auto";
  uint64_t samples = 10000;
  uint64_t seed = kDefaultSeed;
  bool dirty_ancilla = false;
};

VerifyMode mode_from_name(const std::string& m) {
  if (m == "auto") return VerifyMode::Auto;
  if (m == "exhaustive") return VerifyMode::Exhaustive;
  if (m == "sample" || m == "sampled") return VerifyMode::Sampled;
  throw ParseError("unknown mode: " + m);
}

int do_verify(const VerifyArgs& a) {
  const Circuit c = parse(read_file(a.circuit));
  const MctSpec spec = a.spec.empty() ? wires_of(c) : parse_spec_string(a.spec);
  VerifyOptions opt;
  opt.mode = mode_from_name(a.mode);
  opt.sample_count = a.samples;
  opt.seed = a.seed;
  opt.check_ancilla_restored = !a.dirty_ancilla;
  const VerificationResult res = verify_mct(c, spec, opt);
  std::cout << "mode=" << res.mode << "\n"
            << "cases=" << res.cases_checked << "\n"
            << "result=" << (res.ok ? "pass" : "fail") << "\n";
  if (!res.ok && res.counterexample) {
    std::cout << "counterexample input=" << res.counterexample->input
              << " expected=" << res.counterexample->expected
              << " actual=" << res.counterexample->actual << "\n";
  }
  return res.ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// lower

struct LowerArgs {
  std::string circuit;
  std::string entry = "jones-td1";
  std::string out;
};

int do_lower(const LowerArgs& a) {
  const Circuit c = parse(read_file(a.circuit));
  const CatalogEntry& e = entry_by_id(a.entry);
  const ResourceReport rep = resource_report(c);
  const LowerReport low = lower_report(c, e);
  std::cout << "entry=" << e.id << "\n"
            << "toffoli_count=" << rep.toffoli_count << "\n"
            << "toffoli_depth=" << rep.toffoli_depth << "\n"
            << "lowered_gates=" << low.lowered_gates << "\n"
            << "t_count=" << low.t_count << "\n"
            << "t_depth=" << low.t_depth << "\n"
            << "clifford=" << low.clifford << "\n"
            << "helper_qubits=" << low.helper_qubits << "\n";
  if (!a.out.empty()) {
    const Circuit ex = expand(c, e);
    write_file(a.out, serialize(ex));
    std::cout << "out=" << a.out << "\n"
              << "expanded_width=" << ex.width << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string strategies = "binary-tree,khattar-1anc,khattar-2anc,tradeoff,gidney-ladder";
  std::string n_list;
  std::string n_range;
  std::string m1_list = "2,3,4";
  std::string verify = "auto";
  uint64_t samples = 10000;
  uint64_t seed = kDefaultSeed;
  std::string entry = "jones-td1";
  std::string out;
};

std::vector<uint64_t> sweep_n_values(const SweepArgs& a) {
  std::vector<uint64_t> ns;
  if (!a.n_list.empty() && !a.n_range.empty())
    throw ParseError("give --n-list or --n-range, not both");
  if (!a.n_list.empty()) {
    for (const std::string& tok : split(a.n_list, ','))
      ns.push_back(parse_u32(tok, "n"));
  } else if (!a.n_range.empty()) {
    const auto parts = split(a.n_range, ':');
    if (parts.size() < 2 || parts.size() > 3)
      throw ParseError("bad --n-range, expected lo:hi[:step]");
    const uint64_t lo = parse_u32(parts[0], "n"), hi = parse_u32(parts[1], "n");
    const uint64_t step = parts.size() == 3 ? parse_u32(parts[2], "step") : 1;
    if (step == 0 || hi < lo) throw ParseError("bad --n-range bounds");
    for (uint64_t n = lo; n <= hi; n += step) ns.push_back(n);
  } else {
    throw ParseError("sweep needs --n-list or --n-range");
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

struct SweepRow {
  std::string text;
  bool failed = false;
};

SweepRow sweep_row(Strategy s, uint64_t n, std::optional<uint64_t> m1,
                   const CatalogEntry& entry, const std::string& verify_mode,
                   uint64_t samples, uint64_t seed) {
  SweepRow row;
  std::ostringstream os;
  os << strategy_name(s) << ',' << n << ',';
  if (m1) os << *m1;
  try {
    const StrategySpec spec{s, n, m1, false};
    const Circuit c = synthesize(spec);
    const ResourceReport rep = resource_report(c);
    const auto formula = strategy_formula(s, n, m1);
    const LowerReport low = lower_report(c, entry);
    os << ',' << circuit_ancilla(c, n) << ',' << rep.toffoli_count << ','
       << rep.toffoli_depth << ',';
    if (formula) os << formula->value;
    os << ',';
    if (formula)
      os << (static_cast<int64_t>(rep.toffoli_depth) -
             static_cast<int64_t>(formula->value));
    os << ',' << low.t_count << ',' << low.t_depth << ',' << lower_bound_depth(n)
       << ',';
    if (verify_mode == "off") {
      os << "skip";
    } else {
      VerifyOptions opt;
      opt.mode = mode_from_name(verify_mode);
      opt.sample_count = samples;
      opt.seed = seed;
      opt.check_ancilla_restored = restores_ancillae(spec);
      const bool ok = verify_mct(c, wires_of(c), opt).ok;
      os << (ok ? "pass" : "fail");
      row.failed = !ok;
    }
  } catch (const std::exception&) {
    os << ",,,,,,,,,fail";
    row.failed = true;
  }
  os << '\n';
  row.text = os.str();
  return row;
}

int do_sweep(const SweepArgs& a) {
  std::vector<Strategy> strategies;
  for (const std::string& name : split(a.strategies, ','))
    strategies.push_back(strategy_arg(name));
  std::sort(strategies.begin(), strategies.end());
  strategies.erase(std::unique(strategies.begin(), strategies.end()),
                   strategies.end());
  const std::vector<uint64_t> ns = sweep_n_values(a);
  std::vector<uint64_t> m1s;
  for (const std::string& tok : split(a.m1_list, ','))
    m1s.push_back(parse_u32(tok, "m1"));
  std::sort(m1s.begin(), m1s.end());
  m1s.erase(std::unique(m1s.begin(), m1s.end()), m1s.end());
  if (a.verify != "off") mode_from_name(a.verify);
  const CatalogEntry& entry = entry_by_id(a.entry);

  std::ostringstream os;
  os << "# seed=0x" << std::hex << std::uppercase << a.seed << std::dec
     << std::nouppercase << "\n"
     << "# entry=" << entry.id << "\n"
     << "# samples=" << a.samples << "\n"
     << "strategy,n,m1,ancilla,toffoli_count,toffoli_depth,formula_depth,delta,"
        "t_count,t_depth,lower_bound,verify\n";
  bool any_failed = false;
  for (Strategy s : strategies) {
    for (uint64_t n : ns) {
      if (n < 3 || (s == Strategy::GidneyLadder && n < 4)) continue;
      if (s == Strategy::Tradeoff) {
        for (uint64_t m1 : m1s) {
          if (m1 < 2 || n < 2 * m1 + 2) continue;
          const SweepRow row = sweep_row(s, n, m1, entry, a.verify, a.samples, a.seed);
          any_failed = any_failed || row.failed;
          os << row.text;
        }
      } else {
        const SweepRow row =
            sweep_row(s, n, std::nullopt, entry, a.verify, a.samples, a.seed);
        any_failed = any_failed || row.failed;
        os << row.text;
      }
    }
  }
  if (a.out.empty())
    std::cout << os.str();
  else
    write_file(a.out, os.str());
  return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
  uint64_t n_max = 64;
  std::string strategies = "binary-tree,khattar-1anc,khattar-2anc,tradeoff,gidney-ladder";
};

int do_audit(const AuditArgs& a) {
  std::vector<Strategy> strategies;
  for (const std::string& name : split(a.strategies, ','))
    strategies.push_back(strategy_arg(name));
  std::sort(strategies.begin(), strategies.end());
  strategies.erase(std::unique(strategies.begin(), strategies.end()),
                   strategies.end());
  const AuditReport rep = run_audit(a.n_max, strategies);
  for (const AuditRow& r : rep.rows) {
    std::cout << strategy_name(r.strategy) << " n=" << r.n;
    if (r.m1) std::cout << " m1=" << *r.m1;
    std::cout << " depth=" << r.measured_depth << " bound=" << r.bound;
    if (r.equality) std::cout << " equality";
    for (const std::string& note : r.notes) std::cout << " [" << note << "]";
    std::cout << "\n";
    for (const std::string& v : r.violations) {
      std::cout << "VIOLATION " << strategy_name(r.strategy) << " n=" << r.n;
      if (r.m1) std::cout << " m1=" << *r.m1;
      std::cout << ": " << v << "\n";
    }
  }
  std::cout << "violations=" << rep.violation_count << "\n";
  return rep.violation_count == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-controlled Toffoli synthesis, verification, and resource accounting"};
  app.require_subcommand(1);

  SynthArgs sa;
  CLI::App* synth = app.add_subcommand("synth", "Synthesize a circuit and report resources");
  synth->add_option("--strategy", sa.strategy,
                    "binary-tree | khattar-1anc | khattar-2anc | tradeoff | gidney-ladder")
      ->required();
  synth->add_option("--n", sa.n, "Number of controls")->required();
  CLI::Option* m1_opt = synth->add_option("--m1", sa.m1, "Step-I ancilla count (tradeoff)");
  synth->add_flag("--cleanup", sa.cleanup, "Binary tree: uncompute the ancilla products");
  synth->add_option("--out", sa.out, "Write the circuit file here");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Check a circuit file against the oracle");
  verify->add_option("--circuit", va.circuit, "Circuit file")->required();
  verify->add_option("--spec", va.spec,
                     "n=<n>,target=<q>,controls=<list>,ancilla=<list> "
                     "(default: from the roles line)");
  verify->add_option("--mode", va.mode, "auto | exhaustive | sample");
  verify->add_option("--samples", va.samples, "Sampled-mode case count");
  verify->add_option("--seed", va.seed, "Sampled-mode seed");
  verify->add_flag("--dirty-ancilla", va.dirty_ancilla,
                   "Do not require ancillae restored to |0>");

  LowerArgs la;
  CLI::App* lower = app.add_subcommand("lower", "Price a Clifford+T lowering");
  lower->add_option("--circuit", la.circuit, "Circuit file")->required();
  lower->add_option("--entry", la.entry, "Catalog entry id");
  lower->add_option("--out", la.out, "Write the expanded Clifford+T circuit here");

  SweepArgs wa;
  CLI::App* sweep = app.add_subcommand("sweep", "Resource table as CSV");
  sweep->add_option("--strategies", wa.strategies, "Comma-separated strategy list");
  sweep->add_option("--n-list", wa.n_list, "Comma-separated control counts");
  sweep->add_option("--n-range", wa.n_range, "lo:hi[:step]");
  sweep->add_option("--m1-list", wa.m1_list, "Tradeoff Step-I ancilla counts");
  sweep->add_option("--verify", wa.verify, "auto | exhaustive | sample | off");
  sweep->add_option("--samples", wa.samples, "Sampled-mode case count");
  sweep->add_option("--seed", wa.seed, "Sampled-mode seed");
  sweep->add_option("--entry", wa.entry, "Lowering entry for t_count/t_depth");
  sweep->add_option("--out", wa.out, "CSV file (default: stdout)");

  AuditArgs aa;
  CLI::App* audit = app.add_subcommand("audit", "Check depth bounds on generated circuits");
  audit->add_option("--n-max", aa.n_max, "Largest control count");
  audit->add_option("--strategies", aa.strategies, "Comma-separated strategy list");

  int rc = 0;
  synth->callback([&] {
    sa.has_m1 = m1_opt->count() > 0;
    rc = do_synth(sa);
  });
  verify->callback([&] { rc = do_verify(va); });
  lower->callback([&] { rc = do_lower(la); });
  sweep->callback([&] { rc = do_sweep(wa); });
  audit->callback([&] { rc = do_audit(aa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
