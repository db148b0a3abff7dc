// Acceptance gate: one pass/fail line per criterion, sub-checks indented.
// A criterion annotated "documented" is expected to fail at the recorded
// points; the gate exits 0 only when every criterion matches expectation.
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <mctsynth/formulas.hpp>
#include <mctsynth/reconcile.hpp>
#include <mctsynth/revsim.hpp>
#include <mctsynth/synth.hpp>
#include <mctsynth/tgate.hpp>

using namespace mctsynth;
namespace fs = std::filesystem;

namespace {

enum class Outcome { Pass, DocumentedFail, Unexpected };

int g_passed = 0, g_documented = 0, g_unexpected = 0;
std::ostringstream g_detail;

void sub(const std::string& line) { g_detail << "    " << line << "\n"; }

void finish(int idx, const std::string& name, Outcome out) {
  const char* tag = out == Outcome::Pass            ? "PASS"
                    : out == Outcome::DocumentedFail ? "FAIL (documented)"
                                                     : "FAIL (unexpected)";
  std::cout << "criterion " << idx << " " << tag << " - " << name << "\n"
            << g_detail.str();
  g_detail.str("");
  if (out == Outcome::Pass) ++g_passed;
  else if (out == Outcome::DocumentedFail) ++g_documented;
  else ++g_unexpected;
}

/// Every strategy instance under test: plain and cleanup tree, both chains,
/// the overlap family at m1 in {2,3,4}, and the ladder.
std::vector<StrategySpec> instances(uint64_t n) {
  std::vector<StrategySpec> out;
  if (n >= 2) out.push_back({Strategy::BinaryTree, n, {}, false});
  if (n >= 3) out.push_back({Strategy::BinaryTree, n, {}, true});
  out.push_back({Strategy::Khattar1Anc, n, {}, false});
  out.push_back({Strategy::Khattar2Anc, n, {}, false});
  for (uint64_t m1 : {2, 3, 4})
    if (n >= 2 * m1 + 2) out.push_back({Strategy::Tradeoff, n, m1, false});
  if (n >= 4) out.push_back({Strategy::GidneyLadder, n, {}, false});
  return out;
}

std::string describe(const StrategySpec& s) {
  std::string out{strategy_name(s.kind)};
  out += " n=" + std::to_string(s.n);
  if (s.m1) out += " m1=" + std::to_string(*s.m1);
  if (s.cleanup) out += " cleanup";
  return out;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  uint64_t checked = 0;
  std::vector<std::string> failures;
  for (uint64_t n = 3; n <= 11; ++n) {
    for (const StrategySpec& spec : instances(n)) {
      Circuit c = synthesize(spec);
      VerifyOptions opt;
      opt.mode = VerifyMode::Exhaustive;
      opt.check_ancilla_restored = restores_ancillae(spec);
      auto r = verify_mct(c, wires_of(c), opt);
      checked += r.cases_checked;
      if (!r.ok) failures.push_back(describe(spec) + " exhaustive");
    }
  }
  for (uint64_t n : {16, 32, 64}) {
    for (const StrategySpec& spec : instances(n)) {
      Circuit c = synthesize(spec);
      VerifyOptions opt;
      opt.mode = VerifyMode::Sampled;
      opt.sample_count = 10000;
      opt.check_ancilla_restored = restores_ancillae(spec);
      auto r = verify_mct(c, wires_of(c), opt);
      checked += r.cases_checked;
      if (!r.ok || r.cases_checked != 10000)
        failures.push_back(describe(spec) + " sampled");
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  sub("exhaustive n in [3,11] + sampled 10^4 at n in {16,32,64}: " +
      std::to_string(checked) + " cases in " + std::to_string(secs) + "s");
  for (const std::string& f : failures) sub("failed: " + f);
  if (secs >= 60.0) sub("over the 60s budget");
  finish(1, "correctness oracle on every strategy",
         failures.empty() && secs < 60.0 ? Outcome::Pass : Outcome::Unexpected);
}

void criterion2() {
  bool ok = true;
  auto pin = [&](const char* what, uint64_t got, uint64_t want) {
    if (got != want) {
      ok = false;
      sub(std::string("pin miss: ") + what + " got " + std::to_string(got) +
          " want " + std::to_string(want));
    }
  };
  ResourceReport k32 = resource_report(synthesize({Strategy::Khattar2Anc, 32, {}, false}));
  pin("khattar-2anc n=32 depth", k32.toffoli_depth, 19);
  pin("tradeoff n=32 m1=3 depth",
      resource_report(synthesize({Strategy::Tradeoff, 32, 3, false})).toffoli_depth, 14);
  pin("tradeoff n=32 m1=4 depth",
      resource_report(synthesize({Strategy::Tradeoff, 32, 4, false})).toffoli_depth, 14);
  ResourceReport b7 = resource_report(synthesize({Strategy::BinaryTree, 7, {}, false}));
  pin("binary-tree n=7 depth", b7.toffoli_depth, 3);
  pin("binary-tree n=7 count", b7.toffoli_count, 6);
  pin("binary-tree n=7 ancilla", b7.ancilla_count, 5);
  ResourceReport k10 = resource_report(synthesize({Strategy::Khattar1Anc, 10, {}, false}));
  pin("khattar-1anc n=10 count", k10.toffoli_count, 17);
  pin("khattar-1anc n=10 depth", k10.toffoli_depth, 17);

  uint32_t d10 = resource_report(synthesize({Strategy::Khattar2Anc, 10, {}, false})).toffoli_depth;
  if (d10 < 11 || d10 > 15) {
    ok = false;
    sub("khattar-2anc n=10 depth " + std::to_string(d10) + " outside [11,15]");
  } else {
    sub("khattar-2anc n=10 depth " + std::to_string(d10) + " within [11,15]");
  }
  std::string csv = reconcile_csv(reconcile(Strategy::Khattar2Anc, 10, 10));
  if (csv.find("khattar-2anc,10,,3,second,12,13,1\n") == std::string::npos) {
    ok = false;
    sub("reconciliation CSV misses the n=10 delta row; got: " + csv);
  } else {
    sub("reconciliation CSV records the n=10 delta (+1)");
  }
  finish(2, "worked-example depths, exact pins", ok ? Outcome::Pass : Outcome::Unexpected);
}

void criterion3() {
  uint64_t rows = 0;
  std::vector<std::string> misses;
  for (uint64_t n = 4; n <= 128; ++n) {
    auto expect = [&](const StrategySpec& s, uint64_t want) {
      ResourceReport r = resource_report(synthesize(s));
      ++rows;
      if (r.toffoli_count != want)
        misses.push_back(describe(s) + " count " + std::to_string(r.toffoli_count) +
                         " want " + std::to_string(want));
      return r;
    };
    expect({Strategy::BinaryTree, n, {}, false}, n - 1);
    expect({Strategy::Khattar1Anc, n, {}, false}, 2 * n - 3);
    expect({Strategy::Khattar2Anc, n, {}, false}, 2 * n - 3);
    for (uint64_t m1 = 2; m1 <= 8; ++m1)
      if (n >= 2 * m1 + 2) expect({Strategy::Tradeoff, n, m1, false}, 2 * n - m1 - 3);
    ResourceReport g = expect({Strategy::GidneyLadder, n, {}, false}, (n - 3) + 1);
    if (g.cccx_count != 1)
      misses.push_back("gidney-ladder n=" + std::to_string(n) + " cccx_count " +
                       std::to_string(g.cccx_count));
  }
  sub(std::to_string(rows) + " instances over n in [4,128]");
  for (const std::string& m : misses) sub("miss: " + m);
  finish(3, "count formulas, exact", misses.empty() ? Outcome::Pass : Outcome::Unexpected);
}

void criterion4() {
  bool ok = true;
  auto anchor = [&](const char* what, uint64_t got, uint64_t want) {
    if (got != want) {
      ok = false;
      sub(std::string("anchor miss: ") + what + " got " + std::to_string(got) +
          " want " + std::to_string(want));
    }
  };
  anchor("total(10)", khattar2_total_depth(10).value, 12);
  anchor("total(32)", khattar2_total_depth(32).value, 18);
  anchor("tradeoff total(32,3)", tradeoff_total_depth(32, 3).value, 16);
  anchor("tradeoff step2(32,3)", tradeoff_step2_depth(32, 3).value, 5);
  anchor("tradeoff sigma(32,3)", tradeoff_sigma(32, 3).value, 6);

  // Reconciliation band over the overlap family: every valid instance either
  // carries |measured - formula| <= 2 or sits below the family's first
  // interval, and those blanks are exactly the known list.
  const std::set<std::pair<uint64_t, uint64_t>> expected_blanks = {
      {8, 3}, {10, 4}, {11, 4}, {12, 4}};
  std::set<std::pair<uint64_t, uint64_t>> blanks;
  uint64_t rows = 0, band_misses = 0;
  for (uint64_t m1 : {2, 3, 4}) {
    std::set<uint64_t> seen;
    for (const ReconcileRow& r : reconcile(Strategy::Tradeoff, 8, 512, m1)) {
      ++rows;
      seen.insert(r.n);
      if (!r.delta) {
        blanks.insert({r.n, m1});
        continue;
      }
      if (*r.delta > 2 || *r.delta < -2) {
        ++band_misses;
        sub("band miss: tradeoff n=" + std::to_string(r.n) + " m1=" + std::to_string(m1) +
            " delta " + std::to_string(*r.delta));
      }
    }
    // Zero silent failures: one row per valid n.
    for (uint64_t n = 8; n <= 512; ++n)
      if (n >= 2 * m1 + 2 && !seen.count(n)) {
        ok = false;
        sub("missing row: tradeoff n=" + std::to_string(n) + " m1=" + std::to_string(m1));
      }
  }
  sub(std::to_string(rows) + " reconcile rows over n in [8,512], m1 in {2,3,4}; " +
      std::to_string(blanks.size()) + " below-domain blanks");
  if (band_misses) ok = false;
  if (blanks != expected_blanks) {
    ok = false;
    for (const auto& [n, m1] : blanks)
      if (!expected_blanks.count({n, m1}))
        sub("unexpected blank: n=" + std::to_string(n) + " m1=" + std::to_string(m1));
    for (const auto& [n, m1] : expected_blanks)
      if (!blanks.count({n, m1}))
        sub("missing blank: n=" + std::to_string(n) + " m1=" + std::to_string(m1));
  }

  // The two-ancilla family's own delta, pinned where the worked examples sit
  // and reported (not banded) across the range.
  ReconcileRow r10 = reconcile_row(Strategy::Khattar2Anc, 10, {});
  ReconcileRow r32 = reconcile_row(Strategy::Khattar2Anc, 32, {});
  if (!r10.delta || *r10.delta != 1 || !r32.delta || *r32.delta != 1) {
    ok = false;
    sub("khattar-2anc delta pins off (want +1 at n=10 and n=32)");
  }
  int64_t max_delta = 0;
  uint64_t max_n = 0;
  for (const ReconcileRow& r : reconcile(Strategy::Khattar2Anc, 8, 512))
    if (r.delta && *r.delta > max_delta) {
      max_delta = *r.delta;
      max_n = r.n;
    }
  sub("khattar-2anc max reported delta +" + std::to_string(max_delta) + " at n=" +
      std::to_string(max_n) + " (informational; family is not banded)");
  finish(4, "closed-form depth anchors and reconciliation band",
         ok ? Outcome::Pass : Outcome::Unexpected);
}

void criterion5() {
  bool floor_ok = true, tree_ok = true, chain_ok = true, formula_ok = true, cube_ok = true;
  std::set<std::pair<uint64_t, uint64_t>> tradeoff_misses;  // (n, m1)
  const std::set<std::pair<uint64_t, uint64_t>> documented = {
      {8, 3}, {9, 3}, {10, 3}, {10, 4}, {11, 4}, {12, 4}, {17, 3}};

  for (uint64_t n = 3; n <= 256; ++n) {
    const uint32_t b = ceil_log2(n);
    for (const StrategySpec& spec : instances(n)) {
      Circuit c = synthesize(spec);
      ResourceReport rep = resource_report(c);
      if (bound_depth(c) < b) {
        floor_ok = false;
        sub("floor miss: " + describe(spec));
      }
      if (spec.kind == Strategy::BinaryTree && !spec.cleanup && rep.toffoli_depth != b) {
        tree_ok = false;
        sub("tree tightness miss at n=" + std::to_string(n));
      }
      const bool conditionally_clean =
          spec.kind == Strategy::Khattar1Anc || spec.kind == Strategy::Khattar2Anc ||
          spec.kind == Strategy::Tradeoff;
      if (conditionally_clean && n >= 8) {
        const uint32_t half = compute_half_depth(c, wires_of(c).target);
        const bool strict = rep.toffoli_depth > 2 * b && half > b;
        if (!strict) {
          if (spec.kind == Strategy::Tradeoff) {
            tradeoff_misses.insert({n, *spec.m1});
          } else {
            chain_ok = false;
            sub("chain strictness miss: " + describe(spec));
          }
        }
      }
      if (spec.kind == Strategy::Tradeoff && n >= formula_domain_min(*spec.m1) && n >= 8) {
        if (tradeoff_total_depth(n, *spec.m1).value <= 2 * b) {
          formula_ok = false;
          sub("closed-form strictness miss: " + describe(spec));
        }
      }
    }
    if (n >= 28 && !khattar2_lower_bound_check(n)) {
      cube_ok = false;
      sub("cube floor miss at n=" + std::to_string(n));
    }
  }

  sub(std::string("universal depth floor (3-controlled weighted 2): ") +
      (floor_ok ? "pass" : "FAIL"));
  sub(std::string("binary-tree meets the floor with equality: ") + (tree_ok ? "pass" : "FAIL"));
  sub(std::string("chain strictness above the doubled floor (n >= 8): ") +
      (chain_ok ? "pass" : "FAIL"));
  sub(std::string("tradeoff closed-form strictness on its domain: ") +
      (formula_ok ? "pass" : "FAIL"));
  sub(std::string("two-ancilla depth >= 3*log2(n) for n >= 28: ") + (cube_ok ? "pass" : "FAIL"));

  std::ostringstream pts;
  for (const auto& [n, m1] : tradeoff_misses) pts << " (" << n << "," << m1 << ")";
  sub("tradeoff measured strictness (n >= 8): FAIL at" + pts.str() +
      " - the greedy row overlap touches the doubled floor at these sizes; "
      "recorded as a documented deviation");

  const bool others_ok = floor_ok && tree_ok && chain_ok && formula_ok && cube_ok;
  Outcome out;
  if (others_ok && tradeoff_misses == documented) out = Outcome::DocumentedFail;
  else out = Outcome::Unexpected;
  if (!others_ok) sub("unexpected: a sub-check other than the documented one failed");
  if (tradeoff_misses != documented)
    sub("unexpected: documented point list does not match the observed misses");
  finish(5, "depth bound properties over n in [3,256]", out);
}

void criterion6() {
  bool ok = true;
  for (const CatalogEntry& e : catalog()) {
    EntryCheck chk = verify_entry(e, 1e-10);
    if (!chk.ok || chk.checked != !e.gates.empty()) {
      ok = false;
      sub("entry check failed: " + std::string(e.id));
    }
  }
  sub("all templated entries match the doubly-controlled X at 1e-10");

  struct Want {
    std::string_view id;
    uint32_t helpers, t_count, t_depth, clifford, depth;
  };
  const Want wants[] = {
      {"nc-td6", 0, 7, 6, 9, 12},     {"amy-td4", 0, 7, 4, 8, 8},
      {"amy-td3", 0, 7, 3, 9, 9},     {"amy-td2", 1, 7, 2, 12, 11},
      {"selinger-td1", 4, 7, 1, 18, 8}, {"jones-td1", 1, 4, 1, 11, 8},
      {"gidney-and", 0, 4, 2, 9, 9},
  };
  for (const Want& w : wants) {
    const CatalogEntry& e = entry_by_id(w.id);
    if (e.helpers != w.helpers || e.t_count != w.t_count || e.t_depth != w.t_depth ||
        e.clifford != w.clifford || e.depth != w.depth) {
      ok = false;
      sub("catalog field drift: " + std::string(w.id));
    }
  }
  sub("catalog metric table field-exact for all 7 entries");

  auto pin = [&](const char* what, uint64_t got, uint64_t want) {
    if (got != want) {
      ok = false;
      sub(std::string("pricing miss: ") + what + " got " + std::to_string(got) +
          " want " + std::to_string(want));
    }
  };
  Circuit k10 = synthesize({Strategy::Khattar1Anc, 10, {}, false});
  pin("khattar-1anc n=10 t_count", lower_report(k10, entry_by_id("jones-td1")).t_count, 68);
  Circuit b7 = synthesize({Strategy::BinaryTree, 7, {}, false});
  LowerReport bj = lower_report(b7, entry_by_id("jones-td1"));
  pin("binary-tree n=7 + jones t_count", bj.t_count, 24);
  pin("binary-tree n=7 + jones t_depth", bj.t_depth, 3);
  pin("binary-tree n=7 + gidney-and t_depth",
      lower_report(b7, entry_by_id("gidney-and")).t_depth, 4);
  Circuit g10 = synthesize({Strategy::GidneyLadder, 10, {}, false});
  pin("gidney-ladder n=10 t_count", lower_report(g10, entry_by_id("jones-td1")).t_count, 34);
  sub("lowering spot checks pinned");
  finish(6, "Clifford+T catalog and lowering accounting", ok ? Outcome::Pass : Outcome::Unexpected);
}

void criterion7(const char* bin) {
  fs::path dir = fs::temp_directory_path() / "mct_acceptance";
  fs::create_directories(dir);
  const fs::path a = dir / "sweep_a.csv", b = dir / "sweep_b.csv";
  const std::string args =
      " sweep --strategies binary-tree,khattar-1anc,khattar-2anc,tradeoff,gidney-ladder"
      " --n-list 8,10,16,32 --m1-list 2,3,4 --out ";
  bool ok = true;
  for (const fs::path& out : {a, b}) {
    const std::string cmd = std::string(bin) + args + out.string() + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) {
      ok = false;
      sub("sweep invocation failed: " + cmd);
    }
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string ca = slurp(a), cb = slurp(b);
  if (ca.empty() || ca != cb) {
    ok = false;
    sub("outputs differ or are empty");
  } else {
    sub(std::to_string(ca.size()) + " bytes, byte-identical across two runs");
  }
  finish(7, "sweep determinism", ok ? Outcome::Pass : Outcome::Unexpected);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7(MCT_BIN_PATH);
  std::cout << "summary: " << g_passed << " passed, " << g_documented
            << " documented failure" << (g_documented == 1 ? "" : "s") << ", "
            << g_unexpected << " unexpected\n";
  // The gate is green when nothing unexpected happened: six criteria pass and
  // the depth-strictness criterion fails exactly at its documented points.
  const bool expectation_met = g_unexpected == 0 && g_passed == 6 && g_documented == 1;
  return expectation_met ? 0 : 1;
}
