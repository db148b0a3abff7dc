#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <mctsynth/circuit.hpp>
#include <mctsynth/formulas.hpp>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;  // stdout and stderr combined
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "mct_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CmdResult run_cli(const std::string& args) {
  static int serial = 0;
  const fs::path cap = scratch_dir() / ("cap" + std::to_string(serial++) + ".txt");
  const std::string cmd =
      std::string(MCT_BIN_PATH) + " " + args + " >" + cap.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CmdResult res;
  res.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(cap);
  std::ostringstream os;
  os << in.rdbuf();
  res.out = os.str();
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// CSV body rows (comment and header lines skipped), split into fields.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (line.empty() || line[0] == '#' || line.starts_with("strategy,")) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("synth writes the circuit and reports resources") {
  const fs::path out = scratch_dir() / "b7.mct";
  CmdResult r = run_cli("synth --strategy binary-tree --n 7 --out " + out.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("strategy=binary-tree\n") != std::string::npos);
  CHECK(r.out.find("toffoli_count=6\n") != std::string::npos);
  CHECK(r.out.find("toffoli_depth=3\n") != std::string::npos);
  CHECK(r.out.find("ancilla=5\n") != std::string::npos);

  mctsynth::Circuit c = mctsynth::parse(slurp(out));
  CHECK(c.width == 13);
  CHECK(c.gates.size() == 6);
}

TEST_CASE("synth reports the trade-off pins") {
  CmdResult r = run_cli("synth --strategy tradeoff --n 32 --m1 3");
  CHECK(r.status == 0);
  CHECK(r.out.find("m1=3\n") != std::string::npos);
  CHECK(r.out.find("toffoli_count=58\n") != std::string::npos);
  CHECK(r.out.find("toffoli_depth=14\n") != std::string::npos);
}

TEST_CASE("synth rejects invalid parameters with exit 2") {
  CHECK(run_cli("synth --strategy tradeoff --n 6 --m1 3").status == 2);
  CHECK(run_cli("synth --strategy no-such --n 7").status == 2);
  CHECK(run_cli("synth --strategy binary-tree").status == 2);  // missing --n
  CHECK(run_cli("synth --strategy khattar-1anc --n 7 --m1 2").status == 2);
}

TEST_CASE("verify accepts a self-describing circuit file") {
  const fs::path out = scratch_dir() / "b7c.mct";
  REQUIRE(run_cli("synth --strategy binary-tree --n 7 --cleanup --out " + out.string()).status == 0);
  CmdResult r = run_cli("verify --circuit " + out.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("mode=exhaustive\n") != std::string::npos);
  CHECK(r.out.find("cases=256\n") != std::string::npos);
  CHECK(r.out.find("result=pass\n") != std::string::npos);
}

TEST_CASE("verify demands restored ancillae unless told otherwise") {
  const fs::path out = scratch_dir() / "b7plain.mct";
  REQUIRE(run_cli("synth --strategy binary-tree --n 7 --out " + out.string()).status == 0);
  CmdResult strict = run_cli("verify --circuit " + out.string());
  CHECK(strict.status == 1);
  CHECK(strict.out.find("result=fail\n") != std::string::npos);
  CmdResult relaxed = run_cli("verify --circuit " + out.string() + " --dirty-ancilla");
  CHECK(relaxed.status == 0);
  CHECK(relaxed.out.find("result=pass\n") != std::string::npos);
}

TEST_CASE("verify pinpoints a tampered circuit") {
  const fs::path good = scratch_dir() / "k6.mct";
  REQUIRE(run_cli("synth --strategy khattar-1anc --n 6 --out " + good.string()).status == 0);
  std::string text = slurp(good);
  const std::string from = "ccx 0 1 7";
  auto pos = text.find(from);
  if (pos == std::string::npos) pos = text.find("ccx");
  REQUIRE(pos != std::string::npos);
  // Retarget one gate so the circuit computes something else.
  text.replace(pos, 3, "x 2 #");
  const fs::path bad = scratch_dir() / "k6bad.mct";
  std::ofstream(bad) << text;
  CmdResult r = run_cli("verify --circuit " + bad.string());
  CHECK(r.status == 1);
  CHECK(r.out.find("result=fail\n") != std::string::npos);
  CHECK(r.out.find("counterexample input=") != std::string::npos);
}

TEST_CASE("verify rejects a spec that does not cover the file") {
  const fs::path out = scratch_dir() / "k6spec.mct";
  REQUIRE(run_cli("synth --strategy khattar-1anc --n 6 --out " + out.string()).status == 0);
  // Width is 8: omitting the ancilla leaves qubit 7 unclaimed.
  CmdResult r = run_cli("verify --circuit " + out.string() +
                        " --spec n=6,target=6,controls=0..5");
  CHECK(r.status == 2);
  CmdResult ok = run_cli("verify --circuit " + out.string() +
                         " --spec n=6,target=6,controls=0..5,ancilla=7");
  CHECK(ok.status == 0);
}

TEST_CASE("lower prices the chain under the measurement entry") {
  const fs::path out = scratch_dir() / "k10.mct";
  REQUIRE(run_cli("synth --strategy khattar-1anc --n 10 --out " + out.string()).status == 0);
  CmdResult r = run_cli("lower --circuit " + out.string() + " --entry jones-td1");
  CHECK(r.status == 0);
  CHECK(r.out.find("entry=jones-td1\n") != std::string::npos);
  CHECK(r.out.find("t_count=68\n") != std::string::npos);
  CHECK(r.out.find("t_depth=17\n") != std::string::npos);
  CHECK(r.out.find("helper_qubits=17\n") != std::string::npos);
}

TEST_CASE("lower expands plain circuits and refuses paired ones") {
  const fs::path plain = scratch_dir() / "b4.mct";
  REQUIRE(run_cli("synth --strategy binary-tree --n 4 --out " + plain.string()).status == 0);
  const fs::path expanded = scratch_dir() / "b4t.mct";
  CmdResult r = run_cli("lower --circuit " + plain.string() + " --entry nc-td6 --out " +
                        expanded.string());
  CHECK(r.status == 0);
  CHECK(r.out.find("expanded_width=7\n") != std::string::npos);
  mctsynth::Circuit x = mctsynth::parse(slurp(expanded));
  CHECK(x.width == 7);
  CHECK(mctsynth::validate(x).empty());

  const fs::path paired = scratch_dir() / "b7c2.mct";
  REQUIRE(run_cli("synth --strategy binary-tree --n 7 --cleanup --out " + paired.string()).status == 0);
  CHECK(run_cli("lower --circuit " + paired.string() + " --entry nc-td6 --out " +
                (scratch_dir() / "nope.mct").string())
            .status == 2);
  CHECK(run_cli("lower --circuit " + plain.string() + " --entry jones-td1 --out " +
                (scratch_dir() / "nope2.mct").string())
            .status == 2);
  CHECK(run_cli("lower --circuit " + plain.string() + " --entry no-such").status == 2);
}

TEST_CASE("sweep emits the chain count law") {
  CmdResult r = run_cli("sweep --strategies khattar-1anc --n-range 5:12");
  CHECK(r.status == 0);
  CHECK(r.out.find("# seed=0xC0FFEE\n") != std::string::npos);
  CHECK(r.out.find("# entry=jones-td1\n") != std::string::npos);
  CHECK(r.out.find("strategy,n,m1,ancilla,toffoli_count,toffoli_depth,formula_depth,"
                   "delta,t_count,t_depth,lower_bound,verify\n") != std::string::npos);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 8);
  for (size_t i = 0; i < rows.size(); ++i) {
    const uint64_t n = 5 + i;
    CHECK(rows[i][0] == "khattar-1anc");
    CHECK(rows[i][1] == std::to_string(n));
    CHECK(rows[i][2].empty());
    CHECK(rows[i][3] == "1");
    CHECK(rows[i][4] == std::to_string(2 * n - 3));
    CHECK(rows[i][5] == std::to_string(2 * n - 3));
    CHECK(rows[i][7] == "0");
    CHECK(rows[i][11] == "pass");
  }
}

TEST_CASE("sweep reports the trade-off depth row at n=32") {
  CmdResult r = run_cli("sweep --strategies tradeoff --n-list 32 --m1-list 2,3,4,5");
  CHECK(r.status == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  const std::vector<std::string> m1s = {"2", "3", "4", "5"};
  const std::vector<std::string> depths = {"16", "14", "14", "16"};
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][2] == m1s[i]);
    CHECK(rows[i][5] == depths[i]);
    CHECK(rows[i][4] == std::to_string(64 - (5 + i)));  // 2n - m1 - 3
    CHECK(rows[i][11] == "pass");
  }
  // Formula column tracks the measured depth within the tolerance band.
  CHECK(rows[1][6] == "16");
  CHECK(rows[1][7] == "-2");
}

TEST_CASE("sweep tree rows meet the log lower bound with equality") {
  CmdResult r = run_cli("sweep --strategies binary-tree --n-range 3:11");
  CHECK(r.status == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 9);
  for (size_t i = 0; i < rows.size(); ++i) {
    const uint64_t n = 3 + i;
    CHECK(rows[i][5] == std::to_string(mctsynth::ceil_log2(n)));
    CHECK(rows[i][10] == std::to_string(mctsynth::ceil_log2(n)));
    CHECK(rows[i][11] == "pass");
  }
}

TEST_CASE("identical sweep invocations are byte-identical") {
  const std::string args =
      "sweep --strategies binary-tree,khattar-2anc,tradeoff --n-list 8,16,32 "
      "--m1-list 2,3 --seed 1234 --out ";
  const fs::path a = scratch_dir() / "sweep_a.csv";
  const fs::path b = scratch_dir() / "sweep_b.csv";
  REQUIRE(run_cli(args + a.string()).status == 0);
  REQUIRE(run_cli(args + b.string()).status == 0);
  const std::string ca = slurp(a), cb = slurp(b);
  CHECK(ca == cb);
  CHECK(ca.find("# seed=0x4D2\n") != std::string::npos);
}

TEST_CASE("sweep argument errors exit 2") {
  CHECK(run_cli("sweep --strategies binary-tree").status == 2);  // no sizes
  CHECK(run_cli("sweep --strategies binary-tree --n-list 8 --n-range 3:5").status == 2);
  CHECK(run_cli("sweep --strategies binary-tree --n-range 9:3").status == 2);
  CHECK(run_cli("sweep --strategies binary-tree --n-list 8 --verify bogus").status == 2);
  CHECK(run_cli("sweep --strategies binary-tree --n-list 8 --entry no-such").status == 2);
}

TEST_CASE("audit reports bound checks and no violations at desk sizes") {
  CmdResult r = run_cli("audit --n-max 32");
  CHECK(r.status == 0);
  CHECK(r.out.find("violations=0\n") != std::string::npos);
  CHECK(r.out.find("binary-tree n=32 depth=5 bound=5 equality\n") != std::string::npos);
  CHECK(r.out.find("VIOLATION") == std::string::npos);
  // The trade-off rows below the formula domain carry the tree-regime note.
  CHECK(r.out.find("[tree-regime]") != std::string::npos);
}
