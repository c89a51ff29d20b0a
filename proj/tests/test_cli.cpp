// Integration tests driving the installed CLI binary (path from the
// HOMOLATTICE_CLI environment variable).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "homolattice/codes.hpp"
#include "homolattice/json_io.hpp"

using namespace homolattice;

namespace {

std::string cli() {
  const char* env = std::getenv("HOMOLATTICE_CLI");
  REQUIRE_MESSAGE(env != nullptr, "HOMOLATTICE_CLI must point at the binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("homolattice_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("build emits the reference matrix verbatim") {
  TempDir tmp;
  CHECK(run("build steane --out-dir " + tmp.path.string()) == 0);
  const std::string delta = slurp(tmp.path / "steane.delta.txt");
  CHECK(parse_matrix(delta) == steane().boundary());
  // byte-for-byte the repo data file
  CHECK(delta == slurp(std::string(HOMOLATTICE_DATA_DIR) + "/delta7.txt"));
  // round-trips through our own parsers
  CssCode code = css_code_from_json(slurp(tmp.path / "steane.code.json"));
  CHECK(code.n == 7);
  CHECK(code.k == 1);
}

TEST_CASE("build 422 emits the two stabilizers") {
  TempDir tmp;
  CHECK(run("build 422 --out-dir " + tmp.path.string()) == 0);
  CssCode code = css_code_from_json(slurp(tmp.path / "422.code.json"));
  REQUIRE(code.x_stabilizers.size() == 1);
  CHECK(code.x_stabilizers[0] == PauliOperator::from_word("XXXX"));
  CHECK(code.z_stabilizers[0] == PauliOperator::from_word("ZZZZ"));
}

TEST_CASE("build rejects malformed files with line diagnostics") {
  TempDir tmp;
  const auto bad = tmp.path / "bad.txt";
  std::ofstream(bad) << "2 2\n10\n1x\n";
  const std::string cmd = cli() + " build " + bad.string() + " --out-dir " +
                          tmp.path.string() + " 2> " +
                          (tmp.path / "err.txt").string();
  const int status = WEXITSTATUS(std::system(cmd.c_str()));
  CHECK(status == 1);
  const std::string err = slurp(tmp.path / "err.txt");
  CHECK(err.find("line 3") != std::string::npos);
}

TEST_CASE("product of a code with the trivial factor returns it") {
  TempDir tmp;
  CHECK(run("product steane,trivial1 --out-dir " + tmp.path.string() +
            " --distance-cap 4") == 0);
  CHECK(parse_matrix(slurp(tmp.path / "steane.x.trivial1.delta.txt")) ==
        steane().boundary());
}

TEST_CASE("product 422,422 report") {
  TempDir tmp;
  CHECK(run("product 422,422 --out-dir " + tmp.path.string()) == 0);
  const std::string report = slurp(tmp.path / "422.x.422.report.json");
  CHECK(report.find("\"k\": 4") != std::string::npos);
  CHECK(report.find("\"sparsity\": 6") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify steane --check boundary-squared") == 0);
  CHECK(run("verify steane --check params --check canonical") == 0);
  CHECK(run("verify prod422 --check band-theorem --axis 1 --budget 1") == 0);
  CHECK(run("verify prod422 --check kernel-identity") == 0);
  CHECK(run("verify prod422 --check distance-window") == 0);
  // budget 2 meets real logicals on a d=2 product: failure exits 1
  CHECK(run("verify prod422 --check band-theorem --axis 1 --budget 2") == 1);
  // CapExceeded surfaces as its own exit code
  CHECK(run("verify prod422 --check band-theorem --axis 1 --budget 1 --cap 10") ==
        3);
  // usage errors
  CHECK(run("verify prod422 --check no-such-check") == 1);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("distance subcommand") {
  TempDir tmp;
  const auto out = tmp.path / "dist.txt";
  const std::string cmd =
      cli() + " distance 422 --cap 3 --jobs 2 > " + out.string();
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("dX=2") != std::string::npos);
  CHECK(text.find("dZ=2") != std::string::npos);
}

TEST_CASE("protocol sweep and schedule dump") {
  TempDir tmp;
  const auto record = tmp.path / "sweep.json";
  const auto sched = tmp.path / "schedule.txt";
  CHECK(run("protocol 422,422 --unencode 2 --layer none --sweep single-fault "
            "--correct end --distance-cap 4 --out " +
            record.string() + " --dump-schedule " + sched.string()) == 0);
  const std::string text = slurp(sched);
  CHECK(text.rfind("QUBITS 16", 0) == 0);
  CHECK(text.find("#STEP 1") != std::string::npos);
  // the schedule parses back through the circuit text reader
  auto [gates, n] = parse_gates(text);
  CHECK(n == 16);
  CHECK_FALSE(gates.empty());
  const std::string json = slurp(record);
  CHECK(json.find("\"sweep\": \"single-fault\"") != std::string::npos);
}

TEST_CASE("protocol with p=0 reports no failures") {
  TempDir tmp;
  const auto record = tmp.path / "p0.json";
  CHECK(run("protocol prod422 --p 0 --trials 10 --seed 3 --correct end --out " +
            record.string()) == 0);
  const std::string json = slurp(record);
  CHECK(json.find("\"logical\": 0") != std::string::npos);
  CHECK(json.find("\"failure_rate\": 0.0") != std::string::npos);
}

TEST_CASE("profile emits a CSV that starts and ends at the code sparsity") {
  TempDir tmp;
  const auto csv_path = tmp.path / "profile.csv";
  CHECK(run("profile prod147 --unencode 2 --out " + csv_path.string()) == 0);
  std::istringstream csv(slurp(csv_path));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "step,max_stabilizer_weight");
  std::vector<std::string> rows;
  while (std::getline(csv, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() > 2);
  CHECK(rows.front() == "0,15");
  CHECK(rows.back().substr(rows.back().find(',') + 1) == "15");
}

TEST_CASE("HOMOLATTICE_SEED is the seed fallback") {
  TempDir tmp;
  const auto a = tmp.path / "a.json";
  const auto b = tmp.path / "b.json";
  const std::string base = " protocol prod422 --p 0.01 --trials 300 "
                           "--correct end --out ";
  REQUIRE(WEXITSTATUS(std::system(
              ("HOMOLATTICE_SEED=55 " + cli() + base + a.string() +
               " >/dev/null").c_str())) == 0);
  REQUIRE(WEXITSTATUS(std::system(
              (cli() + base + b.string() + " --seed 55 >/dev/null").c_str())) ==
          0);
  CHECK(slurp(a) == slurp(b));
}
