#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hzx/cli.hpp"
#include "support.hpp"

using namespace hzx;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const char* name) {
  return (test::circuits_dir() / name).string();
}

fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("propagate prints the terminal string") {
  const CliResult r = run({"propagate", fixture("bell.qc"), "+ZZ"});
  CHECK(r.code == 0);
  CHECK(r.out == "-YY\n");
}

TEST_CASE("propagate on the empty circuit echoes the input") {
  const CliResult r = run({"propagate", fixture("empty1.qc"), "+X"});
  CHECK(r.code == 0);
  CHECK(r.out == "+X\n");
}

TEST_CASE("propagate accepts signed strings after the separator") {
  const CliResult r = run({"propagate", fixture("empty1.qc"), "--", "-Y"});
  CHECK(r.code == 0);
  CHECK(r.out == "-Y\n");
}

TEST_CASE("propagate cross-checks against the oracles") {
  const CliResult r =
      run({"propagate", fixture("ghz3.qc"), "+ZII", "--check"});
  CHECK(r.code == 0);
  CHECK(r.out == "+XXX\n");
  CHECK(r.err.empty());
}

TEST_CASE("verbose propagation logs each step to stderr") {
  const CliResult r =
      run({"--verbose", "propagate", fixture("bell.qc"), "+ZI"});
  CHECK(r.code == 0);
  CHECK(r.out == "+XX\n");
  CHECK(r.err.find("H1 @ gate 0") != std::string::npos);
  CHECK(r.err.find("R1 @ gate 1") != std::string::npos);

  // The flag also reaches the parser after the subcommand name.
  const CliResult tail =
      run({"propagate", fixture("bell.qc"), "+ZI", "--verbose"});
  CHECK(tail.code == 0);
  CHECK(tail.err == r.err);
}

TEST_CASE("propagate writes replayable trace lines") {
  const fs::path path = temp_file("hzx_cli_trace.jsonl");
  fs::remove(path);
  const CliResult r = run(
      {"propagate", fixture("ghz3.qc"), "+ZII", "--trace", path.string()});
  REQUIRE(r.code == 0);
  std::istringstream lines(test::read_file(path));
  std::string line;
  std::vector<nlohmann::json> steps;
  while (std::getline(lines, line))
    steps.push_back(nlohmann::json::parse(line));
  REQUIRE(steps.size() == 3);
  CHECK(steps[0]["rule"] == "H1");
  CHECK(steps[0]["before"] == "Z");
  CHECK(steps[0]["after"] == "X");
  CHECK(steps[0]["phase"] == "+");
  CHECK(steps[1]["rule"] == "R1");
  CHECK(steps[2]["gate"] == 2);
  fs::remove(path);
}

TEST_CASE("propagate dumps the circuit matrix") {
  const fs::path path = temp_file("hzx_cli_matrix.csv");
  fs::remove(path);
  const CliResult r = run({"propagate", fixture("bell.qc"), "+ZZ",
                           "--dump-matrix", path.string()});
  REQUIRE(r.code == 0);
  const std::string csv = test::read_file(path);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  fs::remove(path);
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run({"propagate", fixture("bell.qc"), "+Z"}).code == 2);  // length
  CHECK(run({"propagate", "/nonexistent.qc", "+Z"}).code == 2);
  CHECK(run({"propagate", fixture("bell.qc"), "+ZW"}).code == 2);
  CHECK(run({"propagate", fixture("bell.qc")}).code == 2);  // missing pauli
  CHECK(run({}).code == 2);                                 // no subcommand
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"propagate", fixture("bell.qc"), "+ZZ", "--bogus"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("propagate") != std::string::npos);
  CHECK(r.out.find("parent-hamiltonian") != std::string::npos);
}

TEST_CASE("stabilizers prints the generator images in wire order") {
  const CliResult bell = run({"stabilizers", fixture("bell.qc"), "--check"});
  CHECK(bell.code == 0);
  CHECK(bell.out == "+XX\n+ZZ\n");

  const CliResult ghz = run({"stabilizers", fixture("ghz3.qc")});
  CHECK(ghz.code == 0);
  CHECK(ghz.out == "+XXX\n+ZZI\n+IZZ\n");

  const CliResult one = run({"stabilizers", fixture("empty1.qc")});
  CHECK(one.code == 0);
  CHECK(one.out == "+Z\n");
}

TEST_CASE("confluence campaign reports success") {
  const fs::path report = temp_file("hzx_cli_confluence.json");
  fs::remove(report);
  const CliResult r =
      run({"confluence", "--qubits", "3", "--gates", "8", "--orders", "2",
           "--instances", "5", "--seed", "3", "--report", report.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("5 instances x 2 orders") != std::string::npos);
  CHECK(r.out.find("half-bound fraction") != std::string::npos);

  const nlohmann::json doc = nlohmann::json::parse(test::read_file(report));
  CHECK(doc["summary"]["pass"] == true);
  CHECK(doc["instances"].size() == 5);
  CHECK(doc["spec"]["seed"] == 3);
  fs::remove(report);
}

TEST_CASE("confluence reports are byte-stable for a fixed seed") {
  const fs::path a = temp_file("hzx_cli_conf_a.json");
  const fs::path b = temp_file("hzx_cli_conf_b.json");
  const std::vector<std::string> base = {"confluence",    "--qubits", "3",
                                         "--gates",       "6",        "--orders",
                                         "2",             "--instances", "4",
                                         "--seed",        "9"};
  auto with_report = [&](const fs::path& p) {
    std::vector<std::string> args = base;
    args.push_back("--report");
    args.push_back(p.string());
    return args;
  };
  REQUIRE(run(with_report(a)).code == 0);
  REQUIRE(run(with_report(b)).code == 0);
  CHECK(test::read_file(a) == test::read_file(b));
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("confluence rejects non-positive campaign parameters") {
  CHECK(run({"confluence", "--instances", "0"}).code == 2);
  CHECK(run({"confluence", "--qubits", "-2"}).code == 2);
}

TEST_CASE("parent hamiltonian emits canonical json") {
  const CliResult r = run({"parent-hamiltonian", fixture("ghz3.qc")});
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["n"] == 3);
  REQUIRE(doc["terms"].size() == 4);
  CHECK(doc["terms"][0]["pauli"] == "+III");
  CHECK(doc["terms"][0]["coeff"] == "3/2");
  CHECK(doc["terms"][1]["pauli"] == "+IZZ");
  CHECK(doc["terms"][1]["coeff"] == "-1/2");
  CHECK(doc["terms"][2]["pauli"] == "+XXX");
  CHECK(doc["terms"][3]["pauli"] == "+ZZI");
  CHECK(doc["spectral"].is_object());
  CHECK(doc["spectral"].empty());
}

TEST_CASE("parent hamiltonian of the bell circuit") {
  const CliResult r = run({"parent-hamiltonian", fixture("bell.qc")});
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["n"] == 2);
  REQUIRE(doc["terms"].size() == 3);
  CHECK(doc["terms"][0]["pauli"] == "+II");
  CHECK(doc["terms"][0]["coeff"] == "1");
  CHECK(doc["terms"][1]["pauli"] == "+XX");
  CHECK(doc["terms"][1]["coeff"] == "-1/2");
  CHECK(doc["terms"][2]["pauli"] == "+ZZ");
  CHECK(doc["terms"][2]["coeff"] == "-1/2");
}

TEST_CASE("parent hamiltonian spectral check passes and fills the report") {
  const fs::path json_file = temp_file("hzx_cli_ham.json");
  fs::remove(json_file);
  const CliResult r = run({"--seed", "5", "parent-hamiltonian",
                           fixture("ghz3.qc"), "--check", "--json",
                           json_file.string()});
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["spectral"]["kernel_dim"] == 1);
  CHECK(doc["spectral"]["fidelity_bounds_ok"] == true);
  CHECK(std::abs(doc["spectral"]["gap"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(doc["spectral"]["max_eig"].get<double>() - 3.0) < 1e-9);
  // The file copy is the same document.
  CHECK(nlohmann::json::parse(test::read_file(json_file)) == doc);
  fs::remove(json_file);
}
