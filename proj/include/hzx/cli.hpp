#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/flatten.hpp"
#include "hzx/hamiltonian.hpp"
#include "hzx/harness.hpp"
#include "hzx/pauli.hpp"
#include "hzx/rewrite.hpp"
#include "hzx/serialize.hpp"
#include "hzx/tableau.hpp"

// Command-line front end. Exit codes: 0 success, 1 a verified claim failed
// (oracle mismatch, divergent orders, spectral check), 2 usage or input
// parse errors. Pauli strings with a leading '-' must follow a "--"
// separator so they are not read as flags.

namespace hzx {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path, 0);
  out << content;
}

/// Flattening cross-check of a single conjugation at small n:
/// [U][p][U]^dagger must equal [image].
inline bool flatten_agrees(const CliffordCircuit& c, const PauliString& p,
                           const PauliString& image) {
  const Matrix u = flatten_circuit(c);
  const Matrix lhs = u * flatten_pauli(p) * u.adjoint();
  return max_norm_diff(lhs, flatten_pauli(image)) <= 1e-10;
}

struct PropagateArgs {
  std::string circuit_file;
  std::string pauli_text;
  std::string trace_file;
  std::string dump_matrix_file;
  bool check = false;
};

inline int run_propagate(const PropagateArgs& args, bool verbose,
                         std::ostream& out, std::ostream& err) {
  const CliffordCircuit circuit =
      parse_circuit(read_file(args.circuit_file));
  const PauliString p = parse_pauli(args.pauli_text);
  if (p.size() != circuit.n_wires)
    throw LengthMismatch("pauli string has " + std::to_string(p.size()) +
                         " letters for a " +
                         std::to_string(circuit.n_wires) + "-wire circuit");
  const RewriteTrace trace = normal_form(circuit, p);
  if (verbose)
    for (const RewriteStep& s : trace.steps)
      err << s.rule << " @ gate " << s.gate_index << ": " << s.letters_before
          << " -> " << s.letters_after << " (" << s.phase_delta.str() << ")\n";
  out << trace.final.str() << "\n";
  if (!args.trace_file.empty())
    write_file(args.trace_file, trace_to_jsonl(trace));
  if (!args.dump_matrix_file.empty())
    write_file(args.dump_matrix_file, matrix_to_csv(flatten_circuit(circuit)));
  if (args.check) {
    const PauliString oracle =
        tableau_conjugate(run_circuit(circuit), p);
    if (oracle != trace.final) {
      err << "oracle mismatch: tableau gives " << oracle.str() << "\n";
      return 1;
    }
    if (circuit.n_wires <= 4 && !flatten_agrees(circuit, p, trace.final)) {
      err << "oracle mismatch: dense conjugation disagrees\n";
      return 1;
    }
  }
  return 0;
}

inline int run_stabilizers(const std::string& circuit_file, bool check,
                           std::ostream& out, std::ostream& err) {
  const CliffordCircuit circuit = parse_circuit(read_file(circuit_file));
  const std::vector<PauliString> images = stabilizer_group_of_output(circuit);
  for (const PauliString& s : images) out << s.str() << "\n";
  if (check) {
    const Tableau oracle = run_circuit(circuit);
    for (std::uint32_t w = 0; w < circuit.n_wires; ++w) {
      const PauliString expected =
          row_to_pauli(oracle.rows[circuit.n_wires + w]);
      if (images[w] != expected) {
        err << "oracle mismatch on generator " << w << ": tableau gives "
            << expected.str() << "\n";
        return 1;
      }
    }
  }
  return 0;
}

struct ConfluenceArgs {
  TrialSpec spec;
  std::string report_file;
};

inline int run_confluence(const ConfluenceArgs& args, bool verbose,
                          std::ostream& out, std::ostream& err) {
  try {
    const TrialReport report = run_campaign(args.spec);
    if (!args.report_file.empty())
      write_file(args.report_file, report_to_json(report).dump(2) + "\n");
    out << "confluence: " << report.instances.size() << " instances x "
        << args.spec.n_orders
        << " orders: all interleavings and oracle images agree\n";
    out << "half-bound fraction: " << report.half_bound_fraction << " ("
        << report.half_bound_hits << "/" << report.instances.size() << ")\n";
    if (verbose)
      for (const InstanceReport& inst : report.instances)
        err << "instance " << inst.index << ": n=" << inst.n_wires
            << " t=" << inst.gate_count << " counted_max=" << inst.counted_max
            << "\n";
    return 0;
  } catch (const ConfluenceViolation& e) {
    err << "confluence violation: " << e.what() << "\n";
    return 1;
  } catch (const OracleMismatch& e) {
    err << "oracle mismatch: " << e.what() << "\n";
    return 1;
  }
}

struct HamiltonianArgs {
  std::string circuit_file;
  std::string json_file;
  bool check = false;
};

inline int run_parent_hamiltonian(const HamiltonianArgs& args,
                                  std::uint64_t seed, std::ostream& out,
                                  std::ostream& err) {
  const CliffordCircuit circuit = parse_circuit(read_file(args.circuit_file));
  ConjugationStats stats;
  const PauliSum h =
      conjugate_sum(initial_projector(circuit.n_wires), circuit, &stats);
  const std::size_t budget =
      circuit.gates.size() * (std::size_t{circuit.n_wires} + 1);
  if (stats.counted_rewrites > budget) {
    err << "rewrite budget exceeded: " << stats.counted_rewrites << " > "
        << budget << "\n";
    return 1;
  }
  SpectralReport spectral;
  const bool checked = args.check;
  if (checked) spectral = spectral_check(h, circuit, seed);
  const nlohmann::json doc = sum_to_json(h, checked ? &spectral : nullptr);
  out << doc.dump(2) << "\n";
  if (!args.json_file.empty()) write_file(args.json_file, doc.dump(2) + "\n");
  if (checked && !spectral.ok()) {
    err << "spectral check failed: min_eig=" << spectral.min_eig
        << " kernel_dim=" << spectral.kernel_dim
        << " kernel_overlap=" << spectral.kernel_overlap
        << " fidelity_bounds_ok=" << spectral.fidelity_bounds_ok << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cli_detail

/// Entry point shared by main() and the tests. `args` excludes the program
/// name and is in normal (left to right) order.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Heisenberg-picture rewriting over stabilizer circuits"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  bool verbose = false;
  app.add_option("--seed", seed, "seed for all randomized subcommands");
  app.add_flag("--verbose", verbose, "step- or instance-level logging");

  cli_detail::PropagateArgs prop;
  CLI::App* propagate = app.add_subcommand(
      "propagate", "rewrite a Pauli string through a circuit");
  propagate->fallthrough();
  propagate->add_option("circuit", prop.circuit_file, "circuit file")
      ->required();
  propagate->add_option("pauli", prop.pauli_text, "Pauli string, e.g. +ZZ")
      ->required();
  propagate->add_option("--trace", prop.trace_file,
                        "write the derivation as JSON lines");
  propagate->add_option("--dump-matrix", prop.dump_matrix_file,
                        "write the circuit's dense matrix as CSV");
  propagate->add_flag("--check", prop.check,
                      "cross-check against the tableau oracle "
                      "(and dense conjugation when wires <= 4)");

  std::string stab_file;
  bool stab_check = false;
  CLI::App* stabilizers = app.add_subcommand(
      "stabilizers", "print stabilizer generators of the output state");
  stabilizers->fallthrough();
  stabilizers->add_option("circuit", stab_file, "circuit file")->required();
  stabilizers->add_flag("--check", stab_check,
                        "cross-check against the tableau oracle");

  cli_detail::ConfluenceArgs conf;
  conf.spec.failure_dir = "confluence_failures";
  CLI::App* confluence = app.add_subcommand(
      "confluence", "randomized rewrite-order and oracle campaign");
  confluence->fallthrough();
  confluence->add_option("--qubits", conf.spec.n_wires, "max wires per instance")
      ->check(CLI::PositiveNumber);
  confluence->add_option("--gates", conf.spec.gate_count,
                         "max gates per instance")
      ->check(CLI::PositiveNumber);
  confluence->add_option("--orders", conf.spec.n_orders,
                         "random interleavings per instance")
      ->check(CLI::PositiveNumber);
  confluence->add_option("--instances", conf.spec.instance_count,
                         "number of random instances")
      ->check(CLI::PositiveNumber);
  confluence->add_option("--seed", conf.spec.seed, "campaign seed");
  confluence->add_option("--report", conf.report_file,
                         "write the campaign report as JSON");
  confluence->add_option("--failure-dir", conf.spec.failure_dir,
                         "directory for divergence artifacts");

  cli_detail::HamiltonianArgs ham;
  CLI::App* parent = app.add_subcommand(
      "parent-hamiltonian",
      "derive the parent Hamiltonian of the circuit's output state");
  parent->fallthrough();
  parent->add_option("circuit", ham.circuit_file, "circuit file")->required();
  parent->add_option("--json", ham.json_file, "also write the JSON to a file");
  parent->add_flag("--check", ham.check,
                   "dense spectral verification (wires <= 10)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(propagate))
      return cli_detail::run_propagate(prop, verbose, out, err);
    if (app.got_subcommand(stabilizers))
      return cli_detail::run_stabilizers(stab_file, stab_check, out, err);
    if (app.got_subcommand(confluence))
      return cli_detail::run_confluence(conf, verbose, out, err);
    if (app.got_subcommand(parent))
      return cli_detail::run_parent_hamiltonian(ham, seed, out, err);
    err << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const LengthMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const WireOutOfRange& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ControlEqualsTarget& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const TooManyWires& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "verification error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hzx
