#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/pauli.hpp"
#include "hzx/rewrite.hpp"
#include "hzx/rng.hpp"
#include "hzx/serialize.hpp"
#include "hzx/tableau.hpp"

// Randomized campaign certifying, per instance, that every rewrite order
// reaches the same terminal generator images, that those images agree with
// the tableau oracle, and that rewrite counts sit inside their bounds.

namespace hzx {

/// Raised when two rewrite orders reach different terminal elements. Carries
/// both derivations so the divergence is replayable.
class ConfluenceViolation : public Error {
 public:
  ConfluenceViolation(const std::string& msg, RewriteTrace reference,
                      RewriteTrace divergent)
      : Error(msg),
        reference_(std::move(reference)),
        divergent_(std::move(divergent)) {}

  const RewriteTrace& reference() const { return reference_; }
  const RewriteTrace& divergent() const { return divergent_; }

 private:
  RewriteTrace reference_;
  RewriteTrace divergent_;
};

/// Raised when the rewrite engine and the tableau oracle disagree on a
/// generator image.
class OracleMismatch : public Error {
 public:
  OracleMismatch(const std::string& msg, CliffordCircuit circuit,
                 PauliString generator, PauliString engine_image,
                 PauliString oracle_image)
      : Error(msg),
        circuit_(std::move(circuit)),
        generator_(std::move(generator)),
        engine_image_(std::move(engine_image)),
        oracle_image_(std::move(oracle_image)) {}

  const CliffordCircuit& circuit() const { return circuit_; }
  const PauliString& generator() const { return generator_; }
  const PauliString& engine_image() const { return engine_image_; }
  const PauliString& oracle_image() const { return oracle_image_; }

 private:
  CliffordCircuit circuit_;
  PauliString generator_;
  PauliString engine_image_;
  PauliString oracle_image_;
};

/// Campaign parameters. Wire and gate counts are per-instance caps: each
/// instance draws n in [1, n_wires] and t in [0, gate_count]. The seed fully
/// determines the campaign.
struct TrialSpec {
  std::uint32_t n_wires = 4;
  std::uint32_t gate_count = 20;
  std::uint32_t n_orders = 5;
  std::uint64_t seed = 0;
  std::uint32_t instance_count = 100;
  std::string failure_dir;  // empty disables divergence artifacts

  void validate() const {
    if (n_wires < 1 || gate_count < 1 || n_orders < 1 || instance_count < 1)
      throw Error("TrialSpec: all campaign parameters must be positive");
  }
};

struct InstanceReport {
  std::uint32_t index = 0;
  std::uint32_t n_wires = 0;
  std::uint32_t gate_count = 0;
  std::uint32_t singles = 0;   // l
  std::uint32_t cx_count = 0;  // g
  std::vector<std::string> images;  // 2n terminal strings, X then Z rows
  std::size_t counted_min = 0;  // per-generator counted rewrites
  std::size_t counted_max = 0;
  std::size_t z_total_counted = 0;  // summed over the n Z generators
  double bound_l_n = 0;
  double bound_half_g_n = 0;
  double bound_half_g_plus_l_n = 0;
  double bound_g_plus_l_n = 0;
  bool within_half_bound = false;
};

struct TrialReport {
  TrialSpec spec;
  std::vector<InstanceReport> instances;
  std::size_t half_bound_hits = 0;
  double half_bound_fraction = 0;
  bool pass = false;
};

/// Uniform over the six gate kinds with uniform valid wires; CX is excluded
/// on one wire. The CX share therefore varies with n, which the report
/// records so bound statistics stay interpretable.
inline CliffordCircuit random_circuit(std::uint32_t n, std::uint32_t t,
                                      std::mt19937_64& rng) {
  if (n < 1) throw Error("random_circuit: need at least one wire");
  CliffordCircuit c;
  c.n_wires = n;
  c.gates.reserve(t);
  constexpr GateKind kinds[6] = {GateKind::H, GateKind::S,  GateKind::X,
                                 GateKind::Y, GateKind::Z, GateKind::CX};
  const std::uint64_t n_kinds = n >= 2 ? 6 : 5;
  for (std::uint32_t i = 0; i < t; ++i) {
    const GateKind kind = kinds[bounded(rng, n_kinds)];
    if (kind == GateKind::CX) {
      const auto control = static_cast<std::uint32_t>(bounded(rng, n));
      auto target = static_cast<std::uint32_t>(bounded(rng, n - 1));
      if (target >= control) ++target;
      c.gates.push_back(GateApp::cx(control, target));
    } else {
      c.gates.push_back(
          GateApp::single(kind, static_cast<std::uint32_t>(bounded(rng, n))));
    }
  }
  return c;
}

namespace detail {

inline void write_divergence_artifacts(const std::string& dir,
                                       std::uint32_t instance,
                                       const CliffordCircuit& c,
                                       const RewriteTrace& reference,
                                       const RewriteTrace& divergent) {
  if (dir.empty()) return;
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string stem =
      (fs::path(dir) / ("instance_" + std::to_string(instance))).string();
  std::ofstream(stem + ".qc") << format_circuit(c);
  std::ofstream(stem + "_reference.trace") << trace_to_jsonl(reference);
  std::ofstream(stem + "_divergent.trace") << trace_to_jsonl(divergent);
}

}  // namespace detail

/// Runs one instance: propagates all 2n generators once in order and under
/// `n_orders` seeded interleavings, requiring identical terminal images, then
/// checks every image against the tableau oracle.
inline InstanceReport run_instance(const TrialSpec& spec, std::uint32_t index) {
  std::mt19937_64 rng(mix_seed(spec.seed, 0x696e7374u, index));
  const auto n = static_cast<std::uint32_t>(1 + bounded(rng, spec.n_wires));
  const auto t =
      static_cast<std::uint32_t>(bounded(rng, spec.gate_count + 1ull));
  const CliffordCircuit circuit = random_circuit(n, t, rng);
  auto shared = std::make_shared<const CliffordCircuit>(circuit);

  const auto reference = propagate_frames(shared, pauli_generators(n));
  const GateCounts counts = gate_counts(circuit);
  for (const RewriteTrace& trace : reference) {
    if (trace.steps.size() != t)
      throw Error("instance " + std::to_string(index) +
                  ": trace length differs from gate count");
    if (trace.counted_rewrites > counts.two_qubit + counts.single_qubit)
      throw Error("instance " + std::to_string(index) +
                  ": counted rewrites exceed g + l for one generator");
    if (!replay_trace(trace))
      throw Error("instance " + std::to_string(index) +
                  ": trace fails replay");
  }

  for (std::uint32_t k = 0; k < spec.n_orders; ++k) {
    const Strategy strategy =
        Strategy::random_order(mix_seed(spec.seed, index, k));
    const auto shuffled =
        propagate_frames(shared, pauli_generators(n), strategy);
    for (std::size_t i = 0; i < reference.size(); ++i) {
      if (shuffled[i].final != reference[i].final) {
        detail::write_divergence_artifacts(spec.failure_dir, index, circuit,
                                           reference[i], shuffled[i]);
        throw ConfluenceViolation(
            "instance " + std::to_string(index) + ", order " +
                std::to_string(k) + ": generator " +
                reference[i].initial.frame.str() + " rewrote to " +
                reference[i].final.str() + " in order but " +
                shuffled[i].final.str() + " shuffled",
            reference[i], shuffled[i]);
      }
      if (!replay_trace(shuffled[i]))
        throw Error("instance " + std::to_string(index) +
                    ": shuffled trace fails replay");
    }
  }

  const Tableau oracle = run_circuit(circuit);
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const PauliString oracle_image = row_to_pauli(oracle.rows[i]);
    if (oracle_image != reference[i].final)
      throw OracleMismatch(
          "instance " + std::to_string(index) + ": generator " +
              reference[i].initial.frame.str() + " maps to " +
              reference[i].final.str() + " by rewriting but " +
              oracle_image.str() + " by the tableau oracle",
          circuit, reference[i].initial.frame, reference[i].final,
          oracle_image);
  }

  InstanceReport report;
  report.index = index;
  report.n_wires = n;
  report.gate_count = t;
  report.singles = counts.single_qubit;
  report.cx_count = counts.two_qubit;
  report.counted_min = reference.empty() ? 0 : reference[0].counted_rewrites;
  for (const RewriteTrace& trace : reference) {
    report.images.push_back(trace.final.str());
    report.counted_min = std::min(report.counted_min, trace.counted_rewrites);
    report.counted_max = std::max(report.counted_max, trace.counted_rewrites);
  }
  for (std::size_t i = n; i < reference.size(); ++i)
    report.z_total_counted += reference[i].counted_rewrites;
  const double g = counts.two_qubit;
  const double l = counts.single_qubit;
  report.bound_l_n = l * n;
  report.bound_half_g_n = 0.5 * g * n;
  report.bound_half_g_plus_l_n = (0.5 * g + l) * n;
  report.bound_g_plus_l_n = (g + l) * n;
  // Exact comparison: 2 * total <= (g + 2l) * n.
  report.within_half_bound =
      2 * report.z_total_counted <=
      std::size_t{counts.two_qubit + 2 * counts.single_qubit} * n;
  return report;
}

inline TrialReport run_campaign(const TrialSpec& spec) {
  spec.validate();
  TrialReport report;
  report.spec = spec;
  report.instances.reserve(spec.instance_count);
  for (std::uint32_t i = 0; i < spec.instance_count; ++i) {
    report.instances.push_back(run_instance(spec, i));
    if (report.instances.back().within_half_bound) ++report.half_bound_hits;
  }
  report.half_bound_fraction =
      static_cast<double>(report.half_bound_hits) / spec.instance_count;
  report.pass = true;
  return report;
}

inline nlohmann::json instance_to_json(const InstanceReport& r) {
  return nlohmann::json{{"index", r.index},
                        {"qubits", r.n_wires},
                        {"gates", r.gate_count},
                        {"singles", r.singles},
                        {"cx", r.cx_count},
                        {"images", r.images},
                        {"counted_min", r.counted_min},
                        {"counted_max", r.counted_max},
                        {"z_total_counted", r.z_total_counted},
                        {"bound_l_n", r.bound_l_n},
                        {"bound_half_g_n", r.bound_half_g_n},
                        {"bound_half_g_plus_l_n", r.bound_half_g_plus_l_n},
                        {"bound_g_plus_l_n", r.bound_g_plus_l_n},
                        {"within_half_bound", r.within_half_bound}};
}

inline nlohmann::json report_to_json(const TrialReport& r) {
  nlohmann::json instances = nlohmann::json::array();
  for (const InstanceReport& inst : r.instances)
    instances.push_back(instance_to_json(inst));
  return nlohmann::json{
      {"spec",
       {{"qubits", r.spec.n_wires},
        {"gates", r.spec.gate_count},
        {"orders", r.spec.n_orders},
        {"instances", r.spec.instance_count},
        {"seed", r.spec.seed}}},
      {"note",
       "gate kinds drawn uniformly from {H,S,X,Y,Z,CX}; the CX share "
       "varies with the instance wire count"},
      {"instances", std::move(instances)},
      {"summary",
       {{"pass", r.pass},
        {"instances", r.instances.size()},
        {"half_bound_hits", r.half_bound_hits},
        {"half_bound_fraction", r.half_bound_fraction}}}};
}

}  // namespace hzx
