#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hzx/errors.hpp"

namespace hzx {

/// Generating set for Clifford circuits. S is the phase gate
/// diag(1, i); the name avoids clashing with Pauli letters in text formats.
enum class GateKind : std::uint8_t { H, S, X, Y, Z, CX };

constexpr int gate_arity(GateKind k) { return k == GateKind::CX ? 2 : 1; }

constexpr std::string_view gate_name(GateKind k) {
  constexpr std::string_view names[6] = {"H", "S", "X", "Y", "Z", "CX"};
  return names[static_cast<std::uint8_t>(k)];
}

struct GateApp {
  GateKind kind;
  // wires[0] is the control for CX; wires[1] is unused for 1-wire gates.
  std::array<std::uint32_t, 2> wires;

  static GateApp single(GateKind k, std::uint32_t w) { return {k, {w, 0}}; }
  static GateApp cx(std::uint32_t control, std::uint32_t target) {
    return {GateKind::CX, {control, target}};
  }

  int arity() const { return gate_arity(kind); }
  bool operator==(const GateApp&) const = default;
};

/// An ordered list of gate applications. Gate 0 acts first on states, so in
/// matrix form the circuit is U = U_{t-1} ... U_1 U_0.
struct CliffordCircuit {
  std::uint32_t n_wires = 1;
  std::vector<GateApp> gates;

  std::size_t gate_count() const { return gates.size(); }
  bool operator==(const CliffordCircuit&) const = default;
};

struct GateCounts {
  std::size_t single_qubit;  // l
  std::size_t two_qubit;     // g
};

inline GateCounts gate_counts(const CliffordCircuit& c) {
  GateCounts counts{0, 0};
  for (const GateApp& g : c.gates) {
    if (g.arity() == 1)
      ++counts.single_qubit;
    else
      ++counts.two_qubit;
  }
  return counts;
}

namespace detail {

inline void check_gate(const GateApp& g, std::uint32_t n_wires,
                       std::size_t line) {
  for (int i = 0; i < g.arity(); ++i) {
    if (g.wires[static_cast<std::size_t>(i)] >= n_wires)
      throw WireOutOfRange("wire " +
                           std::to_string(g.wires[static_cast<std::size_t>(i)]) +
                           " out of range (circuit has " +
                           std::to_string(n_wires) + " wires, line " +
                           std::to_string(line) + ")");
  }
  if (g.kind == GateKind::CX && g.wires[0] == g.wires[1])
    throw ControlEqualsTarget("CX control equals target (wire " +
                              std::to_string(g.wires[0]) + ", line " +
                              std::to_string(line) + ")");
}

}  // namespace detail

/// Parses the circuit text format:
///
///   qubits <n>
///   H <w> | S <w> | X <w> | Y <w> | Z <w> | CX <control> <target>
///
/// one gate per line, `#` starting a comment, blank lines ignored. Anything
/// outside the generating set above is rejected.
inline CliffordCircuit parse_circuit(std::string_view text) {
  CliffordCircuit circuit;
  bool have_header = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;  // blank or comment-only line

    if (!have_header) {
      if (head != "qubits")
        throw ParseError("expected 'qubits <n>' header, got '" + head + "'",
                         line_no);
      long long n = 0;
      if (!(ls >> n) || n < 1)
        throw ParseError("invalid qubit count", line_no);
      std::string rest;
      if (ls >> rest)
        throw ParseError("trailing token '" + rest + "' after qubit count",
                         line_no);
      circuit.n_wires = static_cast<std::uint32_t>(n);
      have_header = true;
      continue;
    }

    GateApp gate{};
    if (head == "H" || head == "S" || head == "X" || head == "Y" ||
        head == "Z") {
      GateKind kind = head == "H"   ? GateKind::H
                      : head == "S" ? GateKind::S
                      : head == "X" ? GateKind::X
                      : head == "Y" ? GateKind::Y
                                    : GateKind::Z;
      long long w = -1;
      if (!(ls >> w) || w < 0)
        throw ParseError("expected wire index after '" + head + "'", line_no);
      gate = GateApp::single(kind, static_cast<std::uint32_t>(w));
    } else if (head == "CX") {
      long long cw = -1, tw = -1;
      if (!(ls >> cw >> tw) || cw < 0 || tw < 0)
        throw ParseError("expected 'CX <control> <target>'", line_no);
      gate = GateApp::cx(static_cast<std::uint32_t>(cw),
                         static_cast<std::uint32_t>(tw));
    } else {
      throw ParseError("unknown gate '" + head + "'", line_no);
    }
    std::string rest;
    if (ls >> rest)
      throw ParseError("trailing token '" + rest + "'", line_no);
    detail::check_gate(gate, circuit.n_wires, line_no);
    circuit.gates.push_back(gate);
  }
  if (!have_header) throw ParseError("missing 'qubits <n>' header", line_no);
  return circuit;
}

inline std::string format_circuit(const CliffordCircuit& c) {
  std::string out = "qubits " + std::to_string(c.n_wires) + "\n";
  for (const GateApp& g : c.gates) {
    out += gate_name(g.kind);
    out += ' ';
    out += std::to_string(g.wires[0]);
    if (g.arity() == 2) {
      out += ' ';
      out += std::to_string(g.wires[1]);
    }
    out += '\n';
  }
  return out;
}

/// The circuit implementing U^dagger. Gates are reversed; H, X, Y, Z and CX
/// are self-adjoint. S^dagger is expanded into generators as S then Z
/// (diagonal factors, so the order of the pair is immaterial).
inline CliffordCircuit adjoint(const CliffordCircuit& c) {
  CliffordCircuit out;
  out.n_wires = c.n_wires;
  out.gates.reserve(c.gates.size() + 4);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    out.gates.push_back(*it);
    if (it->kind == GateKind::S)
      out.gates.push_back(GateApp::single(GateKind::Z, it->wires[0]));
  }
  return out;
}

}  // namespace hzx
