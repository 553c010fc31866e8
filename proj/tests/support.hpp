#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hzx/flatten.hpp"
#include "hzx/rewrite.hpp"

// Shared test helpers. The sandwich matrix gives the dense meaning of a
// mid-rewrite term so soundness can be checked step by step.

namespace hzx::test {

inline std::filesystem::path circuits_dir() {
  return std::filesystem::path(HZX_CIRCUITS_DIR);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Dense meaning of a term: the unabsorbed suffix still conjugates the frame,
///   [U_suffix] [frame] [U_suffix]^dagger.
/// Every rewrite step must leave this matrix unchanged.
inline Matrix sandwich_matrix(const SandwichTerm& term) {
  CliffordCircuit suffix;
  suffix.n_wires = term.circuit->n_wires;
  suffix.gates.assign(term.circuit->gates.begin() +
                          static_cast<std::ptrdiff_t>(term.frame_pos),
                      term.circuit->gates.end());
  const Matrix u = flatten_circuit(suffix);
  return u * flatten_pauli(term.frame) * u.adjoint();
}

}  // namespace hzx::test
