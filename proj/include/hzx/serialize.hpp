#pragma once

#include <string>

#include <json.hpp>

#include "hzx/hamiltonian.hpp"
#include "hzx/rewrite.hpp"

// JSON views of traces, Pauli sums and spectral reports. Key order in
// emitted objects is alphabetical (nlohmann's default), which keeps every
// dump byte-identical across runs.

namespace hzx {

inline nlohmann::json step_to_json(const RewriteStep& s) {
  return nlohmann::json{{"rule", s.rule},
                        {"gate", s.gate_index},
                        {"before", s.letters_before},
                        {"after", s.letters_after},
                        {"phase", s.phase_delta.str()}};
}

/// One step object per line; the shape consumed by `--trace` files.
inline std::string trace_to_jsonl(const RewriteTrace& trace) {
  std::string out;
  for (const RewriteStep& s : trace.steps) {
    out += step_to_json(s).dump();
    out += '\n';
  }
  return out;
}

inline nlohmann::json spectral_to_json(const SpectralReport& r) {
  return nlohmann::json{{"min_eig", r.min_eig},
                        {"max_eig", r.max_eig},
                        {"gap", r.gap},
                        {"kernel_dim", r.kernel_dim},
                        {"kernel_overlap", r.kernel_overlap},
                        {"fidelity_bounds_ok", r.fidelity_bounds_ok},
                        {"n_states_checked", r.n_states_checked}};
}

/// Hamiltonian JSON: {"n", "terms": [{"coeff", "pauli"}], "spectral"}.
/// Terms keep the canonical order (identity first, then lexicographic);
/// "spectral" is {} unless a report is supplied.
inline nlohmann::json sum_to_json(const PauliSum& h,
                                  const SpectralReport* spectral = nullptr) {
  nlohmann::json terms = nlohmann::json::array();
  for (const PauliTerm& t : h.terms)
    terms.push_back({{"coeff", t.coeff.str()}, {"pauli", t.string.str()}});
  nlohmann::json out{{"n", h.n_wires}, {"terms", std::move(terms)}};
  out["spectral"] =
      spectral ? spectral_to_json(*spectral) : nlohmann::json::object();
  return out;
}

}  // namespace hzx
