#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/pauli.hpp"

// Reference tableau simulator used as a cross-check oracle for the rewrite
// engine. It tracks the conjugated images of the 2n single-letter generators
// directly, one row per generator, updating rows gate by gate.
//
// The gate action is transcribed here as character-level switch statements
// on purpose. The rewrite engine encodes the same physics as indexed tables
// over an enum; keeping two syntactically unrelated transcriptions means a
// typo in either one shows up as a cross-check failure instead of being
// silently shared by both sides.

namespace hzx {

struct TableauRow {
  int sign = +1;  // +1 or -1; conjugation by Cliffords never leaves {+1,-1}
  std::string letters;  // 'I','X','Y','Z' per wire
};

struct Tableau {
  std::uint32_t n_wires = 0;
  // Rows 0..n-1 are the images of X_1..X_n, rows n..2n-1 of Z_1..Z_n.
  std::vector<TableauRow> rows;

  static Tableau identity(std::uint32_t n) {
    Tableau t;
    t.n_wires = n;
    t.rows.assign(2 * std::size_t{n}, TableauRow{+1, std::string(n, 'I')});
    for (std::uint32_t w = 0; w < n; ++w) {
      t.rows[w].letters[w] = 'X';
      t.rows[n + w].letters[w] = 'Z';
    }
    return t;
  }
};

namespace tableau_detail {

inline void apply_h(TableauRow& r, std::uint32_t w) {
  switch (r.letters[w]) {
    case 'I': break;
    case 'X': r.letters[w] = 'Z'; break;
    case 'Y': r.sign = -r.sign; break;
    case 'Z': r.letters[w] = 'X'; break;
  }
}

inline void apply_s(TableauRow& r, std::uint32_t w) {
  switch (r.letters[w]) {
    case 'I': break;
    case 'X': r.letters[w] = 'Y'; break;
    case 'Y': r.letters[w] = 'X'; r.sign = -r.sign; break;
    case 'Z': break;
  }
}

inline void apply_x(TableauRow& r, std::uint32_t w) {
  switch (r.letters[w]) {
    case 'Y':
    case 'Z': r.sign = -r.sign; break;
    default: break;
  }
}

inline void apply_y(TableauRow& r, std::uint32_t w) {
  switch (r.letters[w]) {
    case 'X':
    case 'Z': r.sign = -r.sign; break;
    default: break;
  }
}

inline void apply_z(TableauRow& r, std::uint32_t w) {
  switch (r.letters[w]) {
    case 'X':
    case 'Y': r.sign = -r.sign; break;
    default: break;
  }
}

inline void apply_cx(TableauRow& r, std::uint32_t c, std::uint32_t t) {
  const char lc = r.letters[c];
  const char lt = r.letters[t];
  char nc = lc;
  char nt = lt;
  bool flip = false;
  switch (lc) {
    case 'I':
      switch (lt) {
        case 'I': break;
        case 'X': break;
        case 'Y': nc = 'Z'; break;
        case 'Z': nc = 'Z'; break;
      }
      break;
    case 'X':
      switch (lt) {
        case 'I': nt = 'X'; break;
        case 'X': nt = 'I'; break;
        case 'Y': nc = 'Y'; nt = 'Z'; break;
        case 'Z': nc = 'Y'; nt = 'Y'; flip = true; break;
      }
      break;
    case 'Y':
      switch (lt) {
        case 'I': nt = 'X'; break;
        case 'X': nt = 'I'; break;
        case 'Y': nc = 'X'; nt = 'Z'; flip = true; break;
        case 'Z': nc = 'X'; nt = 'Y'; break;
      }
      break;
    case 'Z':
      switch (lt) {
        case 'I': break;
        case 'X': break;
        case 'Y': nc = 'I'; break;
        case 'Z': nc = 'I'; break;
      }
      break;
  }
  r.letters[c] = nc;
  r.letters[t] = nt;
  if (flip) r.sign = -r.sign;
}

}  // namespace tableau_detail

/// Conjugates every row through one more gate: rows become U . row . U^dagger
/// for the circuit prefix consumed so far.
inline void tableau_apply(Tableau& t, const GateApp& g) {
  for (TableauRow& row : t.rows) {
    switch (g.kind) {
      case GateKind::H: tableau_detail::apply_h(row, g.wires[0]); break;
      case GateKind::S: tableau_detail::apply_s(row, g.wires[0]); break;
      case GateKind::X: tableau_detail::apply_x(row, g.wires[0]); break;
      case GateKind::Y: tableau_detail::apply_y(row, g.wires[0]); break;
      case GateKind::Z: tableau_detail::apply_z(row, g.wires[0]); break;
      case GateKind::CX:
        tableau_detail::apply_cx(row, g.wires[0], g.wires[1]);
        break;
    }
  }
}

inline Tableau run_circuit(const CliffordCircuit& c) {
  Tableau t = Tableau::identity(c.n_wires);
  for (const GateApp& g : c.gates) tableau_apply(t, g);
  return t;
}

/// Converts a row into the engine's value type for comparisons.
inline PauliString row_to_pauli(const TableauRow& r) {
  std::string text = (r.sign < 0 ? "-" : "+") + r.letters;
  return parse_pauli(text);
}

/// Image of an arbitrary string under the tableau's conjugation: expand each
/// letter over the generator rows (Y_w = i X_w Z_w) and multiply the row
/// images. Conjugation is a product homomorphism, so this is exact.
inline PauliString tableau_conjugate(const Tableau& t, const PauliString& p) {
  if (p.size() != t.n_wires)
    throw LengthMismatch("tableau_conjugate: string has " +
                         std::to_string(p.size()) + " letters for " +
                         std::to_string(t.n_wires) + " wires");
  PauliString image = PauliString::identity(t.n_wires).with_phase(p.phase());
  for (std::uint32_t w = 0; w < t.n_wires; ++w) {
    switch (p.letter(w)) {
      case PauliLetter::I:
        break;
      case PauliLetter::X:
        image = string_mul(image, row_to_pauli(t.rows[w]));
        break;
      case PauliLetter::Z:
        image = string_mul(image, row_to_pauli(t.rows[t.n_wires + w]));
        break;
      case PauliLetter::Y:
        image = image.with_phase(image.phase() * Phase(1));
        image = string_mul(image, row_to_pauli(t.rows[w]));
        image = string_mul(image, row_to_pauli(t.rows[t.n_wires + w]));
        break;
    }
  }
  return image;
}

}  // namespace hzx
