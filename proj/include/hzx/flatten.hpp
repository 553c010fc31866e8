#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/pauli.hpp"

// Dense "standard interpretation" of circuits, Pauli strings and ZX building
// blocks. This module is the ground-truth soundness oracle: everything here
// is ordinary floating-point linear algebra, while the rewrite engine itself
// stays exact. Conventions:
//   * wire 0 is the leftmost tensor factor, i.e. the most significant bit of
//     a computational basis index;
//   * gate 0 of a circuit is applied first to states, so the circuit matrix
//     is the product with gate 0 rightmost.

namespace hzx {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense oracle cap: 2^12 x 2^12 is the largest matrix we ever materialize.
inline constexpr std::uint32_t kMaxOracleWires = 12;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix pauli_letter_matrix(PauliLetter l) {
  Matrix m(2, 2);
  switch (l) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// phase * (letter_0 x letter_1 x ... ), wire 0 leftmost.
inline Matrix flatten_pauli(const PauliString& p) {
  if (p.size() > kMaxOracleWires)
    throw TooManyWires("flatten_pauli: " + std::to_string(p.size()) +
                       " wires exceeds oracle cap " +
                       std::to_string(kMaxOracleWires));
  Matrix m = Matrix::Identity(1, 1);
  for (PauliLetter l : p.letters()) m = kron(m, pauli_letter_matrix(l));
  return p.phase().value() * m;
}

// ---------------------------------------------------------------------------
// ZX building blocks
// ---------------------------------------------------------------------------

enum class SpiderColor { Z, X };

/// A Z- or X-spider restricted to the stabilizer fragment: the angle is a
/// multiple of pi/2, stored exactly as a quarter-turn count so e^{i alpha}
/// is one of {1, i, -1, -i}.
struct Spider {
  SpiderColor color;
  int in_legs;
  int out_legs;
  int alpha_quarters;  // alpha = alpha_quarters * pi/2, taken mod 4
};

namespace detail {

inline Vector ket_plus_power(int m, int sign) {
  // (|0> + sign |1>)/sqrt(2), tensored m times.
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), sign / std::sqrt(2.0);
  Vector acc = Vector::Ones(1);
  for (int k = 0; k < m; ++k) {
    Vector next(acc.size() * 2);
    for (Eigen::Index i = 0; i < acc.size(); ++i) {
      next(2 * i) = acc(i) * v(0);
      next(2 * i + 1) = acc(i) * v(1);
    }
    acc = next;
  }
  return acc;
}

}  // namespace detail

/// Matrix of the spider: 2^out_legs rows by 2^in_legs columns.
///   Z^n_m(a) = |0..0><0..0| + e^{ia} |1..1><1..1|
///   X^n_m(a) = |+..+><+..+| + e^{ia} |-..-><-..-|
inline Matrix flatten_spider(const Spider& s) {
  if (s.in_legs < 0 || s.out_legs < 0)
    throw Error("flatten_spider: negative leg count");
  if (s.in_legs + s.out_legs > static_cast<int>(kMaxOracleWires))
    throw TooManyLegs("flatten_spider: " +
                      std::to_string(s.in_legs + s.out_legs) +
                      " legs exceeds oracle cap " +
                      std::to_string(kMaxOracleWires));
  const Eigen::Index rows = Eigen::Index{1} << s.out_legs;
  const Eigen::Index cols = Eigen::Index{1} << s.in_legs;
  const Cplx phase = Phase(s.alpha_quarters).value();
  Matrix m = Matrix::Zero(rows, cols);
  if (s.color == SpiderColor::Z) {
    m(0, 0) += 1.0;
    m(rows - 1, cols - 1) += phase;
  } else {
    Vector plus_out = detail::ket_plus_power(s.out_legs, +1);
    Vector plus_in = detail::ket_plus_power(s.in_legs, +1);
    Vector minus_out = detail::ket_plus_power(s.out_legs, -1);
    Vector minus_in = detail::ket_plus_power(s.in_legs, -1);
    m = plus_out * plus_in.adjoint() + phase * (minus_out * minus_in.adjoint());
  }
  return m;
}

enum class Primitive { Identity, Cup, Cap, Swap, Hadamard };

/// The fixed wire-level generators. Cup and cap are the unnormalized Bell
/// pair sqrt(2)|phi+> and its adjoint; Hadamard carries its 1/sqrt(2).
inline Matrix flatten_primitive(Primitive p) {
  switch (p) {
    case Primitive::Identity:
      return Matrix::Identity(2, 2);
    case Primitive::Cup: {
      Matrix m = Matrix::Zero(4, 1);
      m(0, 0) = 1;
      m(3, 0) = 1;
      return m;
    }
    case Primitive::Cap: {
      Matrix m = Matrix::Zero(1, 4);
      m(0, 0) = 1;
      m(0, 3) = 1;
      return m;
    }
    case Primitive::Swap: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return m;
    }
    case Primitive::Hadamard: {
      Matrix m(2, 2);
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
  }
  throw Error("flatten_primitive: unknown primitive");
}

// ---------------------------------------------------------------------------
// Polynomial indicator forms of the copy and parity tensors
// ---------------------------------------------------------------------------

/// delta^i_{jk} = 1/2 (i+j+k)^2 - 3/2 (i+j+k) + 1; equals 1 iff i == j == k.
inline double copy_component(int i, int j, int k) {
  const double s = i + j + k;
  return 0.5 * s * s - 1.5 * s + 1.0;
}

/// [xor]^q_{rs} = -2/3 s^3 + 3 s^2 - 10/3 s + 1 with s = q+r+s';
/// equals 1 iff q == r XOR s'.
inline double xor_component(int q, int r, int s) {
  const double t = q + r + s;
  return -(2.0 / 3.0) * t * t * t + 3.0 * t * t - (10.0 / 3.0) * t + 1.0;
}

/// COPY assembled entry-by-entry from copy_component: a 4x2 matrix with
/// row index (j,k) and column index i.
inline Matrix copy_from_components() {
  Matrix m(4, 2);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) m(2 * j + k, i) = copy_component(i, j, k);
  return m;
}

/// XOR assembled from xor_component: 2x4, row q, column (r,s).
inline Matrix xor_from_components() {
  Matrix m(2, 4);
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) m(q, 2 * r + s) = xor_component(q, r, s);
  return m;
}

// ---------------------------------------------------------------------------
// Circuit flattening
// ---------------------------------------------------------------------------

namespace detail {

inline Matrix single_gate_matrix(GateKind k) {
  Matrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, Cplx(0, 1); break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::CX: throw Error("single_gate_matrix: CX is two-wire");
  }
  return m;
}

inline int bit_of(std::size_t index, std::uint32_t wire, std::uint32_t n) {
  return static_cast<int>((index >> (n - 1 - wire)) & 1u);
}

inline std::size_t with_bit(std::size_t index, std::uint32_t wire,
                            std::uint32_t n, int value) {
  const std::size_t mask = std::size_t{1} << (n - 1 - wire);
  return value ? (index | mask) : (index & ~mask);
}

}  // namespace detail

/// The 2^n x 2^n matrix of one gate application embedded into n wires.
inline Matrix gate_matrix(const GateApp& g, std::uint32_t n_wires) {
  if (n_wires > kMaxOracleWires)
    throw TooManyWires("gate_matrix: circuit exceeds oracle cap");
  const std::size_t dim = std::size_t{1} << n_wires;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  if (g.kind == GateKind::CX) {
    for (std::size_t col = 0; col < dim; ++col) {
      std::size_t row = col;
      if (detail::bit_of(col, g.wires[0], n_wires) == 1) {
        const int t = detail::bit_of(col, g.wires[1], n_wires);
        row = detail::with_bit(col, g.wires[1], n_wires, 1 - t);
      }
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1;
    }
  } else {
    const Matrix local = detail::single_gate_matrix(g.kind);
    for (std::size_t col = 0; col < dim; ++col) {
      const int b = detail::bit_of(col, g.wires[0], n_wires);
      for (int v = 0; v < 2; ++v) {
        const Cplx amp = local(v, b);
        if (amp == Cplx{}) continue;
        const std::size_t row = detail::with_bit(col, g.wires[0], n_wires, v);
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
            amp;
      }
    }
  }
  return m;
}

/// Ordered product of the per-gate matrices, gate 0 rightmost.
inline Matrix flatten_circuit(const CliffordCircuit& c) {
  if (c.n_wires > kMaxOracleWires)
    throw TooManyWires("flatten_circuit: " + std::to_string(c.n_wires) +
                       " wires exceeds oracle cap " +
                       std::to_string(kMaxOracleWires));
  const Eigen::Index dim = Eigen::Index{1} << c.n_wires;
  Matrix u = Matrix::Identity(dim, dim);
  for (const GateApp& g : c.gates) u = gate_matrix(g, c.n_wires) * u;
  return u;
}

inline Vector basis_state(std::uint32_t n_wires, std::size_t index) {
  Vector v = Vector::Zero(Eigen::Index{1} << n_wires);
  v(static_cast<Eigen::Index>(index)) = 1;
  return v;
}

inline Vector zero_state(std::uint32_t n_wires) {
  return basis_state(n_wires, 0);
}

inline double max_norm_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Comma-separated dump ("re,im" cells) for debugging via the CLI.
inline std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += std::to_string(m(i, j).real()) + ' ' +
             std::to_string(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

}  // namespace hzx
