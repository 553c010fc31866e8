#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/flatten.hpp"
#include "hzx/pauli.hpp"
#include "hzx/rewrite.hpp"
#include "hzx/rng.hpp"

// Telescoping parent Hamiltonians. The projector counting excited wires of
// |0^n> is conjugated term-by-term through a circuit with the rewrite engine,
// giving a non-negative Hamiltonian whose kernel is spanned by the circuit's
// output state. All coefficients are dyadic rationals kept exact; floats
// appear only in the dense spectral checks.

namespace hzx {

// ---------------------------------------------------------------------------
// Dyadic rationals
// ---------------------------------------------------------------------------

/// num / 2^log2_den, normalized so num is odd or the value is exactly 0/1.
struct Dyadic {
  std::int64_t num = 0;
  int log2_den = 0;

  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t n, int l) : num(n), log2_den(l) {
    normalize();
  }
  static constexpr Dyadic integer(std::int64_t n) { return Dyadic(n, 0); }
  static constexpr Dyadic half(std::int64_t n) { return Dyadic(n, 1); }

  constexpr void normalize() {
    if (num == 0) {
      log2_den = 0;
      return;
    }
    while (log2_den > 0 && num % 2 == 0) {
      num /= 2;
      --log2_den;
    }
  }

  constexpr bool is_zero() const { return num == 0; }
  constexpr Dyadic operator-() const { return Dyadic(-num, log2_den); }

  constexpr Dyadic operator+(Dyadic o) const {
    const int l = log2_den > o.log2_den ? log2_den : o.log2_den;
    return Dyadic((num << (l - log2_den)) + (o.num << (l - o.log2_den)), l);
  }

  constexpr Dyadic operator*(Dyadic o) const {
    return Dyadic(num * o.num, log2_den + o.log2_den);
  }

  constexpr bool operator==(const Dyadic&) const = default;

  double value() const {
    return static_cast<double>(num) /
           static_cast<double>(std::int64_t{1} << log2_den);
  }

  std::string str() const {
    if (log2_den == 0) return std::to_string(num);
    return std::to_string(num) + "/" +
           std::to_string(std::int64_t{1} << log2_den);
  }
};

// ---------------------------------------------------------------------------
// Pauli sums
// ---------------------------------------------------------------------------

/// One Hamiltonian term. Strings are kept sign-free (phase exponent 0); the
/// sign lives in the coefficient, so Hermiticity is structural.
struct PauliTerm {
  Dyadic coeff;
  PauliString string = PauliString::identity(1);

  bool operator==(const PauliTerm&) const = default;
};

/// Canonical form: terms sorted by string text (identity first), like terms
/// combined, no zero coefficients. Cardinality is then just the term count.
struct PauliSum {
  std::uint32_t n_wires = 0;
  std::vector<PauliTerm> terms;

  std::size_t cardinality() const { return terms.size(); }
  bool operator==(const PauliSum&) const = default;
};

namespace detail {

inline void canonicalize(PauliSum& h) {
  for (PauliTerm& t : h.terms) {
    const int e = t.string.phase().exponent();
    if (e == 2) t.coeff = -t.coeff;
    if (e % 2 != 0)
      throw Error("PauliSum: term with imaginary phase is not Hermitian");
    t.string = t.string.with_phase(Phase(0));
  }
  std::sort(h.terms.begin(), h.terms.end(),
            [](const PauliTerm& a, const PauliTerm& b) {
              return a.string < b.string;
            });
  std::vector<PauliTerm> merged;
  for (PauliTerm& t : h.terms) {
    if (!merged.empty() && merged.back().string == t.string)
      merged.back().coeff = merged.back().coeff + t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const PauliTerm& t) { return t.coeff.is_zero(); });
  h.terms = std::move(merged);
}

}  // namespace detail

inline PauliSum make_sum(std::uint32_t n_wires, std::vector<PauliTerm> terms) {
  for (const PauliTerm& t : terms)
    if (t.string.size() != n_wires)
      throw LengthMismatch("PauliSum term has " +
                           std::to_string(t.string.size()) + " letters for " +
                           std::to_string(n_wires) + " wires");
  PauliSum h{n_wires, std::move(terms)};
  detail::canonicalize(h);
  return h;
}

/// Projector counting the wires of |0^n> in state |1>:
/// (n/2) I - (1/2) sum_j Z_j, with n+1 terms. Non-negative, kernel |0^n>,
/// eigenvalue of |x> equal to the Hamming weight of x.
inline PauliSum initial_projector(std::uint32_t n) {
  if (n < 1) throw Error("initial_projector: need at least one wire");
  std::vector<PauliTerm> terms;
  terms.push_back(
      {Dyadic::half(static_cast<std::int64_t>(n)), PauliString::identity(n)});
  for (std::uint32_t w = 0; w < n; ++w)
    terms.push_back(
        {Dyadic::half(-1), PauliString::single(n, w, PauliLetter::Z)});
  return make_sum(n, std::move(terms));
}

struct ConjugationStats {
  std::size_t counted_rewrites = 0;
  std::size_t term_count = 0;
  std::size_t gate_count = 0;
};

/// Maps each term's string through the circuit's conjugation action and
/// recombines. Conjugation permutes Pauli strings up to sign, so cardinality
/// is preserved; the sum stays Hermitian and isospectral.
inline PauliSum conjugate_sum(const PauliSum& h, const CliffordCircuit& c,
                              ConjugationStats* stats = nullptr) {
  if (h.n_wires != c.n_wires)
    throw LengthMismatch("conjugate_sum: " + std::to_string(h.n_wires) +
                         "-wire sum vs " + std::to_string(c.n_wires) +
                         "-wire circuit");
  auto shared = std::make_shared<const CliffordCircuit>(c);
  PauliSum out;
  out.n_wires = h.n_wires;
  std::size_t counted = 0;
  for (const PauliTerm& t : h.terms) {
    RewriteTrace trace = normal_form(shared, t.string);
    counted += trace.counted_rewrites;
    out.terms.push_back({t.coeff, trace.final});
  }
  detail::canonicalize(out);
  if (stats)
    *stats = ConjugationStats{counted, h.terms.size(), c.gates.size()};
  return out;
}

/// Preparation circuit for (|0..0> + |1..1>)/sqrt(2): wire 0 into uniform
/// superposition, then a CX ladder down the chain.
inline CliffordCircuit ghz_circuit(std::uint32_t n) {
  if (n < 2) throw Error("ghz_circuit: need at least two wires");
  CliffordCircuit c;
  c.n_wires = n;
  c.gates.push_back(GateApp::single(GateKind::H, 0));
  for (std::uint32_t w = 0; w + 1 < n; ++w)
    c.gates.push_back(GateApp::cx(w, w + 1));
  return c;
}

/// Closed form of the telescoped projector for the GHZ ladder:
/// (n/2) I - (1/2) X..X - (1/2) sum_{j=0}^{n-2} Z_j Z_{j+1}.
/// The nearest-neighbour sum is open-chain (n-1 terms, no wraparound), which
/// is what telescoping the ladder actually produces; total n+1 terms.
inline PauliSum ghz_hamiltonian(std::uint32_t n) {
  if (n < 2) throw Error("ghz_hamiltonian: need at least two wires");
  std::vector<PauliTerm> terms;
  terms.push_back(
      {Dyadic::half(static_cast<std::int64_t>(n)), PauliString::identity(n)});
  PauliString all_x = PauliString::identity(n);
  for (std::uint32_t w = 0; w < n; ++w)
    all_x = all_x.with_letter(w, PauliLetter::X);
  terms.push_back({Dyadic::half(-1), all_x});
  for (std::uint32_t w = 0; w + 1 < n; ++w) {
    PauliString zz = PauliString::single(n, w, PauliLetter::Z)
                         .with_letter(w + 1, PauliLetter::Z);
    terms.push_back({Dyadic::half(-1), zz});
  }
  return make_sum(n, std::move(terms));
}

// ---------------------------------------------------------------------------
// Dense spectral verification
// ---------------------------------------------------------------------------

/// Dense-diagonalization cap; 2^10 keeps the eigensolve well under a second.
inline constexpr std::uint32_t kMaxSpectralWires = 10;

inline Matrix flatten_sum(const PauliSum& h) {
  if (h.n_wires > kMaxOracleWires)
    throw TooManyWires("flatten_sum: " + std::to_string(h.n_wires) +
                       " wires exceeds oracle cap");
  const Eigen::Index dim = Eigen::Index{1} << h.n_wires;
  Matrix m = Matrix::Zero(dim, dim);
  for (const PauliTerm& t : h.terms)
    m += t.coeff.value() * flatten_pauli(t.string);
  return m;
}

struct SpectralReport {
  double min_eig = 0;
  double max_eig = 0;
  double gap = 0;  // smallest eigenvalue above the kernel tolerance
  int kernel_dim = 0;
  double kernel_overlap = 0;  // |<output state|kernel vector>|^2
  bool fidelity_bounds_ok = false;
  int n_states_checked = 0;
  std::vector<double> spectrum;  // ascending

  bool ok(double tol = 1e-9) const {
    return std::abs(min_eig) <= tol && kernel_dim == 1 &&
           kernel_overlap >= 1.0 - tol && fidelity_bounds_ok;
  }
};

/// Dense eigendecomposition of the sum plus the ground-space claims: the
/// minimum eigenvalue is 0, the kernel is one-dimensional and spanned by the
/// circuit's output state, and for sampled low-energy states |phi> the
/// squared overlap with the output state obeys
///   1 - E/gap <= |<phi|psi>|^2 <= 1 - E/max_eig,   E = <phi|H|phi>.
inline SpectralReport spectral_check(const PauliSum& h,
                                     const CliffordCircuit& c,
                                     std::uint64_t seed = 0,
                                     int n_states = 100) {
  if (h.n_wires > kMaxSpectralWires)
    throw TooManyWires("spectral_check: " + std::to_string(h.n_wires) +
                       " wires exceeds dense cap " +
                       std::to_string(kMaxSpectralWires));
  if (h.n_wires != c.n_wires)
    throw LengthMismatch("spectral_check: sum and circuit wire counts differ");
  constexpr double kKernelTol = 1e-9;

  const Matrix hm = flatten_sum(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hm);
  const Eigen::VectorXd eigs = solver.eigenvalues();

  SpectralReport report;
  report.spectrum.assign(eigs.data(), eigs.data() + eigs.size());
  report.min_eig = eigs(0);
  report.max_eig = eigs(eigs.size() - 1);
  for (Eigen::Index k = 0; k < eigs.size(); ++k)
    if (std::abs(eigs(k)) <= kKernelTol) ++report.kernel_dim;
  report.gap = 0;
  for (Eigen::Index k = 0; k < eigs.size(); ++k)
    if (eigs(k) > kKernelTol) {
      report.gap = eigs(k);
      break;
    }

  const Vector psi = flatten_circuit(c) * zero_state(c.n_wires);
  const Vector kernel_vec = solver.eigenvectors().col(0);
  report.kernel_overlap = std::norm(psi.dot(kernel_vec));

  // Low-energy test states |phi> = normalize(psi + eta r): eta is halved
  // until <phi|H|phi> < gap so the lower bound's hypothesis holds.
  std::mt19937_64 rng(seed);
  bool bounds_ok = report.gap > 0;
  const double slack = 1e-9;
  for (int k = 0; k < n_states && bounds_ok; ++k) {
    Vector r(psi.size());
    for (Eigen::Index i = 0; i < r.size(); ++i)
      r(i) = Cplx(gaussian(rng), gaussian(rng));
    double eta = 0.5;
    Vector phi;
    double energy = 0;
    for (;;) {
      phi = psi + eta * r;
      phi.normalize();
      energy = phi.dot(hm * phi).real();
      if (energy < report.gap) break;
      eta *= 0.5;
    }
    const double overlap = std::norm(phi.dot(psi));
    const double lower = 1.0 - energy / report.gap;
    const double upper = 1.0 - energy / report.max_eig;
    if (overlap + slack < lower || overlap > upper + slack) bounds_ok = false;
    ++report.n_states_checked;
  }
  report.fidelity_bounds_ok = bounds_ok;
  return report;
}

/// True iff the ascending spectrum is {0..n} with multiplicity C(n,k) at k,
/// the spectrum of the initial projector on n wires.
inline bool spectrum_matches_hamming_weights(const std::vector<double>& eigs,
                                             std::uint32_t n,
                                             double tol = 1e-8) {
  if (eigs.size() != (std::size_t{1} << n)) return false;
  std::size_t pos = 0;
  std::uint64_t binom = 1;  // C(n, 0)
  for (std::uint32_t k = 0; k <= n; ++k) {
    for (std::uint64_t c = 0; c < binom; ++c, ++pos)
      if (std::abs(eigs[pos] - static_cast<double>(k)) > tol) return false;
    binom = binom * (n - k) / (k + 1);
  }
  return pos == eigs.size();
}

}  // namespace hzx
