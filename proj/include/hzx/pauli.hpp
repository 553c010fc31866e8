#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hzx/errors.hpp"

namespace hzx {

/// Single-wire Pauli operator. The numeric values are chosen so that the
/// letter part of a product is the bitwise XOR of the factors.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

constexpr char letter_char(PauliLetter l) {
  constexpr char chars[4] = {'I', 'X', 'Y', 'Z'};
  return chars[static_cast<std::uint8_t>(l)];
}

/// Fourth root of unity i^k, k mod 4. All phase arithmetic is exact integer
/// arithmetic; a complex value is only materialized on demand.
class Phase {
public:
  constexpr Phase() : exp_(0) {}
  constexpr explicit Phase(int exponent)
      : exp_(static_cast<std::uint8_t>(((exponent % 4) + 4) % 4)) {}

  constexpr int exponent() const { return exp_; }
  constexpr bool is_identity() const { return exp_ == 0; }
  /// True for +1 / -1, i.e. the Hermitian phases.
  constexpr bool is_real() const { return exp_ % 2 == 0; }
  constexpr int sign() const { return exp_ == 0 ? 1 : -1; }  // valid if is_real()

  constexpr Phase operator*(Phase o) const { return Phase(exp_ + o.exp_); }
  Phase& operator*=(Phase o) {
    exp_ = static_cast<std::uint8_t>((exp_ + o.exp_) % 4);
    return *this;
  }
  constexpr Phase conjugated() const { return Phase(4 - exp_); }

  constexpr bool operator==(const Phase&) const = default;

  std::complex<double> value() const {
    constexpr std::complex<double> table[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[exp_];
  }

  std::string str() const {
    constexpr const char* table[4] = {"+", "+i", "-", "-i"};
    return table[exp_];
  }

private:
  std::uint8_t exp_;
};

namespace detail {
// i^k such that a*b = i^k * (a XOR b) for the encoding above.
// Rows/cols indexed I, X, Y, Z.
inline constexpr std::uint8_t kLetterMulPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};
}  // namespace detail

/// Product of two Pauli letters as 2x2 matrices: a*b = phase * letter.
constexpr std::pair<Phase, PauliLetter> letter_mul(PauliLetter a,
                                                   PauliLetter b) {
  const auto ia = static_cast<std::uint8_t>(a);
  const auto ib = static_cast<std::uint8_t>(b);
  return {Phase(detail::kLetterMulPhase[ia][ib]),
          static_cast<PauliLetter>(ia ^ ib)};
}

/// An element of the n-wire Pauli group: a phase and one letter per wire.
/// Wire 0 is the leftmost letter in text form. Immutable in practice: all
/// operations return new values.
class PauliString {
public:
  PauliString(Phase phase, std::vector<PauliLetter> letters)
      : phase_(phase), letters_(std::move(letters)) {}

  static PauliString identity(std::size_t n) {
    return PauliString(Phase(), std::vector<PauliLetter>(n, PauliLetter::I));
  }

  /// All-identity string with letter `l` on `wire`.
  static PauliString single(std::size_t n, std::size_t wire, PauliLetter l,
                            Phase phase = Phase()) {
    if (wire >= n)
      throw WireOutOfRange("pauli wire " + std::to_string(wire) +
                           " out of range for " + std::to_string(n) +
                           " wires");
    std::vector<PauliLetter> ls(n, PauliLetter::I);
    ls[wire] = l;
    return PauliString(phase, std::move(ls));
  }

  std::size_t size() const { return letters_.size(); }
  Phase phase() const { return phase_; }
  const std::vector<PauliLetter>& letters() const { return letters_; }
  PauliLetter letter(std::size_t wire) const { return letters_[wire]; }

  bool is_identity_letters() const {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](PauliLetter l) { return l == PauliLetter::I; });
  }

  /// Hermitian iff the phase is +1 or -1.
  bool is_hermitian() const { return phase_.is_real(); }

  PauliString with_phase(Phase p) const { return PauliString(p, letters_); }

  PauliString with_letter(std::size_t wire, PauliLetter l) const {
    std::vector<PauliLetter> ls = letters_;
    ls[wire] = l;
    return PauliString(phase_, std::move(ls));
  }

  /// Canonical text form: phase prefix ("+", "+i", "-", "-i") followed by
  /// uppercase letters, wire 0 first.
  std::string str() const {
    std::string s = phase_.str();
    s.reserve(s.size() + letters_.size());
    for (PauliLetter l : letters_) s.push_back(letter_char(l));
    return s;
  }

  bool operator==(const PauliString&) const = default;

  /// Orders by letters first, phase exponent second, so the all-identity
  /// string sorts first and the ordering matches the canonical text form.
  bool operator<(const PauliString& o) const {
    if (letters_ != o.letters_) return letters_ < o.letters_;
    return phase_.exponent() < o.phase_.exponent();
  }

private:
  Phase phase_;
  std::vector<PauliLetter> letters_;
};

/// Componentwise product with exact phase accumulation.
inline PauliString string_mul(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size())
    throw LengthMismatch("pauli string lengths differ: " +
                         std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()));
  Phase phase = p.phase() * q.phase();
  std::vector<PauliLetter> letters(p.size());
  for (std::size_t w = 0; w < p.size(); ++w) {
    auto [ph, l] = letter_mul(p.letter(w), q.letter(w));
    phase *= ph;
    letters[w] = l;
  }
  return PauliString(phase, std::move(letters));
}

/// Parses the grammar ["+"|"-"]["i"]?[IXYZ]+ . Throws ParseError with the
/// byte offset of the first offending character.
inline PauliString parse_pauli(std::string_view text) {
  std::size_t pos = 0;
  int exponent = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') exponent = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    exponent += 1;  // "+i" -> 1, "-i" -> 3
    ++pos;
  }
  std::vector<PauliLetter> letters;
  letters.reserve(text.size() - pos);
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': letters.push_back(PauliLetter::I); break;
      case 'X': letters.push_back(PauliLetter::X); break;
      case 'Y': letters.push_back(PauliLetter::Y); break;
      case 'Z': letters.push_back(PauliLetter::Z); break;
      default:
        throw ParseError(std::string("invalid Pauli letter '") + text[pos] +
                             "'",
                         pos);
    }
  }
  if (letters.empty())
    throw ParseError("expected at least one Pauli letter", pos);
  return PauliString(Phase(exponent), std::move(letters));
}

/// True iff p and q commute. Two Pauli strings anticommute exactly when the
/// number of wires carrying distinct non-identity letters is odd.
inline bool commutes(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size())
    throw LengthMismatch("commutes: lengths differ");
  int anti = 0;
  for (std::size_t w = 0; w < p.size(); ++w) {
    PauliLetter a = p.letter(w);
    PauliLetter b = q.letter(w);
    if (a != PauliLetter::I && b != PauliLetter::I && a != b) ++anti;
  }
  return anti % 2 == 0;
}

/// The group generated by `gens` under string_mul: all subset products,
/// deduplicated and sorted. Intended for small generating sets (the result
/// has up to 2^k elements for k independent generators).
inline std::vector<PauliString> span_group(
    const std::vector<PauliString>& gens) {
  if (gens.empty()) return {};
  const std::size_t n = gens.front().size();
  std::vector<PauliString> out;
  out.reserve(std::size_t{1} << gens.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    PauliString acc = PauliString::identity(n);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (mask & (std::size_t{1} << k)) acc = string_mul(acc, gens[k]);
    out.push_back(std::move(acc));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hzx
