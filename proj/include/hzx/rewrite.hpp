#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/pauli.hpp"
#include "hzx/rng.hpp"

// The term rewriting system. A term is a Pauli frame sandwiched inside a
// Clifford circuit, U . P . U^dagger. Every rule moves the frame across one
// adjacent gate/adjoint-gate pair, so a term is fully described by the
// circuit, the frame, and how many gate pairs have already been absorbed.
// The frame position increases strictly with every rule application, which
// makes termination structural: a term is terminal exactly when the whole
// circuit has been absorbed and only a Pauli string remains.

namespace hzx {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct SandwichTerm {
  std::shared_ptr<const CliffordCircuit> circuit;
  // Number of gates already conjugated into the frame: the term denotes
  // U_{frame_pos..t-1} . frame . U_{frame_pos..t-1}^dagger.
  std::size_t frame_pos = 0;
  PauliString frame = PauliString::identity(1);

  bool terminal() const { return frame_pos == circuit->gates.size(); }
};

inline SandwichTerm make_sandwich(std::shared_ptr<const CliffordCircuit> c,
                                  PauliString frame) {
  if (frame.size() != c->n_wires)
    throw LengthMismatch("sandwich frame has " + std::to_string(frame.size()) +
                         " letters for a " + std::to_string(c->n_wires) +
                         "-wire circuit");
  return SandwichTerm{std::move(c), 0, std::move(frame)};
}

// ---------------------------------------------------------------------------
// Rule catalog
// ---------------------------------------------------------------------------

/// One conjugation template. The catalog is total: for every gate kind and
/// every letter tuple on its wires exactly one rule matches. Gates whose
/// support in the frame is all-identity match SKIP-I, which is applied like
/// any rule but excluded from counted rewrites.
struct RewriteRule {
  std::string_view id;
  GateKind gate;
  int arity;
  std::array<PauliLetter, 2> before;  // before[1] unused for 1-wire gates
  std::array<PauliLetter, 2> after;
  Phase delta;
};

inline constexpr std::string_view kSkipRuleId = "SKIP-I";

namespace detail {

struct LetterAction {
  PauliLetter out;
  std::uint8_t phase_exp;  // 0 or 2
};

// H: Z -> X, X -> Z, Y -> -Y. Indexed by PauliLetter.
inline constexpr LetterAction kHadamardConj[4] = {
    {PauliLetter::I, 0},
    {PauliLetter::Z, 0},
    {PauliLetter::Y, 2},
    {PauliLetter::X, 0},
};

// Phase gate: X -> Y, Z -> Z, Y -> -X.
inline constexpr LetterAction kPhaseConj[4] = {
    {PauliLetter::I, 0},
    {PauliLetter::Y, 0},
    {PauliLetter::X, 2},
    {PauliLetter::Z, 0},
};

// Pauli gates conjugate by letter algebra: G: P -> G.P.G (G self-inverse),
// which only ever flips the sign.
constexpr LetterAction pauli_gate_conj(PauliLetter g, PauliLetter p) {
  const auto [ph1, l1] = letter_mul(g, p);
  const auto [ph2, l2] = letter_mul(l1, g);
  return LetterAction{l2, static_cast<std::uint8_t>((ph1 * ph2).exponent())};
}

struct PairAction {
  PauliLetter out_control;
  PauliLetter out_target;
  std::uint8_t phase_exp;  // 0 or 2
};

// CX conjugation, indexed [control letter][target letter].
inline constexpr PairAction kCxConj[4][4] = {
    // control I
    {{PauliLetter::I, PauliLetter::I, 0},
     {PauliLetter::I, PauliLetter::X, 0},
     {PauliLetter::Z, PauliLetter::Y, 0},
     {PauliLetter::Z, PauliLetter::Z, 0}},
    // control X
    {{PauliLetter::X, PauliLetter::X, 0},
     {PauliLetter::X, PauliLetter::I, 0},
     {PauliLetter::Y, PauliLetter::Z, 0},
     {PauliLetter::Y, PauliLetter::Y, 2}},
    // control Y
    {{PauliLetter::Y, PauliLetter::X, 0},
     {PauliLetter::Y, PauliLetter::I, 0},
     {PauliLetter::X, PauliLetter::Z, 2},
     {PauliLetter::X, PauliLetter::Y, 0}},
    // control Z
    {{PauliLetter::Z, PauliLetter::I, 0},
     {PauliLetter::Z, PauliLetter::X, 0},
     {PauliLetter::I, PauliLetter::Y, 0},
     {PauliLetter::I, PauliLetter::Z, 0}},
};

// Rule names, indexed the same way.
inline constexpr std::string_view kCxRuleId[4][4] = {
    {"SKIP-I", "R2", "A2", "R5"},
    {"R1", "R3", "A4", "R8"},
    {"A1", "A5", "A3", "A6"},
    {"R4", "R7", "A7", "R6"},
};

inline constexpr std::string_view kHadamardRuleId[4] = {"SKIP-I", "H2", "H-Y",
                                                        "H1"};
inline constexpr std::string_view kPhaseRuleId[4] = {"SKIP-I", "P-X", "P-Y",
                                                     "P-Z"};
// Pauli-gate rules, [gate][letter]; gates indexed X=0, Y=1, Z=2.
inline constexpr std::string_view kPauliRuleId[3][4] = {
    {"SKIP-I", "X-X", "X-Y", "X-Z"},
    {"SKIP-I", "Y-X", "Y-Y", "Y-Z"},
    {"SKIP-I", "Z-X", "Z-Y", "Z-Z"},
};

inline LetterAction single_gate_conj(GateKind k, PauliLetter p) {
  switch (k) {
    case GateKind::H: return kHadamardConj[static_cast<std::uint8_t>(p)];
    case GateKind::S: return kPhaseConj[static_cast<std::uint8_t>(p)];
    case GateKind::X: return pauli_gate_conj(PauliLetter::X, p);
    case GateKind::Y: return pauli_gate_conj(PauliLetter::Y, p);
    case GateKind::Z: return pauli_gate_conj(PauliLetter::Z, p);
    case GateKind::CX: break;
  }
  throw Error("single_gate_conj: CX is two-wire");
}

inline std::string_view single_gate_rule_id(GateKind k, PauliLetter p) {
  const auto ip = static_cast<std::uint8_t>(p);
  switch (k) {
    case GateKind::H: return kHadamardRuleId[ip];
    case GateKind::S: return kPhaseRuleId[ip];
    case GateKind::X: return kPauliRuleId[0][ip];
    case GateKind::Y: return kPauliRuleId[1][ip];
    case GateKind::Z: return kPauliRuleId[2][ip];
    case GateKind::CX: break;
  }
  throw Error("single_gate_rule_id: CX is two-wire");
}

}  // namespace detail

/// The complete closed catalog: 4 rules for each single-qubit gate kind and
/// 16 for CX (the all-identity cases share the id SKIP-I).
inline std::vector<RewriteRule> rule_catalog() {
  std::vector<RewriteRule> rules;
  rules.reserve(36);
  constexpr PauliLetter letters[4] = {PauliLetter::I, PauliLetter::X,
                                      PauliLetter::Y, PauliLetter::Z};
  constexpr GateKind singles[5] = {GateKind::H, GateKind::S, GateKind::X,
                                   GateKind::Y, GateKind::Z};
  for (GateKind k : singles) {
    for (PauliLetter p : letters) {
      const auto act = detail::single_gate_conj(k, p);
      rules.push_back(RewriteRule{detail::single_gate_rule_id(k, p), k, 1,
                                  {p, PauliLetter::I},
                                  {act.out, PauliLetter::I},
                                  Phase(act.phase_exp)});
    }
  }
  for (PauliLetter c : letters) {
    for (PauliLetter t : letters) {
      const auto act = detail::kCxConj[static_cast<std::uint8_t>(c)]
                                      [static_cast<std::uint8_t>(t)];
      rules.push_back(
          RewriteRule{detail::kCxRuleId[static_cast<std::uint8_t>(c)]
                                       [static_cast<std::uint8_t>(t)],
                      GateKind::CX, 2,
                      {c, t},
                      {act.out_control, act.out_target},
                      Phase(act.phase_exp)});
    }
  }
  return rules;
}

/// Catalog lookup for a concrete gate application against a frame.
inline const RewriteRule& match_rule(GateKind gate, PauliLetter l0,
                                     PauliLetter l1 = PauliLetter::I) {
  static const std::vector<RewriteRule> catalog = rule_catalog();
  for (const RewriteRule& r : catalog) {
    if (r.gate != gate) continue;
    if (r.arity == 1 && r.before[0] == l0) return r;
    if (r.arity == 2 && r.before[0] == l0 && r.before[1] == l1) return r;
  }
  throw Error("match_rule: catalog is not total");  // unreachable
}

// ---------------------------------------------------------------------------
// Steps and traces
// ---------------------------------------------------------------------------

struct RewriteStep {
  std::string rule;
  std::size_t gate_index;
  std::string letters_before;  // letters on the gate's wires, control first
  std::string letters_after;
  Phase phase_delta;

  bool counted() const { return rule != kSkipRuleId; }
  bool operator==(const RewriteStep&) const = default;
};

struct RewriteTrace {
  SandwichTerm initial;
  std::vector<RewriteStep> steps;
  PauliString final = PauliString::identity(1);
  std::size_t counted_rewrites = 0;
};

/// Absorbs the gate at `gate_index` into the frame. The index must equal the
/// term's frame position: the Heisenberg templates only match a Pauli frame
/// adjacent to its conjugating gate pair.
inline std::pair<SandwichTerm, RewriteStep> apply_rule(
    const SandwichTerm& term, std::size_t gate_index) {
  if (term.terminal())
    throw AlreadyTerminal("term is terminal; no gates left to absorb");
  if (gate_index != term.frame_pos)
    throw NotApplicable("gate " + std::to_string(gate_index) +
                        " is not adjacent to the frame (frame_pos " +
                        std::to_string(term.frame_pos) + ")");
  const GateApp& gate = term.circuit->gates[gate_index];
  SandwichTerm next = term;
  RewriteStep step;
  step.gate_index = gate_index;
  if (gate.arity() == 1) {
    const PauliLetter before = term.frame.letter(gate.wires[0]);
    const RewriteRule& rule = match_rule(gate.kind, before);
    next.frame = term.frame.with_letter(gate.wires[0], rule.after[0]);
    next.frame = next.frame.with_phase(term.frame.phase() * rule.delta);
    step.rule = rule.id;
    step.letters_before = {letter_char(before)};
    step.letters_after = {letter_char(rule.after[0])};
    step.phase_delta = rule.delta;
  } else {
    const PauliLetter c = term.frame.letter(gate.wires[0]);
    const PauliLetter t = term.frame.letter(gate.wires[1]);
    const RewriteRule& rule = match_rule(gate.kind, c, t);
    next.frame = term.frame.with_letter(gate.wires[0], rule.after[0])
                     .with_letter(gate.wires[1], rule.after[1]);
    next.frame = next.frame.with_phase(term.frame.phase() * rule.delta);
    step.rule = rule.id;
    step.letters_before = {letter_char(c), letter_char(t)};
    step.letters_after = {letter_char(rule.after[0]), letter_char(rule.after[1])};
    step.phase_delta = rule.delta;
  }
  next.frame_pos = term.frame_pos + 1;
  return {std::move(next), std::move(step)};
}

// ---------------------------------------------------------------------------
// Strategies and normal forms
// ---------------------------------------------------------------------------

/// Rule application order. Within one sandwich the absorption order is
/// forced by the frame position; RandomOrderSeeded only permutes the
/// interleaving of independent frames when a batch of generators is
/// propagated together.
struct Strategy {
  enum class Kind { InOrder, RandomOrderSeeded };
  Kind kind = Kind::InOrder;
  std::uint64_t seed = 0;

  static Strategy in_order() { return {}; }
  static Strategy random_order(std::uint64_t seed) {
    return {Kind::RandomOrderSeeded, seed};
  }
};

namespace detail {

inline void advance(SandwichTerm& term, RewriteTrace& trace) {
  auto [next, step] = apply_rule(term, term.frame_pos);
  term = std::move(next);
  if (step.counted()) ++trace.counted_rewrites;
  trace.steps.push_back(std::move(step));
}

}  // namespace detail

/// Rewrites the sandwich U . p . U^dagger to its terminal Pauli string,
/// recording every step. Halts in exactly gate_count absorptions.
inline RewriteTrace normal_form(std::shared_ptr<const CliffordCircuit> c,
                                PauliString p,
                                Strategy strategy = Strategy::in_order()) {
  (void)strategy;  // a single frame admits exactly one absorption order
  SandwichTerm term = make_sandwich(std::move(c), std::move(p));
  RewriteTrace trace;
  trace.initial = term;
  while (!term.terminal()) detail::advance(term, trace);
  trace.final = term.frame;
  return trace;
}

inline RewriteTrace normal_form(const CliffordCircuit& c, PauliString p,
                                Strategy strategy = Strategy::in_order()) {
  return normal_form(std::make_shared<const CliffordCircuit>(c), std::move(p),
                     strategy);
}

/// Re-derives the trace from its initial term and verifies every recorded
/// step and the final string. Used for trace integrity checks.
inline bool replay_trace(const RewriteTrace& trace) {
  SandwichTerm term = trace.initial;
  std::size_t counted = 0;
  for (const RewriteStep& recorded : trace.steps) {
    if (term.terminal()) return false;
    auto [next, step] = apply_rule(term, recorded.gate_index);
    if (step != recorded) return false;
    if (step.counted()) ++counted;
    term = std::move(next);
  }
  return term.terminal() && term.frame == trace.final &&
         counted == trace.counted_rewrites;
}

/// The 2n single-letter generators X_1..X_n, Z_1..Z_n in batch order.
inline std::vector<PauliString> pauli_generators(std::uint32_t n_wires) {
  std::vector<PauliString> gens;
  gens.reserve(2 * std::size_t{n_wires});
  for (std::uint32_t w = 0; w < n_wires; ++w)
    gens.push_back(PauliString::single(n_wires, w, PauliLetter::X));
  for (std::uint32_t w = 0; w < n_wires; ++w)
    gens.push_back(PauliString::single(n_wires, w, PauliLetter::Z));
  return gens;
}

/// Propagates a batch of frames through the circuit. With InOrder each frame
/// is absorbed to completion in turn; with RandomOrderSeeded the scheduler
/// repeatedly picks a random non-terminal frame and advances it one step.
/// The resulting traces are reported in input order either way.
inline std::vector<RewriteTrace> propagate_frames(
    std::shared_ptr<const CliffordCircuit> c, std::vector<PauliString> frames,
    Strategy strategy = Strategy::in_order()) {
  std::vector<SandwichTerm> terms;
  std::vector<RewriteTrace> traces(frames.size());
  terms.reserve(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    terms.push_back(make_sandwich(c, std::move(frames[k])));
    traces[k].initial = terms[k];
  }
  if (strategy.kind == Strategy::Kind::InOrder) {
    for (std::size_t k = 0; k < terms.size(); ++k)
      while (!terms[k].terminal()) detail::advance(terms[k], traces[k]);
  } else {
    std::mt19937_64 rng(strategy.seed);
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < terms.size(); ++k)
      if (!terms[k].terminal()) active.push_back(k);
    while (!active.empty()) {
      const std::size_t pick = bounded(rng, active.size());
      const std::size_t k = active[pick];
      detail::advance(terms[k], traces[k]);
      if (terms[k].terminal()) {
        active[pick] = active.back();
        active.pop_back();
      }
    }
  }
  for (std::size_t k = 0; k < terms.size(); ++k)
    traces[k].final = terms[k].frame;
  return traces;
}

struct GeneratorImage {
  PauliString generator;
  PauliString image;
  std::size_t counted_rewrites;
};

/// Heisenberg description of the circuit: the images of all 2n single-letter
/// generators under U . (-) . U^dagger, in the order X_1..X_n, Z_1..Z_n.
inline std::vector<GeneratorImage> propagate_generators(
    const CliffordCircuit& c, Strategy strategy = Strategy::in_order()) {
  auto shared = std::make_shared<const CliffordCircuit>(c);
  auto traces = propagate_frames(shared, pauli_generators(c.n_wires), strategy);
  std::vector<GeneratorImage> images;
  images.reserve(traces.size());
  for (RewriteTrace& t : traces)
    images.push_back(
        GeneratorImage{t.initial.frame, t.final, t.counted_rewrites});
  return images;
}

/// Images of Z_1..Z_n, the stabilizer generators of |0^n>; by covariance
/// these generate the stabilizer group of the circuit's output state.
inline std::vector<PauliString> stabilizer_group_of_output(
    const CliffordCircuit& c) {
  auto shared = std::make_shared<const CliffordCircuit>(c);
  std::vector<PauliString> zs;
  for (std::uint32_t w = 0; w < c.n_wires; ++w)
    zs.push_back(PauliString::single(c.n_wires, w, PauliLetter::Z));
  auto traces = propagate_frames(shared, std::move(zs));
  std::vector<PauliString> images;
  images.reserve(traces.size());
  for (RewriteTrace& t : traces) images.push_back(t.final);
  return images;
}

}  // namespace hzx
