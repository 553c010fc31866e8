#include <catch_amalgamated.hpp>

#include <memory>

#include "hzx/circuit.hpp"
#include "hzx/harness.hpp"
#include "hzx/pauli.hpp"
#include "hzx/rewrite.hpp"
#include "hzx/rng.hpp"
#include "hzx/tableau.hpp"

using namespace hzx;

TEST_CASE("identity tableau rows") {
  const Tableau t = Tableau::identity(3);
  REQUIRE(t.rows.size() == 6);
  CHECK(row_to_pauli(t.rows[0]) == parse_pauli("+XII"));
  CHECK(row_to_pauli(t.rows[2]) == parse_pauli("+IIX"));
  CHECK(row_to_pauli(t.rows[3]) == parse_pauli("+ZII"));
  CHECK(row_to_pauli(t.rows[5]) == parse_pauli("+IIZ"));
}

TEST_CASE("row parsing keeps the sign") {
  CHECK(row_to_pauli(TableauRow{-1, "XY"}) == parse_pauli("-XY"));
  CHECK(row_to_pauli(TableauRow{+1, "I"}) == parse_pauli("+I"));
}

TEST_CASE("single gates move the generator rows") {
  const Tableau h = run_circuit(parse_circuit("qubits 1\nH 0\n"));
  CHECK(row_to_pauli(h.rows[0]) == parse_pauli("+Z"));
  CHECK(row_to_pauli(h.rows[1]) == parse_pauli("+X"));

  const Tableau s = run_circuit(parse_circuit("qubits 1\nS 0\n"));
  CHECK(row_to_pauli(s.rows[0]) == parse_pauli("+Y"));
  CHECK(row_to_pauli(s.rows[1]) == parse_pauli("+Z"));

  const Tableau x = run_circuit(parse_circuit("qubits 1\nX 0\n"));
  CHECK(row_to_pauli(x.rows[0]) == parse_pauli("+X"));
  CHECK(row_to_pauli(x.rows[1]) == parse_pauli("-Z"));

  const Tableau y = run_circuit(parse_circuit("qubits 1\nY 0\n"));
  CHECK(row_to_pauli(y.rows[0]) == parse_pauli("-X"));
  CHECK(row_to_pauli(y.rows[1]) == parse_pauli("-Z"));

  const Tableau z = run_circuit(parse_circuit("qubits 1\nZ 0\n"));
  CHECK(row_to_pauli(z.rows[0]) == parse_pauli("-X"));
  CHECK(row_to_pauli(z.rows[1]) == parse_pauli("+Z"));
}

TEST_CASE("controlled-X spreads the generators") {
  const Tableau t = run_circuit(parse_circuit("qubits 2\nCX 0 1\n"));
  CHECK(row_to_pauli(t.rows[0]) == parse_pauli("+XX"));  // X on control
  CHECK(row_to_pauli(t.rows[1]) == parse_pauli("+IX"));  // X on target
  CHECK(row_to_pauli(t.rows[2]) == parse_pauli("+ZI"));  // Z on control
  CHECK(row_to_pauli(t.rows[3]) == parse_pauli("+ZZ"));  // Z on target
}

TEST_CASE("bell tableau matches the worked example") {
  const Tableau t = run_circuit(parse_circuit("qubits 2\nH 0\nCX 0 1\n"));
  CHECK(row_to_pauli(t.rows[0]) == parse_pauli("+ZI"));
  CHECK(row_to_pauli(t.rows[1]) == parse_pauli("+IX"));
  CHECK(row_to_pauli(t.rows[2]) == parse_pauli("+XX"));
  CHECK(row_to_pauli(t.rows[3]) == parse_pauli("+ZZ"));
}

TEST_CASE("tableau agrees with the rewrite engine on random circuits") {
  std::mt19937_64 rng(0x7ab1eaULL);
  for (int inst = 0; inst < 30; ++inst) {
    const auto n = static_cast<std::uint32_t>(1 + bounded(rng, 6));
    const auto gates = static_cast<std::uint32_t>(bounded(rng, 25));
    const CliffordCircuit c = random_circuit(n, gates, rng);
    const Tableau t = run_circuit(c);
    const auto images = propagate_generators(c);
    REQUIRE(images.size() == t.rows.size());
    for (std::size_t k = 0; k < images.size(); ++k)
      CHECK(images[k].image == row_to_pauli(t.rows[k]));
  }
}

TEST_CASE("conjugation of arbitrary strings matches the engine") {
  std::mt19937_64 rng(0xc0ffeeULL);
  for (int inst = 0; inst < 20; ++inst) {
    const auto n = static_cast<std::uint32_t>(1 + bounded(rng, 5));
    const auto gates = static_cast<std::uint32_t>(bounded(rng, 20));
    const CliffordCircuit c = random_circuit(n, gates, rng);
    const Tableau t = run_circuit(c);
    for (int k = 0; k < 10; ++k) {
      PauliString p = PauliString::identity(n);
      for (std::uint32_t w = 0; w < n; ++w)
        p = p.with_letter(w, static_cast<PauliLetter>(bounded(rng, 4)));
      p = p.with_phase(Phase(static_cast<int>(2 * bounded(rng, 2))));
      CHECK(tableau_conjugate(t, p) == normal_form(c, p).final);
    }
  }
}

TEST_CASE("y expansion keeps the fourth roots straight") {
  const Tableau eye = Tableau::identity(2);
  CHECK(tableau_conjugate(eye, parse_pauli("+YY")) == parse_pauli("+YY"));
  CHECK(tableau_conjugate(eye, parse_pauli("-iYX")) == parse_pauli("-iYX"));
  const Tableau s = run_circuit(parse_circuit("qubits 1\nS 0\n"));
  // S Y S^dagger = -X.
  CHECK(tableau_conjugate(s, parse_pauli("+Y")) == parse_pauli("-X"));
}

TEST_CASE("conjugation validates the string length") {
  const Tableau t = Tableau::identity(2);
  CHECK_THROWS_AS(tableau_conjugate(t, parse_pauli("+XYZ")), LengthMismatch);
}
