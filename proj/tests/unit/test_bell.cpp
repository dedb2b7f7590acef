#include <doctest.h>

#include "oracle.hpp"
#include "qsdc/bell.hpp"

using namespace qsdc;

namespace {

// Proportional up to a unit-modulus factor.
bool proportional(const Operator& a, const Operator& b) {
  Amplitude phase = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(b(i)) > 1e-12) {
      phase = a(i) / b(i);
      break;
    }
  }
  return std::abs(std::abs(phase) - 1.0) < 1e-12 && (a - phase * b).norm() < 1e-12;
}

double brute_force_amplitude(BellIndex first, BellIndex second, BellIndex bob, BellIndex carol) {
  // |first>_{B1C1} |second>_{B2C2} reordered to (B1, B2, C1, C2).
  const auto v = oracle::reorder(
      oracle::kron(oracle::bell(to_string(first)), oracle::bell(to_string(second))), 4, {0, 2, 1, 3});
  const auto amp = oracle::inner(oracle::kron(oracle::bell(to_string(bob)), oracle::bell(to_string(carol))), v);
  REQUIRE(std::abs(amp.imag()) < 1e-15);
  return amp.real();
}

}  // namespace

TEST_CASE("pauli matrices match their definitions") {
  for (int k = 0; k < 4; ++k) {
    const auto m = pauli_matrix(kAllPaulis[k]);
    const auto ref = oracle::pauli(k);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(m(i, j) == ref[i][j]);
  }
}

TEST_CASE("one-sided operations on the singlet") {
  const auto psi = bell_state(BellIndex::PsiMinus, "B", "C");
  const std::array<BellIndex, 4> expected{BellIndex::PsiMinus, BellIndex::PsiPlus,
                                          BellIndex::PhiMinus, BellIndex::PhiPlus};
  for (int k = 0; k < 4; ++k) {
    const auto op = kAllPaulis[k];
    CHECK(pauli_on_bell(BellIndex::PsiMinus, op, Side::C) == expected[k]);
    CHECK(bell_to_pauli(expected[k]) == op);
    const auto moved = apply_unitary(psi, pauli_matrix(op), std::string("C"));
    CHECK(equal_up_to_phase(moved, bell_state(expected[k], "B", "C")));
  }
  // sigma_z on C flips the sign of psi+; the other three land exactly.
  const auto z = apply_unitary(psi, pauli_matrix(PauliOp::U1), std::string("C"));
  CHECK((z.amplitudes() + bell_vector(BellIndex::PsiPlus)).norm() < 1e-15);
}

TEST_CASE("pauli_on_bell agrees with state evolution for all 32 cases") {
  for (auto b : kAllBellStates) {
    const auto s = bell_state(b, "B", "C");
    for (auto op : kAllPaulis) {
      for (auto side : {Side::B, Side::C}) {
        const std::string target = side == Side::B ? "B" : "C";
        const auto moved = apply_unitary(s, pauli_matrix(op), target);
        const auto label = pauli_on_bell(b, op, side);
        CHECK(equal_up_to_phase(moved, bell_state(label, "B", "C")));
      }
    }
  }
}

TEST_CASE("composition is XOR of codes and matches matrix products") {
  for (auto a : kAllPaulis) {
    for (auto b : kAllPaulis) {
      const auto c = pauli_compose(a, b);
      CHECK(bits(c) == (bits(a) ^ bits(b)));
      CHECK(proportional(pauli_matrix(a) * pauli_matrix(b), pauli_matrix(c)));
      CHECK(decode_pauli(c, b) == a);
    }
    CHECK(pauli_compose(a, a) == PauliOp::U0);
  }
}

TEST_CASE("swap expansion matches a brute-force four-qubit expansion") {
  for (auto first : kAllBellStates) {
    for (auto second : kAllBellStates) {
      const auto terms = swap_expand(first, second);
      for (auto bob : kAllBellStates) {
        for (auto carol : kAllBellStates) {
          double expected = 0.0;
          for (const auto& t : terms) {
            if (t.bob_result == bob && t.carol_result == carol) expected = 0.5 * t.sign;
          }
          CHECK(std::abs(brute_force_amplitude(first, second, bob, carol) - expected) < 1e-12);
        }
      }
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(terms[i].bob_result == kAllBellStates[i]);
        CHECK(terms[i].probability == 0.25);
      }
    }
  }
}

TEST_CASE("swap expansion agrees with the state engine") {
  for (auto first : kAllBellStates) {
    for (auto second : kAllBellStates) {
      const auto s = tensor(bell_state(first, "B1", "C1"), bell_state(second, "B2", "C2"));
      const std::array<std::string, 4> order{"B1", "B2", "C1", "C2"};
      const auto v = permute(s, order).amplitudes();
      for (const auto& t : swap_expand(first, second)) {
        const StateVector bv = bell_vector(t.bob_result), cv = bell_vector(t.carol_result);
        StateVector basis(16);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) basis[i * 4 + j] = bv[i] * cv[j];
        CHECK(std::abs(basis.dot(v) - 0.5 * t.sign) < 1e-12);
      }
    }
  }
}

TEST_CASE("singlet-singlet swap row") {
  const auto terms = swap_expand(BellIndex::PsiMinus, BellIndex::PsiMinus);
  const std::array<SwapOutcome, 4> expected{{
      {BellIndex::PsiMinus, BellIndex::PsiMinus, 0.25, +1},
      {BellIndex::PsiPlus, BellIndex::PsiPlus, 0.25, -1},
      {BellIndex::PhiMinus, BellIndex::PhiMinus, 0.25, -1},
      {BellIndex::PhiPlus, BellIndex::PhiPlus, 0.25, +1},
  }};
  CHECK(terms == expected);
}

TEST_CASE("decode_swap recovers every encoding from every branch") {
  for (auto op : kAllPaulis) {
    const auto encoded = pauli_on_bell(BellIndex::PsiMinus, op, Side::B);
    for (const auto& t : swap_expand(encoded, BellIndex::PsiMinus)) {
      CHECK(decode_swap(t.bob_result, t.carol_result) == op);
    }
  }
  CHECK(decode_swap(BellIndex::PsiMinus, BellIndex::PsiMinus) == PauliOp::U0);
}

TEST_CASE("bell_state labels its photons") {
  const auto s = bell_state(BellIndex::PhiPlus, "x", "y");
  CHECK(s.labels() == std::vector<std::string>{"x", "y"});
  CHECK((s.amplitudes() - bell_vector(BellIndex::PhiPlus)).norm() < 1e-15);
}
