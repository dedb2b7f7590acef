#include "qsdc/bell.hpp"

namespace qsdc {

namespace {

// Bell amplitudes times sqrt(2), indexed [bell_number][two-bit basis index].
constexpr int kBellSigns[4][4] = {
    {0, 1, -1, 0},  // psi-
    {0, 1, 1, 0},   // psi+
    {1, 0, 0, -1},  // phi-
    {1, 0, 0, 1},   // phi+
};

// 4 * <z|_{B1B2} <w|_{C1C2} (|x>_{B1C1} |y>_{B2C2}), exact in integers.
constexpr int swap_coefficient(int x, int y, int z, int w) {
  int sum = 0;
  for (int b1 = 0; b1 < 2; ++b1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int b2 = 0; b2 < 2; ++b2)
        for (int c2 = 0; c2 < 2; ++c2)
          sum += kBellSigns[x][b1 * 2 + c1] * kBellSigns[y][b2 * 2 + c2] *
                 kBellSigns[z][b1 * 2 + b2] * kBellSigns[w][c1 * 2 + c2];
  return sum;
}

using SwapTable = std::array<std::array<std::array<SwapOutcome, 4>, 4>, 4>;

constexpr SwapTable build_swap_table() {
  SwapTable table{};
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      int term = 0;
      for (int z = 0; z < 4; ++z) {
        for (int w = 0; w < 4; ++w) {
          const int c = swap_coefficient(x, y, z, w);
          if (c == 0) continue;
          // |c| is always 2: amplitude +-1/2.
          table[x][y][term++] = SwapOutcome{kAllBellStates[z], kAllBellStates[w], 0.25,
                                            c > 0 ? 1 : -1};
        }
      }
    }
  }
  return table;
}

constexpr SwapTable kSwapTable = build_swap_table();

static_assert(swap_coefficient(0, 0, 0, 0) == 2, "psi- psi- -> +psi- psi-");
static_assert(swap_coefficient(0, 0, 1, 1) == -2, "psi- psi- -> -psi+ psi+");

constexpr bool is_psi(BellIndex b) { return b == BellIndex::PsiMinus || b == BellIndex::PsiPlus; }
constexpr bool is_plus(BellIndex b) { return b == BellIndex::PsiPlus || b == BellIndex::PhiPlus; }

}  // namespace

Operator pauli_matrix(PauliOp op) {
  Operator m(2, 2);
  switch (op) {
    case PauliOp::U0: m << 1, 0, 0, 1; break;
    case PauliOp::U1: m << 1, 0, 0, -1; break;
    case PauliOp::U2: m << 0, 1, 1, 0; break;
    case PauliOp::U3: m << 0, 1, -1, 0; break;
  }
  return m;
}

QuantumState bell_state(BellIndex b, const std::string& first, const std::string& second) {
  return QuantumState::pure({first, second}, bell_vector(b));
}

BellIndex pauli_on_bell(BellIndex b, PauliOp op, Side /*side*/) {
  // A Pauli on either photon of a Bell state equals (up to phase) the same
  // Pauli on the other photon, so the side only changes the phase.
  return bell_from_bits(bits(b) ^ bits(op));
}

PauliOp pauli_compose(PauliOp a, PauliOp b) { return pauli_from_bits(bits(a) ^ bits(b)); }

PauliOp decode_pauli(PauliOp published, PauliOp own) { return pauli_compose(published, own); }

PauliOp bell_to_pauli(BellIndex outcome) { return pauli_from_bits(bits(outcome)); }

std::array<SwapOutcome, 4> swap_expand(BellIndex first_pair, BellIndex second_pair) {
  return kSwapTable[bell_number(first_pair)][bell_number(second_pair)];
}

PauliOp decode_swap(BellIndex bob_outcome, BellIndex carol_outcome) {
  const bool same_letter = is_psi(bob_outcome) == is_psi(carol_outcome);
  const bool same_sign = is_plus(bob_outcome) == is_plus(carol_outcome);
  if (same_letter) return same_sign ? PauliOp::U0 : PauliOp::U1;
  return same_sign ? PauliOp::U2 : PauliOp::U3;
}

}  // namespace qsdc
