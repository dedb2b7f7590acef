#pragma once

#include <array>
#include <string>

#include "qsdc/codes.hpp"
#include "qsdc/quantum.hpp"

namespace qsdc {

/// Which photon of a pair a local operation acts on.
enum class Side { B, C };

/// One term of the Bell-basis expansion of two pairs after entanglement
/// swapping: amplitude sign * 1/2 on |bob_result>_{B1B2} |carol_result>_{C1C2}.
struct SwapOutcome {
  BellIndex bob_result = BellIndex::PsiMinus;
  BellIndex carol_result = BellIndex::PsiMinus;
  double probability = 0.0;
  int sign = 1;

  friend bool operator==(const SwapOutcome&, const SwapOutcome&) = default;
};

/// 2x2 matrix of U0..U3.
Operator pauli_matrix(PauliOp op);

/// |b> over the given (first, second) labels.
QuantumState bell_state(BellIndex b, const std::string& first, const std::string& second);

/// Bell label reached by applying `op` to one photon of |b>, ignoring global phase.
BellIndex pauli_on_bell(BellIndex b, PauliOp op, Side side);

/// Product a*b modulo global phase; the codes combine by XOR.
PauliOp pauli_compose(PauliOp a, PauliOp b);

/// Removes a known operation from a published composite: U_B = U_A * U_C.
PauliOp decode_pauli(PauliOp published, PauliOp own);

/// The one-sided (C photon) Pauli that maps |psi-> onto `outcome`.
PauliOp bell_to_pauli(BellIndex outcome);

/// Expansion of |first>_{B1C1} (x) |second>_{B2C2} in the Bell bases of
/// (B1,B2) and (C1,C2). Always four terms, each with probability 1/4, ordered
/// by Bob's result in kAllBellStates order.
std::array<SwapOutcome, 4> swap_expand(BellIndex first_pair, BellIndex second_pair);

/// Recovers Bob's encoding from the two Bell results when both pairs started
/// as |psi->.
PauliOp decode_swap(BellIndex bob_outcome, BellIndex carol_outcome);

}  // namespace qsdc
