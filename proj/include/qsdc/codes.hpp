#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace qsdc {

/// The four Bell states of a photon pair.
///
/// The underlying value is the 2-bit code of the one-sided Pauli operation
/// that turns |psi-> into this state, so label algebra reduces to XOR.
enum class BellIndex : std::uint8_t {
  PsiMinus = 0b00,
  PsiPlus = 0b11,
  PhiMinus = 0b01,
  PhiPlus = 0b10,
};

/// Local encoding operations: U0 = I, U1 = sigma_z, U2 = sigma_x, U3 = i sigma_y.
/// The underlying value is the 2-bit message code carried by the operation.
enum class PauliOp : std::uint8_t {
  U0 = 0b00,
  U1 = 0b11,
  U2 = 0b01,
  U3 = 0b10,
};

inline constexpr std::array<BellIndex, 4> kAllBellStates = {
    BellIndex::PsiMinus, BellIndex::PsiPlus, BellIndex::PhiMinus, BellIndex::PhiPlus};

inline constexpr std::array<PauliOp, 4> kAllPaulis = {PauliOp::U0, PauliOp::U1, PauliOp::U2,
                                                      PauliOp::U3};

constexpr std::uint8_t bits(PauliOp op) { return static_cast<std::uint8_t>(op); }
constexpr std::uint8_t bits(BellIndex b) { return static_cast<std::uint8_t>(b); }

constexpr PauliOp pauli_from_bits(std::uint8_t code) {
  return static_cast<PauliOp>(code & 0b11);
}
constexpr BellIndex bell_from_bits(std::uint8_t code) {
  return static_cast<BellIndex>(code & 0b11);
}

/// Position of the operation in the U0..U3 numbering.
constexpr int pauli_number(PauliOp op) {
  switch (op) {
    case PauliOp::U0: return 0;
    case PauliOp::U1: return 1;
    case PauliOp::U2: return 2;
    case PauliOp::U3: return 3;
  }
  return 0;
}

/// Position of the state in the psi-, psi+, phi-, phi+ ordering.
constexpr int bell_number(BellIndex b) {
  switch (b) {
    case BellIndex::PsiMinus: return 0;
    case BellIndex::PsiPlus: return 1;
    case BellIndex::PhiMinus: return 2;
    case BellIndex::PhiPlus: return 3;
  }
  return 0;
}

std::string_view to_string(PauliOp op);
std::string_view to_string(BellIndex b);

// Accept "U0".."U3" and "psi-", "psi+", "phi-", "phi+". Throw std::invalid_argument otherwise.
PauliOp parse_pauli(std::string_view text);
BellIndex parse_bell(std::string_view text);

}  // namespace qsdc
