#include "qsdc/codes.hpp"

#include <stdexcept>

namespace qsdc {

std::string_view to_string(PauliOp op) {
  switch (op) {
    case PauliOp::U0: return "U0";
    case PauliOp::U1: return "U1";
    case PauliOp::U2: return "U2";
    case PauliOp::U3: return "U3";
  }
  return "?";
}

std::string_view to_string(BellIndex b) {
  switch (b) {
    case BellIndex::PsiMinus: return "psi-";
    case BellIndex::PsiPlus: return "psi+";
    case BellIndex::PhiMinus: return "phi-";
    case BellIndex::PhiPlus: return "phi+";
  }
  return "?";
}

PauliOp parse_pauli(std::string_view text) {
  for (PauliOp op : kAllPaulis) {
    if (to_string(op) == text) return op;
  }
  throw std::invalid_argument("unknown Pauli operation '" + std::string(text) +
                              "' (expected U0, U1, U2 or U3)");
}

BellIndex parse_bell(std::string_view text) {
  for (BellIndex b : kAllBellStates) {
    if (to_string(b) == text) return b;
  }
  throw std::invalid_argument("unknown Bell state '" + std::string(text) +
                              "' (expected psi-, psi+, phi- or phi+)");
}

}  // namespace qsdc
