#include <doctest.h>

#include <stdexcept>

#include "qsdc/codes.hpp"
#include "qsdc/message.hpp"

using namespace qsdc;

TEST_CASE("message codes of the four operations") {
  CHECK(bits(PauliOp::U0) == 0b00);
  CHECK(bits(PauliOp::U1) == 0b11);
  CHECK(bits(PauliOp::U2) == 0b01);
  CHECK(bits(PauliOp::U3) == 0b10);
}

TEST_CASE("names round-trip") {
  for (auto op : kAllPaulis) CHECK(parse_pauli(to_string(op)) == op);
  for (auto b : kAllBellStates) CHECK(parse_bell(to_string(b)) == b);
  CHECK(to_string(BellIndex::PsiMinus) == "psi-");
  CHECK(to_string(PauliOp::U3) == "U3");
  CHECK_THROWS_AS(parse_pauli("U4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bell("chi+"), std::invalid_argument);
}

TEST_CASE("numbering follows declaration order") {
  for (int i = 0; i < 4; ++i) {
    CHECK(pauli_number(kAllPaulis[i]) == i);
    CHECK(bell_number(kAllBellStates[i]) == i);
  }
}

TEST_CASE("from_bits masks to two bits") {
  CHECK(pauli_from_bits(0b111) == PauliOp::U1);
  CHECK(bell_from_bits(0b110) == BellIndex::PhiPlus);
}
