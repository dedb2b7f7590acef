#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/codes.hpp"

namespace qsdc {

/// A classical message as a bit sequence, two bits per encoded pair.
struct Message {
  std::vector<std::uint8_t> bits;

  /// Most significant bit of each hex digit first. Throws std::invalid_argument.
  static Message from_hex(std::string_view hex);
  /// Throws std::invalid_argument unless every character is '0' or '1'.
  static Message from_bit_string(std::string_view text);
  static Message from_paulis(const std::vector<PauliOp>& ops);

  /// Hex rendering; requires a multiple of four bits.
  std::string to_hex() const;
  std::string to_bit_string() const;

  /// Consecutive bit pairs as Pauli codes (first bit is the high code bit).
  /// Requires an even length.
  std::vector<PauliOp> to_paulis() const;

  std::size_t size() const { return bits.size(); }

  friend bool operator==(const Message&, const Message&) = default;
};

}  // namespace qsdc
