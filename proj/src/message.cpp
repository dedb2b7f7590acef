#include "qsdc/message.hpp"

#include <stdexcept>

namespace qsdc {

Message Message::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  Message m;
  m.bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v = 0;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument("invalid hex digit '" + std::string(1, c) + "' in message");
    }
    for (int b = 3; b >= 0; --b) m.bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  return m;
}

Message Message::from_bit_string(std::string_view text) {
  Message m;
  m.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("invalid bit '" + std::string(1, c) + "' in message");
    }
    m.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return m;
}

Message Message::from_paulis(const std::vector<PauliOp>& ops) {
  Message m;
  m.bits.reserve(ops.size() * 2);
  for (PauliOp op : ops) {
    m.bits.push_back(static_cast<std::uint8_t>((qsdc::bits(op) >> 1) & 1));
    m.bits.push_back(static_cast<std::uint8_t>(qsdc::bits(op) & 1));
  }
  return m;
}

std::string Message::to_hex() const {
  if (bits.size() % 4 != 0) {
    throw std::invalid_argument("message length " + std::to_string(bits.size()) +
                                " is not a whole number of hex digits");
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bits.size() / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    const int v = (bits[i] << 3) | (bits[i + 1] << 2) | (bits[i + 2] << 1) | bits[i + 3];
    out.push_back(kDigits[v]);
  }
  return out;
}

std::string Message::to_bit_string() const {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::vector<PauliOp> Message::to_paulis() const {
  if (bits.size() % 2 != 0) {
    throw std::invalid_argument("message length " + std::to_string(bits.size()) + " is odd");
  }
  std::vector<PauliOp> ops;
  ops.reserve(bits.size() / 2);
  for (std::size_t i = 0; i < bits.size(); i += 2) {
    ops.push_back(pauli_from_bits(static_cast<std::uint8_t>((bits[i] << 1) | bits[i + 1])));
  }
  return ops;
}

}  // namespace qsdc
