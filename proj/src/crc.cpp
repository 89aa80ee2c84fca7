#include "polar/crc.hpp"

#include <stdexcept>
#include <string>

namespace polar {

Crc::Crc(unsigned degree, std::uint64_t poly) : degree_(degree), poly_(poly) {
  if (degree > 63) throw std::invalid_argument("CRC degree must be at most 63");
  if (degree > 0 && (poly >> degree) != 0)
    throw std::invalid_argument("CRC polynomial has terms above x^" + std::to_string(degree - 1));
  if (degree > 0 && (poly & 1u) == 0)
    throw std::invalid_argument("CRC polynomial must have a non-zero constant term");
}

Crc Crc::standard(unsigned degree) {
  switch (degree) {
    case 0: return Crc{};
    case 1: return Crc(1, 0x1);
    case 4: return Crc(4, 0x3);
    case 8: return Crc(8, 0x07);
    case 16: return Crc(16, 0x1021);
    case 24: return Crc(24, 0x864CFB);
    case 32: return Crc(32, 0x04C11DB7);
    default:
      throw std::invalid_argument("no default CRC polynomial for " + std::to_string(degree) +
                                  " bits; pass one explicitly");
  }
}

Bits Crc::compute(std::span<const Bit> bits) const {
  Bits out(degree_, 0);
  if (degree_ == 0) return out;
  const std::uint64_t top = std::uint64_t{1} << (degree_ - 1);
  const std::uint64_t mask = (top << 1) - 1;
  std::uint64_t reg = 0;
  for (Bit b : bits) {
    const bool feedback = ((reg & top) != 0) != (b != 0);
    reg = (reg << 1) & mask;
    if (feedback) reg ^= poly_;
  }
  for (unsigned i = 0; i < degree_; ++i) out[i] = static_cast<Bit>((reg >> (degree_ - 1 - i)) & 1u);
  return out;
}

bool Crc::check(std::span<const Bit> message_with_crc) const {
  if (degree_ == 0) return true;
  if (message_with_crc.size() < degree_) return false;
  const auto split = message_with_crc.size() - degree_;
  const Bits expected = compute(message_with_crc.first(split));
  for (unsigned i = 0; i < degree_; ++i)
    if (expected[i] != (message_with_crc[split + i] & 1u)) return false;
  return true;
}

}  // namespace polar
