#pragma once

#include <cstdint>
#include <span>

#include "polar/bits.hpp"

namespace polar {

// Non-reflected CRC with zero initial value and no output XOR.
//
// The generator is given without its leading x^r term, e.g. CRC-16/CCITT is
// Crc(16, 0x1021). A degree of zero means "no CRC".
class Crc {
 public:
  Crc() = default;
  Crc(unsigned degree, std::uint64_t poly);

  // Default generator for a given width (8, 16, 24, 32 and x^4+x+1 for 4).
  static Crc standard(unsigned degree);

  unsigned degree() const { return degree_; }
  std::uint64_t poly() const { return poly_; }
  bool enabled() const { return degree_ > 0; }

  // Remainder of bits(x) * x^r modulo the generator, most significant first.
  Bits compute(std::span<const Bit> bits) const;

  // True when the trailing degree() bits are the CRC of the leading ones.
  bool check(std::span<const Bit> message_with_crc) const;

 private:
  unsigned degree_ = 0;
  std::uint64_t poly_ = 0;
};

}  // namespace polar
