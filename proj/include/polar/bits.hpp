#pragma once

#include <cstdint>
#include <vector>

namespace polar {

using Bit = std::uint8_t;
using Bits = std::vector<Bit>;

// u_N: the length-N input of the polar transform (information, CRC and frozen bits).
struct SourceWord {
  Bits bits;
  friend bool operator==(const SourceWord&, const SourceWord&) = default;
};

// x_N = u_N G_N.
struct Codeword {
  Bits bits;
  friend bool operator==(const Codeword&, const Codeword&) = default;
};

}  // namespace polar
