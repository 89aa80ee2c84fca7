#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "polar/arithmetic.hpp"
#include "polar/list_decoder.hpp"
#include "polar/polar_code.hpp"

namespace polar {

enum class DecoderKind { sc, scl };

struct DecoderConfig {
  DecoderKind kind = DecoderKind::scl;
  ListDecoderOptions list{};
  ArithMode arith = ArithMode::floating;
  unsigned q_channel = 6;
  unsigned q_pm = 8;
  double llr_scale = 2.0;  // LSBs per LLR unit before quantization
};

struct FrameDecode {
  SourceWord word;
  ListDiagnostics diag;
};

// Runtime-polymorphic front end over the SC and list decoders in either
// arithmetic. Takes real-valued channel LLRs and quantizes them itself in
// fixed mode. One instance per worker thread.
class FrameDecoder {
 public:
  virtual ~FrameDecoder() = default;
  virtual FrameDecode decode(std::span<const double> channel_llrs) = 0;
  virtual void reseed(std::uint64_t seed) = 0;
};

std::unique_ptr<FrameDecoder> make_decoder(const PolarCode& code, const DecoderConfig& cfg);

std::string to_string(DecoderKind k);
std::string to_string(ArithMode m);
std::string to_string(PrunerKind k);
std::string to_string(Rule3Policy p);
std::string to_string(PmuRule r);
std::string to_string(FNodeRule r);

}  // namespace polar
