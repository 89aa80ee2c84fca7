#include "polar/decoder.hpp"

#include <vector>

#include "polar/channel.hpp"
#include "polar/sc_engine.hpp"

namespace polar {
namespace {

template <typename T>
class ScFrontEnd final : public FrameDecoder {
 public:
  ScFrontEnd(const PolarCode& code, const DecoderConfig& cfg, Arithmetic<T> arith)
      : code_(&code), cfg_(cfg), dec_(code, arith, cfg.list.f_rule) {}

  FrameDecode decode(std::span<const double> llrs) override {
    FrameDecode out;
    if constexpr (std::is_floating_point_v<T>) {
      out.word = dec_.decode(llrs);
    } else {
      const auto q = quantize(llrs, cfg_.q_channel, cfg_.llr_scale);
      out.word = dec_.decode(std::span<const T>(q));
    }
    out.diag.crc_pass.push_back(crc_passes(out.word.bits, *code_) ? 1 : 0);
    out.diag.crc_fallback = !out.diag.crc_pass[0];
    return out;
  }
  void reseed(std::uint64_t) override {}

 private:
  const PolarCode* code_;
  DecoderConfig cfg_;
  ScDecoder<T> dec_;
};

template <typename T>
class ListFrontEnd final : public FrameDecoder {
 public:
  ListFrontEnd(const PolarCode& code, const DecoderConfig& cfg, Arithmetic<T> arith)
      : cfg_(cfg), dec_(code, cfg.list, arith) {}

  FrameDecode decode(std::span<const double> llrs) override {
    ListDecodeResult r;
    if constexpr (std::is_floating_point_v<T>) {
      r = dec_.decode(llrs);
    } else {
      const auto q = quantize(llrs, cfg_.q_channel, cfg_.llr_scale);
      r = dec_.decode(std::span<const T>(q));
    }
    return {std::move(r.word), std::move(r.diag)};
  }
  void reseed(std::uint64_t seed) override { dec_.reseed(seed); }

 private:
  DecoderConfig cfg_;
  ListDecoder<T> dec_;
};

}  // namespace

std::unique_ptr<FrameDecoder> make_decoder(const PolarCode& code, const DecoderConfig& cfg) {
  if (cfg.arith == ArithMode::floating) {
    if (cfg.kind == DecoderKind::sc) return std::make_unique<ScFrontEnd<double>>(code, cfg, floating_arithmetic());
    return std::make_unique<ListFrontEnd<double>>(code, cfg, floating_arithmetic());
  }
  const auto arith = fixed_arithmetic(cfg.q_channel, cfg.q_pm);
  if (cfg.kind == DecoderKind::sc) return std::make_unique<ScFrontEnd<std::int32_t>>(code, cfg, arith);
  return std::make_unique<ListFrontEnd<std::int32_t>>(code, cfg, arith);
}

std::string to_string(DecoderKind k) { return k == DecoderKind::sc ? "sc" : "scl"; }
std::string to_string(ArithMode m) { return m == ArithMode::floating ? "float" : "fixed"; }
std::string to_string(PrunerKind k) { return k == PrunerKind::sort ? "sort" : "dts"; }
std::string to_string(Rule3Policy p) { return p == Rule3Policy::priority ? "priority" : "random"; }
std::string to_string(PmuRule r) { return r == PmuRule::approx ? "approx" : "exact"; }
std::string to_string(FNodeRule r) { return r == FNodeRule::min_sum ? "min-sum" : "exact"; }

}  // namespace polar
