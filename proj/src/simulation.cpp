#include "polar/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "polar/channel.hpp"
#include "polar/decoder.hpp"

namespace polar {
namespace {

constexpr std::uint64_t kChunk = 64;

struct FrameRecord {
  bool error = false;
  std::uint64_t bit_errors = 0;
  PruneStats prune;
  bool starved = false;
  bool crc_miss = false;
};

// Source word, channel and decode for one frame index.
class FrameRunner {
 public:
  FrameRunner(const SimConfig& cfg, const PolarCode& code, double snr_db)
      : cfg_(&cfg),
        code_(&code),
        channel_(ChannelParams::from_ebn0(snr_db, code.rate())),
        decoder_(make_decoder(code, cfg.decoder)) {}

  struct Frame {
    SourceWord sent;
    FrameDecode decoded;
  };

  Frame run(std::uint64_t index) {
    auto rng = frame_rng(cfg_->seed, index);
    Bits payload(code_->payload_count());
    for (auto& b : payload) b = static_cast<Bit>(rng() & 1u);
    Frame f;
    f.sent = assemble_source_word(payload, *code_);
    const auto x = encode(f.sent);
    const auto y = add_awgn(modulate(x.bits), channel_.sigma, rng);
    const auto llr = channel_llr(y, channel_.sigma);
    decoder_->reseed(rng());
    f.decoded = decoder_->decode(llr);
    return f;
  }

  FrameRecord record(std::uint64_t index) {
    const auto f = run(index);
    FrameRecord r;
    if (cfg_->error_scope == ErrorScope::source_word) {
      for (std::size_t i = 0; i < code_->length(); ++i) r.bit_errors += f.sent.bits[i] != f.decoded.word.bits[i];
    } else {
      const auto& pos = code_->info_positions();
      for (std::size_t k = 0; k < code_->payload_count(); ++k)
        r.bit_errors += f.sent.bits[pos[k]] != f.decoded.word.bits[pos[k]];
    }
    r.error = r.bit_errors > 0;
    r.prune = f.decoded.diag.prune;
    r.starved = f.decoded.diag.prune.starved_lpos > 0;
    r.crc_miss = code_->crc().enabled() && f.decoded.diag.crc_fallback;
    return r;
  }

 private:
  const SimConfig* cfg_;
  const PolarCode* code_;
  ChannelParams channel_;
  std::unique_ptr<FrameDecoder> decoder_;
};

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The bounds touch 0 and 1 exactly at the extremes.
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t frame) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(frame >> 32)};
  return std::mt19937_64(seq);
}

FerResult run_point(const SimConfig& cfg, const PolarCode& code, double snr_db) {
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<FrameRunner> runners;
  runners.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) runners.emplace_back(cfg, code, snr_db);

  FerResult res;
  res.snr_db = snr_db;
  res.seed = cfg.seed;
  PruneStats prune;
  std::uint64_t starved = 0, crc_miss = 0;

  std::vector<FrameRecord> chunk(kChunk);
  std::uint64_t base = 0;
  bool done = false;
  while (!done) {
    const std::uint64_t count = std::min(kChunk, cfg.max_frames - base);
    if (workers == 1) {
      for (std::uint64_t j = 0; j < count; ++j) chunk[j] = runners[0].record(base + j);
    } else {
      std::atomic<std::uint64_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::uint64_t j; (j = next.fetch_add(1)) < count;) chunk[j] = runners[w].record(base + j);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (std::uint64_t j = 0; j < count; ++j) {
      const auto& r = chunk[j];
      ++res.frames;
      res.frame_errors += r.error;
      res.bit_errors += r.bit_errors;
      prune += r.prune;
      starved += r.starved;
      crc_miss += r.crc_miss;
      if (res.frame_errors >= cfg.min_errors || res.frames >= cfg.max_frames) {
        done = true;
        break;
      }
    }
    base += count;
  }

  const double frames = static_cast<double>(res.frames);
  const double bits_per_frame = static_cast<double>(
      cfg.error_scope == ErrorScope::source_word ? code.length() : code.payload_count());
  res.fer = static_cast<double>(res.frame_errors) / frames;
  res.ber = static_cast<double>(res.bit_errors) / (frames * bits_per_frame);
  std::tie(res.fer_ci_lo, res.fer_ci_hi) = wilson_interval(res.frame_errors, res.frames);
  res.rule3_fill_rate = prune.survivors ? static_cast<double>(prune.filled_by_rule3) / static_cast<double>(prune.survivors) : 0.0;
  res.starve_rate = static_cast<double>(starved) / frames;
  res.crc_miss_rate = static_cast<double>(crc_miss) / frames;
  HardwareConfig hw = cfg.hardware;
  hw.frozen_sibling = cfg.decoder.list.frozen_sibling;
  res.cycles = make_cycle_report(code, hw);
  return res;
}

std::vector<FerResult> run_sweep(const SimConfig& cfg) {
  cfg.validate();
  const auto code = cfg.make_code();
  std::vector<FerResult> out;
  out.reserve(cfg.snr_db.size());
  for (double snr : cfg.snr_db) out.push_back(run_point(cfg, code, snr));
  return out;
}

DivergenceResult compare_decoders(const SimConfig& a, const SimConfig& b, const PolarCode& code, double snr_db,
                                  std::uint64_t frames) {
  if (a.seed != b.seed) throw std::invalid_argument("divergence runs need identical seeds");
  FrameRunner ra(a, code, snr_db), rb(b, code, snr_db);
  DivergenceResult d;
  for (std::uint64_t f = 0; f < frames; ++f) {
    const auto fa = ra.run(f);
    const auto fb = rb.run(f);
    ++d.frames;
    d.divergent_frames += fa.decoded.word != fb.decoded.word;
    d.errors_a += fa.decoded.word != fa.sent;
    d.errors_b += fb.decoded.word != fb.sent;
  }
  return d;
}

}  // namespace polar
