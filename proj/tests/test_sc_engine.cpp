#include <doctest.h>

#include <random>

#include "polar/channel.hpp"
#include "polar/list_decoder.hpp"
#include "polar/sc_engine.hpp"
#include "support/oracles.hpp"

using namespace polar;

namespace {

std::vector<double> random_llrs(std::size_t N, std::mt19937_64& rng, double spread = 4.0) {
  std::normal_distribution<double> g(0.0, spread);
  std::vector<double> v(N);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<std::int32_t> random_fixed(std::size_t N, std::mt19937_64& rng) {
  std::vector<std::int32_t> v(N);
  for (auto& x : v) x = static_cast<std::int32_t>(rng() % 63) - 31;
  return v;
}

}  // namespace

TEST_CASE("hard decision") {
  CHECK(hard_decision(0.0) == 0);
  CHECK(hard_decision(3.5) == 0);
  CHECK(hard_decision(-0.01) == 1);
  CHECK(hard_decision(std::int32_t{-1}) == 1);
}

TEST_CASE("f and g nodes") {
  CHECK(f_node(0.0, 7.0) == 0.0);
  CHECK(f_node(0.0, -7.0) == 0.0);
  CHECK(f_node(2.0, -3.0) == -2.0);
  CHECK(f_node(-2.0, -3.0) == 2.0);
  CHECK(g_node(2.0, 3.0, 0) == 5.0);
  CHECK(g_node(2.0, 3.0, 1) == 1.0);
  CHECK(g_node(0.0, -4.0, 1) == -4.0);
  CHECK(g_node(0.0, -4.0, 0) == -4.0);

  const auto fx = fixed_arithmetic(6, 8);
  CHECK(g_node<std::int32_t>(100, 100, 0, fx) == 127);
  CHECK(g_node<std::int32_t>(100, -100, 1, fx) == -127);

  CHECK(f_node_exact(3.0, 4.0) == doctest::Approx(2.0 * std::atanh(std::tanh(1.5) * std::tanh(2.0))));
  CHECK(f_node_exact(-3.0, 40.0) == doctest::Approx(-3.0).epsilon(1e-9));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int t = 0; t < 10000; ++t) {
    const double a = u(rng), b = u(rng);
    CHECK(f_node(-a, b) == -f_node(a, b));
    CHECK(f_node(a, b) == f_node(b, a));
    CHECK(g_node(-a, b, Bit{0}) == g_node(a, b, Bit{1}));
    CHECK(g_node(-a, b, Bit{1}) == g_node(a, b, Bit{0}));
  }
}

TEST_CASE("leaf LLRs on a length-2 code") {
  const PolarCode code(1, 2, {});
  const std::vector<double> ch{1.5, -4.0};
  CHECK(leaf_llr<double>(code, ch, {}) == f_node(1.5, -4.0));
  CHECK(leaf_llr<double>(code, ch, Bits{0}) == g_node(1.5, -4.0, Bit{0}));
  CHECK(leaf_llr<double>(code, ch, Bits{1}) == g_node(1.5, -4.0, Bit{1}));
  CHECK_THROWS_AS(leaf_llr<double>(code, ch, Bits{0, 0}), std::invalid_argument);
}

TEST_CASE("stage memories match the recursive oracle") {
  std::mt19937_64 rng(17);
  for (unsigned n = 1; n <= 5; ++n) {
    const std::size_t N = std::size_t{1} << n;
    const PolarCode code(n, N, {});
    for (int t = 0; t < 30; ++t) {
      const auto ch = random_llrs(N, rng);
      const Bits prefix = oracle::random_bits(N, rng);
      ScDecoder<double> dec(code);
      dec.reset(ch);
      for (std::size_t i = 0; i < N; ++i) {
        const double l = dec.next_leaf_llr();
        CHECK(l == oracle::recursive_leaf_llr(ch, Bits(prefix.begin(), prefix.begin() + i), i));
        dec.commit(prefix[i]);
      }

      const auto fx = fixed_arithmetic(6, 8);
      const auto chq = random_fixed(N, rng);
      ScDecoder<std::int32_t> decq(code, fx);
      decq.reset(chq);
      for (std::size_t i = 0; i < N; ++i) {
        CHECK(decq.next_leaf_llr() == oracle::recursive_leaf_llr(chq, Bits(prefix.begin(), prefix.begin() + i), i, fx));
        decq.commit(prefix[i]);
      }
    }
  }
}

TEST_CASE("partial sums re-encode the finished left subtree") {
  // After leaf i where i is the last leaf of a left subtree at stage s, the
  // stage-s partial sums equal the polar transform of that subtree's bits.
  std::mt19937_64 rng(8);
  const unsigned n = 5;
  const std::size_t N = 32;
  const PolarCode code(n, N, {});
  ScDecoder<double> dec(code);
  dec.reset(random_llrs(N, rng));
  const Bits u = oracle::random_bits(N, rng);
  for (std::size_t i = 0; i < N; ++i) {
    dec.next_leaf_llr();
    dec.commit(u[i]);
    for (unsigned s = 0; s < n; ++s) {
      const std::size_t w = N >> (s + 1);
      const std::size_t end = i + 1;
      // Left child of a stage-s node finished exactly now.
      if (end % w == 0 && (end / w) % 2 == 1) {
        Bits block(u.begin() + static_cast<std::ptrdiff_t>(end - w), u.begin() + static_cast<std::ptrdiff_t>(end));
        polar_transform(block);
        const auto ps = dec.partial_sums(s);
        CHECK(Bits(ps.begin(), ps.end()) == block);
      }
    }
  }
}

TEST_CASE("sc_decode") {
  std::mt19937_64 rng(23);
  const auto code = make_code(8, 128, Crc::standard(8));

  SUBCASE("noiseless round trip") {
    CHECK(sc_decode<double>(code, std::vector<double>(256, kNoiselessLlr)).bits == Bits(256, 0));
    for (int t = 0; t < 50; ++t) {
      const auto u = assemble_source_word(oracle::random_bits(code.payload_count(), rng), code);
      const auto x = encode(u);
      const auto llr = channel_llr({modulate(x.bits)}, 0.0);
      CHECK(sc_decode<double>(code, llr) == u);
      const auto q = quantize(llr, 6, 2.0);
      CHECK(sc_decode<std::int32_t>(code, q, fixed_arithmetic()) == u);
    }
  }

  SUBCASE("matches the recursive oracle on noisy frames") {
    const auto small = make_code(5, 16, {});
    for (int t = 0; t < 200; ++t) {
      const auto ch = random_llrs(32, rng, 1.5);
      CHECK(sc_decode<double>(small, ch) == oracle::recursive_sc_decode<double>(small, ch));
    }
  }

  SUBCASE("sign flip on a rate-one code") {
    const PolarCode rate1(6, 64, {});
    for (int t = 0; t < 50; ++t) {
      auto ch = random_llrs(64, rng);
      for (auto& v : ch)
        if (v == 0.0) v = 0.5;
      std::vector<double> neg(ch.size());
      for (std::size_t i = 0; i < ch.size(); ++i) neg[i] = -ch[i];
      const auto a = sc_decode<double>(rate1, ch);
      const auto b = sc_decode<double>(rate1, neg);
      // Flipping every channel LLR flips the codeword, hence the source word.
      const auto xa = encode(a), xb = encode(b);
      for (std::size_t i = 0; i < 64; ++i) CHECK(xa.bits[i] != xb.bits[i]);
    }
  }

  SUBCASE("leaf_llrs with greedy decisions reproduces sc_decode") {
    const auto ch = random_llrs(256, rng, 2.0);
    Bits u;
    for (std::size_t i = 0; i < 256; ++i) {
      const double l = leaf_llr<double>(code, ch, u);
      u.push_back(code.is_frozen(i) ? 0 : hard_decision(l));
    }
    CHECK(SourceWord{u} == sc_decode<double>(code, ch));
  }
}
