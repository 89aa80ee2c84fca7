#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "polar/list_decoder.hpp"
#include "polar/pruning.hpp"

using namespace polar;

namespace {

using Ext = PathExtension<double>;

std::vector<double> pms_of(std::span<const Ext> e) {
  std::vector<double> v;
  for (const auto& x : e) v.push_back(x.pm);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Ext> from_pms(std::initializer_list<double> pms) {
  std::vector<Ext> e;
  std::size_t k = 0;
  for (double pm : pms) {
    e.push_back({k / 2, static_cast<Bit>(k % 2), pm});
    ++k;
  }
  return e;
}

// Strictly ascending parent metrics with approx-PMU extensions.
struct Instance {
  std::vector<double> parents;
  std::vector<Ext> ext;
};

Instance random_instance(std::size_t L, std::mt19937_64& rng, bool shuffle_slots) {
  std::uniform_int_distribution<int> step(1, 6), mag(0, 20);
  Instance in;
  double pm = mag(rng);
  for (std::size_t l = 0; l < L; ++l) {
    in.parents.push_back(pm);
    pm += step(rng);
  }
  if (shuffle_slots) std::shuffle(in.parents.begin(), in.parents.end(), rng);
  std::vector<double> leaf(L);
  for (auto& v : leaf) v = mag(rng) - 10.0;
  Bits active(L, 1);
  extend_paths<double>(in.parents, leaf, active, PmuRule::approx, {}, in.ext);
  return in;
}

}  // namespace

TEST_CASE("lpo_sort") {
  const auto e = from_pms({1, 2, 2, 5, 3, 4, 4, 9});
  CHECK(pms_of(lpo_sort<double>(e, 4)) == std::vector<double>{1, 2, 2, 3});
  CHECK(lpo_sort<double>(e, 16).size() == 8);

  // Ties resolve by (parent, bit).
  const auto t = lpo_sort<double>(from_pms({3, 1, 1, 3}), 3);
  CHECK(t[0] == Ext{0, 1, 1});
  CHECK(t[1] == Ext{1, 0, 1});
  CHECK(t[2] == Ext{0, 0, 3});
}

TEST_CASE("lpo_dts examples") {
  const auto e = from_pms({1, 2, 2, 5, 3, 4, 4, 9});
  const auto out = lpo_dts<double>(e, {3, 4, 0}, 4);
  CHECK(pms_of(out.survivors) == std::vector<double>{1, 2, 2, 3});
  CHECK(out.kept_by_rule1 == 3);
  CHECK(out.pruned_by_rule2 == 2);
  CHECK(out.filled_by_rule3 == 1);
  CHECK_FALSE(out.starved);

  const double inf = std::numeric_limits<double>::infinity();
  const auto loose = lpo_dts<double>(e, {inf, inf, 0}, 4);
  CHECK(loose.survivors == std::vector<Ext>(e.begin(), e.begin() + 4));

  // A narrow band starves.
  const auto tight = lpo_dts<double>(e, {2, 2, 0}, 4);
  CHECK(pms_of(tight.survivors) == std::vector<double>{1, 2, 2});
  CHECK(tight.starved);

  // Band edges are inclusive.
  const auto edge = lpo_dts<double>(from_pms({3, 4, 5, 6}), {3, 5, 0}, 2);
  CHECK(pms_of(edge.survivors) == std::vector<double>{3, 4});
  CHECK(edge.pruned_by_rule2 == 1);

  // The random policy only changes which band members fill.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto r = lpo_dts<double>(e, {3, 4, 0}, 4, &rng);
    const auto p = pms_of(r.survivors);
    CHECK(std::vector<double>(p.begin(), p.begin() + 3) == std::vector<double>{1, 2, 2});
    CHECK((p[3] == 3 || p[3] == 4));
  }
}

TEST_CASE("omega_cardinality") {
  const auto e = from_pms({1, 2, 2, 5, 3, 4, 4, 9});
  CHECK(omega_cardinality<double>(e, 0.0) == 0);
  CHECK(omega_cardinality<double>(e, std::numeric_limits<double>::infinity()) == 8);
  CHECK(omega_cardinality<double>(e, 4.0) == 4);

  std::mt19937_64 rng(1);
  for (std::size_t L : {2u, 4u, 8u, 16u}) {
    for (int t = 0; t < 10000; ++t) {
      const auto in = random_instance(L, rng, t % 2 == 1);
      auto sorted = in.parents;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t l = 0; l < L; ++l) {
        const auto c = omega_cardinality<double>(in.ext, sorted[l]);
        REQUIRE(c >= l);
        REQUIRE(c <= 2 * l);
      }
    }
  }
}

TEST_CASE("comparison networks") {
  CHECK(max_network<double>(std::vector<double>{3, 9, 1}) == 9);
  CHECK(max_network<double>(std::vector<double>{-3}) == -3);
  CHECK(second_max_network<double>(std::vector<double>{5, 5, 1, 0}) == 5);
  CHECK(second_max_network<double>(std::vector<double>{1, 7, 3}) == 3);
  CHECK_THROWS_AS(second_max_network<double>(std::vector<double>{1}), std::invalid_argument);

  CHECK(median_network<double>(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}) == 5);
  CHECK(median_network<double>(std::vector<double>(8, 2.5)) == 2.5);
  CHECK(median_network<double>(std::vector<double>{9, 4}) == 9);
  CHECK_THROWS_AS(median_network<double>(std::vector<double>{1, 2, 3}), std::invalid_argument);

  SUBCASE("median over every permutation of 1..8") {
    std::vector<int> v(8);
    std::iota(v.begin(), v.end(), 1);
    std::size_t perms = 0, good = 0;
    do {
      ++perms;
      good += median_network<int>(v) == 5;
    } while (std::next_permutation(v.begin(), v.end()));
    CHECK(perms == 40320);
    CHECK(good == perms);
  }

  SUBCASE("random multisets against sorting") {
    std::mt19937_64 rng(77);
    for (std::size_t w : {2u, 4u, 8u, 16u, 32u}) {
      for (int t = 0; t < 10000; ++t) {
        std::vector<std::int32_t> v(w);
        const int range = t % 3 == 0 ? 4 : 256;  // many ties in a third of the runs
        for (auto& x : v) x = static_cast<std::int32_t>(rng() % range);
        auto s = v;
        std::sort(s.begin(), s.end());
        REQUIRE(median_network<std::int32_t>(v) == s[w / 2]);
        REQUIRE(max_network<std::int32_t>(v) == s[w - 1]);
        REQUIRE(second_max_network<std::int32_t>(v) == s[w - 2]);
        REQUIRE(order_statistic<std::int32_t>(v, t % w) == s[t % w]);
      }
    }
  }
}

TEST_CASE("track_thresholds") {
  const std::vector<double> p{5, 1, 7, 3, 8, 2, 6, 4};
  auto th = track_thresholds<double>(p, 7);
  CHECK(th.at == 5);
  CHECK(th.rt == 8);
  CHECK(track_thresholds<double>(p, 6).rt == 7);
  CHECK(track_thresholds<double>(p, 5).rt == 6);
  CHECK(track_thresholds<double>(p, 4).rt == 5);

  th = track_thresholds<double>(std::vector<double>(4, 2.0), 2);
  CHECK(th.at == 2.0);
  CHECK(th.rt == 2.0);

  std::vector<double> p16(16);
  std::iota(p16.begin(), p16.end(), 10.0);
  std::shuffle(p16.begin(), p16.end(), std::mt19937_64(2));
  CHECK(track_thresholds<double>(p16, 14).rt == 24);
  CHECK(track_thresholds<double>(p16, 14).at == 18);

  CHECK_THROWS_AS(track_thresholds<double>(p, 3), std::invalid_argument);
  CHECK_THROWS_AS(track_thresholds<double>(p, 8), std::invalid_argument);
  CHECK_THROWS_AS(track_thresholds<double>(std::vector<double>{1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(track_thresholds<double>(std::vector<double>{1, 2, 3}, 2), std::invalid_argument);
}

TEST_CASE("DTS guarantees with tracked thresholds") {
  std::mt19937_64 rng(12);
  for (std::size_t L : {2u, 4u, 8u, 16u}) {
    for (int t = 0; t < 5000; ++t) {
      const auto in = random_instance(L, rng, true);
      auto exact = lpo_sort<double>(in.ext, L);
      std::sort(exact.begin(), exact.end(), extension_before<double>);

      for (std::size_t rt = std::max<std::size_t>(L / 2, 1); rt < L; ++rt) {
        const auto th = track_thresholds<double>(in.parents, rt);
        const auto out = lpo_dts<double>(in.ext, th, L);
        REQUIRE(out.survivors.size() <= L);
        REQUIRE(out.kept_by_rule1 + out.filled_by_rule3 == out.survivors.size());
        REQUIRE(out.survivors.size() == std::min(L, 2 * L - out.pruned_by_rule2));
        REQUIRE(out.kept_by_rule1 >= L / 2);
        REQUIRE(out.kept_by_rule1 <= L);
        // Parents 0..rt each keep a child at pm <= RT.
        REQUIRE(out.pruned_by_rule2 <= 2 * L - rt - 1);

        // The L/2 best extensions always survive.
        for (std::size_t k = 0; k < L / 2; ++k)
          REQUIRE(std::find(out.survivors.begin(), out.survivors.end(), exact[k]) != out.survivors.end());

        if (rt == L - 1) {
          REQUIRE_FALSE(out.starved);
          REQUIRE(out.survivors.size() == L);
          REQUIRE(out.pruned_by_rule2 <= L);
          // Nothing pruned by rule 2 is strictly better than the L-th best.
          for (const auto& e : in.ext)
            if (e.pm > th.rt) REQUIRE(e.pm >= exact[L - 1].pm);
        }

        const auto again = lpo_dts<double>(in.ext, th, L);
        REQUIRE(again.survivors == out.survivors);
      }
    }
  }
}

TEST_CASE("ListPruner") {
  const auto e = from_pms({1, 2, 2, 5, 3, 4, 4, 9});
  PruneStats stats;

  ListPruner<double> sorter({PrunerKind::sort}, 4);
  CHECK(pms_of(sorter.prune(e, std::vector<double>{1, 2, 3, 4}, stats)) == std::vector<double>{1, 2, 2, 3});
  CHECK(stats.lpo_count == 1);
  CHECK(stats.survivors == 4);

  ListPruner<double> dts({PrunerKind::dts}, 4);
  const auto s = dts.prune(e, std::vector<double>{1, 2, 3, 4}, stats);
  // AT = 3, RT = 3 (L - 2 = 2nd order statistic).
  CHECK(pms_of(s) == std::vector<double>{1, 2, 2, 3});
  CHECK(stats.lpo_count == 2);
  CHECK(stats.kept_by_rule1 == 3);
  CHECK(stats.filled_by_rule3 == 1);
  CHECK(stats.pruned_by_rule2 == 4);

  CHECK(PrunerConfig{PrunerKind::dts}.resolved_rt_index(16) == 14);
  CHECK(PrunerConfig{PrunerKind::dts}.resolved_rt_index(2) == 1);
  CHECK(PrunerConfig{PrunerKind::dts, 15}.resolved_rt_index(16) == 15);
  CHECK_THROWS_AS(ListPruner<double>({PrunerKind::dts, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(ListPruner<double>({PrunerKind::sort}, 3), std::invalid_argument);
  CHECK_NOTHROW(ListPruner<double>({PrunerKind::dts}, 1));

  PruneStats a{1, 2, 3, 4, 5, 6}, b{1, 1, 1, 1, 1, 1};
  a += b;
  CHECK(a.starved_lpos == 7);
  CHECK(a.lpo_count == 2);
}
