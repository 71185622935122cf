// Randomized invariants over seeded generators.

#include "cachegraph/bounds.hpp"
#include "cachegraph/delivery.hpp"
#include "cachegraph/linegraph.hpp"
#include "cachegraph/reference.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

using namespace cachegraph;

TEST_SUITE("properties") {
  TEST_CASE("subpacketization formula and round trip on 200 random line graphs") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = gen::random_bipartite(rng);
      const auto l = from_bipartite(b);
      CHECK(verify_conditions(l).ok());
      CHECK(subpacketization(l) == b.F);
      const auto back = to_bipartite(l);
      CHECK(back.F == b.F);
      // Same graph up to renaming subfiles by first appearance.
      std::map<SubfileId, SubfileId> rename;
      for (UserId k = 0; k < b.K; ++k)
        for (SubfileId f : b.missing[k]) rename.try_emplace(f, static_cast<SubfileId>(rename.size()));
      for (UserId k = 0; k < b.K; ++k) {
        std::vector<SubfileId> renamed;
        for (SubfileId f : b.missing[k]) renamed.push_back(rename.at(f));
        std::sort(renamed.begin(), renamed.end());
        CHECK(back.missing[k] == renamed);
      }
    }
  }

  TEST_CASE("greedy covers validate on 200 random line graphs") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = gen::random_bipartite(rng);
      const auto l = from_bipartite(b);
      const auto cover = greedy_delivery_cover(l);
      CHECK(verify_delivery_cover(l, cover).ok());
      CHECK(reference::delivery_cover_valid(l, cover));
      // Every clique is an induced matching of B.
      const auto bb = to_bipartite(l);
      for (const auto& clique : cover.cliques)
        for (std::size_t i = 0; i < clique.size(); ++i)
          for (std::size_t j = i + 1; j < clique.size(); ++j)
            CHECK(oracle::induced_matching(bb, l.user_of(clique[i]), l.subfile_clique_of(clique[i]),
                                           l.user_of(clique[j]), l.subfile_clique_of(clique[j])));
    }
  }

  TEST_CASE("validators agree with the pairwise reference on random covers") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const auto l = from_bipartite(gen::random_bipartite(rng, 6));
      // Random partition into small groups; mostly invalid.
      std::vector<VertexId> order(l.vertex_count());
      std::iota(order.begin(), order.end(), 0u);
      std::shuffle(order.begin(), order.end(), rng);
      DeliveryCliqueCover cover;
      for (std::size_t i = 0; i < order.size();) {
        const std::size_t len = 1 + rng() % 3;
        cover.cliques.emplace_back(order.begin() + i, order.begin() + std::min(order.size(), i + len));
        i += len;
      }
      CHECK(verify_delivery_cover(l, cover).ok() == reference::delivery_cover_valid(l, cover));
    }
  }

  TEST_CASE("lower bounds never exceed an achieved rate") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = gen::random_bipartite(rng, 8);
      const auto l = from_bipartite(b);
      const auto rate = scheme_parameters(l, greedy_delivery_cover(l)).rate;
      const auto r = rate_lower_bound_general(to_bipartite(l), b.K);
      CHECK(r.bound <= rate);
      CHECK(r.closed_form <= rate);
      for (std::size_t j = 1; j < r.rho.size(); ++j) CHECK(r.rho[j] <= r.rho[j - 1]);
    }
  }

  TEST_CASE("random schemes deliver, and serial and parallel kernels agree") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
      const auto b = gen::random_bipartite(rng);
      auto l = from_bipartite(b);
      auto cover = greedy_delivery_cover(l);
      const auto s = make_scheme("random", std::nullopt, std::move(l), std::move(cover));
      const std::uint32_t N = 1 + rng() % 6;
      const FileLibrary lib(N, s.params.F, 1 + rng() % 20, rng());
      const auto caches = place_caches(s.placement, lib);
      const auto demands = random_demands(s.params.K, N, rng());
      const auto tx = encode_transmissions(s, demands, lib);
      const auto tx_ref = reference::encode_transmissions(s, demands, lib);
      REQUIRE(tx.size() == tx_ref.size());
      for (std::size_t i = 0; i < tx.size(); ++i) CHECK(tx[i].payload == tx_ref[i].payload);
      const auto d = decode_all(s, demands, tx, caches, lib);
      const auto d_ref = reference::decode_all(s, demands, tx, caches, lib);
      CHECK(d.success());
      CHECK(d_ref.success());
      CHECK(d.recovered == d_ref.recovered);
    }
  }
}
