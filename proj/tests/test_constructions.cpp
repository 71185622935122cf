#include "cachegraph/constructions.hpp"
#include "cachegraph/error.hpp"
#include "cachegraph/gaussian.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace cachegraph;

TEST_SUITE("constructions") {
  TEST_CASE("MaN parameters for K = 3..8") {
    for (std::uint32_t K = 3; K <= 8; ++K)
      for (std::uint32_t t = 1; t < K; ++t) {
        CAPTURE(K);
        CAPTURE(t);
        const auto lg = man_line_graph(K, t);
        const auto p = scheme_parameters(lg.graph, lg.cover);
        CHECK(BigInt(p.F) == binomial(K, t));
        CHECK(BigInt(p.D) == binomial(K - 1, t));
        CHECK(p.rate == Rational(K - t, t + 1));
        CHECK(p.c == std::uint64_t{K - t});
        CHECK(p.d == std::uint64_t{t + 1});
        CHECK(BigInt(p.transmissions) == binomial(K, t + 1));
      }
  }

  TEST_CASE("MaN user i misses exactly the subsets not containing i") {
    const auto lg = man_line_graph(5, 2);
    const auto b = to_bipartite(lg.graph);
    // Subfile ids follow first appearance; recover the subset behind each by
    // intersecting complements of the users that miss it.
    for (SubfileId f = 0; f < b.F; ++f) {
      std::set<UserId> holders;
      for (UserId k = 0; k < b.K; ++k)
        if (!std::binary_search(b.missing[k].begin(), b.missing[k].end(), f)) holders.insert(k);
      CHECK(holders.size() == 2);
    }
  }

  TEST_CASE("MaN argument checks") {
    CHECK_THROWS_AS(man_line_graph(4, 0), Error);
    CHECK_THROWS_AS(man_line_graph(4, 4), Error);
    CHECK_THROWS_AS(man_line_graph(65, 2), Error);
    CHECK_THROWS_AS(man_line_graph(30, 15, 1000), Error);
  }

  TEST_CASE("resolvable design parameters") {
    for (auto [q, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {2, 4}, {3, 3}, {4, 3}, {5, 2}}) {
      CAPTURE(q);
      CAPTURE(k);
      const auto lg = resolvable_line_graph(q, k);
      const auto p = scheme_parameters(lg.graph, lg.cover);
      CHECK(p.K == k * q);
      CHECK(BigInt(p.F) == int_pow(q, k - 1));
      CHECK(p.rate == Rational(q - 1));
      CHECK(p.c == std::uint64_t{k * (q - 1)});
      CHECK(p.d == std::uint64_t{k});
      CHECK(p.cached_fraction == Rational(1, q));
    }
    CHECK_THROWS_AS(resolvable_line_graph(6, 3), Error);
    CHECK_THROWS_AS(resolvable_line_graph(2, 1), Error);
  }

  TEST_CASE("complement degree matches brute force") {
    for (std::uint32_t p : {2u, 3u})
      for (std::uint64_t m = 1; m <= 2; ++m)
        for (std::uint64_t t = 1; t <= 2; ++t) {
          CAPTURE(p);
          CAPTURE(m);
          CAPTURE(t);
          CHECK(complement_degree(m, t, p) == BigInt(oracle::count_meeting(m, t, 0, p)));
        }
    CHECK(complement_degree(1, 1, 2) == 2);
    CHECK(complement_degree(2, 2, 2) == 16);
  }

  TEST_CASE("matching subspaces are complementary bijections") {
    for (std::uint32_t q : {2u, 3u}) {
      const Field f(q);
      for (std::size_t m = 1; m <= 2; ++m)
        for (std::size_t t = 1; t <= 2; ++t) {
          const std::size_t k = m + t + 1;
          for (const auto& x : enumerate_subspaces(f, k, m + t)) {
            const auto table = matching_subspaces(f, x, m, t);
            REQUIRE(BigInt(table.pairs.size()) == gaussian_binomial(m + t, t, q));
            std::set<SubspaceBasis> vs, ts;
            for (const auto& [v, tt] : table.pairs) {
              CHECK(v.dim() == t);
              CHECK(tt.dim() == m);
              CHECK(direct_sum(f, v, tt) == x);
              vs.insert(v);
              ts.insert(tt);
            }
            CHECK(vs.size() == table.pairs.size());
            CHECK(ts.size() == table.pairs.size());
          }
        }
      CHECK_THROWS_AS(matching_subspaces(f, whole_space(3), 1, 1), Error);
    }
  }

  TEST_CASE("projective scheme over GF(2), k = 3, m = t = 1") {
    const auto s = projective_line_graph(2, 3, 1, 1);
    const auto p = scheme_parameters(s.graph, s.cover);
    CHECK(p.K == 7);
    CHECK(p.F == 7);
    CHECK(p.D == 3);
    CHECK(p.c == 3u);
    CHECK(p.d == 3u);
    CHECK(p.rate == Rational(1));
    const Field f(2);
    for (VertexId v = 0; v < s.graph.vertex_count(); ++v) {
      const auto& V = s.users[s.graph.user_of(v)];
      const auto& X = s.subfiles[s.graph.subfile_clique_of(v)];
      const auto& T = s.matched[s.label_of[v]];
      CHECK(subspace_contains(f, X, V));
      CHECK(direct_sum(f, V, T) == X);
    }
  }

  TEST_CASE("projective parameters follow the Gaussian binomials") {
    for (std::uint32_t q : {2u, 3u})
      for (std::uint32_t k = 2; k <= (q == 2 ? 5u : 4u); ++k)
        for (std::uint32_t m = 1; m < k; ++m)
          for (std::uint32_t t = 1; m + t <= k; ++t) {
            CAPTURE(q);
            CAPTURE(k);
            CAPTURE(m);
            CAPTURE(t);
            const auto s = projective_line_graph(q, k, m, t);
            const auto p = scheme_parameters(s.graph, s.cover);
            CHECK(BigInt(p.K) == gaussian_binomial(k, t, q));
            CHECK(BigInt(p.F) == gaussian_binomial(k, m + t, q));
            CHECK(BigInt(p.D) == gaussian_binomial(k - t, m, q));
            CHECK(BigInt(*p.c) == gaussian_binomial(m + t, t, q));
            CHECK(BigInt(*p.d) == gaussian_binomial(k - m, t, q));
            CHECK(s.user_index.size() == s.users.size());
            CHECK(s.subfile_index.size() == s.subfiles.size());
          }
  }

  TEST_CASE("projective argument checks") {
    auto code = [](auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InternalError;
    };
    CHECK(code([] { projective_line_graph(6, 3, 1, 1); }) == ErrorCode::NotPrimePower);
    CHECK(code([] { projective_line_graph(2, 3, 0, 3); }) == ErrorCode::InvalidArgs);
    CHECK(code([] { projective_line_graph(2, 3, 1, 0); }) == ErrorCode::InvalidArgs);
    CHECK(code([] { projective_line_graph(2, 3, 2, 2); }) == ErrorCode::InvalidArgs);
    CHECK(code([] { projective_line_graph(2, 6, 3, 2, 100); }) == ErrorCode::CapExceeded);
  }
}
