#include "cachegraph/bounds.hpp"
#include "cachegraph/constructions.hpp"
#include "cachegraph/error.hpp"
#include "cachegraph/gaussian.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cachegraph;

namespace {

const InequalityCheck& named(const std::vector<InequalityCheck>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return c;
  FAIL("no check named " << name);
  return checks.front();
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("closed form values") {
    CHECK(rate_lower_bound_closed(4, 6, Rational(1, 2), 4) == Rational(2, 3));
    CHECK(rate_lower_bound_closed(4, 5, Rational(3, 5), 4) == Rational(22, 25));
    // (651 + 63) 5/21 = 170 against 63 * 5/21 + 651 = 666; min 170, minus 1.
    CHECK(rate_lower_bound_closed(651, 63, Rational(5, 21), 651) == Rational(169, 63));
    // Empty caches, N >= K.
    CHECK(rate_lower_bound_closed(5, 3, Rational(1), 9) == Rational(7, 3));
    // Second branch when N is small.
    CHECK(rate_lower_bound_closed(10, 10, Rational(1, 2), 2) == Rational(6, 10));
    CHECK_THROWS_AS(rate_lower_bound_closed(4, 6, Rational(0), 4), Error);
    CHECK_THROWS_AS(rate_lower_bound_closed(4, 6, Rational(3, 2), 4), Error);
    CHECK_THROWS_AS(rate_lower_bound_closed(4, 0, Rational(1, 2), 4), Error);
  }

  TEST_CASE("general bound reproduces the rho profile (3, 2, 1, 0)") {
    const auto b = from_subfile_sets({{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {1, 3, 4}}, 5);
    const auto r = rate_lower_bound_general(b, 4);
    CHECK(r.subfile == 0);
    CHECK(r.user == 0);
    CHECK(r.ordering == std::vector<UserId>{0, 1, 2, 3});
    CHECK(r.rho == std::vector<std::uint64_t>{3, 2, 1, 0});
    CHECK(r.bound == Rational(6, 5));
    CHECK(r.closed_form == Rational(22, 25));
    // With two files only two users are taken.
    const auto r2 = rate_lower_bound_general(b, 2);
    CHECK(r2.rho == std::vector<std::uint64_t>{3, 2});
    CHECK(r2.bound == Rational(1));
  }

  TEST_CASE("disjoint users give rho = (D)") {
    const auto b = from_subfile_sets({{0, 1}, {2, 3}, {4, 5}}, 6);
    const auto r = rate_lower_bound_general(b, 3);
    CHECK(r.rho == std::vector<std::uint64_t>{2});
    CHECK(r.bound == Rational(1, 3));
  }

  TEST_CASE("MaN K = 4, t = 2 general bound") {
    const auto lg = man_line_graph(4, 2);
    const auto r = rate_lower_bound_general(to_bipartite(lg.graph), 4);
    CHECK(r.bound >= Rational(2, 3));
    CHECK(r.bound <= Rational(2, 3));
    CHECK(r.closed_form == Rational(2, 3));
  }

  TEST_CASE("greedy ordering never beats the exhaustive optimum") {
    for (auto [K, t] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{4, 1}, {5, 2}, {5, 3}, {6, 2}}) {
      const auto b = to_bipartite(man_line_graph(K, t).graph);
      const auto r = rate_lower_bound_general(b, K);
      std::vector<UserId> pool;
      for (UserId u = 0; u < b.K; ++u) pool.push_back(u);
      const auto best = oracle::best_rho_sum(b, r.user, pool, r.ordering.size());
      std::uint64_t sum = 0;
      for (auto x : r.rho) sum += x;
      CHECK(sum <= best);
      CHECK(r.ordering.front() == r.user);
    }
  }

  TEST_CASE("gap check") {
    auto g = check_gap_bound(2, 3, 4, 6, Rational(2, 3));
    CHECK(g.first_branch);
    CHECK(g.identity_holds);
    CHECK(g.closed_form == Rational(2, 3));
    CHECK(g.identity_rhs == Rational(2, 3));
    CHECK(g.gap_holds);

    g = check_gap_bound(3, 3, 7, 7, Rational(5, 7));
    CHECK(g.identity_holds);
    CHECK(g.identity_rhs == Rational(5, 7));
    CHECK(g.rate == Rational(1));
    CHECK(g.rate_ceiling == Rational(1));

    g = check_gap_bound(155, 7, 651, 63, Rational(169, 63));
    CHECK(g.identity_holds);
    CHECK(g.closed_form == Rational(169, 63));
    CHECK(g.gap_holds);

    // A claimed R* below the closed form breaks the gap inequality.
    g = check_gap_bound(2, 3, 4, 6, Rational(0));
    CHECK_FALSE(g.gap_holds);
    CHECK_THROWS_AS(check_gap_bound(5, 1, 4, 6, Rational(0)), Error);
  }

  TEST_CASE("Gaussian binomial estimates") {
    const auto c = gaussian_bounds_check(6, 2, 5, 2);
    CHECK(named(c, "gbinom_lower").lhs == 256);
    CHECK(named(c, "gbinom_lower").rhs == 651);
    CHECK(named(c, "gbinom_upper").rhs == 1024);
    for (const auto& x : c)
      if (x.name.rfind("ratio_af", 0) != 0) CHECK(x.status == CheckStatus::Pass);
    for (const auto& x : gaussian_bounds_check(6, 3, 2, 2))
      if (x.status != CheckStatus::NotApplicable) CHECK(x.status == CheckStatus::Pass);

    const auto same = gaussian_bounds_check(4, 4, 4, 3);
    CHECK(named(same, "gbinom_lower").rhs == 1);
    CHECK(named(same, "gbinom_upper").rhs == 81);

    const auto na = gaussian_bounds_check(5, 3, 2, 2);
    CHECK(named(na, "ratio_fb_lower").status == CheckStatus::NotApplicable);
    CHECK(named(na, "ratio_af_lower").status == CheckStatus::Pass);
    const auto big_f = gaussian_bounds_check(3, 1, 5, 2);
    CHECK(named(big_f, "ratio_fb_upper").status == CheckStatus::Pass);
    CHECK(named(big_f, "ratio_af_upper").status == CheckStatus::NotApplicable);

    // b < f: the [a,b]/[a,f] estimates do not hold.
    const auto wrong = gaussian_bounds_check(2, 1, 2, 2);
    CHECK(named(wrong, "ratio_af_upper").status == CheckStatus::Fail);
    CHECK(named(wrong, "ratio_af_upper").lhs == 3);
    CHECK(named(wrong, "ratio_af_upper").rhs == 1);
    CHECK_THROWS_AS(gaussian_bounds_check(2, 3, 1, 2), Error);
    CHECK(to_string(CheckStatus::NotApplicable) == "n/a");
  }

  TEST_CASE("estimates hold on their domains across the grid") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u})
      for (std::uint64_t a = 0; a <= 12; ++a)
        for (std::uint64_t b = 0; b <= a; ++b)
          for (std::uint64_t f = 0; f <= 12; ++f) {
            const auto c = gaussian_bounds_check(a, b, f, q);
            for (const auto& x : c) {
              const bool third = x.name.rfind("ratio_af", 0) == 0;
              if (third && b < f) continue;
              if (x.status == CheckStatus::Fail) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(f);
                CAPTURE(q);
                FAIL(x.name);
              }
            }
          }
  }

  TEST_CASE("regime analysis") {
    const auto r = regime_analysis(2, 6, 3, 2);
    CHECK(r.K == 651);
    CHECK(r.F == 63);
    CHECK(r.uncached == Rational(5, 21));
    CHECK(r.rate == Rational(155, 7));
    CHECK(named(r.checks, "uncached_floor").lhs == Rational(1, 16));
    CHECK(r.all_pass());

    const auto r2 = regime_analysis(2, 6, 3, 1);
    CHECK(r2.K == 63);
    CHECK(r2.F == 651);
    CHECK(r2.rate == Rational(15, 7));
    CHECK(named(r2.checks, "rate_power").rhs == 4);
    CHECK(r2.all_pass());
    CHECK(r2.checks.size() == 7);

    CHECK_THROWS_AS(regime_analysis(2, 3, 0, 3), Error);
    CHECK_THROWS_AS(regime_analysis(2, 3, 3, 1), Error);
    CHECK_THROWS_AS(regime_analysis(6, 3, 1, 1), Error);
  }
}
