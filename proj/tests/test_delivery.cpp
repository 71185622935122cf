#include "cachegraph/constructions.hpp"
#include "cachegraph/delivery.hpp"
#include "cachegraph/error.hpp"
#include "cachegraph/reference.hpp"

#include <doctest.h>

using namespace cachegraph;

namespace {

CodedCachingScheme man_scheme(std::uint32_t K, std::uint32_t t) {
  auto lg = man_line_graph(K, t);
  return make_scheme("man", std::nullopt, std::move(lg.graph), std::move(lg.cover));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST_SUITE("delivery") {
  TEST_CASE("splitmix64 reference outputs") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xe220a8397b1dcdafull);
    CHECK(splitmix64(state) == 0x6e789e6aa1b965f4ull);
    CHECK(splitmix64(state) == 0x06c45d188009454full);
  }

  TEST_CASE("library is deterministic and seed dependent") {
    const FileLibrary a(3, 5, 13, 42), b(3, 5, 13, 42), c(3, 5, 13, 43);
    CHECK(a.bytes() == b.bytes());
    CHECK(a.bytes() != c.bytes());
    CHECK(a.bytes().size() == 3 * 5 * 13);
    CHECK(a.subfile(2, 4).size() == 13);
    CHECK(a.subfile(0, 0)[0] != a.subfile(0, 1)[0]);
    CHECK_THROWS_AS(FileLibrary(0, 1, 1, 0), Error);
  }

  TEST_CASE("caches hold exactly the non-missing subfiles") {
    const auto s = man_scheme(4, 2);
    const FileLibrary lib(4, 6, 8, 0);
    const auto caches = place_caches(s.placement, lib);
    REQUIRE(caches.size() == 4);
    for (const auto& c : caches) {
      CHECK(c.stored_subfiles() == 4 * (6 - 3));
      for (SubfileId f = 0; f < 6; ++f) {
        const bool missing = std::binary_search(s.placement.missing[c.user()].begin(),
                                                s.placement.missing[c.user()].end(), f);
        CHECK(c.holds(f) == !missing);
        CHECK(c.get(1, f).has_value() == !missing);
      }
      CHECK_FALSE(c.get(9, 0).has_value());
    }
    const FileLibrary wrong(4, 7, 8, 0);
    CHECK(code_of([&] { place_caches(s.placement, wrong); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("encode and decode round trip") {
    const auto s = man_scheme(5, 2);
    const FileLibrary lib(5, static_cast<std::uint32_t>(s.params.F), 16, 9);
    const auto caches = place_caches(s.placement, lib);
    const DemandVector demands{0, 4, 4, 2, 1};
    const auto tx = encode_transmissions(s, demands, lib);
    CHECK(tx.size() == s.cover.size());
    for (std::size_t c = 0; c < tx.size(); ++c) {
      CHECK(tx[c].clique == c);
      CHECK(tx[c].participants.size() == s.cover.cliques[c].size());
      CHECK(tx[c].payload.size() == 16);
    }
    const auto result = decode_all(s, demands, tx, caches, lib);
    CHECK(result.success());
    for (UserId k = 0; k < 5; ++k) {
      const auto want = demands[k];
      Octets truth;
      for (SubfileId f = 0; f < s.params.F; ++f) {
        const auto w = lib.subfile(want, f);
        truth.insert(truth.end(), w.begin(), w.end());
      }
      CHECK(result.recovered[k] == truth);
    }
  }

  TEST_CASE("corrupted or missing transmissions are detected") {
    const auto s = man_scheme(4, 2);
    const FileLibrary lib(4, 6, 8, 1);
    const auto caches = place_caches(s.placement, lib);
    const DemandVector demands{0, 1, 2, 3};
    auto tx = encode_transmissions(s, demands, lib);

    auto flipped = tx;
    flipped[2].payload[5] ^= 0x10;
    auto r = decode_all(s, demands, flipped, caches, lib);
    CHECK_FALSE(r.success());
    CHECK(r.failures.size() == flipped[2].participants.size());
    for (const auto& f : r.failures) {
      CHECK(f.clique == 2);
      CHECK(f.reason.find("differs") != std::string::npos);
    }

    auto dropped = tx;
    dropped.erase(dropped.begin());
    r = decode_all(s, demands, dropped, caches, lib);
    CHECK(r.failures.size() == tx[0].participants.size());
    CHECK(r.failures.front().clique == -1);

    // A participant the decoding user cannot cancel.
    auto bogus = tx;
    const UserId a = bogus[0].participants[0].user;
    bogus[0].participants.push_back({bogus[0].participants[1].user, s.placement.missing[a][0]});
    r = decode_all(s, demands, bogus, caches, lib);
    CHECK_FALSE(r.success());
    CHECK(r.failures.front().user == a);
    CHECK(r.failures.front().reason.find("not cached") != std::string::npos);

    // Failures are reported in (user, subfile) order.
    for (std::size_t i = 1; i < r.failures.size(); ++i)
      CHECK(std::pair(r.failures[i - 1].user, r.failures[i - 1].subfile) <
            std::pair(r.failures[i].user, r.failures[i].subfile));
  }

  TEST_CASE("shape errors") {
    const auto s = man_scheme(4, 2);
    const FileLibrary lib(4, 6, 8, 1);
    CHECK(code_of([&] { encode_transmissions(s, {0, 1, 2}, lib); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { encode_transmissions(s, {0, 1, 2, 4}, lib); }) == ErrorCode::DimensionMismatch);
    auto broken = s;
    broken.cover.cliques.pop_back();
    CHECK(code_of([&] { encode_transmissions(broken, {0, 1, 2, 3}, lib); }) == ErrorCode::InvalidCover);
  }

  TEST_CASE("serial and parallel kernels agree byte for byte") {
    for (auto [K, t] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{4, 1}, {5, 2}, {6, 3}}) {
      const auto s = man_scheme(K, t);
      const FileLibrary lib(K, static_cast<std::uint32_t>(s.params.F), 24, K);
      const auto caches = place_caches(s.placement, lib);
      const auto demands = random_demands(K, K, t);
      const auto a = encode_transmissions(s, demands, lib);
      const auto b = reference::encode_transmissions(s, demands, lib);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].payload == b[i].payload);
        CHECK(a[i].clique == b[i].clique);
      }
      auto broken = a;
      broken[1].payload[0] ^= 1;
      const auto da = decode_all(s, demands, broken, caches, lib);
      const auto db = reference::decode_all(s, demands, broken, caches, lib);
      CHECK(da.recovered == db.recovered);
      REQUIRE(da.failures.size() == db.failures.size());
      for (std::size_t i = 0; i < da.failures.size(); ++i) {
        CHECK(da.failures[i].user == db.failures[i].user);
        CHECK(da.failures[i].subfile == db.failures[i].subfile);
        CHECK(da.failures[i].clique == db.failures[i].clique);
        CHECK(da.failures[i].reason == db.failures[i].reason);
      }
      CHECK(reference::delivery_cover_valid(s.graph, s.cover));
    }
  }

  TEST_CASE("simulate accounting and defaults") {
    const auto s = man_scheme(4, 2);
    const auto r = simulate(s);
    CHECK(r.N == 4);
    CHECK(r.success);
    CHECK(r.transmissions == 4);
    CHECK(r.bytes_transmitted == 4 * 8);
    CHECK(r.rate == s.params.rate);
    CHECK(r.cached_fraction == Rational(1, 2));
    CHECK(r.demands == random_demands(4, 4, 0));

    SimulationOptions opt;
    opt.demands = DemandVector{6, 0, 0, 1};
    opt.subfile_size = 3;
    const auto r2 = simulate(s, opt);
    CHECK(r2.N == 7);
    CHECK(r2.success);
    CHECK(r2.bytes_transmitted == 12);

    opt.N = 5;
    CHECK(code_of([&] { simulate(s, opt); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("random demands stay in range and depend on the seed") {
    const auto a = random_demands(100, 7, 1), b = random_demands(100, 7, 2);
    CHECK(a != b);
    for (auto d : a) CHECK(d < 7);
    CHECK(a == random_demands(100, 7, 1));
  }
}
