// Serial reference kernels against the OpenMP ones on the (2,6,3,2)
// projective scheme: 651 users, 63 subfiles, 1395 transmissions.

#include "cachegraph/constructions.hpp"
#include "cachegraph/delivery.hpp"
#include "cachegraph/reference.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cachegraph;

struct Fixture {
  CodedCachingScheme scheme;
  FileLibrary library;
  DemandVector demands;
  std::vector<UserCache> caches;
  std::vector<Transmission> transmissions;

  explicit Fixture(CodedCachingScheme s)
      : scheme(std::move(s)),
        library(scheme.params.K, static_cast<std::uint32_t>(scheme.params.F), 64, 1),
        demands(random_demands(scheme.params.K, scheme.params.K, 1)),
        caches(place_caches(scheme.placement, library)),
        transmissions(encode_transmissions(scheme, demands, library)) {}

  static Fixture& get() {
    static Fixture f([] {
      auto p = projective_line_graph(2, 6, 3, 2);
      return make_scheme("projective", 2, std::move(p.graph), std::move(p.cover));
    }());
    return f;
  }
};

void BM_EncodeSerial(benchmark::State& state) {
  auto& f = Fixture::get();
  for (auto _ : state) benchmark::DoNotOptimize(reference::encode_transmissions(f.scheme, f.demands, f.library));
}

void BM_EncodeParallel(benchmark::State& state) {
  auto& f = Fixture::get();
  for (auto _ : state) benchmark::DoNotOptimize(encode_transmissions(f.scheme, f.demands, f.library));
}

void BM_DecodeSerial(benchmark::State& state) {
  auto& f = Fixture::get();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::decode_all(f.scheme, f.demands, f.transmissions, f.caches, f.library));
}

void BM_DecodeParallel(benchmark::State& state) {
  auto& f = Fixture::get();
  for (auto _ : state)
    benchmark::DoNotOptimize(decode_all(f.scheme, f.demands, f.transmissions, f.caches, f.library));
}

BENCHMARK(BM_EncodeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EncodeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecodeSerial)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK(BM_DecodeParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
