#include "cachegraph/delivery.hpp"

#include "cachegraph/error.hpp"
#include "cachegraph/parallel.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace cachegraph {

namespace {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void check_demands(const CodedCachingScheme& scheme, const DemandVector& demands, const FileLibrary& library) {
  if (demands.size() != scheme.params.K)
    throw Error(ErrorCode::DimensionMismatch, "need one demand per user: got " + std::to_string(demands.size()) +
                                                  ", K = " + std::to_string(scheme.params.K));
  for (std::uint32_t d : demands)
    if (d >= library.file_count())
      throw Error(ErrorCode::DimensionMismatch, "demand " + std::to_string(d) + " outside the library of " +
                                                    std::to_string(library.file_count()) + " files");
  if (library.subfile_count() != scheme.params.F)
    throw Error(ErrorCode::DimensionMismatch, "library subfile count differs from the scheme's F");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ull;
  return mix64(state);
}

FileLibrary::FileLibrary(std::uint32_t N, std::uint32_t F, std::uint32_t subfile_size, std::uint64_t seed)
    : N_(N), F_(F), size_(subfile_size) {
  if (N == 0 || F == 0 || subfile_size == 0)
    throw Error(ErrorCode::InvalidArgs, "library needs N, F and subfile_size >= 1");
  data_.resize(std::size_t{N} * F * subfile_size);
  const std::uint64_t base = mix64(seed);
  parallel_for(static_cast<std::int64_t>(N) * F, [&](std::int64_t idx) {
    const std::uint64_t i = static_cast<std::uint64_t>(idx) / F, f = static_cast<std::uint64_t>(idx) % F;
    std::uint64_t state = mix64(mix64(base ^ i) ^ f);
    std::uint8_t* out = data_.data() + static_cast<std::size_t>(idx) * size_;
    for (std::uint32_t b = 0; b < size_; b += 8) {
      const std::uint64_t word = splitmix64(state);
      for (std::uint32_t j = 0; j < 8 && b + j < size_; ++j) out[b + j] = static_cast<std::uint8_t>(word >> (8 * j));
    }
  });
}

UserCache::UserCache(UserId user, const FileLibrary& library, const std::vector<SubfileId>& missing)
    : user_(user), library_(&library), cached_(library.subfile_count(), true) {
  for (SubfileId f : missing) {
    if (f >= cached_.size()) throw Error(ErrorCode::DimensionMismatch, "missing subfile outside the library");
    cached_[f] = false;
  }
  cached_count_ = static_cast<std::uint32_t>(std::count(cached_.begin(), cached_.end(), true));
}

std::optional<std::span<const std::uint8_t>> UserCache::get(std::uint32_t file, SubfileId f) const noexcept {
  if (file >= library_->file_count() || !holds(f)) return std::nullopt;
  return library_->subfile(file, f);
}

std::uint64_t UserCache::stored_subfiles() const noexcept {
  return std::uint64_t{library_->file_count()} * cached_count_;
}

std::vector<UserCache> place_caches(const BipartiteCachingGraph& placement, const FileLibrary& library) {
  if (placement.F != library.subfile_count())
    throw Error(ErrorCode::DimensionMismatch, "placement has F = " + std::to_string(placement.F) +
                                                  " but the library has " + std::to_string(library.subfile_count()));
  std::vector<UserCache> caches;
  caches.reserve(placement.K);
  for (UserId k = 0; k < placement.K; ++k) caches.emplace_back(k, library, placement.missing[k]);
  return caches;
}

std::vector<Transmission> encode_transmissions(const CodedCachingScheme& scheme, const DemandVector& demands,
                                               const FileLibrary& library) {
  const auto report = verify_delivery_cover(scheme.graph, scheme.cover);
  if (!report.ok()) throw Error(ErrorCode::InvalidCover, report.summary());
  check_demands(scheme, demands, library);

  const auto& cliques = scheme.cover.cliques;
  std::vector<Transmission> out(cliques.size());
  parallel_for(static_cast<std::int64_t>(cliques.size()), [&](std::int64_t c) {
    Transmission& tx = out[c];
    tx.clique = static_cast<std::uint32_t>(c);
    tx.payload.assign(library.subfile_size(), 0);
    tx.participants.reserve(cliques[c].size());
    for (VertexId v : cliques[c]) {
      const UserId k = scheme.graph.user_of(v);
      const SubfileId f = scheme.subfile_of[v];
      tx.participants.push_back({k, f});
      const auto w = library.subfile(demands[k], f);
      for (std::size_t b = 0; b < w.size(); ++b) tx.payload[b] ^= w[b];
    }
  });
  return out;
}

DecodeResult decode_all(const CodedCachingScheme& scheme, const DemandVector& demands,
                        const std::vector<Transmission>& transmissions, const std::vector<UserCache>& caches,
                        const FileLibrary& library) {
  check_demands(scheme, demands, library);
  const std::uint32_t K = scheme.params.K;
  const std::uint64_t F = scheme.params.F;
  const std::uint32_t size = library.subfile_size();
  if (caches.size() != K) throw Error(ErrorCode::DimensionMismatch, "need one cache per user");

  // (user, subfile) -> index of the transmission that carries it.
  std::unordered_map<std::uint64_t, std::size_t> carrier;
  for (std::size_t t = 0; t < transmissions.size(); ++t)
    for (const auto& p : transmissions[t].participants) carrier.emplace(std::uint64_t{p.user} * F + p.subfile, t);

  DecodeResult result;
  result.recovered.assign(K, Octets(F * size, 0));
  std::vector<std::vector<DecodeFailure>> per_user(K);
  parallel_for(K, [&](std::int64_t idx) {
    const auto k = static_cast<UserId>(idx);
    const UserCache& cache = caches[k];
    const std::uint32_t want = demands[k];
    Octets& file = result.recovered[k];
    for (SubfileId f = 0; f < F; ++f) {
      std::uint8_t* out = file.data() + std::size_t{f} * size;
      std::int64_t clique = -1;
      if (const auto have = cache.get(want, f)) {
        std::copy(have->begin(), have->end(), out);
      } else {
        const auto it = carrier.find(std::uint64_t{k} * F + f);
        if (it == carrier.end()) {
          per_user[k].push_back({k, f, -1, "no transmission carries this subfile"});
          continue;
        }
        const Transmission& tx = transmissions[it->second];
        clique = tx.clique;
        if (tx.payload.size() != size) {
          per_user[k].push_back({k, f, clique, "payload length differs from the subfile size"});
          continue;
        }
        std::copy(tx.payload.begin(), tx.payload.end(), out);
        const Participant* unresolved = nullptr;
        for (const auto& p : tx.participants) {
          if (p.user == k) continue;
          const auto side = p.user < K ? cache.get(demands[p.user], p.subfile) : std::nullopt;
          if (!side) {
            unresolved = &p;
            break;
          }
          for (std::uint32_t b = 0; b < size; ++b) out[b] ^= (*side)[b];
        }
        if (unresolved) {
          per_user[k].push_back({k, f, clique,
                                 "side information for user " + std::to_string(unresolved->user) + ", subfile " +
                                     std::to_string(unresolved->subfile) + " is not cached"});
          continue;
        }
      }
      const auto truth = library.subfile(want, f);
      if (!std::equal(truth.begin(), truth.end(), out))
        per_user[k].push_back({k, f, clique, "recovered subfile differs from the library"});
    }
  });
  for (auto& failures : per_user)
    for (auto& failure : failures) result.failures.push_back(std::move(failure));
  return result;
}

DemandVector random_demands(std::uint32_t K, std::uint32_t N, std::uint64_t seed) {
  if (N == 0) throw Error(ErrorCode::InvalidArgs, "need at least one file");
  std::uint64_t state = mix64(seed ^ 0x64656d616e6473ull);
  DemandVector d(K);
  for (auto& x : d) x = static_cast<std::uint32_t>(splitmix64(state) % N);
  return d;
}

SimulationReport simulate(const CodedCachingScheme& scheme, const SimulationOptions& options) {
  const std::uint32_t K = scheme.params.K;
  std::uint32_t N = K;
  if (options.N) {
    N = *options.N;
  } else if (options.demands && !options.demands->empty()) {
    N = *std::max_element(options.demands->begin(), options.demands->end()) + 1;
  }
  if (N == 0) throw Error(ErrorCode::InvalidArgs, "N must be at least 1");
  if (scheme.params.F > UINT32_MAX) throw Error(ErrorCode::CapExceeded, "F too large to simulate");

  SimulationReport report;
  report.K = K;
  report.F = scheme.params.F;
  report.D = scheme.params.D;
  report.N = N;
  report.cached_fraction = scheme.params.cached_fraction;
  report.demands = options.demands ? *options.demands : random_demands(K, N, options.seed);

  const FileLibrary library(N, static_cast<std::uint32_t>(scheme.params.F), options.subfile_size, options.seed);
  const auto caches = place_caches(scheme.placement, library);
  const auto transmissions = encode_transmissions(scheme, report.demands, library);
  const auto decoded = decode_all(scheme, report.demands, transmissions, caches, library);

  report.transmissions = transmissions.size();
  for (const auto& tx : transmissions) report.bytes_transmitted += tx.payload.size();
  report.rate = Rational(BigInt(report.transmissions), BigInt(report.F));
  report.failures = decoded.failures;
  report.success = decoded.success();
  return report;
}

}  // namespace cachegraph
