#include "cachegraph/reference.hpp"

#include "cachegraph/error.hpp"

#include <algorithm>
#include <string>

namespace cachegraph::reference {

std::vector<Transmission> encode_transmissions(const CodedCachingScheme& scheme, const DemandVector& demands,
                                               const FileLibrary& library) {
  if (!delivery_cover_valid(scheme.graph, scheme.cover)) throw Error(ErrorCode::InvalidCover, "cover is not valid");
  if (demands.size() != scheme.params.K) throw Error(ErrorCode::DimensionMismatch, "need one demand per user");
  for (auto d : demands)
    if (d >= library.file_count()) throw Error(ErrorCode::DimensionMismatch, "demand outside the library");

  std::vector<Transmission> out;
  for (std::uint32_t c = 0; c < scheme.cover.cliques.size(); ++c) {
    Transmission tx;
    tx.clique = c;
    tx.payload.assign(library.subfile_size(), 0);
    for (VertexId v : scheme.cover.cliques[c]) {
      const UserId k = v / scheme.graph.degree();
      tx.participants.push_back({k, scheme.subfile_of[v]});
      const auto w = library.subfile(demands[k], scheme.subfile_of[v]);
      for (std::size_t b = 0; b < w.size(); ++b) tx.payload[b] ^= w[b];
    }
    out.push_back(std::move(tx));
  }
  return out;
}

DecodeResult decode_all(const CodedCachingScheme& scheme, const DemandVector& demands,
                        const std::vector<Transmission>& transmissions, const std::vector<UserCache>& caches,
                        const FileLibrary& library) {
  if (demands.size() != scheme.params.K || caches.size() != scheme.params.K)
    throw Error(ErrorCode::DimensionMismatch, "need one demand and one cache per user");
  const std::uint32_t size = library.subfile_size();
  DecodeResult result;
  for (UserId k = 0; k < scheme.params.K; ++k) {
    Octets file(scheme.params.F * size, 0);
    for (SubfileId f = 0; f < scheme.params.F; ++f) {
      std::uint8_t* out = file.data() + std::size_t{f} * size;
      std::int64_t clique = -1;
      if (caches[k].holds(f)) {
        const auto w = *caches[k].get(demands[k], f);
        std::copy(w.begin(), w.end(), out);
      } else {
        const Transmission* tx = nullptr;
        for (const auto& candidate : transmissions)
          for (const auto& p : candidate.participants)
            if (!tx && p.user == k && p.subfile == f) tx = &candidate;
        if (!tx) {
          result.failures.push_back({k, f, -1, "no transmission carries this subfile"});
          continue;
        }
        clique = tx->clique;
        if (tx->payload.size() != size) {
          result.failures.push_back({k, f, clique, "payload length differs from the subfile size"});
          continue;
        }
        std::copy(tx->payload.begin(), tx->payload.end(), out);
        std::string missing_side;
        for (const auto& p : tx->participants) {
          if (p.user == k) continue;
          const auto side =
              p.user < demands.size() ? caches[k].get(demands[p.user], p.subfile) : std::nullopt;
          if (!side) {
            missing_side = "side information for user " + std::to_string(p.user) + ", subfile " +
                           std::to_string(p.subfile) + " is not cached";
            break;
          }
          for (std::uint32_t b = 0; b < size; ++b) out[b] ^= (*side)[b];
        }
        if (!missing_side.empty()) {
          result.failures.push_back({k, f, clique, missing_side});
          continue;
        }
      }
      const auto truth = library.subfile(demands[k], f);
      if (!std::equal(truth.begin(), truth.end(), out))
        result.failures.push_back({k, f, clique, "recovered subfile differs from the library"});
    }
    result.recovered.push_back(std::move(file));
  }
  return result;
}

bool delivery_cover_valid(const CachingLineGraph& l, const DeliveryCliqueCover& cover) {
  std::vector<int> seen(l.vertex_count(), 0);
  bool ok = true;
  for (const auto& clique : cover.cliques) {
    for (VertexId v : clique) {
      if (v >= l.vertex_count()) return false;
      ++seen[v];
    }
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j)
        if (!compatible(l, clique[i], clique[j])) ok = false;
  }
  return ok && std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
}

}  // namespace cachegraph::reference
