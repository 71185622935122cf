#pragma once

// Placement and delivery over an error-free broadcast link. Subfiles are
// fixed-size octet blocks and coded transmissions are their XOR.

#include "cachegraph/linegraph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cachegraph {

using Octets = std::vector<std::uint8_t>;

/// splitmix64 step: advances state and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

class FileLibrary {
 public:
  /// Subfile (i, f) is the byte stream of a splitmix64 generator whose state
  /// starts at mix(mix(mix(seed) ^ i) ^ f), mix being the splitmix64
  /// finalizer; 8 bytes per step, little-endian.
  FileLibrary(std::uint32_t N, std::uint32_t F, std::uint32_t subfile_size, std::uint64_t seed);

  std::uint32_t file_count() const noexcept { return N_; }
  std::uint32_t subfile_count() const noexcept { return F_; }
  std::uint32_t subfile_size() const noexcept { return size_; }
  std::span<const std::uint8_t> subfile(std::uint32_t file, SubfileId f) const noexcept {
    return {data_.data() + (std::size_t{file} * F_ + f) * size_, size_};
  }
  const Octets& bytes() const noexcept { return data_; }

 private:
  std::uint32_t N_, F_, size_;
  Octets data_;
};

/// A user's cache. Holds subfile f of every file for each f the user does
/// not miss; reads of anything else return nullopt.
class UserCache {
 public:
  UserCache(UserId user, const FileLibrary& library, const std::vector<SubfileId>& missing);

  UserId user() const noexcept { return user_; }
  std::optional<std::span<const std::uint8_t>> get(std::uint32_t file, SubfileId f) const noexcept;
  bool holds(SubfileId f) const noexcept { return f < cached_.size() && cached_[f]; }
  /// Number of stored subfiles, N (F - D).
  std::uint64_t stored_subfiles() const noexcept;

 private:
  UserId user_;
  const FileLibrary* library_;
  std::vector<bool> cached_;
  std::uint32_t cached_count_ = 0;
};

/// Throws DimensionMismatch if the library's F differs from the placement's.
std::vector<UserCache> place_caches(const BipartiteCachingGraph& placement, const FileLibrary& library);

struct Participant {
  UserId user;
  SubfileId subfile;
};

struct Transmission {
  std::uint32_t clique = 0;
  Octets payload;
  std::vector<Participant> participants;
};

/// demands[k] is the file user k wants, in [0, N).
using DemandVector = std::vector<std::uint32_t>;

/// One transmission per cover clique, the XOR of W_{d_k, f} over its
/// (user k, subfile f) members. Cliques are encoded in parallel. Throws
/// InvalidCover if the cover does not validate, DimensionMismatch on bad
/// demand or library shapes.
std::vector<Transmission> encode_transmissions(const CodedCachingScheme& scheme, const DemandVector& demands,
                                               const FileLibrary& library);

struct DecodeFailure {
  UserId user;
  SubfileId subfile;
  std::int64_t clique;  // -1 when no transmission carries the subfile
  std::string reason;
};

struct DecodeResult {
  /// recovered[k]: user k's reconstruction of its demanded file, F * size octets.
  std::vector<Octets> recovered;
  std::vector<DecodeFailure> failures;
  bool success() const noexcept { return failures.empty(); }
};

/// Every user rebuilds its demanded file from its cache plus the
/// transmissions, cancelling the other participants' subfiles with cached
/// copies. Reconstructions are compared with the library. Users are decoded
/// in parallel; failures are listed in (user, subfile) order.
DecodeResult decode_all(const CodedCachingScheme& scheme, const DemandVector& demands,
                        const std::vector<Transmission>& transmissions, const std::vector<UserCache>& caches,
                        const FileLibrary& library);

/// Uniform demands in [0, N) drawn from a splitmix64 stream seeded with seed.
DemandVector random_demands(std::uint32_t K, std::uint32_t N, std::uint64_t seed);

struct SimulationOptions {
  /// Default: K without explicit demands, max demand + 1 with them.
  std::optional<std::uint32_t> N;
  std::uint64_t seed = 0;
  std::uint32_t subfile_size = 8;
  std::optional<DemandVector> demands;  // default: random_demands(K, N, seed)
};

struct SimulationReport {
  std::uint32_t K = 0;
  std::uint64_t F = 0;
  std::uint32_t D = 0;
  std::uint32_t N = 0;
  Rational cached_fraction;
  std::uint64_t transmissions = 0;
  std::uint64_t bytes_transmitted = 0;
  Rational rate;
  bool success = false;
  std::vector<DecodeFailure> failures;
  DemandVector demands;
};

SimulationReport simulate(const CodedCachingScheme& scheme, const SimulationOptions& options = {});

}  // namespace cachegraph
