#pragma once

// Caching line graphs: the line graph of a left-regular bipartite caching
// graph, held as two vertex partitions (user-cliques and subfile-cliques).
// Adjacency is never stored; two vertices are adjacent iff they share a
// user-clique or a subfile-clique.

#include "cachegraph/exact.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cachegraph {

using VertexId = std::uint32_t;
using CliqueId = std::uint32_t;
using UserId = std::uint32_t;
using SubfileId = std::uint32_t;

/// B(K, D, F): users on the left, subfiles on the right, an edge for every
/// subfile a user does not cache.
struct BipartiteCachingGraph {
  std::uint32_t K = 0;
  std::uint32_t F = 0;
  std::uint32_t D = 0;
  /// missing[k] is the sorted set of subfiles user k does not cache.
  std::vector<std::vector<SubfileId>> missing;

  /// Throws NotRegular if any user misses other than D subfiles, and
  /// InvalidArgs for out-of-range or duplicate subfile indices.
  void validate() const;
  /// 1 - M/N = D / F.
  Rational uncached_fraction() const { return Rational(D, F); }
};

/// Vertex (k, i) has id k * D + i; user-clique k is ids [kD, kD + D).
class CachingLineGraph {
 public:
  CachingLineGraph() = default;

  /// Takes the subfile-clique partition as given. No validation beyond
  /// ranges; use verify_conditions() for C1-C3.
  CachingLineGraph(std::uint32_t K, std::uint32_t D, std::vector<std::vector<VertexId>> subfile_cliques);

  /// Builds subfile-cliques from one label per vertex; clique ids follow the
  /// order in which labels are first seen when scanning vertices 0, 1, ...
  static CachingLineGraph from_labels(std::uint32_t K, std::uint32_t D,
                                      std::span<const std::uint64_t> label_of_vertex);

  std::uint32_t user_count() const noexcept { return K_; }
  std::uint32_t degree() const noexcept { return D_; }
  std::uint32_t vertex_count() const noexcept { return K_ * D_; }

  static VertexId vertex(std::uint32_t D, UserId user, std::uint32_t slot) { return user * D + slot; }
  VertexId vertex(UserId user, std::uint32_t slot) const noexcept { return user * D_ + slot; }
  UserId user_of(VertexId v) const noexcept { return v / D_; }
  std::uint32_t slot_of(VertexId v) const noexcept { return v % D_; }

  const std::vector<std::vector<VertexId>>& subfile_cliques() const noexcept { return subfile_cliques_; }
  /// Subfile-clique of v; kNoClique if v is in none.
  CliqueId subfile_clique_of(VertexId v) const noexcept { return subfile_clique_of_[v]; }
  /// Sorted users with a vertex in subfile-clique s.
  const std::vector<UserId>& users_in(CliqueId s) const noexcept { return users_in_[s]; }
  bool clique_has_user(CliqueId s, UserId u) const noexcept;

  bool adjacent(VertexId a, VertexId b) const noexcept;

  static constexpr CliqueId kNoClique = UINT32_MAX;

 private:
  std::uint32_t K_ = 0;
  std::uint32_t D_ = 0;
  std::vector<std::vector<VertexId>> subfile_cliques_;
  std::vector<CliqueId> subfile_clique_of_;
  std::vector<std::vector<UserId>> users_in_;
};

struct DeliveryCliqueCover {
  std::vector<std::vector<VertexId>> cliques;
  std::size_t size() const noexcept { return cliques.size(); }
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const noexcept;
  const ValidationCheck* find(const std::string& name) const noexcept;
  std::string summary() const;
};

struct SchemeParameters {
  std::uint32_t K = 0;
  std::uint64_t F = 0;
  std::uint32_t D = 0;
  std::optional<std::uint64_t> c;
  std::optional<std::uint64_t> d;
  Rational cached_fraction;  // M/N
  Rational rate;
  std::uint64_t transmissions = 0;

  Rational uncached_fraction() const { return 1 - cached_fraction; }
};

BipartiteCachingGraph from_subfile_sets(std::vector<std::vector<SubfileId>> missing, std::uint32_t F);

/// Edges of B become vertices; vertex (k, i) is the i-th missing subfile of
/// user k. Subfiles no user misses have no vertex and are not represented.
CachingLineGraph from_bipartite(const BipartiteCachingGraph& b);

/// Identifies right vertices of B_0 one subfile-clique at a time; subfile j of
/// the result is subfile-clique j. Throws InvalidLineGraph if C1-C3 fail.
BipartiteCachingGraph to_bipartite(const CachingLineGraph& l);

/// F = KD - sum_i (|S_i| - 1).
BigInt subpacketization(const CachingLineGraph& l);

/// Reports C1 (user-clique partition), C2 (at most one vertex of each
/// user-clique per subfile-clique) and C3 (subfile-cliques partition V(L)).
ValidationReport verify_conditions(const CachingLineGraph& l);

/// Two vertices may share a transmission iff they are in different
/// user-cliques and neither one's subfile-clique touches the other's user.
bool compatible(const CachingLineGraph& l, VertexId a, VertexId b);

/// Checks disjoint coverage of V(L) and the pairwise compatibility condition
/// inside every clique. Cliques are checked in parallel; the reported witness
/// is the lowest-indexed failing clique.
ValidationReport verify_delivery_cover(const CachingLineGraph& l, const DeliveryCliqueCover& cover);

/// Greedy cover: start each clique at the lowest unassigned vertex and add
/// every later unassigned vertex compatible with all current members.
DeliveryCliqueCover greedy_delivery_cover(const CachingLineGraph& l);

/// Throws InconsistentCover if the cover does not validate.
SchemeParameters scheme_parameters(const CachingLineGraph& l, const DeliveryCliqueCover& cover);

/// A placement (the line graph and its bipartite form), a delivery plan and
/// the exact parameters.
struct CodedCachingScheme {
  std::string family;
  std::optional<std::uint32_t> q;
  CachingLineGraph graph;
  DeliveryCliqueCover cover;
  BipartiteCachingGraph placement;
  SchemeParameters params;
  /// subfile_of[v]: the subfile index of vertex v in `placement`.
  std::vector<SubfileId> subfile_of;
};

CodedCachingScheme make_scheme(std::string family, std::optional<std::uint32_t> q, CachingLineGraph graph,
                               DeliveryCliqueCover cover);

}  // namespace cachegraph
