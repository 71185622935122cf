#pragma once

// Explicit (c, d)-caching line graphs with their analytic delivery covers.

#include "cachegraph/field.hpp"
#include "cachegraph/linegraph.hpp"
#include "cachegraph/subspace.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cachegraph {

struct LineGraphWithCover {
  CachingLineGraph graph;
  DeliveryCliqueCover cover;
};

/// Maddah-Ali--Niesen placement as a (K - t, t + 1)-caching line graph.
/// User i's vertices are (i, A) for the t-subsets A of [K] \ {i} in
/// lexicographic order; the cover cliques are {(i, B \ i) : i in B} for the
/// (t + 1)-subsets B. Requires 1 <= t < K <= 64 and C(K, t) <= cap.
LineGraphWithCover man_line_graph(std::uint32_t K, std::uint32_t t,
                                  std::uint64_t cap = kDefaultEnumerationCap);

/// Resolvable-design scheme from the length-k single parity check code
/// C = {v : v_1 + ... + v_k = 0} over GF(q). User (i, l) has id i * q + l and
/// misses the codewords with v_i != l. A (kq - k, k)-caching line graph.
LineGraphWithCover resolvable_line_graph(std::uint32_t q, std::uint32_t k,
                                         std::uint64_t cap = kDefaultEnumerationCap);

/// A perfect matching between the t-dimensional and the m-dimensional
/// subspaces of an (m + t)-dimensional X with every pair complementary.
struct MatchingTable {
  SubspaceBasis x;
  /// pairs[i] = (V_i, T_i) with V_i (+) T_i = X. V_i follow the enumeration
  /// order of subspaces_within(x, t).
  std::vector<std::pair<SubspaceBasis, SubspaceBasis>> pairs;
};

/// Degree of every vertex in the "trivially intersecting" bipartite graph
/// between t- and m-dimensional subspaces of an (m + t)-space:
///   [m + t, t]_q - sum_{i=1}^{min(m,t)} q^{(m-i)(t-i)} [m, i]_q [t, i]_q.
BigInt complement_degree(std::uint64_t m, std::uint64_t t, std::uint64_t q);

/// Matches the t-subspaces of X to complementary m-subspaces with
/// Hopcroft-Karp. Computed in coordinates relative to X's basis and mapped
/// back, so every X of the same dimension uses the same relative matching.
/// Throws InternalError if the graph is not regular of complement_degree()
/// or the matching is not perfect.
MatchingTable matching_subspaces(const Field& field, const SubspaceBasis& x, std::size_t m, std::size_t t,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// The same matching expressed on F_q^{m+t}: relative_pairs[i] = (index of
/// V_i, index of T_i) into enumerate_subspaces(m + t, t) and (m + t, m).
struct RelativeMatching {
  std::vector<SubspaceBasis> t_spaces;
  std::vector<SubspaceBasis> m_spaces;
  std::vector<std::uint32_t> partner;  // partner[i]: index into m_spaces for t_spaces[i]
};
RelativeMatching relative_matching(const Field& field, std::size_t m, std::size_t t,
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// Projective-geometry scheme over GF(q): users are the t-subspaces V of
/// F_q^k, subfiles the (m + t)-subspaces X, vertex (V, X) for V <= X. Each
/// vertex also carries the alternate label (V, T) where T is V's matching
/// subspace in X; grouping vertices by T gives the delivery cover.
struct ProjectiveScheme {
  std::uint32_t q = 0, k = 0, m = 0, t = 0;
  CachingLineGraph graph;
  DeliveryCliqueCover cover;

  /// User u is users[u]; its user-clique lists the X >= users[u] in
  /// subspaces_containing order.
  std::vector<SubspaceBasis> users;
  /// Subfile-clique s is the vertex set of subfiles[s].
  std::vector<SubspaceBasis> subfiles;
  /// Cover clique j groups the vertices labelled with matched[j].
  std::vector<SubspaceBasis> matched;
  /// label_of[v]: index into `matched` of vertex v's alternate label.
  std::vector<std::uint32_t> label_of;

  std::unordered_map<SubspaceBasis, UserId, SubspaceHash> user_index;
  std::unordered_map<SubspaceBasis, CliqueId, SubspaceHash> subfile_index;
};

/// Requires 1 <= m, 1 <= t, m + t <= k and a prime power q; throws
/// InvalidArgs, NotPrimePower or CapExceeded. The per-subfile work is
/// parallel; all index maps follow enumeration order.
ProjectiveScheme projective_line_graph(std::uint32_t q, std::uint32_t k, std::uint32_t m, std::uint32_t t,
                                       std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace cachegraph
