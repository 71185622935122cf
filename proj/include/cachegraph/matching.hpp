#pragma once

#include <cstdint>
#include <vector>

namespace cachegraph {

inline constexpr std::uint32_t kUnmatched = UINT32_MAX;

/// Maximum-cardinality matching of a bipartite graph by Hopcroft-Karp
/// phases (BFS layering, then vertex-disjoint shortest augmenting paths).
/// `adjacency[u]` lists the right vertices adjacent to left vertex u and is
/// scanned in order, so the result is deterministic.
/// Returns, for every left vertex, its matched right vertex or kUnmatched.
std::vector<std::uint32_t> maximum_bipartite_matching(
    std::uint32_t right_count, const std::vector<std::vector<std::uint32_t>>& adjacency);

}  // namespace cachegraph
