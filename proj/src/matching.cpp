#include "cachegraph/matching.hpp"

#include <limits>
#include <queue>

namespace cachegraph {

namespace {

class HopcroftKarp {
 public:
  HopcroftKarp(std::uint32_t right_count, const std::vector<std::vector<std::uint32_t>>& adj)
      : adj_(adj),
        match_left_(adj.size(), kUnmatched),
        match_right_(right_count, kUnmatched),
        dist_(adj.size()),
        next_edge_(adj.size()) {}

  std::vector<std::uint32_t> run() {
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (std::uint32_t u = 0; u < adj_.size(); ++u)
        if (match_left_[u] == kUnmatched) augment(u);
    }
    return match_left_;
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  bool bfs() {
    std::queue<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kUnmatched) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop();
      for (std::uint32_t v : adj_[u]) {
        const std::uint32_t w = match_right_[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  // Iterative DFS along the BFS layers; resumes each vertex's edge scan so a
  // phase costs O(E).
  bool augment(std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      bool advanced = false;
      while (next_edge_[u] < adj_[u].size()) {
        const std::uint32_t v = adj_[u][next_edge_[u]];
        const std::uint32_t w = match_right_[v];
        if (w == kUnmatched) {
          // Flip the path root .. u, v.
          for (std::size_t i = stack.size(); i-- > 0;) {
            const std::uint32_t x = stack[i];
            const std::uint32_t y = adj_[x][next_edge_[x]];
            match_left_[x] = y;
            match_right_[y] = x;
          }
          return true;
        }
        if (dist_[w] == dist_[u] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
        ++next_edge_[u];
      }
      if (!advanced) {
        dist_[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++next_edge_[stack.back()];
      }
    }
    return false;
  }

  const std::vector<std::vector<std::uint32_t>>& adj_;
  std::vector<std::uint32_t> match_left_;
  std::vector<std::uint32_t> match_right_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> next_edge_;
};

}  // namespace

std::vector<std::uint32_t> maximum_bipartite_matching(
    std::uint32_t right_count, const std::vector<std::vector<std::uint32_t>>& adjacency) {
  return HopcroftKarp(right_count, adjacency).run();
}

}  // namespace cachegraph
