#include "cachegraph/constructions.hpp"

#include "cachegraph/error.hpp"
#include "cachegraph/gaussian.hpp"
#include "cachegraph/matching.hpp"
#include "cachegraph/parallel.hpp"

#include <algorithm>
#include <string>

namespace cachegraph {

namespace {

// Pascal triangle up to n = 64, saturating at UINT64_MAX.
class BinomialTable {
 public:
  explicit BinomialTable(std::uint32_t n) : n_(n), c_((n + 1) * (n + 1), 0) {
    for (std::uint32_t i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (std::uint32_t j = 1; j <= i; ++j) {
        const std::uint64_t a = at(i - 1, j - 1), b = j <= i - 1 ? at(i - 1, j) : 0;
        at(i, j) = a > UINT64_MAX - b ? UINT64_MAX : a + b;
      }
    }
  }
  std::uint64_t operator()(std::uint32_t n, std::uint32_t k) const { return k > n ? 0 : c_[n * (n_ + 1) + k]; }

 private:
  std::uint64_t& at(std::uint32_t n, std::uint32_t k) { return c_[n * (n_ + 1) + k]; }
  std::uint32_t n_;
  std::vector<std::uint64_t> c_;
};

// Lexicographic rank of a sorted combination of [n].
std::uint64_t combination_rank(const std::vector<std::uint32_t>& c, std::uint32_t n, const BinomialTable& binom) {
  const std::uint32_t t = static_cast<std::uint32_t>(c.size());
  std::uint64_t rank = 0;
  std::uint32_t prev = 0;
  for (std::uint32_t j = 0; j < t; ++j) {
    for (std::uint32_t x = (j == 0 ? 0 : prev + 1); x < c[j]; ++x) rank += binom(n - 1 - x, t - 1 - j);
    prev = c[j];
  }
  return rank;
}

// Advances a sorted combination of [n] to its lexicographic successor.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::uint32_t t = static_cast<std::uint32_t>(c.size());
  std::uint32_t i = t;
  while (i > 0 && c[i - 1] == n - t + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::uint32_t j = i; j < t; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::vector<std::uint32_t> first_combination(std::uint32_t t) {
  std::vector<std::uint32_t> c(t);
  for (std::uint32_t i = 0; i < t; ++i) c[i] = i;
  return c;
}

std::uint32_t checked_u32(const BigInt& value, const char* what) {
  if (value > UINT32_MAX) throw Error(ErrorCode::CapExceeded, std::string(what) + " does not fit in 32 bits");
  return value.convert_to<std::uint32_t>();
}

}  // namespace

LineGraphWithCover man_line_graph(std::uint32_t K, std::uint32_t t, std::uint64_t cap) {
  if (t < 1 || t >= K) throw Error(ErrorCode::InvalidArgs, "MaN construction needs 1 <= t < K");
  if (K > 64) throw Error(ErrorCode::InvalidArgs, "MaN construction supports K <= 64");
  const BinomialTable binom(K);
  if (binom(K, t) > cap)
    throw Error(ErrorCode::CapExceeded, "C(K, t) exceeds the enumeration cap " + std::to_string(cap));
  const std::uint64_t D64 = binom(K - 1, t);
  if (D64 * K > UINT32_MAX) throw Error(ErrorCode::CapExceeded, "too many vertices");
  const auto D = static_cast<std::uint32_t>(D64);

  // Slot of (i, A) = rank of A among t-subsets of [K] \ {i}, i.e. rank after
  // shifting elements above i down by one.
  auto slot_of = [&](std::uint32_t i, const std::vector<std::uint32_t>& a) {
    std::vector<std::uint32_t> shifted(a);
    for (auto& x : shifted)
      if (x > i) --x;
    return static_cast<std::uint32_t>(combination_rank(shifted, K - 1, binom));
  };

  std::vector<std::uint64_t> labels(std::size_t{K} * D);
  for (std::uint32_t i = 0; i < K; ++i) {
    auto c = first_combination(t);
    std::uint32_t slot = 0;
    do {
      std::vector<std::uint32_t> a(c);
      for (auto& x : a)
        if (x >= i) ++x;
      labels[std::size_t{i} * D + slot] = combination_rank(a, K, binom);
      ++slot;
    } while (next_combination(c, K - 1));
  }

  LineGraphWithCover out{CachingLineGraph::from_labels(K, D, labels), {}};
  auto b = first_combination(t + 1);
  do {
    std::vector<VertexId> clique;
    for (std::uint32_t idx = 0; idx <= t; ++idx) {
      std::vector<std::uint32_t> rest;
      for (std::uint32_t j = 0; j <= t; ++j)
        if (j != idx) rest.push_back(b[j]);
      clique.push_back(CachingLineGraph::vertex(D, b[idx], slot_of(b[idx], rest)));
    }
    std::sort(clique.begin(), clique.end());
    out.cover.cliques.push_back(std::move(clique));
  } while (next_combination(b, K));
  return out;
}

LineGraphWithCover resolvable_line_graph(std::uint32_t q, std::uint32_t k, std::uint64_t cap) {
  const Field field(q);
  if (k < 2) throw Error(ErrorCode::InvalidArgs, "resolvable construction needs k >= 2");
  const BigInt codeword_count = int_pow(q, k - 1);
  if (codeword_count > cap)
    throw Error(ErrorCode::CapExceeded, "q^(k-1) exceeds the enumeration cap " + std::to_string(cap));
  const std::uint32_t C = checked_u32(codeword_count, "codeword count");
  const std::uint32_t K = k * q;
  const std::uint32_t D = C - C / q;
  if (std::uint64_t{K} * D > UINT32_MAX) throw Error(ErrorCode::CapExceeded, "too many vertices");

  // Codeword c: v_1..v_{k-1} are the base-q digits of c (v_1 most significant),
  // v_k makes the coordinates sum to zero.
  auto codeword = [&](std::uint32_t c) {
    Vector v(k, 0);
    for (std::uint32_t j = k - 1; j-- > 0;) {
      v[j] = c % q;
      c /= q;
    }
    Elem sum = 0;
    for (std::uint32_t j = 0; j + 1 < k; ++j) sum = field.add(sum, v[j]);
    v[k - 1] = field.neg(sum);
    return v;
  };
  auto index_of = [&](const Vector& v) {
    std::uint32_t c = 0;
    for (std::uint32_t j = 0; j + 1 < k; ++j) c = c * q + v[j];
    return c;
  };

  std::vector<Vector> words(C);
  for (std::uint32_t c = 0; c < C; ++c) words[c] = codeword(c);

  // slot[(i*q + l) * C + c]: position of codeword c in user-clique U_{i,l}.
  std::vector<std::uint32_t> slot(std::size_t{K} * C, UINT32_MAX);
  std::vector<std::uint64_t> labels(std::size_t{K} * D);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (Elem l = 0; l < q; ++l) {
      const UserId u = i * q + l;
      std::uint32_t s = 0;
      for (std::uint32_t c = 0; c < C; ++c) {
        if (words[c][i] == l) continue;
        slot[std::size_t{u} * C + c] = s;
        labels[std::size_t{u} * D + s] = c;
        ++s;
      }
      if (s != D) throw Error(ErrorCode::InternalError, "user-clique size mismatch");
    }
  }

  LineGraphWithCover out{CachingLineGraph::from_labels(K, D, labels), {}};
  const BigInt total = int_pow(q, k);
  const std::uint64_t words_total = to_u64(total);
  Vector l(k, 0);
  for (std::uint64_t n = 0; n < words_total; ++n) {
    std::uint64_t rest = n;
    for (std::uint32_t j = k; j-- > 0;) {
      l[j] = static_cast<Elem>(rest % q);
      rest /= q;
    }
    Elem sum = 0;
    for (Elem x : l) sum = field.add(sum, x);
    if (sum == 0) continue;  // l is a codeword
    std::vector<VertexId> clique;
    for (std::uint32_t i = 0; i < k; ++i) {
      Vector li(l);
      Elem others = 0;
      for (std::uint32_t j = 0; j < k; ++j)
        if (j != i) others = field.add(others, l[j]);
      li[i] = field.neg(others);
      const UserId u = i * q + l[i];
      const std::uint32_t s = slot[std::size_t{u} * C + index_of(li)];
      if (s == UINT32_MAX) throw Error(ErrorCode::InternalError, "l(i) lies outside U_{i,l_i}");
      clique.push_back(CachingLineGraph::vertex(D, u, s));
    }
    std::sort(clique.begin(), clique.end());
    out.cover.cliques.push_back(std::move(clique));
  }
  return out;
}

BigInt complement_degree(std::uint64_t m, std::uint64_t t, std::uint64_t q) {
  BigInt degree = gaussian_binomial(m + t, t, q);
  for (std::uint64_t i = 1; i <= std::min(m, t); ++i) degree -= count_intersecting(m, t, i, q);
  return degree;
}

RelativeMatching relative_matching(const Field& field, std::size_t m, std::size_t t, std::uint64_t cap) {
  const std::size_t n = m + t;
  RelativeMatching rel;
  rel.t_spaces = enumerate_subspaces(field, n, t, cap);
  rel.m_spaces = enumerate_subspaces(field, n, m, cap);
  if (rel.t_spaces.size() != rel.m_spaces.size())
    throw Error(ErrorCode::InternalError, "t- and m-subspace counts differ");

  const std::size_t size = rel.t_spaces.size();
  const BigInt expected = complement_degree(m, t, field.order());
  std::vector<std::vector<std::uint32_t>> adjacency(size);
  std::vector<std::uint64_t> right_degree(size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (trivially_intersecting(field, rel.t_spaces[i], rel.m_spaces[j])) {
        adjacency[i].push_back(static_cast<std::uint32_t>(j));
        ++right_degree[j];
      }
    }
    if (adjacency[i].size() != expected)
      throw Error(ErrorCode::InternalError, "left degree " + std::to_string(adjacency[i].size()) +
                                                " differs from " + expected.str());
  }
  for (std::size_t j = 0; j < size; ++j)
    if (right_degree[j] != expected)
      throw Error(ErrorCode::InternalError, "right degree " + std::to_string(right_degree[j]) +
                                                " differs from " + expected.str());

  rel.partner = maximum_bipartite_matching(static_cast<std::uint32_t>(size), adjacency);
  for (std::uint32_t p : rel.partner)
    if (p == kUnmatched) throw Error(ErrorCode::InternalError, "matching of complementary subspaces is not perfect");
  return rel;
}

MatchingTable matching_subspaces(const Field& field, const SubspaceBasis& x, std::size_t m, std::size_t t,
                                 std::uint64_t cap) {
  if (x.dim() != m + t) throw Error(ErrorCode::InvalidArgs, "matching_subspaces needs dim(X) = m + t");
  const auto rel = relative_matching(field, m, t, cap);
  MatchingTable table;
  table.x = x;
  table.pairs.reserve(rel.t_spaces.size());
  for (std::size_t i = 0; i < rel.t_spaces.size(); ++i)
    table.pairs.emplace_back(embed_in(field, rel.t_spaces[i], x), embed_in(field, rel.m_spaces[rel.partner[i]], x));
  return table;
}

ProjectiveScheme projective_line_graph(std::uint32_t q, std::uint32_t k, std::uint32_t m, std::uint32_t t,
                                       std::uint64_t cap) {
  const Field field(q);
  if (m < 1 || t < 1 || m + t > k)
    throw Error(ErrorCode::InvalidArgs, "projective construction needs m >= 1, t >= 1 and m + t <= k");

  ProjectiveScheme s;
  s.q = q;
  s.k = k;
  s.m = m;
  s.t = t;
  s.users = enumerate_subspaces(field, k, t, cap);
  auto xs = enumerate_subspaces(field, k, m + t, cap);
  s.matched = enumerate_subspaces(field, k, m, cap);

  const std::uint32_t K = checked_u32(BigInt(s.users.size()), "K");
  const std::uint32_t D = checked_u32(gaussian_binomial(k - t, m, q), "D");
  if (std::uint64_t{K} * D > UINT32_MAX) throw Error(ErrorCode::CapExceeded, "too many vertices");
  const std::uint32_t n = K * D;

  std::unordered_map<SubspaceBasis, std::uint32_t, SubspaceHash> x_ordinal, t_ordinal;
  x_ordinal.reserve(xs.size());
  for (std::uint32_t i = 0; i < xs.size(); ++i) x_ordinal.emplace(xs[i], i);
  t_ordinal.reserve(s.matched.size());
  for (std::uint32_t i = 0; i < s.matched.size(); ++i) t_ordinal.emplace(s.matched[i], i);
  s.user_index.reserve(K);
  for (UserId u = 0; u < K; ++u) s.user_index.emplace(s.users[u], u);

  // User-cliques: vertex (u, slot) is the slot-th X containing users[u].
  std::vector<std::uint64_t> x_of_vertex(n);
  parallel_for(K, [&](std::int64_t u) {
    const auto containing = subspaces_containing(field, s.users[u], m + t, cap);
    if (containing.size() != D) throw Error(ErrorCode::InternalError, "user-clique size differs from [k-t, m]_q");
    for (std::uint32_t slot = 0; slot < D; ++slot)
      x_of_vertex[static_cast<std::size_t>(u) * D + slot] = x_ordinal.at(containing[slot]);
  });
  s.graph = CachingLineGraph::from_labels(K, D, x_of_vertex);

  const auto& cliques = s.graph.subfile_cliques();
  s.subfiles.resize(cliques.size());
  for (CliqueId c = 0; c < cliques.size(); ++c) {
    s.subfiles[c] = xs[x_of_vertex[cliques[c].front()]];
    s.subfile_index.emplace(s.subfiles[c], c);
  }

  // Alternate labels: inside each X, V's partner T under the shared relative matching.
  const auto rel = relative_matching(field, m, t, cap);
  s.label_of.assign(n, UINT32_MAX);
  parallel_for(static_cast<std::int64_t>(cliques.size()), [&](std::int64_t c) {
    const auto& x = s.subfiles[c];
    std::vector<std::pair<UserId, std::uint32_t>> pairs;
    pairs.reserve(rel.t_spaces.size());
    for (std::size_t i = 0; i < rel.t_spaces.size(); ++i) {
      const UserId u = s.user_index.at(embed_in(field, rel.t_spaces[i], x));
      pairs.emplace_back(u, t_ordinal.at(embed_in(field, rel.m_spaces[rel.partner[i]], x)));
    }
    std::sort(pairs.begin(), pairs.end());
    const auto& members = cliques[c];  // ascending vertex id, hence ascending user
    if (members.size() != pairs.size())
      throw Error(ErrorCode::InternalError, "subfile-clique size differs from [m+t, t]_q");
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (s.graph.user_of(members[i]) != pairs[i].first)
        throw Error(ErrorCode::InternalError, "subfile-clique users differ from the t-subspaces of X");
      s.label_of[members[i]] = pairs[i].second;
    }
  });

  // Distinct vertices never share (V, T).
  std::vector<std::uint64_t> keys(n);
  for (VertexId v = 0; v < n; ++v) keys[v] = std::uint64_t{s.graph.user_of(v)} * s.matched.size() + s.label_of[v];
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw Error(ErrorCode::InternalError, "alternate labels are not injective");

  s.cover.cliques.assign(s.matched.size(), {});
  for (VertexId v = 0; v < n; ++v) s.cover.cliques[s.label_of[v]].push_back(v);
  const BigInt d = gaussian_binomial(k - m, t, q);
  for (const auto& clique : s.cover.cliques)
    if (clique.size() != d) throw Error(ErrorCode::InternalError, "cover clique size differs from [k-m, t]_q");
  return s;
}

}  // namespace cachegraph
