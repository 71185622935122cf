#include "cachegraph/linegraph.hpp"

#include "cachegraph/error.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace cachegraph {

namespace {

std::string vertex_name(const CachingLineGraph& l, VertexId v) {
  std::ostringstream out;
  out << v << "=(" << l.user_of(v) << "," << l.slot_of(v) << ")";
  return out.str();
}

}  // namespace

void BipartiteCachingGraph::validate() const {
  if (missing.size() != K) throw Error(ErrorCode::InvalidArgs, "missing sets must have one entry per user");
  if (D == 0) throw Error(ErrorCode::NotRegular, "left degree must be at least 1");
  for (std::uint32_t k = 0; k < K; ++k) {
    const auto& m = missing[k];
    if (m.size() != D)
      throw Error(ErrorCode::NotRegular, "user " + std::to_string(k) + " misses " + std::to_string(m.size()) +
                                             " subfiles, expected " + std::to_string(D));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] >= F) throw Error(ErrorCode::InvalidArgs, "subfile index out of range");
      if (i > 0 && m[i] <= m[i - 1])
        throw Error(ErrorCode::InvalidArgs, "missing sets must be strictly increasing");
    }
  }
}

BipartiteCachingGraph from_subfile_sets(std::vector<std::vector<SubfileId>> missing, std::uint32_t F) {
  BipartiteCachingGraph b;
  b.K = static_cast<std::uint32_t>(missing.size());
  b.F = F;
  for (auto& m : missing) std::sort(m.begin(), m.end());
  b.D = missing.empty() ? 0 : static_cast<std::uint32_t>(missing.front().size());
  b.missing = std::move(missing);
  b.validate();
  return b;
}

CachingLineGraph::CachingLineGraph(std::uint32_t K, std::uint32_t D,
                                   std::vector<std::vector<VertexId>> subfile_cliques)
    : K_(K), D_(D), subfile_cliques_(std::move(subfile_cliques)) {
  if (std::uint64_t{K} * D > UINT32_MAX) throw Error(ErrorCode::CapExceeded, "too many vertices");
  subfile_clique_of_.assign(vertex_count(), kNoClique);
  users_in_.resize(subfile_cliques_.size());
  for (CliqueId s = 0; s < subfile_cliques_.size(); ++s) {
    auto& users = users_in_[s];
    for (VertexId v : subfile_cliques_[s]) {
      if (v >= vertex_count()) continue;
      if (subfile_clique_of_[v] == kNoClique) subfile_clique_of_[v] = s;
      users.push_back(user_of(v));
    }
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
  }
}

CachingLineGraph CachingLineGraph::from_labels(std::uint32_t K, std::uint32_t D,
                                               std::span<const std::uint64_t> label_of_vertex) {
  if (label_of_vertex.size() != std::uint64_t{K} * D)
    throw Error(ErrorCode::InvalidArgs, "need exactly one label per vertex");
  std::unordered_map<std::uint64_t, CliqueId> ids;
  std::vector<std::vector<VertexId>> cliques;
  for (VertexId v = 0; v < label_of_vertex.size(); ++v) {
    auto [it, inserted] = ids.try_emplace(label_of_vertex[v], static_cast<CliqueId>(cliques.size()));
    if (inserted) cliques.emplace_back();
    cliques[it->second].push_back(v);
  }
  return CachingLineGraph(K, D, std::move(cliques));
}

bool CachingLineGraph::clique_has_user(CliqueId s, UserId u) const noexcept {
  if (s >= users_in_.size()) return false;
  const auto& users = users_in_[s];
  return std::binary_search(users.begin(), users.end(), u);
}

bool CachingLineGraph::adjacent(VertexId a, VertexId b) const noexcept {
  if (a == b) return false;
  if (user_of(a) == user_of(b)) return true;
  const CliqueId s = subfile_clique_of(a);
  return s != kNoClique && s == subfile_clique_of(b);
}

bool ValidationReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const noexcept {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << c.name << ": " << (c.passed ? "pass" : "FAIL");
    if (!c.passed) out << " (" << c.witness << ")";
    out << '\n';
  }
  return out.str();
}

CachingLineGraph from_bipartite(const BipartiteCachingGraph& b) {
  b.validate();
  std::vector<std::uint64_t> labels;
  labels.reserve(std::size_t{b.K} * b.D);
  for (const auto& m : b.missing) labels.insert(labels.end(), m.begin(), m.end());
  return CachingLineGraph::from_labels(b.K, b.D, labels);
}

ValidationReport verify_conditions(const CachingLineGraph& l) {
  ValidationReport report;
  const std::uint32_t n = l.vertex_count();

  ValidationCheck c1{"C1", true, {}};
  if (l.user_count() == 0 || l.degree() == 0) {
    c1.passed = false;
    c1.witness = "K and D must both be positive";
  }

  ValidationCheck c2{"C2", true, {}};
  ValidationCheck c3{"C3", true, {}};
  std::vector<std::uint32_t> seen(n, 0);
  const auto& cliques = l.subfile_cliques();
  for (CliqueId s = 0; s < cliques.size(); ++s) {
    const auto& clique = cliques[s];
    if (clique.empty() && c3.passed) {
      c3.passed = false;
      c3.witness = "subfile-clique " + std::to_string(s) + " is empty";
    }
    std::unordered_map<UserId, VertexId> by_user;
    for (VertexId v : clique) {
      if (v >= n) {
        if (c3.passed) {
          c3.passed = false;
          c3.witness = "subfile-clique " + std::to_string(s) + " has out-of-range vertex " + std::to_string(v);
        }
        continue;
      }
      if (++seen[v] == 2 && c3.passed) {
        c3.passed = false;
        c3.witness = "vertex " + vertex_name(l, v) + " lies in more than one subfile-clique";
      }
      auto [it, inserted] = by_user.try_emplace(l.user_of(v), v);
      if (!inserted && c2.passed) {
        c2.passed = false;
        c2.witness = "subfile-clique " + std::to_string(s) + " holds vertices " + vertex_name(l, it->second) +
                     " and " + vertex_name(l, v) + " of user-clique " + std::to_string(l.user_of(v));
      }
    }
  }
  for (VertexId v = 0; v < n && c3.passed; ++v) {
    if (seen[v] == 0) {
      c3.passed = false;
      c3.witness = "vertex " + vertex_name(l, v) + " is in no subfile-clique";
    }
  }
  report.checks = {c1, c2, c3};
  return report;
}

BigInt subpacketization(const CachingLineGraph& l) {
  BigInt f = BigInt(l.user_count()) * l.degree();
  for (const auto& s : l.subfile_cliques()) f -= BigInt(s.size()) - 1;
  return f;
}

BipartiteCachingGraph to_bipartite(const CachingLineGraph& l) {
  const auto report = verify_conditions(l);
  if (!report.ok()) throw Error(ErrorCode::InvalidLineGraph, report.summary());

  // B_0 has KD right vertices; merging subfile-clique j removes |S_j| - 1 of them.
  std::uint64_t right = std::uint64_t{l.user_count()} * l.degree();
  std::vector<SubfileId> subfile(l.vertex_count());
  const auto& cliques = l.subfile_cliques();
  for (CliqueId j = 0; j < cliques.size(); ++j) {
    right -= cliques[j].size() - 1;
    for (VertexId v : cliques[j]) subfile[v] = j;
  }
  if (right != cliques.size())
    throw Error(ErrorCode::InternalError, "identification left " + std::to_string(right) + " right vertices");

  BipartiteCachingGraph b;
  b.K = l.user_count();
  b.D = l.degree();
  b.F = static_cast<std::uint32_t>(right);
  b.missing.resize(b.K);
  for (UserId k = 0; k < b.K; ++k) {
    auto& m = b.missing[k];
    for (std::uint32_t i = 0; i < b.D; ++i) m.push_back(subfile[l.vertex(k, i)]);
    std::sort(m.begin(), m.end());
  }
  b.validate();
  return b;
}

bool compatible(const CachingLineGraph& l, VertexId a, VertexId b) {
  const UserId ua = l.user_of(a), ub = l.user_of(b);
  if (ua == ub) return false;
  return !l.clique_has_user(l.subfile_clique_of(a), ub) && !l.clique_has_user(l.subfile_clique_of(b), ua);
}

ValidationReport verify_delivery_cover(const CachingLineGraph& l, const DeliveryCliqueCover& cover) {
  ValidationReport report;
  const std::uint32_t n = l.vertex_count();

  ValidationCheck partition{"cover_partition", true, {}};
  std::vector<std::uint32_t> seen(n, 0);
  for (std::size_t c = 0; c < cover.cliques.size() && partition.passed; ++c) {
    if (cover.cliques[c].empty()) {
      partition.passed = false;
      partition.witness = "clique " + std::to_string(c) + " is empty";
    }
    for (VertexId v : cover.cliques[c]) {
      if (v >= n) {
        partition.passed = false;
        partition.witness = "clique " + std::to_string(c) + " has out-of-range vertex " + std::to_string(v);
        break;
      }
      if (++seen[v] > 1) {
        partition.passed = false;
        partition.witness = "vertex " + vertex_name(l, v) + " appears in more than one clique";
        break;
      }
    }
  }
  for (VertexId v = 0; v < n && partition.passed; ++v) {
    if (seen[v] == 0) {
      partition.passed = false;
      partition.witness = "vertex " + vertex_name(l, v) + " is not covered";
    }
  }

  ValidationCheck pairwise{"cover_cliques", true, {}};
  const std::int64_t count = static_cast<std::int64_t>(cover.cliques.size());
  std::vector<unsigned char> bad(cover.cliques.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t c = 0; c < count; ++c) {
    const auto& clique = cover.cliques[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < clique.size() && !bad[c]; ++i) {
      if (clique[i] >= n) {
        bad[c] = 1;
        break;
      }
      for (std::size_t j = i + 1; j < clique.size(); ++j) {
        if (clique[j] >= n || !compatible(l, clique[i], clique[j])) {
          bad[c] = 1;
          break;
        }
      }
    }
  }
  const auto first_bad = std::find(bad.begin(), bad.end(), 1);
  if (first_bad != bad.end()) {
    const std::size_t c = static_cast<std::size_t>(first_bad - bad.begin());
    const auto& clique = cover.cliques[c];
    pairwise.passed = false;
    pairwise.witness = "clique " + std::to_string(c);
    for (std::size_t i = 0; i < clique.size(); ++i) {
      for (std::size_t j = i + 1; j < clique.size(); ++j) {
        if (clique[i] >= n || clique[j] >= n) {
          pairwise.witness += " has an out-of-range vertex";
          i = clique.size();
          break;
        }
        if (!compatible(l, clique[i], clique[j])) {
          pairwise.witness += ": vertices " + vertex_name(l, clique[i]) + " and " + vertex_name(l, clique[j]) +
                              (l.user_of(clique[i]) == l.user_of(clique[j])
                                   ? " share a user-clique"
                                   : " see each other's user-clique through a subfile-clique");
          i = clique.size();
          break;
        }
      }
    }
  }
  report.checks = {partition, pairwise};
  return report;
}

DeliveryCliqueCover greedy_delivery_cover(const CachingLineGraph& l) {
  const std::uint32_t n = l.vertex_count(), D = l.degree();
  DeliveryCliqueCover cover;
  std::vector<bool> assigned(n, false);
  // Epoch-stamped marks avoid clearing per clique.
  std::vector<std::uint32_t> member(l.user_count(), 0), blocked(l.user_count(), 0);
  std::uint32_t epoch = 0;

  for (VertexId start = 0; start < n; ++start) {
    if (assigned[start]) continue;
    ++epoch;
    std::vector<VertexId> clique;
    auto take = [&](VertexId v) {
      clique.push_back(v);
      assigned[v] = true;
      member[l.user_of(v)] = epoch;
      blocked[l.user_of(v)] = epoch;
      const CliqueId s = l.subfile_clique_of(v);
      if (s != CachingLineGraph::kNoClique)
        for (UserId u : l.users_in(s)) blocked[u] = epoch;
    };
    take(start);
    VertexId v = start + 1;
    while (v < n) {
      const UserId u = l.user_of(v);
      if (blocked[u] == epoch) {
        v = (u + 1) * D;
        continue;
      }
      if (!assigned[v]) {
        bool ok = true;
        const CliqueId s = l.subfile_clique_of(v);
        if (s != CachingLineGraph::kNoClique)
          for (UserId w : l.users_in(s))
            if (member[w] == epoch) {
              ok = false;
              break;
            }
        if (ok) {
          take(v);
          v = (u + 1) * D;
          continue;
        }
      }
      ++v;
    }
    cover.cliques.push_back(std::move(clique));
  }
  return cover;
}

SchemeParameters scheme_parameters(const CachingLineGraph& l, const DeliveryCliqueCover& cover) {
  const auto conditions = verify_conditions(l);
  if (!conditions.ok()) throw Error(ErrorCode::InvalidLineGraph, conditions.summary());
  const auto report = verify_delivery_cover(l, cover);
  if (!report.ok()) throw Error(ErrorCode::InconsistentCover, report.summary());

  SchemeParameters p;
  p.K = l.user_count();
  p.D = l.degree();
  p.F = subpacketization(l).convert_to<std::uint64_t>();
  p.cached_fraction = 1 - Rational(BigInt(p.D), BigInt(p.F));
  p.transmissions = cover.size();
  p.rate = Rational(BigInt(p.transmissions), BigInt(p.F));

  auto uniform = [](const std::vector<std::vector<VertexId>>& parts) -> std::optional<std::uint64_t> {
    if (parts.empty()) return std::nullopt;
    const std::size_t size = parts.front().size();
    for (const auto& part : parts)
      if (part.size() != size) return std::nullopt;
    return size;
  };
  const auto c = uniform(l.subfile_cliques());
  const auto d = uniform(cover.cliques);
  if (c && d) {
    p.c = c;
    p.d = d;
    if (BigInt(p.F) * *c != BigInt(p.K) * p.D || p.rate != Rational(BigInt(*c), BigInt(*d)))
      throw Error(ErrorCode::InternalError, "(c,d)-uniform scheme violates F = KD/c or R = c/d");
  }
  return p;
}

CodedCachingScheme make_scheme(std::string family, std::optional<std::uint32_t> q, CachingLineGraph graph,
                               DeliveryCliqueCover cover) {
  CodedCachingScheme s;
  s.family = std::move(family);
  s.q = q;
  s.params = scheme_parameters(graph, cover);
  s.placement = to_bipartite(graph);
  s.subfile_of.resize(graph.vertex_count());
  for (VertexId v = 0; v < graph.vertex_count(); ++v) s.subfile_of[v] = graph.subfile_clique_of(v);
  s.graph = std::move(graph);
  s.cover = std::move(cover);
  return s;
}

}  // namespace cachegraph
