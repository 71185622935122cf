#include "cachegraph/scheme_io.hpp"

#include "cachegraph/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace cachegraph {

namespace {

Json rows_json(const SubspaceBasis& s) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto r = s.row(i);
    rows.push_back(std::vector<Elem>(r.begin(), r.end()));
  }
  return rows;
}

Json spaces_json(const std::vector<SubspaceBasis>& spaces) {
  Json out = Json::array();
  for (const auto& s : spaces) out.push_back(rows_json(s));
  return out;
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) schema("scheme document must be a JSON object");
  const auto it = doc.find(name);
  if (it == doc.end()) schema(std::string("missing field \"") + name + "\"");
  return *it;
}

std::uint32_t as_u32(const Json& v, const std::string& what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    schema(what + " must be a non-negative integer");
  const auto x = v.get<std::uint64_t>();
  if (x > UINT32_MAX) schema(what + " is out of range");
  return static_cast<std::uint32_t>(x);
}

std::vector<std::vector<VertexId>> vertex_lists(const Json& v, const std::string& what, std::uint64_t vertices) {
  if (!v.is_array()) schema(what + " must be an array of arrays");
  std::vector<std::vector<VertexId>> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) schema(what + "[" + std::to_string(i) + "] must be an array");
    auto& list = out.emplace_back();
    for (const auto& x : v[i]) {
      const auto id = as_u32(x, what + " entry");
      if (id >= vertices) schema(what + "[" + std::to_string(i) + "] names vertex " + std::to_string(id) +
                                 " outside [0, " + std::to_string(vertices) + ")");
      list.push_back(id);
    }
  }
  return out;
}

std::string big_string(const BigInt& x) { return x.str(); }

}  // namespace

Json big_to_json(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) return value.convert_to<std::uint64_t>();
  return value.str();
}

Json scheme_to_json(const CodedCachingScheme& scheme, const ProjectiveScheme* labels) {
  const auto& g = scheme.graph;
  const auto& p = scheme.params;
  Json doc;
  doc["family"] = scheme.family;
  if (scheme.q) doc["q"] = *scheme.q;
  doc["K"] = p.K;
  doc["F"] = p.F;
  doc["D"] = p.D;
  Json users = Json::array();
  for (UserId k = 0; k < g.user_count(); ++k) {
    std::vector<VertexId> clique(g.degree());
    for (std::uint32_t i = 0; i < g.degree(); ++i) clique[i] = g.vertex(k, i);
    users.push_back(clique);
  }
  doc["user_cliques"] = std::move(users);
  doc["subfile_cliques"] = g.subfile_cliques();
  doc["cover"] = scheme.cover.cliques;

  Json params;
  if (p.c) params["c"] = *p.c;
  if (p.d) params["d"] = *p.d;
  params["transmissions"] = p.transmissions;
  params["rate_num"] = big_to_json(numerator(p.rate));
  params["rate_den"] = big_to_json(denominator(p.rate));
  params["cached_num"] = big_to_json(numerator(p.cached_fraction));
  params["cached_den"] = big_to_json(denominator(p.cached_fraction));
  doc["parameters"] = std::move(params);

  if (labels) {
    Json l;
    l["k"] = labels->k;
    l["m"] = labels->m;
    l["t"] = labels->t;
    l["users"] = spaces_json(labels->users);
    l["subfiles"] = spaces_json(labels->subfiles);
    l["matched"] = spaces_json(labels->matched);
    l["label_of"] = labels->label_of;
    doc["labels"] = std::move(l);
  }
  return doc;
}

LoadedScheme scheme_from_json(const Json& doc) {
  LoadedScheme out;
  const Json& family = field(doc, "family");
  if (!family.is_string()) schema("family must be a string");
  out.family = family.get<std::string>();
  if (doc.contains("q")) out.q = as_u32(doc["q"], "q");

  const std::uint32_t K = as_u32(field(doc, "K"), "K");
  const std::uint32_t D = as_u32(field(doc, "D"), "D");
  if (K == 0 || D == 0) schema("K and D must be at least 1");
  const std::uint64_t vertices = std::uint64_t{K} * D;
  if (vertices > UINT32_MAX) schema("K * D exceeds the vertex id range");

  const auto users = vertex_lists(field(doc, "user_cliques"), "user_cliques", vertices);
  if (users.size() != K) schema("user_cliques must have K entries");
  for (UserId k = 0; k < K; ++k) {
    if (users[k].size() != D) schema("user_cliques[" + std::to_string(k) + "] must have D entries");
    for (std::uint32_t i = 0; i < D; ++i)
      if (users[k][i] != k * D + i)
        schema("user_cliques[" + std::to_string(k) + "] must list vertices k*D .. k*D + D - 1 in order");
  }
  auto subfiles = vertex_lists(field(doc, "subfile_cliques"), "subfile_cliques", vertices);
  out.cover.cliques = vertex_lists(field(doc, "cover"), "cover", vertices);
  out.graph = CachingLineGraph(K, D, std::move(subfiles));
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_object()) schema("parameters must be an object");
    out.declared_parameters = doc["parameters"];
  }
  return out;
}

LoadedScheme load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
  return scheme_from_json(doc);
}

ValidationReport check_declared_parameters(const Json& declared, const SchemeParameters& actual) {
  ValidationReport report;
  auto expect = [&](const char* name, const BigInt& value) {
    if (!declared.contains(name)) return;
    ValidationCheck check{std::string("declared_") + name, true, {}};
    const Json& v = declared[name];
    const std::string got = v.is_string() ? v.get<std::string>() : v.dump();
    if (got != value.str()) {
      check.passed = false;
      check.witness = std::string(name) + " declared " + got + ", recomputed " + value.str();
    }
    report.checks.push_back(std::move(check));
  };
  if (actual.c) expect("c", BigInt(*actual.c));
  if (actual.d) expect("d", BigInt(*actual.d));
  expect("transmissions", BigInt(actual.transmissions));
  expect("rate_num", numerator(actual.rate));
  expect("rate_den", denominator(actual.rate));
  expect("cached_num", numerator(actual.cached_fraction));
  expect("cached_den", denominator(actual.cached_fraction));
  return report;
}

Json report_to_json(const SimulationReport& r) {
  Json doc;
  doc["K"] = r.K;
  doc["F"] = r.F;
  doc["D"] = r.D;
  doc["cached_num"] = big_to_json(numerator(r.cached_fraction));
  doc["cached_den"] = big_to_json(denominator(r.cached_fraction));
  doc["transmissions"] = r.transmissions;
  doc["rate_num"] = big_to_json(numerator(r.rate));
  doc["rate_den"] = big_to_json(denominator(r.rate));
  doc["success"] = r.success;
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"user", f.user}, {"subfile", f.subfile}, {"clique", f.clique}, {"reason", f.reason}});
  doc["failures"] = std::move(failures);
  return doc;
}

std::string sweep_csv_header() {
  return "q,k,m,t,K,F,D,c,d,cached_frac,rate,lb_closed,lb_general,gap_identity,F_man,R_man";
}

std::string to_csv_line(const SweepRow& r) {
  std::ostringstream out;
  out << r.q << ',' << r.k << ',' << r.m << ',' << r.t << ',' << big_string(r.K) << ',' << big_string(r.F) << ','
      << big_string(r.D) << ',' << big_string(r.c) << ',' << big_string(r.d) << ','
      << to_fraction_string(r.cached_fraction) << ',' << to_fraction_string(r.rate) << ','
      << to_fraction_string(r.lb_closed) << ',' << (r.lb_general ? to_fraction_string(*r.lb_general) : "") << ','
      << (r.gap_identity ? "true" : "false") << ',' << (r.F_man ? big_string(*r.F_man) : "overflow") << ','
      << to_fraction_string(r.R_man);
  return out.str();
}

}  // namespace cachegraph
