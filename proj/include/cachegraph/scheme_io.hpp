#pragma once

// JSON and CSV interchange for schemes, simulation reports and sweeps.

#include "cachegraph/constructions.hpp"
#include "cachegraph/delivery.hpp"
#include "cachegraph/linegraph.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cachegraph {

using Json = nlohmann::ordered_json;

/// Integer if it fits in 64 bits, decimal string otherwise.
Json big_to_json(const BigInt& value);

/// {family, q?, K, F, D, user_cliques, subfile_cliques, cover, parameters,
///  labels?}. labels (projective only) holds users, subfiles and matched as
/// RREF row lists plus label_of.
Json scheme_to_json(const CodedCachingScheme& scheme, const ProjectiveScheme* labels = nullptr);

struct LoadedScheme {
  std::string family;
  std::optional<std::uint32_t> q;
  CachingLineGraph graph;
  DeliveryCliqueCover cover;
  std::optional<Json> declared_parameters;
};

/// Shape checks only: field types, user_cliques[k] == [kD, kD + D), vertex
/// ids in range. Throws SchemaError. Line-graph and cover validity are left
/// to verify_conditions / verify_delivery_cover.
LoadedScheme scheme_from_json(const Json& doc);
LoadedScheme load_scheme_file(const std::string& path);

/// Compares the parameters block of a scheme file with recomputed values.
ValidationReport check_declared_parameters(const Json& declared, const SchemeParameters& actual);

/// {K, F, D, cached_num, cached_den, transmissions, rate_num, rate_den,
///  success, failures[]}; failures carry user, subfile, clique, reason.
Json report_to_json(const SimulationReport& report);

struct SweepRow {
  std::uint32_t q = 0, k = 0, m = 0, t = 0;
  BigInt K, F, D, c, d;
  Rational cached_fraction, rate, lb_closed;
  std::optional<Rational> lb_general;  // empty when the scheme was not built
  bool gap_identity = false;
  std::optional<BigInt> F_man;  // empty: too large to evaluate
  Rational R_man;

  auto key() const { return std::tuple(q, k, m, t); }
};

std::string sweep_csv_header();
std::string to_csv_line(const SweepRow& row);

}  // namespace cachegraph
