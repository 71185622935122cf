#include "cachegraph/constructions.hpp"
#include "cachegraph/error.hpp"
#include "cachegraph/scheme_io.hpp"

#include <doctest.h>

using namespace cachegraph;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

Json man_json() {
  auto lg = man_line_graph(4, 2);
  return scheme_to_json(make_scheme("man", std::nullopt, std::move(lg.graph), std::move(lg.cover)));
}

}  // namespace

TEST_SUITE("scheme_io") {
  TEST_CASE("scheme JSON round trip") {
    const Json doc = man_json();
    CHECK(doc["K"] == 4);
    CHECK(doc["F"] == 6);
    CHECK(doc["D"] == 3);
    CHECK(doc["parameters"]["rate_num"] == 2);
    CHECK(doc["parameters"]["rate_den"] == 3);
    CHECK(doc["parameters"]["cached_num"] == 1);
    CHECK(doc["parameters"]["cached_den"] == 2);
    CHECK_FALSE(doc.contains("q"));
    CHECK_FALSE(doc.contains("labels"));

    const auto loaded = scheme_from_json(Json::parse(doc.dump()));
    CHECK(loaded.family == "man");
    const auto again = make_scheme(loaded.family, loaded.q, loaded.graph, loaded.cover);
    CHECK(scheme_to_json(again) == doc);
    REQUIRE(loaded.declared_parameters.has_value());
    CHECK(check_declared_parameters(*loaded.declared_parameters, again.params).ok());
  }

  TEST_CASE("projective labels") {
    const auto p = projective_line_graph(2, 3, 1, 1);
    const auto s = make_scheme("projective", 2, p.graph, p.cover);
    const Json doc = scheme_to_json(s, &p);
    CHECK(doc["q"] == 2);
    CHECK(doc["labels"]["users"].size() == 7);
    CHECK(doc["labels"]["label_of"].size() == 21);
    CHECK(doc["labels"]["users"][0] == Json::parse("[[1,0,0]]"));
  }

  TEST_CASE("schema errors") {
    const Json good = man_json();
    auto broken = [&](auto&& edit) {
      Json d = good;
      edit(d);
      return code_of([&] { scheme_from_json(d); });
    };
    CHECK(code_of([] { scheme_from_json(Json::array()); }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d.erase("cover"); }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["K"] = "four"; }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["D"] = 0; }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["K"] = -1; }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["user_cliques"][1][0] = 0; }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["user_cliques"].erase(0); }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["cover"][0][0] = 99; }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["subfile_cliques"][0] = 5; }) == ErrorCode::SchemaError);
    CHECK(broken([](Json& d) { d["parameters"] = 3; }) == ErrorCode::SchemaError);
    CHECK(code_of([] { load_scheme_file("/nonexistent/scheme.json"); }) == ErrorCode::SchemaError);
  }

  TEST_CASE("declared parameters are compared with recomputed ones") {
    Json doc = man_json();
    doc["parameters"]["rate_num"] = 3;
    const auto loaded = scheme_from_json(doc);
    const auto s = make_scheme(loaded.family, loaded.q, loaded.graph, loaded.cover);
    const auto report = check_declared_parameters(*loaded.declared_parameters, s.params);
    CHECK_FALSE(report.ok());
    CHECK(report.find("declared_rate_num")->witness == "rate_num declared 3, recomputed 2");
  }

  TEST_CASE("simulation report JSON") {
    SimulationReport r;
    r.K = 4;
    r.F = 6;
    r.D = 3;
    r.cached_fraction = Rational(1, 2);
    r.transmissions = 4;
    r.rate = Rational(2, 3);
    r.success = false;
    r.failures.push_back({1, 2, 3, "x"});
    const Json j = report_to_json(r);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"K", "F", "D", "cached_num", "cached_den", "transmissions", "rate_num",
                                           "rate_den", "success", "failures"});
    CHECK(j["failures"][0]["clique"] == 3);
    CHECK(j["failures"][0]["reason"] == "x");
  }

  TEST_CASE("big integers fall back to strings") {
    CHECK(big_to_json(BigInt(5)) == 5);
    CHECK(big_to_json(int_pow(10, 30)) == "1000000000000000000000000000000");
    CHECK(big_to_json(BigInt(-1)) == "-1");
  }

  TEST_CASE("CSV line") {
    SweepRow row;
    row.q = 2;
    row.k = 6;
    row.m = 3;
    row.t = 2;
    row.K = 651;
    row.F = 63;
    row.D = 15;
    row.c = 155;
    row.d = 7;
    row.cached_fraction = Rational(16, 21);
    row.rate = Rational(155, 7);
    row.lb_closed = Rational(169, 63);
    row.gap_identity = true;
    row.R_man = Rational(155, 497);
    CHECK(sweep_csv_header() == "q,k,m,t,K,F,D,c,d,cached_frac,rate,lb_closed,lb_general,gap_identity,F_man,R_man");
    CHECK(to_csv_line(row) == "2,6,3,2,651,63,15,155,7,16/21,155/7,169/63,,true,overflow,155/497");
  }
}
