#include "cli.hpp"

#include "cachegraph/bounds.hpp"
#include "cachegraph/constructions.hpp"
#include "cachegraph/delivery.hpp"
#include "cachegraph/error.hpp"
#include "cachegraph/field.hpp"
#include "cachegraph/gaussian.hpp"
#include "cachegraph/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace cachegraph::cli {

namespace {

struct FamilyArgs {
  std::string family;
  std::optional<std::uint32_t> K, t, q, k, m;
  std::string scheme_path;
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct Built {
  CodedCachingScheme scheme;
  std::optional<ProjectiveScheme> projective;
  std::optional<Json> declared;
};

void add_family_options(CLI::App* sub, FamilyArgs& a, bool family_required) {
  auto* fam = sub->add_option("family", a.family, "man | resolvable | projective | from-file")
                  ->check(CLI::IsMember({"man", "resolvable", "projective", "from-file"}));
  if (family_required) fam->required();
  sub->add_option("--K", a.K, "number of users (man)");
  sub->add_option("--t", a.t, "man: cache replication t; projective: user dimension t");
  sub->add_option("--q", a.q, "field order (resolvable, projective)");
  sub->add_option("--k", a.k, "code length or ambient dimension");
  sub->add_option("--m", a.m, "projective: subfile dimension is m + t");
  sub->add_option("--scheme", a.scheme_path, "scheme JSON (from-file)");
  sub->add_option("--cap", a.cap, "enumeration cap")->capture_default_str();
}

void require_params(const FamilyArgs& a) {
  const bool K = a.K.has_value(), t = a.t.has_value(), q = a.q.has_value(), k = a.k.has_value(),
             m = a.m.has_value(), file = !a.scheme_path.empty();
  bool ok = false;
  std::string wanted;
  if (a.family == "man") {
    ok = K && t && !q && !k && !m && !file;
    wanted = "--K and --t";
  } else if (a.family == "resolvable") {
    ok = q && k && !K && !t && !m && !file;
    wanted = "--q and --k";
  } else if (a.family == "projective") {
    ok = q && k && m && t && !K && !file;
    wanted = "--q, --k, --m and --t";
  } else if (a.family == "from-file") {
    ok = file && !K && !t && !q && !k && !m;
    wanted = "--scheme";
  }
  if (!ok) throw Error(ErrorCode::InvalidArgs, "family " + a.family + " takes exactly " + wanted);
}

Built build(const FamilyArgs& a) {
  require_params(a);
  Built b;
  if (a.family == "man") {
    auto lg = man_line_graph(*a.K, *a.t, a.cap);
    b.scheme = make_scheme("man", std::nullopt, std::move(lg.graph), std::move(lg.cover));
  } else if (a.family == "resolvable") {
    auto lg = resolvable_line_graph(*a.q, *a.k, a.cap);
    b.scheme = make_scheme("resolvable", *a.q, std::move(lg.graph), std::move(lg.cover));
  } else if (a.family == "projective") {
    b.projective = projective_line_graph(*a.q, *a.k, *a.m, *a.t, a.cap);
    b.scheme = make_scheme("projective", *a.q, b.projective->graph, b.projective->cover);
  } else {
    auto loaded = load_scheme_file(a.scheme_path);
    b.declared = loaded.declared_parameters;
    b.scheme = make_scheme(loaded.family, loaded.q, std::move(loaded.graph), std::move(loaded.cover));
  }
  return b;
}

std::string exact_and_decimal(const Rational& r) { return to_fraction_string(r) + " (" + to_decimal_string(r) + ")"; }

void print_parameters(std::ostream& out, const CodedCachingScheme& s) {
  const auto& p = s.params;
  out << "family " << s.family << '\n';
  if (s.q) out << "q " << *s.q << '\n';
  out << "K " << p.K << '\n' << "F " << p.F << '\n' << "D " << p.D << '\n';
  if (p.c && p.d) out << "c " << *p.c << '\n' << "d " << *p.d << '\n';
  out << "cached " << exact_and_decimal(p.cached_fraction) << '\n';
  out << "uncached " << exact_and_decimal(p.uncached_fraction()) << '\n';
  out << "transmissions " << p.transmissions << '\n';
  out << "rate " << exact_and_decimal(p.rate) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgs, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::InvalidArgs, "failed writing " + path);
}

DemandVector parse_demands(const std::string& text) {
  DemandVector d;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v == 0 || v > UINT32_MAX)
      throw Error(ErrorCode::InvalidArgs, "demands are file numbers 1..N separated by commas, got \"" + item + "\"");
    d.push_back(static_cast<std::uint32_t>(v - 1));
  }
  if (d.empty()) throw Error(ErrorCode::InvalidArgs, "empty demand list");
  return d;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLineGraph:
    case ErrorCode::InconsistentCover:
    case ErrorCode::InvalidCover:
    case ErrorCode::NotRegular:
    case ErrorCode::InternalError:
      return kValidationFailed;
    default:
      return kUsage;
  }
}

int cmd_construct(const FamilyArgs& a, const std::string& output, std::ostream& out) {
  const Built b = build(a);
  const std::string json = scheme_to_json(b.scheme, b.projective ? &*b.projective : nullptr).dump(1) + "\n";
  if (output.empty()) {
    out << json;
  } else {
    write_text(output, json);
    print_parameters(out, b.scheme);
  }
  return kOk;
}

int cmd_verify(const FamilyArgs& a, std::ostream& out) {
  require_params(a);
  CachingLineGraph graph;
  DeliveryCliqueCover cover;
  std::optional<Json> declared;
  if (a.family == "from-file") {
    auto loaded = load_scheme_file(a.scheme_path);
    graph = std::move(loaded.graph);
    cover = std::move(loaded.cover);
    declared = std::move(loaded.declared_parameters);
  } else {
    const Built b = build(a);
    graph = b.scheme.graph;
    cover = b.scheme.cover;
  }
  ValidationReport report = verify_conditions(graph);
  if (report.ok()) {
    const auto cover_report = verify_delivery_cover(graph, cover);
    report.checks.insert(report.checks.end(), cover_report.checks.begin(), cover_report.checks.end());
  }
  if (report.ok()) {
    const auto params = scheme_parameters(graph, cover);
    if (declared) {
      const auto declared_report = check_declared_parameters(*declared, params);
      report.checks.insert(report.checks.end(), declared_report.checks.begin(), declared_report.checks.end());
    }
  }
  for (const auto& c : report.checks) {
    out << (c.passed ? "pass " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.witness;
    out << '\n';
  }
  out << (report.ok() ? "valid" : "invalid") << '\n';
  return report.ok() ? kOk : kValidationFailed;
}

int cmd_simulate(const FamilyArgs& a, const SimulationOptions& options, const std::string& output,
                 std::ostream& out) {
  const Built b = build(a);
  const SimulationReport r = simulate(b.scheme, options);
  if (!output.empty()) write_text(output, report_to_json(r).dump(1) + "\n");
  out << "K " << r.K << '\n' << "N " << r.N << '\n' << "F " << r.F << '\n' << "D " << r.D << '\n';
  out << "cached " << exact_and_decimal(r.cached_fraction) << '\n';
  out << "transmissions " << r.transmissions << '\n';
  out << "bytes " << r.bytes_transmitted << '\n';
  out << "rate " << exact_and_decimal(r.rate) << '\n';
  if (r.success) {
    out << "decoded all " << r.K << " users\n";
  } else {
    out << "decode failures " << r.failures.size() << '\n';
    for (const auto& f : r.failures)
      out << "  user " << f.user << " subfile " << f.subfile << " clique " << f.clique << ": " << f.reason << '\n';
  }
  return r.success ? kOk : kValidationFailed;
}

int cmd_bound(const FamilyArgs& a, const std::optional<std::uint64_t>& F, const std::string& uncached_text,
              const std::optional<std::uint64_t>& N, std::ostream& out) {
  out << "K,F,uncached,N,lb_closed,lb_general,rate\n";
  if (a.family.empty()) {
    if (!a.K || !F || uncached_text.empty())
      throw Error(ErrorCode::InvalidArgs, "bound needs a family or all of --K, --F and --uncached");
    const Rational u = parse_rational(uncached_text);
    const std::uint64_t n = N.value_or(*a.K);
    out << *a.K << ',' << *F << ',' << to_fraction_string(u) << ',' << n << ','
        << to_fraction_string(rate_lower_bound_closed(BigInt(*a.K), BigInt(*F), u, BigInt(n))) << ",,\n";
    return kOk;
  }
  if (F || !uncached_text.empty()) throw Error(ErrorCode::InvalidArgs, "--F and --uncached only apply without a family");
  const Built b = build(a);
  const auto& p = b.scheme.params;
  const std::uint64_t n = N.value_or(p.K);
  const auto general = rate_lower_bound_general(b.scheme.placement, n);
  out << p.K << ',' << p.F << ',' << to_fraction_string(p.uncached_fraction()) << ',' << n << ','
      << to_fraction_string(general.closed_form) << ',' << to_fraction_string(general.bound) << ','
      << to_fraction_string(p.rate) << '\n';
  return kOk;
}

int cmd_sweep(std::vector<std::uint32_t> qs, std::uint32_t k_min, std::uint32_t k_max, std::uint64_t cap,
              const std::string& output, std::ostream& out) {
  for (auto q : qs)
    if (!is_prime_power(q)) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  std::string csv = sweep_csv_header() + "\n";
  for (const auto& row : sweep_rows(qs, k_min, k_max, cap)) csv += to_csv_line(row) + "\n";
  if (output.empty()) {
    out << csv;
  } else {
    write_text(output, csv);
  }
  return kOk;
}

}  // namespace

SweepRow sweep_row(std::uint32_t q, std::uint32_t k, std::uint32_t m, std::uint32_t t, std::uint64_t cap) {
  SweepRow r;
  r.q = q;
  r.k = k;
  r.m = m;
  r.t = t;
  r.K = gaussian_binomial(k, t, q);
  r.F = gaussian_binomial(k, m + t, q);
  r.D = gaussian_binomial(k - t, m, q);
  r.c = gaussian_binomial(m + t, t, q);
  r.d = gaussian_binomial(k - m, t, q);
  const Rational uncached(r.c, r.K);
  r.cached_fraction = 1 - uncached;
  r.rate = Rational(r.c, r.d);
  r.lb_closed = rate_lower_bound_closed(r.K, r.F, uncached, r.K);
  r.gap_identity = check_gap_bound(r.c, r.d, r.K, r.F, r.lb_closed).identity_holds;
  const BigInt cached_count = r.K - r.c;
  r.R_man = Rational(r.c, cached_count + 1);
  if (r.K <= 100000) r.F_man = binomial(r.K.convert_to<std::uint64_t>(), cached_count.convert_to<std::uint64_t>());

  try {
    const auto scheme = projective_line_graph(q, k, m, t, cap);
    const auto built = make_scheme("projective", q, scheme.graph, scheme.cover);
    const auto& p = built.params;
    if (BigInt(p.K) != r.K || BigInt(p.F) != r.F || BigInt(p.D) != r.D || !p.c || BigInt(*p.c) != r.c || !p.d ||
        BigInt(*p.d) != r.d || p.rate != r.rate)
      throw Error(ErrorCode::InternalError, "projective scheme (" + std::to_string(q) + "," + std::to_string(k) + "," +
                                                std::to_string(m) + "," + std::to_string(t) +
                                                ") disagrees with its closed-form parameters");
    r.lb_general = rate_lower_bound_general(built.placement, p.K).bound;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
  }
  return r;
}

std::vector<SweepRow> sweep_rows(const std::vector<std::uint32_t>& qs, std::uint32_t k_min, std::uint32_t k_max,
                                 std::uint64_t cap) {
  std::vector<std::uint32_t> fields = qs;
  std::sort(fields.begin(), fields.end());
  fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>> grid;
  for (auto q : fields)
    for (std::uint32_t k = std::max<std::uint32_t>(k_min, 2); k <= k_max; ++k)
      for (std::uint32_t m = 1; m < k; ++m)
        for (std::uint32_t t = 1; m + t <= k; ++t) grid.emplace_back(q, k, m, t);

  std::vector<SweepRow> rows(grid.size());
  parallel_for(static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
    const auto [q, k, m, t] = grid[i];
    rows[i] = sweep_row(q, k, m, t, cap);
  });
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.key() < b.key(); });
  return rows;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and simulate coded caching schemes built from caching line graphs."};
  app.require_subcommand(1);

  FamilyArgs fam;
  std::string output;

  auto* construct = app.add_subcommand("construct", "build a scheme and export it as JSON");
  add_family_options(construct, fam, true);
  construct->add_option("-o,--output", output, "write JSON here and print a summary");

  auto* verify = app.add_subcommand("verify", "check line-graph conditions, the cover and declared parameters");
  add_family_options(verify, fam, true);

  SimulationOptions sim;
  std::optional<std::uint32_t> sim_n;
  std::string demands;
  auto* simulate_cmd = app.add_subcommand("simulate", "run placement and delivery with random or given demands");
  add_family_options(simulate_cmd, fam, true);
  simulate_cmd->add_option("--N", sim_n, "number of files");
  simulate_cmd->add_option("--seed", sim.seed, "seed for the library and random demands")->capture_default_str();
  simulate_cmd->add_option("--subfile-size", sim.subfile_size, "octets per subfile")->capture_default_str();
  simulate_cmd->add_option("--demands", demands, "comma-separated file numbers 1..N, one per user");
  simulate_cmd->add_option("-o,--output", output, "write the report JSON here");

  std::optional<std::uint64_t> bound_f, bound_n;
  std::string uncached;
  auto* bound = app.add_subcommand("bound", "rate lower bounds for a scheme or for (K, F, uncached, N)");
  add_family_options(bound, fam, false);
  bound->add_option("--F", bound_f, "subpacketization");
  bound->add_option("--uncached", uncached, "uncached fraction 1 - M/N, e.g. 1/2");
  bound->add_option("--N", bound_n, "number of files (default K)");

  std::vector<std::uint32_t> sweep_q{2};
  std::uint32_t k_min = 2, k_max = 5;
  std::uint64_t sweep_cap = kDefaultEnumerationCap;
  auto* sweep = app.add_subcommand("sweep", "projective parameter sweep as CSV");
  sweep->add_option("--q", sweep_q, "field orders")->delimiter(',')->capture_default_str();
  sweep->add_option("--k-min", k_min, "smallest ambient dimension")->capture_default_str();
  sweep->add_option("--k-max", k_max, "largest ambient dimension")->capture_default_str();
  sweep->add_option("--cap", sweep_cap, "enumeration cap")->capture_default_str();
  sweep->add_option("-o,--output", output, "write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(fam, output, out);
    if (*verify) return cmd_verify(fam, out);
    if (*simulate_cmd) {
      sim.N = sim_n;
      if (!demands.empty()) sim.demands = parse_demands(demands);
      return cmd_simulate(fam, sim, output, out);
    }
    if (*bound) return cmd_bound(fam, bound_f, uncached, bound_n, out);
    if (*sweep) return cmd_sweep(sweep_q, k_min, k_max, sweep_cap, output, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cachegraph::cli
