// Command-line front end: run scenarios, generate populations, time the
// search at increasing population sizes, and compare against the oracle.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "darkstore/popgen.hpp"
#include "darkstore/scenario.hpp"

namespace {

using namespace darkstore;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_warehouses;
  std::optional<double> t_max;
  std::optional<unsigned> threads;
  std::optional<std::string> report;
  std::optional<std::string> routes;
  std::optional<std::string> plot;
  bool timings = false;
};

int run_command(const RunOptions& opt) {
  ScenarioConfig cfg = parse_config(opt.config);
  if (opt.seed) cfg.population.seed = *opt.seed;
  if (opt.n_warehouses) cfg.search.n_warehouses = *opt.n_warehouses;
  if (opt.t_max) cfg.routing.t_max = *opt.t_max;
  if (opt.threads) cfg.search.threads = *opt.threads;
  if (opt.report) cfg.output.report = *opt.report;
  if (opt.routes) cfg.output.routes = *opt.routes;
  if (opt.plot) cfg.output.plot = *opt.plot;
  if (opt.timings) cfg.output.timings = true;
  validate_config(cfg);

  const RunReport report = run_scenario(cfg);
  const auto& placed = report.placement.warehouses;
  std::printf("scenario %s: %zu customers, %zu warehouse(s)\n",
              cfg.name.empty() ? "(unnamed)" : cfg.name.c_str(),
              report.customers.size(), placed.size());
  for (std::size_t w = 0; w < placed.size(); ++w) {
    const auto& wh = placed[w];
    std::printf("  W%zu (%s) at (%.3f, %.3f): served %zu of %zu in %zu trip(s)\n",
                w + 1, std::string(warehouse_color(w)).c_str(), wh.location.x,
                wh.location.y, wh.evaluation.customers_served, wh.customers_faced,
                wh.evaluation.trips.size());
  }
  std::printf("  total served %zu, unserved %zu\n",
              report.placement.customers_served(), report.placement.unserved.size());
  std::printf("  time: population %.3fs, placement %.3fs, output %.3fs\n",
              report.timings.population_seconds, report.timings.placement_seconds,
              report.timings.output_seconds);
  if (report.customers.empty()) {
    std::printf("  (empty population: no warehouses placed)\n");
  }
  return kExitOk;
}

struct GenOptions {
  std::string kind = "uniform";
  std::size_t count = 200;
  double sigma = 20.0;
  std::uint64_t seed = 1;
  std::vector<double> bounds{0.0, 0.0, 100.0, 100.0};
  std::string out;
};

int gen_pop_command(const GenOptions& opt) {
  const MapBounds bounds{{opt.bounds[0], opt.bounds[1]}, {opt.bounds[2], opt.bounds[3]}};
  const std::vector<Customer> customers =
      opt.kind == "gaussian"
          ? generate_gaussian(bounds, opt.count, opt.sigma, opt.seed)
          : generate_uniform(bounds, opt.count, opt.seed);
  if (opt.out.empty()) {
    write_customers_csv(std::cout, customers);
    return kExitOk;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + opt.out + "' for writing");
  write_customers_csv(file, customers);
  if (!file.flush()) throw IoError("failed writing '" + opt.out + "'");
  return kExitOk;
}

struct BenchOptions {
  std::string config;
  std::string traffic = "zones";
  std::string population = "uniform";
  std::vector<std::size_t> sizes;
  std::optional<std::uint64_t> seed;
  int repeats = 1;
};

int bench_command(const BenchOptions& opt) {
  ScenarioConfig cfg =
      opt.config.empty()
          ? default_scenario(opt.population == "gaussian" ? PopulationSpec::Kind::kGaussian
                                                          : PopulationSpec::Kind::kUniform,
                             opt.traffic == "uniform" ? TrafficSpec::Kind::kUniform
                                                      : TrafficSpec::Kind::kZones)
          : parse_config(opt.config);
  if (opt.seed) cfg.population.seed = *opt.seed;
  std::vector<std::size_t> sizes = opt.sizes;
  if (sizes.empty()) {
    sizes = cfg.traffic.kind == TrafficSpec::Kind::kZones
                ? std::vector<std::size_t>{50, 100, 200}
                : std::vector<std::size_t>{100, 200, 400};
  }

  const auto rows = run_scaling_benchmark(cfg, sizes, opt.repeats);
  std::printf("%-8s %12s %10s\n", "size", "seconds", "ratio");
  for (const auto& row : rows) {
    if (row.ratio) {
      std::printf("%-8zu %12.6f %10.2f\n", row.size, row.seconds, *row.ratio);
    } else {
      std::printf("%-8zu %12.6f %10s\n", row.size, row.seconds, "-");
    }
  }
  std::printf("(reference factor per doubling: 7, hardware dependent)\n");
  return kExitOk;
}

struct OracleOptions {
  std::size_t instances = 200;
  std::uint64_t seed = 1;
  std::size_t max_customers = 7;
};

int oracle_command(const OracleOptions& opt) {
  const OracleCheck check =
      run_oracle_check(opt.instances, opt.seed, opt.max_customers);
  std::printf("instances %zu, dominance violations %zu, mean gap %.4f, max gap %zu\n",
              opt.instances, check.dominance_violations, check.mean_gap,
              check.max_gap);
  return check.dominance_violations == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dark-store placement solver"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run a scenario config end to end");
  run->add_option("config", run_opt.config, "Scenario JSON file")->required();
  run->add_option("--seed", run_opt.seed, "Override population.seed");
  run->add_option("--n-warehouses", run_opt.n_warehouses, "Override search.n_warehouses");
  run->add_option("--t-max", run_opt.t_max, "Override routing.t_max");
  run->add_option("--threads", run_opt.threads, "Override search.threads");
  run->add_option("--report", run_opt.report, "JSON report path");
  run->add_option("--routes", run_opt.routes, "Routes CSV path");
  run->add_option("--plot", run_opt.plot, "SVG plot path");
  run->add_flag("--timings", run_opt.timings, "Include phase timings in the report");

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen-pop", "Write a synthetic customer CSV (id,x,y)");
  gen->add_option("--kind", gen_opt.kind)->check(CLI::IsMember({"uniform", "gaussian"}));
  gen->add_option("--count", gen_opt.count);
  gen->add_option("--sigma", gen_opt.sigma)->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_opt.seed);
  gen->add_option("--bounds", gen_opt.bounds, "min_x min_y max_x max_y")->expected(4);
  gen->add_option("-o,--out", gen_opt.out, "Output file (default stdout)");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench-scaling",
                                   "Time the single-warehouse search per population size");
  bench->add_option("config", bench_opt.config, "Base scenario JSON (optional)");
  bench->add_option("--traffic", bench_opt.traffic)
      ->check(CLI::IsMember({"uniform", "zones"}));
  bench->add_option("--population", bench_opt.population)
      ->check(CLI::IsMember({"uniform", "gaussian"}));
  bench->add_option("--sizes", bench_opt.sizes)->delimiter(',');
  bench->add_option("--seed", bench_opt.seed);
  bench->add_option("--repeats", bench_opt.repeats)->check(CLI::PositiveNumber);

  OracleOptions oracle_opt;
  auto* oracle = app.add_subcommand("oracle-check",
                                    "Compare the heuristic with exhaustive search");
  oracle->add_option("--instances", oracle_opt.instances);
  oracle->add_option("--seed", oracle_opt.seed);
  oracle->add_option("--max-customers", oracle_opt.max_customers)
      ->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) return run_command(run_opt);
    if (*gen) return gen_pop_command(gen_opt);
    if (*bench) return bench_command(bench_opt);
    if (*oracle) return oracle_command(oracle_opt);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitOk;
}
