#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "darkstore/scenario.hpp"
#include "json.hpp"

namespace darkstore {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kConfigs = fs::path(DARKSTORE_SOURCE_DIR) / "configs";

std::string minimal_config(const std::string& routing = R"({"t_max": 30, "couriers": 3, "trips_per_courier": 5})",
                           const std::string& traffic = R"({"kind": "zones", "center": [50, 50], "radii": [20, 40], "multipliers": [3, 2, 1]})") {
  return R"({"map": {"min": [0, 0], "max": [100, 100]},
             "population": {"kind": "uniform", "count": 30, "seed": 3},
             "traffic": )" + traffic + R"(,
             "routing": )" + routing + "}";
}

std::string field_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

TEST(ParseConfig, BundledCasesParse) {
  const auto cfg = parse_config(kConfigs / "case2_gaussian_zones.json");
  EXPECT_EQ(cfg.traffic.kind, TrafficSpec::Kind::kZones);
  EXPECT_EQ(cfg.traffic.build().zone_count(), 3u);
  EXPECT_EQ(cfg.population.kind, PopulationSpec::Kind::kGaussian);
  EXPECT_EQ(cfg.search.n_warehouses, 3);
  for (const char* name : {"case1_uniform_uniform", "case3_gaussian_uniform",
                           "case4_uniform_zones"}) {
    EXPECT_NO_THROW(parse_config(kConfigs / (std::string(name) + ".json"))) << name;
  }
}

TEST(ParseConfig, FieldDiagnostics) {
  EXPECT_EQ(field_of(minimal_config()), "<accepted>");
  EXPECT_EQ(field_of(minimal_config(R"({"t_max": 0, "couriers": 3, "trips_per_courier": 5})")),
            "routing.t_max");
  EXPECT_EQ(field_of(minimal_config(R"({"t_max": 30, "couriers": 0, "trips_per_courier": 5})")),
            "routing.couriers");
  EXPECT_EQ(field_of(minimal_config(R"({"t_max": 30, "couriers": 3})")),
            "routing.trips_per_courier");
  EXPECT_EQ(field_of(minimal_config(R"({"t_max": 30, "couriers": 3, "trips_per_courier": 5, "speed": 1})")),
            "routing.speed");
  EXPECT_EQ(field_of(minimal_config(
                R"({"t_max": 30, "couriers": 3, "trips_per_courier": 5})",
                R"({"kind": "zones", "center": [50, 50], "radii": [20, 10], "multipliers": [3, 2, 1]})")),
            "traffic.radii");
  EXPECT_EQ(field_of(minimal_config(
                R"({"t_max": 30, "couriers": 3, "trips_per_courier": 5})",
                R"({"kind": "zones", "center": [50, 50], "radii": [20], "multipliers": [3, 2, 1]})")),
            "traffic.multipliers");
  EXPECT_EQ(field_of(minimal_config(
                R"({"t_max": 30, "couriers": 3, "trips_per_courier": 5})",
                R"({"kind": "uniform", "multipliers": [0]})")),
            "traffic.multipliers");
  EXPECT_EQ(field_of(R"({"map": {"min": [0, 0], "max": [100, 100]}})"), "population");
  EXPECT_EQ(field_of("{nope"), "<root>");
  EXPECT_EQ(field_of(R"({"extra": 1})"), "extra");
}

TEST(ParseConfig, PopulationKinds) {
  auto with_population = [](const std::string& pop) {
    return R"({"map": {"min": [0, 0], "max": [10, 10]}, "population": )" + pop +
           R"(, "traffic": {"kind": "uniform", "multipliers": [1]},
              "routing": {"t_max": 5, "couriers": 1, "trips_per_courier": 1}})";
  };
  EXPECT_EQ(field_of(with_population(R"({"kind": "gaussian", "count": 5, "seed": 1})")),
            "population.sigma");
  EXPECT_EQ(field_of(with_population(R"({"kind": "gaussian", "count": 5, "sigma": -1, "seed": 1})")),
            "population.sigma");
  EXPECT_EQ(field_of(with_population(R"({"kind": "uniform", "count": -5, "seed": 1})")),
            "population.count");
  EXPECT_EQ(field_of(with_population(R"({"kind": "uniform", "count": 5, "sigma": 3, "seed": 1})")),
            "population.sigma");
  EXPECT_EQ(field_of(with_population(R"({"kind": "census"})")), "population.kind");
  EXPECT_EQ(field_of(with_population(R"({"kind": "file", "path": "x.csv"})")), "<accepted>");
}

TEST(ParseConfig, EchoReingestsToSameConfig) {
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    const auto cfg = parse_config(entry.path());
    const std::string echo = config_to_json(cfg);
    EXPECT_EQ(config_to_json(parse_config_text(echo)), echo) << entry.path();
  }
}

ScenarioConfig small_config(PopulationSpec::Kind pop, TrafficSpec::Kind traffic) {
  auto cfg = default_scenario(pop, traffic);
  cfg.name = "small";
  cfg.population.count = 60;
  cfg.search.coarse_grid = 5;
  cfg.search.levels = 1;
  return cfg;
}

TEST(RunScenario, EmptyPopulationYieldsNoWarehouses) {
  auto cfg = small_config(PopulationSpec::Kind::kUniform, TrafficSpec::Kind::kUniform);
  cfg.population.count = 0;
  const auto report = solve_scenario(cfg);
  EXPECT_TRUE(report.placement.warehouses.empty());
  const auto j = json::parse(report_to_json(report));
  EXPECT_EQ(j["totals"]["warehouses"], 0);
  EXPECT_EQ(j["customers"], 0);
}

TEST(RunScenario, DeterministicReport) {
  const auto cfg = small_config(PopulationSpec::Kind::kGaussian, TrafficSpec::Kind::kZones);
  EXPECT_EQ(report_to_json(solve_scenario(cfg)), report_to_json(solve_scenario(cfg)));
}

TEST(RunScenario, ReportIsConsistentWithPlacement) {
  const auto cfg = small_config(PopulationSpec::Kind::kGaussian, TrafficSpec::Kind::kUniform);
  const auto report = solve_scenario(cfg);
  const auto j = json::parse(report_to_json(report));
  ASSERT_EQ(j["warehouses"].size(), report.placement.warehouses.size());
  std::size_t served = 0;
  for (std::size_t w = 0; w < j["warehouses"].size(); ++w) {
    const auto& jw = j["warehouses"][w];
    std::size_t stops = 0;
    for (const auto& trip : jw["trips"]) {
      EXPECT_LE(trip["trip_time"].get<double>(), cfg.routing.t_max);
      stops += trip["stops"].size();
    }
    EXPECT_EQ(stops, jw["customers_served"].get<std::size_t>());
    served += stops;
  }
  EXPECT_EQ(j["totals"]["customers_served"].get<std::size_t>(), served);
  EXPECT_EQ(served + j["unserved"].size(), report.customers.size());
  EXPECT_FALSE(j.contains("timings_seconds"));
  // The echoed config reproduces the run.
  const auto echoed = parse_config_text(j["config"].dump());
  EXPECT_EQ(report_to_json(solve_scenario(echoed)), report_to_json(report));
}

TEST(RunScenario, TimingsOnlyWhenRequested) {
  auto cfg = small_config(PopulationSpec::Kind::kUniform, TrafficSpec::Kind::kUniform);
  cfg.output.timings = true;
  const auto j = json::parse(report_to_json(solve_scenario(cfg)));
  EXPECT_TRUE(j.contains("timings_seconds"));
}

TEST(RunScenario, WritesOutputsAndReportsIoErrors) {
  const fs::path dir = fs::temp_directory_path() / "darkstore_scenario_test";
  fs::remove_all(dir);
  auto cfg = small_config(PopulationSpec::Kind::kUniform, TrafficSpec::Kind::kZones);
  cfg.output.report = (dir / "r.json").string();
  cfg.output.routes = (dir / "routes.csv").string();
  cfg.output.plot = (dir / "plot.svg").string();
  run_scenario(cfg);
  EXPECT_TRUE(fs::exists(dir / "r.json"));
  EXPECT_TRUE(fs::exists(dir / "plot.svg"));
  std::ifstream routes(dir / "routes.csv");
  std::string header;
  std::getline(routes, header);
  EXPECT_EQ(header, "warehouse,trip,stop_seq,customer_id,x,y,leg_minutes");

  std::ofstream(dir / "blocker") << "file";
  cfg.output.report = (dir / "blocker" / "r.json").string();
  try {
    run_scenario(cfg);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("blocker"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(RunScenario, FilePopulationRoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "darkstore_file_pop";
  fs::create_directories(dir);
  auto cfg = small_config(PopulationSpec::Kind::kGaussian, TrafficSpec::Kind::kUniform);
  const auto generated = load_population(cfg);
  {
    std::ofstream out(dir / "pop.csv");
    write_customers_csv(out, generated);
  }
  auto from_file = cfg;
  from_file.population.kind = PopulationSpec::Kind::kFile;
  from_file.population.path = (dir / "pop.csv").string();
  EXPECT_EQ(load_population(from_file), generated);
  const auto a = solve_scenario(cfg);
  const auto b = solve_scenario(from_file);
  EXPECT_EQ(a.placement.unserved, b.placement.unserved);

  from_file.population.path = (dir / "missing.csv").string();
  EXPECT_THROW(load_population(from_file), IoError);
  fs::remove_all(dir);
}

struct SvgRoute {
  int warehouse;
  std::string stroke;
  std::vector<std::string> stops;
  std::size_t vertices;
};

std::vector<SvgRoute> svg_routes(const std::string& svg) {
  static const std::regex re(
      R"re(<polyline class="route" data-warehouse="(\d+)" data-trip="\d+" data-stops="([^"]*)" stroke="([a-z]+)"[^>]* points="([^"]*)")re");
  std::vector<SvgRoute> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it) {
    SvgRoute r{std::stoi((*it)[1]), (*it)[3], {}, 0};
    std::istringstream stops((*it)[2].str());
    for (std::string s; stops >> s;) r.stops.push_back(s);
    std::istringstream pts((*it)[4].str());
    for (std::string s; pts >> s;) ++r.vertices;
    out.push_back(r);
  }
  return out;
}

TEST(RenderSvg, ZeroCustomersDrawsZonesOnly) {
  auto cfg = small_config(PopulationSpec::Kind::kUniform, TrafficSpec::Kind::kUniform);
  cfg.population.count = 0;
  const std::string svg = render_svg(solve_scenario(cfg));
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  const std::regex zone(R"(class="zone")");
  EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), zone),
                          std::sregex_iterator()),
            2);
  EXPECT_EQ(svg.find("class=\"customer\""), std::string::npos);
  EXPECT_EQ(svg.find("class=\"route\""), std::string::npos);
}

TEST(RenderSvg, RoutesMatchReportAndColorOrder) {
  const auto cfg = parse_config(kConfigs / "case1_uniform_uniform.json");
  const auto report = solve_scenario(cfg);
  ASSERT_EQ(report.placement.warehouses.size(), 3u);
  const std::string svg = render_svg(report);
  const auto routes = svg_routes(svg);

  const std::vector<std::string> colors{"orange", "green", "red"};
  std::size_t next = 0;
  for (std::size_t w = 0; w < 3; ++w) {
    const auto& trips = report.placement.warehouses[w].evaluation.trips;
    std::size_t vertices = 0, expected_vertices = 0;
    for (std::size_t t = 0; t < trips.size(); ++t, ++next) {
      ASSERT_LT(next, routes.size());
      const auto& r = routes[next];
      EXPECT_EQ(r.warehouse, static_cast<int>(w + 1));
      EXPECT_EQ(r.stroke, colors[w]);
      std::vector<std::string> ids;
      for (const auto& c : trips[t].stops) ids.push_back(std::to_string(c.id));
      EXPECT_EQ(r.stops, ids);
      vertices += r.vertices;
      expected_vertices += trips[t].stops.size() + 2;
    }
    EXPECT_EQ(vertices, expected_vertices);
  }
  EXPECT_EQ(next, routes.size());
  EXPECT_LT(svg.find("stroke=\"orange\""), svg.find("stroke=\"green\""));
  EXPECT_LT(svg.find("stroke=\"green\""), svg.find("stroke=\"red\""));
}

TEST(RoutesCsv, OneRowPerStopWithLegTimes) {
  const auto cfg = small_config(PopulationSpec::Kind::kGaussian, TrafficSpec::Kind::kZones);
  const auto report = solve_scenario(cfg);
  std::ostringstream out;
  write_routes_csv(out, report);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::map<std::pair<int, int>, double> trip_time;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 7u);
    trip_time[{std::stoi(f[0]), std::stoi(f[1])}] += std::stod(f[6]);
  }
  EXPECT_EQ(rows, report.placement.customers_served());
  for (const auto& [key, t] : trip_time) {
    const auto& trip = report.placement.warehouses[key.first - 1].evaluation.trips[key.second - 1];
    EXPECT_NEAR(t, trip.trip_time, 1e-9);
  }
}

TEST(ScalingBenchmark, ShapeAndValidation) {
  auto cfg = small_config(PopulationSpec::Kind::kUniform, TrafficSpec::Kind::kZones);
  const std::vector<std::size_t> sizes{20, 40, 80};
  const auto rows = run_scaling_benchmark(cfg, sizes);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].ratio.has_value());
  EXPECT_TRUE(rows[1].ratio.has_value());
  EXPECT_TRUE(rows[2].ratio.has_value());
  const std::vector<std::size_t> descending{40, 20};
  EXPECT_THROW(run_scaling_benchmark(cfg, descending), std::invalid_argument);
}

TEST(OracleCheck, NoDominanceViolations) {
  const auto check = run_oracle_check(30, 4);
  EXPECT_EQ(check.dominance_violations, 0u);
  EXPECT_EQ(check.heuristic_served.size(), 30u);
}

}  // namespace
}  // namespace darkstore
