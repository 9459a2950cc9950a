#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "darkstore/geo.hpp"
#include "darkstore/placer.hpp"
#include "darkstore/popgen.hpp"
#include "darkstore/router.hpp"

namespace darkstore {

/// Invalid or missing configuration field. `field()` is a dotted path such
/// as "routing.t_max".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Filesystem failure; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PopulationSpec {
  enum class Kind { kUniform, kGaussian, kFile };

  Kind kind = Kind::kUniform;
  std::size_t count = 200;
  double sigma = 20.0;
  std::uint64_t seed = 1;
  std::string path;
};

/// `radii` and `center` are drawn on plots even for uniform traffic; they
/// only affect travel times when kind == kZones.
struct TrafficSpec {
  enum class Kind { kUniform, kZones };

  Kind kind = Kind::kUniform;
  Point center{50.0, 50.0};
  std::vector<double> radii{20.0, 40.0};
  std::vector<double> multipliers{1.0};

  TrafficModel build() const;
};

struct OutputSpec {
  std::string report;
  std::string routes;
  std::string plot;
  /// Adds wall-clock phase timings to the JSON report (breaks byte-identity
  /// between runs).
  bool timings = false;
};

struct ScenarioConfig {
  std::string name;
  MapBounds bounds{{0.0, 0.0}, {100.0, 100.0}};
  PopulationSpec population;
  TrafficSpec traffic;
  RoutingParams routing;
  SearchParams search;
  OutputSpec output;
};

/// Default scenario: [0,100]^2 map, zones of radius 20 and 40 around the
/// center with multipliers 3/2/1 (1 for uniform traffic), 200 customers,
/// gaussian sigma 20, t_max 30, 3 couriers x 5 trips, 3 warehouses.
ScenarioConfig default_scenario(PopulationSpec::Kind population,
                                TrafficSpec::Kind traffic);

/// Reads and validates a JSON config. Unknown keys are rejected.
/// Throws IoError if the file cannot be read, ConfigError otherwise.
ScenarioConfig parse_config(const std::filesystem::path& file);
ScenarioConfig parse_config_text(std::string_view json_text);

/// Checks every field against the library invariants; throws ConfigError
/// naming the first offending field.
void validate_config(const ScenarioConfig& config);

/// JSON that parse_config_text() turns back into an identical config.
std::string config_to_json(const ScenarioConfig& config);

/// Generates or loads the configured customers.
std::vector<Customer> load_population(const ScenarioConfig& config);

struct PhaseTimings {
  double population_seconds = 0.0;
  double placement_seconds = 0.0;
  double output_seconds = 0.0;
};

struct RunReport {
  ScenarioConfig config;
  std::vector<Customer> customers;
  Placement placement;
  PhaseTimings timings;
};

/// Full pipeline. Writes every non-empty output path in config.output.
RunReport run_scenario(const ScenarioConfig& config);

/// Runs placement without writing anything.
RunReport solve_scenario(const ScenarioConfig& config);

/// Stable key order. Timings are included only when config.output.timings.
std::string report_to_json(const RunReport& report);

/// warehouse,trip,stop_seq,customer_id,x,y,leg_minutes
void write_routes_csv(std::ostream& out, const RunReport& report);

/// SVG 1.1 document: zone circles, customers, warehouse markers, and one
/// polyline per selected trip colored by placement order.
std::string render_svg(const RunReport& report);

/// Route colors in placement order: orange, green, red, then extras.
std::string_view warehouse_color(std::size_t index);

void write_outputs(RunReport& report);
void emit_plot(const RunReport& report, const std::filesystem::path& file);

struct ScalingRow {
  std::size_t size = 0;
  double seconds = 0.0;
  /// seconds / previous row's seconds.
  std::optional<double> ratio;
};

/// Times a single-warehouse search at each population size, reusing the base
/// config's population kind and seed. `sizes` must be ascending. Each timing
/// is the minimum over `repeats` runs.
std::vector<ScalingRow> run_scaling_benchmark(const ScenarioConfig& base,
                                              std::span<const std::size_t> sizes,
                                              int repeats = 1);

struct OracleCheck {
  std::vector<std::size_t> heuristic_served;
  std::vector<std::size_t> oracle_served;
  std::size_t dominance_violations = 0;
  double mean_gap = 0.0;
  std::size_t max_gap = 0;
};

/// Compares evaluate_depot against exact_best_service on random single-depot
/// instances of 1..max_customers customers with mixed traffic models.
OracleCheck run_oracle_check(std::size_t instances, std::uint64_t seed,
                             std::size_t max_customers = 7);

}  // namespace darkstore
