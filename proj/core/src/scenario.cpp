#include "darkstore/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "darkstore/oracle.hpp"
#include "json.hpp"

namespace darkstore {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

// A JSON object with a fixed set of permitted keys.
class Section {
 public:
  Section(const json& j, std::string path,
          std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(join(path_, key), "unknown key");
      }
    }
  }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  const json& at(std::string_view key) const {
    auto it = j_.find(std::string(key));
    if (it == j_.end()) throw ConfigError(join(path_, key), "missing field");
    return *it;
  }

  std::string field(std::string_view key) const { return join(path_, key); }

  double number(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    return v.get<double>();
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::int64_t integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) {
      throw ConfigError(field(key), "expected an integer");
    }
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() >
            static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw ConfigError(field(key), "integer out of range");
    }
    return v.get<std::int64_t>();
  }

  int small_integer(std::string_view key) const {
    const std::int64_t v = integer(key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw ConfigError(field(key), "integer out of range");
    }
    return static_cast<int>(v);
  }

  int small_integer_or(std::string_view key, int fallback) const {
    return has(key) ? small_integer(key) : fallback;
  }

  std::uint64_t unsigned_integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ConfigError(field(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }

  std::string string_or(std::string_view key, std::string fallback) const {
    return has(key) ? string(key) : fallback;
  }

  bool boolean_or(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError(field(key) + "[" + std::to_string(i) + "]",
                          "expected a number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  Point point(std::string_view key) const {
    const std::vector<double> xy = numbers(key);
    if (xy.size() != 2) throw ConfigError(field(key), "expected [x, y]");
    return {xy[0], xy[1]};
  }

  Section section(std::string_view key,
                  std::initializer_list<std::string_view> allowed) const {
    return Section(at(key), field(key), allowed);
  }

 private:
  const json& j_;
  std::string path_;
};

std::string_view population_kind_name(PopulationSpec::Kind kind) {
  switch (kind) {
    case PopulationSpec::Kind::kUniform: return "uniform";
    case PopulationSpec::Kind::kGaussian: return "gaussian";
    case PopulationSpec::Kind::kFile: return "file";
  }
  return "uniform";
}

std::string_view traffic_kind_name(TrafficSpec::Kind kind) {
  return kind == TrafficSpec::Kind::kZones ? "zones" : "uniform";
}

ScenarioConfig config_from_json(const json& root) {
  const Section top(root, "",
                    {"name", "map", "population", "traffic", "routing", "search",
                     "output"});
  ScenarioConfig cfg;
  cfg.name = top.string_or("name", "");

  const Section map = top.section("map", {"min", "max"});
  cfg.bounds = {map.point("min"), map.point("max")};

  {
    const json& pj = top.at("population");
    const std::string kind =
        Section(pj, "population", {"kind", "count", "sigma", "seed", "path"})
            .string("kind");
    auto& pop = cfg.population;
    if (kind == "uniform") {
      const Section p(pj, "population", {"kind", "count", "seed"});
      pop.kind = PopulationSpec::Kind::kUniform;
      pop.count = p.unsigned_integer("count");
      pop.seed = p.unsigned_integer("seed");
    } else if (kind == "gaussian") {
      const Section p(pj, "population", {"kind", "count", "sigma", "seed"});
      pop.kind = PopulationSpec::Kind::kGaussian;
      pop.count = p.unsigned_integer("count");
      pop.sigma = p.number("sigma");
      pop.seed = p.unsigned_integer("seed");
    } else if (kind == "file") {
      const Section p(pj, "population", {"kind", "path", "seed"});
      pop.kind = PopulationSpec::Kind::kFile;
      pop.path = p.string("path");
      if (p.has("seed")) pop.seed = p.unsigned_integer("seed");
    } else {
      throw ConfigError("population.kind",
                        "expected \"uniform\", \"gaussian\" or \"file\"");
    }
  }

  {
    const json& tj = top.at("traffic");
    const Section t(tj, "traffic", {"kind", "center", "radii", "multipliers"});
    const std::string kind = t.string("kind");
    auto& traffic = cfg.traffic;
    if (kind == "uniform") {
      traffic.kind = TrafficSpec::Kind::kUniform;
      if (t.has("center")) traffic.center = t.point("center");
      if (t.has("radii")) traffic.radii = t.numbers("radii");
    } else if (kind == "zones") {
      traffic.kind = TrafficSpec::Kind::kZones;
      traffic.center = t.point("center");
      traffic.radii = t.numbers("radii");
    } else {
      throw ConfigError("traffic.kind", "expected \"uniform\" or \"zones\"");
    }
    traffic.multipliers = t.numbers("multipliers");
  }

  const Section r = top.section("routing", {"t_max", "couriers", "trips_per_courier"});
  cfg.routing.t_max = r.number("t_max");
  cfg.routing.couriers = r.small_integer("couriers");
  cfg.routing.trips_per_courier = r.small_integer("trips_per_courier");

  if (top.has("search")) {
    const Section s = top.section(
        "search", {"coarse_grid", "refine_grid", "keep_fraction", "shrink_factor",
                   "levels", "n_warehouses", "threads"});
    auto& search = cfg.search;
    search.coarse_grid = s.small_integer_or("coarse_grid", search.coarse_grid);
    search.refine_grid = s.small_integer_or("refine_grid", search.refine_grid);
    search.keep_fraction = s.number_or("keep_fraction", search.keep_fraction);
    search.shrink_factor = s.number_or("shrink_factor", search.shrink_factor);
    search.levels = s.small_integer_or("levels", search.levels);
    search.n_warehouses = s.small_integer_or("n_warehouses", search.n_warehouses);
    if (s.has("threads")) {
      const std::uint64_t threads = s.unsigned_integer("threads");
      if (threads > 4096) throw ConfigError("search.threads", "too many threads");
      search.threads = static_cast<unsigned>(threads);
    }
  }

  if (top.has("output")) {
    const Section o = top.section("output", {"report", "routes", "plot", "timings"});
    cfg.output.report = o.string_or("report", "");
    cfg.output.routes = o.string_or("routes", "");
    cfg.output.plot = o.string_or("plot", "");
    cfg.output.timings = o.boolean_or("timings", false);
  }

  validate_config(cfg);
  return cfg;
}

template <typename Fn>
void check(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open '" + file.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& file, const std::string& content) {
  std::error_code ec;
  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" + file.parent_path().string() +
                    "': " + ec.message());
    }
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + file.string() + "'");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ordered_json point_json(Point p) { return ordered_json::array({p.x, p.y}); }

}  // namespace

ScenarioConfig default_scenario(PopulationSpec::Kind population,
                                TrafficSpec::Kind traffic) {
  ScenarioConfig cfg;
  cfg.population.kind = population;
  cfg.population.count = 200;
  cfg.population.sigma = 20.0;
  cfg.population.seed = 1;
  cfg.traffic.kind = traffic;
  cfg.traffic.center = cfg.bounds.center();
  cfg.traffic.radii = {20.0, 40.0};
  cfg.traffic.multipliers = traffic == TrafficSpec::Kind::kZones
                                ? std::vector<double>{3.0, 2.0, 1.0}
                                : std::vector<double>{1.0};
  cfg.routing = {30.0, 3, 5};
  return cfg;
}

TrafficModel TrafficSpec::build() const {
  if (kind == Kind::kUniform) return TrafficModel::uniform(multipliers.at(0));
  return TrafficModel::zoned(center, radii, multipliers);
}

void validate_config(const ScenarioConfig& cfg) {
  check("map", [&] { cfg.bounds.validate(); });

  const auto& pop = cfg.population;
  if (pop.kind == PopulationSpec::Kind::kGaussian &&
      !(std::isfinite(pop.sigma) && pop.sigma > 0.0)) {
    throw ConfigError("population.sigma", "must be positive");
  }
  if (pop.kind == PopulationSpec::Kind::kFile && pop.path.empty()) {
    throw ConfigError("population.path", "must not be empty");
  }

  const auto& traffic = cfg.traffic;
  if (traffic.kind == TrafficSpec::Kind::kUniform) {
    if (traffic.multipliers.size() != 1) {
      throw ConfigError("traffic.multipliers",
                        "uniform traffic takes exactly one multiplier");
    }
  } else if (traffic.multipliers.size() != traffic.radii.size() + 1) {
    throw ConfigError("traffic.multipliers",
                      "zones need one more multiplier than radii");
  }
  for (std::size_t i = 0; i < traffic.radii.size(); ++i) {
    if (!std::isfinite(traffic.radii[i]) || traffic.radii[i] <= 0.0) {
      throw ConfigError("traffic.radii", "radii must be positive");
    }
    if (i > 0 && traffic.radii[i] <= traffic.radii[i - 1]) {
      throw ConfigError("traffic.radii", "radii must be strictly ascending");
    }
  }
  for (double m : traffic.multipliers) {
    if (!std::isfinite(m) || m <= 0.0) {
      throw ConfigError("traffic.multipliers", "multipliers must be positive");
    }
  }
  if (!std::isfinite(traffic.center.x) || !std::isfinite(traffic.center.y)) {
    throw ConfigError("traffic.center", "must be finite");
  }

  const auto& routing = cfg.routing;
  if (!std::isfinite(routing.t_max) || routing.t_max <= 0.0) {
    throw ConfigError("routing.t_max", "must be positive");
  }
  if (routing.couriers < 1) throw ConfigError("routing.couriers", "must be >= 1");
  if (routing.trips_per_courier < 1) {
    throw ConfigError("routing.trips_per_courier", "must be >= 1");
  }

  const auto& s = cfg.search;
  if (s.coarse_grid < 1) throw ConfigError("search.coarse_grid", "must be >= 1");
  if (s.refine_grid < 1) throw ConfigError("search.refine_grid", "must be >= 1");
  if (!(s.keep_fraction > 0.0 && s.keep_fraction <= 1.0)) {
    throw ConfigError("search.keep_fraction", "must be in (0, 1]");
  }
  if (!std::isfinite(s.shrink_factor) || s.shrink_factor <= 0.0) {
    throw ConfigError("search.shrink_factor", "must be positive");
  }
  if (s.levels < 0) throw ConfigError("search.levels", "must be >= 0");
  if (s.n_warehouses < 1) throw ConfigError("search.n_warehouses", "must be >= 1");
}

ScenarioConfig parse_config_text(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(root);
}

ScenarioConfig parse_config(const std::filesystem::path& file) {
  return parse_config_text(read_file(file));
}

namespace {

ordered_json config_json(const ScenarioConfig& cfg) {
  ordered_json j;
  j["name"] = cfg.name;
  j["map"] = {{"min", point_json(cfg.bounds.min)}, {"max", point_json(cfg.bounds.max)}};

  ordered_json pop;
  pop["kind"] = population_kind_name(cfg.population.kind);
  switch (cfg.population.kind) {
    case PopulationSpec::Kind::kUniform:
      pop["count"] = cfg.population.count;
      break;
    case PopulationSpec::Kind::kGaussian:
      pop["count"] = cfg.population.count;
      pop["sigma"] = cfg.population.sigma;
      break;
    case PopulationSpec::Kind::kFile:
      pop["path"] = cfg.population.path;
      break;
  }
  pop["seed"] = cfg.population.seed;
  j["population"] = pop;

  ordered_json traffic;
  traffic["kind"] = traffic_kind_name(cfg.traffic.kind);
  traffic["center"] = point_json(cfg.traffic.center);
  traffic["radii"] = cfg.traffic.radii;
  traffic["multipliers"] = cfg.traffic.multipliers;
  j["traffic"] = traffic;

  j["routing"] = {{"t_max", cfg.routing.t_max},
                  {"couriers", cfg.routing.couriers},
                  {"trips_per_courier", cfg.routing.trips_per_courier}};
  j["search"] = {{"coarse_grid", cfg.search.coarse_grid},
                 {"refine_grid", cfg.search.refine_grid},
                 {"keep_fraction", cfg.search.keep_fraction},
                 {"shrink_factor", cfg.search.shrink_factor},
                 {"levels", cfg.search.levels},
                 {"n_warehouses", cfg.search.n_warehouses},
                 {"threads", cfg.search.threads}};
  j["output"] = {{"report", cfg.output.report},
                 {"routes", cfg.output.routes},
                 {"plot", cfg.output.plot},
                 {"timings", cfg.output.timings}};
  return j;
}

}  // namespace

std::string config_to_json(const ScenarioConfig& cfg) {
  return config_json(cfg).dump(2) + "\n";
}

std::vector<Customer> load_population(const ScenarioConfig& cfg) {
  const auto& pop = cfg.population;
  switch (pop.kind) {
    case PopulationSpec::Kind::kUniform:
      return generate_uniform(cfg.bounds, pop.count, pop.seed);
    case PopulationSpec::Kind::kGaussian:
      return generate_gaussian(cfg.bounds, pop.count, pop.sigma, pop.seed);
    case PopulationSpec::Kind::kFile: {
      std::ifstream in(pop.path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + pop.path + "' for reading");
      try {
        return read_customers_csv(in);
      } catch (const CsvError& e) {
        throw ConfigError("population.path", pop.path + ": " + e.what());
      }
    }
  }
  return {};
}

RunReport solve_scenario(const ScenarioConfig& config) {
  validate_config(config);
  RunReport report;
  report.config = config;

  auto start = std::chrono::steady_clock::now();
  report.customers = load_population(config);
  report.timings.population_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  report.placement =
      place_warehouses(report.customers, config.bounds, config.traffic.build(),
                       config.routing, config.search);
  report.timings.placement_seconds = seconds_since(start);
  return report;
}

RunReport run_scenario(const ScenarioConfig& config) {
  RunReport report = solve_scenario(config);
  write_outputs(report);
  return report;
}

void write_outputs(RunReport& report) {
  const auto start = std::chrono::steady_clock::now();
  const auto& out = report.config.output;
  if (!out.routes.empty()) {
    std::ostringstream csv;
    write_routes_csv(csv, report);
    write_file(out.routes, csv.str());
  }
  if (!out.plot.empty()) emit_plot(report, out.plot);
  report.timings.output_seconds = seconds_since(start);
  // Written last so that the output phase timing is complete.
  if (!out.report.empty()) write_file(out.report, report_to_json(report));
}

void emit_plot(const RunReport& report, const std::filesystem::path& file) {
  write_file(file, render_svg(report));
}

std::string report_to_json(const RunReport& report) {
  ordered_json j;
  j["scenario"] = report.config.name;
  j["seed"] = report.config.population.seed;
  j["customers"] = report.customers.size();

  ordered_json warehouses = ordered_json::array();
  const auto& placed = report.placement.warehouses;
  for (std::size_t w = 0; w < placed.size(); ++w) {
    const PlacedWarehouse& wh = placed[w];
    ordered_json trips = ordered_json::array();
    for (std::size_t t = 0; t < wh.evaluation.trips.size(); ++t) {
      const TripPlan& trip = wh.evaluation.trips[t];
      ordered_json stops = ordered_json::array();
      for (const Customer& c : trip.stops) {
        stops.push_back({{"id", c.id}, {"x", c.location.x}, {"y", c.location.y}});
      }
      trips.push_back({{"trip", t + 1},
                       {"path_position", trip.position},
                       {"deliveries", trip.deliveries()},
                       {"trip_time", trip.trip_time},
                       {"stops", stops}});
    }
    warehouses.push_back({{"warehouse", w + 1},
                          {"color", warehouse_color(w)},
                          {"location", point_json(wh.location)},
                          {"customers_faced", wh.customers_faced},
                          {"customers_served", wh.evaluation.customers_served},
                          {"total_path_time", wh.evaluation.total_path_time},
                          {"trips_in_path", wh.evaluation.path.trip_count()},
                          {"evaluations", wh.stats.evaluations},
                          {"trips", trips}});
  }
  j["warehouses"] = warehouses;
  j["totals"] = {{"warehouses", placed.size()},
                 {"customers_served", report.placement.customers_served()},
                 {"unserved", report.placement.unserved.size()}};
  j["unserved"] = report.placement.unserved;
  if (report.config.output.timings) {
    j["timings_seconds"] = {{"population", report.timings.population_seconds},
                            {"placement", report.timings.placement_seconds},
                            {"output", report.timings.output_seconds}};
  }
  j["config"] = config_json(report.config);
  return j.dump(2) + "\n";
}

void write_routes_csv(std::ostream& out, const RunReport& report) {
  out << "warehouse,trip,stop_seq,customer_id,x,y,leg_minutes\n";
  const TrafficModel model = report.config.traffic.build();
  const auto& placed = report.placement.warehouses;
  for (std::size_t w = 0; w < placed.size(); ++w) {
    const auto& trips = placed[w].evaluation.trips;
    for (std::size_t t = 0; t < trips.size(); ++t) {
      Point prev = placed[w].location;
      for (std::size_t s = 0; s < trips[t].stops.size(); ++s) {
        const Customer& c = trips[t].stops[s];
        out << (w + 1) << ',' << (t + 1) << ',' << (s + 1) << ',' << c.id << ','
            << format_double(c.location.x) << ',' << format_double(c.location.y)
            << ',' << format_double(travel_time(model, prev, c.location)) << '\n';
        prev = c.location;
      }
    }
  }
}

std::vector<ScalingRow> run_scaling_benchmark(const ScenarioConfig& base,
                                              std::span<const std::size_t> sizes,
                                              int repeats) {
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw std::invalid_argument("benchmark sizes must be ascending");
  }
  validate_config(base);
  const TrafficModel model = base.traffic.build();
  SearchParams search = base.search;
  search.n_warehouses = 1;

  std::vector<Customer> file_customers;
  if (base.population.kind == PopulationSpec::Kind::kFile) {
    file_customers = load_population(base);
  }

  std::vector<ScalingRow> rows;
  for (std::size_t size : sizes) {
    std::vector<Customer> customers;
    if (base.population.kind == PopulationSpec::Kind::kFile) {
      customers.assign(file_customers.begin(),
                       file_customers.begin() +
                           static_cast<std::ptrdiff_t>(
                               std::min(size, file_customers.size())));
    } else {
      ScenarioConfig cfg = base;
      cfg.population.count = size;
      customers = load_population(cfg);
    }

    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, repeats); ++r) {
      const auto start = std::chrono::steady_clock::now();
      const RankedCandidate found =
          find_best_location(customers, base.bounds, model, base.routing, search);
      best = std::min(best, seconds_since(start));
      (void)found;
    }
    ScalingRow row{size, best, std::nullopt};
    if (!rows.empty() && rows.back().seconds > 0.0) {
      row.ratio = best / rows.back().seconds;
    }
    rows.push_back(row);
  }
  return rows;
}

OracleCheck run_oracle_check(std::size_t instances, std::uint64_t seed,
                             std::size_t max_customers) {
  if (max_customers < 1 || max_customers > kOracleMaxCustomers) {
    throw std::invalid_argument("max_customers must be in [1, " +
                                std::to_string(kOracleMaxCustomers) + "]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count_dist(1, max_customers);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::uniform_real_distribution<double> t_max_dist(12.0, 40.0);
  std::uniform_int_distribution<int> small(1, 2);
  const Point depot{50.0, 50.0};

  OracleCheck out;
  std::size_t gap_sum = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    const TrafficModel model =
        k % 2 == 0 ? TrafficModel::uniform(1.0)
                   : TrafficModel::zoned({45.0, 52.0}, {6.0, 14.0}, {3.0, 2.0, 1.0});
    const RoutingParams params{t_max_dist(rng), small(rng), small(rng)};
    std::vector<Customer> customers(count_dist(rng));
    for (std::size_t i = 0; i < customers.size(); ++i) {
      const double x = depot.x + coord(rng);
      const double y = depot.y + coord(rng);
      customers[i] = {static_cast<CustomerId>(i), {x, y}};
    }
    const std::size_t heuristic =
        evaluate_depot(depot, customers, model, params).customers_served;
    const std::size_t exact =
        exact_best_service(depot, customers, model, params).best_customers_served;
    out.heuristic_served.push_back(heuristic);
    out.oracle_served.push_back(exact);
    if (heuristic > exact) {
      ++out.dominance_violations;
    } else {
      gap_sum += exact - heuristic;
      out.max_gap = std::max(out.max_gap, exact - heuristic);
    }
  }
  if (instances > 0) {
    out.mean_gap = static_cast<double>(gap_sum) / static_cast<double>(instances);
  }
  return out;
}

}  // namespace darkstore
