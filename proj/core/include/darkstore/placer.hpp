#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "darkstore/geo.hpp"
#include "darkstore/popgen.hpp"
#include "darkstore/router.hpp"

namespace darkstore {

struct SearchParams {
  int coarse_grid = 10;
  int refine_grid = 4;
  double keep_fraction = 0.05;
  /// Each refinement level shrinks the region by this divisor.
  double shrink_factor = 5.0;
  int levels = 3;
  int n_warehouses = 3;
  /// Worker threads for candidate evaluation; 0 picks the hardware count.
  unsigned threads = 0;

  /// Candidates kept after each level: ceil(keep_fraction * coarse_grid^2).
  std::size_t retained_count() const;

  /// Throws std::invalid_argument on a field outside its domain.
  void validate() const;
};

struct RankedCandidate {
  Point location;
  DepotEvaluation evaluation;
};

/// Counts evaluate_depot calls made by the search.
struct SearchStats {
  std::size_t evaluations = 0;
  /// evaluations made at level 0 (coarse), 1, 2, ...
  std::vector<std::size_t> evaluations_per_level;
};

/// per_axis^2 points evenly spaced over `bounds`, boundary inclusive, in
/// row-major order (y outer, x inner). per_axis == 1 gives the center.
std::vector<Point> grid_points(const MapBounds& bounds, int per_axis);

/// Evaluates every candidate and ranks them: most customers served first,
/// then shorter total path time, then enumeration order.
std::vector<RankedCandidate> search_level(std::span<const Point> candidates,
                                          std::span<const Customer> customers,
                                          const TrafficModel& model,
                                          const RoutingParams& routing,
                                          unsigned threads = 0,
                                          SearchStats* stats = nullptr);

/// True when `a` ranks strictly ahead of `b` on served count, then path time.
bool ranks_ahead(const DepotEvaluation& a, const DepotEvaluation& b);

/// Coarse grid, then `levels` rounds of refine_grid x refine_grid grids in
/// shrinking regions around the retained leaders. Returns the best candidate
/// seen at any level.
RankedCandidate find_best_location(std::span<const Customer> customers,
                                   const MapBounds& bounds,
                                   const TrafficModel& model,
                                   const RoutingParams& routing,
                                   const SearchParams& search,
                                   SearchStats* stats = nullptr);

struct PlacedWarehouse {
  Point location;
  DepotEvaluation evaluation;
  /// Customers still unserved when this warehouse was placed.
  std::size_t customers_faced = 0;
  SearchStats stats;
};

struct Placement {
  std::vector<PlacedWarehouse> warehouses;
  std::vector<CustomerId> unserved;

  std::size_t customers_served() const;
};

/// Places up to n_warehouses sequentially, removing each warehouse's served
/// customers before searching for the next. Stops early when no customers
/// remain or the best location serves nobody.
Placement place_warehouses(std::span<const Customer> customers,
                           const MapBounds& bounds, const TrafficModel& model,
                           const RoutingParams& routing,
                           const SearchParams& search);

}  // namespace darkstore
