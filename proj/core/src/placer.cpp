#include "darkstore/placer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace darkstore {

std::size_t SearchParams::retained_count() const {
  const double total = static_cast<double>(coarse_grid) * coarse_grid;
  return static_cast<std::size_t>(std::ceil(keep_fraction * total));
}

void SearchParams::validate() const {
  if (coarse_grid < 1) throw std::invalid_argument("coarse_grid must be >= 1");
  if (refine_grid < 1) throw std::invalid_argument("refine_grid must be >= 1");
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
    throw std::invalid_argument("keep_fraction must be in (0, 1]");
  }
  if (!std::isfinite(shrink_factor) || shrink_factor <= 0.0) {
    throw std::invalid_argument("shrink_factor must be positive");
  }
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  if (n_warehouses < 1) throw std::invalid_argument("n_warehouses must be >= 1");
}

std::size_t Placement::customers_served() const {
  std::size_t total = 0;
  for (const auto& w : warehouses) total += w.evaluation.customers_served;
  return total;
}

std::vector<Point> grid_points(const MapBounds& bounds, int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("per_axis must be >= 1");
  if (per_axis == 1) return {bounds.center()};

  const auto n = static_cast<std::size_t>(per_axis);
  const double dx = bounds.width() / static_cast<double>(per_axis - 1);
  const double dy = bounds.height() / static_cast<double>(per_axis - 1);
  std::vector<Point> points;
  points.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    // Pin the last row/column to the boundary exactly.
    const double y = row + 1 == n ? bounds.max.y
                                  : bounds.min.y + static_cast<double>(row) * dy;
    for (std::size_t col = 0; col < n; ++col) {
      const double x = col + 1 == n
                           ? bounds.max.x
                           : bounds.min.x + static_cast<double>(col) * dx;
      points.push_back({x, y});
    }
  }
  return points;
}

bool ranks_ahead(const DepotEvaluation& a, const DepotEvaluation& b) {
  if (a.customers_served != b.customers_served) {
    return a.customers_served > b.customers_served;
  }
  return a.total_path_time < b.total_path_time;
}

std::vector<RankedCandidate> search_level(std::span<const Point> candidates,
                                          std::span<const Customer> customers,
                                          const TrafficModel& model,
                                          const RoutingParams& routing,
                                          unsigned threads,
                                          SearchStats* stats) {
  std::vector<RankedCandidate> ranked(candidates.size());
  auto evaluate = [&](std::size_t k) {
    ranked[k] = {candidates[k],
                 evaluate_depot(candidates[k], customers, model, routing)};
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, candidates.size()));
  if (threads <= 1) {
    for (std::size_t k = 0; k < candidates.size(); ++k) evaluate(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t k; (k = next.fetch_add(1)) < candidates.size();) {
            try {
              evaluate(k);
            } catch (...) {
              if (!failed.exchange(true)) failure = std::current_exception();
              return;
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  if (stats) {
    stats->evaluations += candidates.size();
    stats->evaluations_per_level.push_back(candidates.size());
  }

  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedCandidate& a, const RankedCandidate& b) {
                     return ranks_ahead(a.evaluation, b.evaluation);
                   });
  return ranked;
}

RankedCandidate find_best_location(std::span<const Customer> customers,
                                   const MapBounds& bounds,
                                   const TrafficModel& model,
                                   const RoutingParams& routing,
                                   const SearchParams& search,
                                   SearchStats* stats) {
  bounds.validate();
  routing.validate();
  search.validate();

  const std::vector<Point> coarse = grid_points(bounds, search.coarse_grid);
  std::vector<RankedCandidate> ranked =
      search_level(coarse, customers, model, routing, search.threads, stats);
  RankedCandidate best = ranked.front();

  const std::size_t keep = search.retained_count();
  for (int level = 1; level <= search.levels; ++level) {
    const double scale = std::pow(search.shrink_factor, level);
    const double half_w = 0.5 * bounds.width() / scale;
    const double half_h = 0.5 * bounds.height() / scale;

    std::vector<Point> candidates;
    const std::size_t leaders = std::min(keep, ranked.size());
    candidates.reserve(leaders * static_cast<std::size_t>(search.refine_grid) *
                       static_cast<std::size_t>(search.refine_grid));
    for (std::size_t k = 0; k < leaders; ++k) {
      const Point c = ranked[k].location;
      MapBounds region{
          {std::max(bounds.min.x, c.x - half_w), std::max(bounds.min.y, c.y - half_h)},
          {std::min(bounds.max.x, c.x + half_w), std::min(bounds.max.y, c.y + half_h)}};
      const auto pts = grid_points(region, search.refine_grid);
      candidates.insert(candidates.end(), pts.begin(), pts.end());
    }

    ranked = search_level(candidates, customers, model, routing, search.threads,
                          stats);
    if (ranks_ahead(ranked.front().evaluation, best.evaluation)) {
      best = ranked.front();
    }
  }
  return best;
}

Placement place_warehouses(std::span<const Customer> customers,
                           const MapBounds& bounds, const TrafficModel& model,
                           const RoutingParams& routing,
                           const SearchParams& search) {
  std::vector<Customer> remaining(customers.begin(), customers.end());
  Placement placement;

  for (int k = 0; k < search.n_warehouses && !remaining.empty(); ++k) {
    PlacedWarehouse w;
    w.customers_faced = remaining.size();
    RankedCandidate best =
        find_best_location(remaining, bounds, model, routing, search, &w.stats);
    if (best.evaluation.customers_served == 0) break;
    w.location = best.location;
    w.evaluation = std::move(best.evaluation);

    const auto ids = w.evaluation.served_ids();
    const std::unordered_set<CustomerId> served(ids.begin(), ids.end());
    std::erase_if(remaining,
                  [&](const Customer& c) { return served.contains(c.id); });
    placement.warehouses.push_back(std::move(w));
  }

  placement.unserved.reserve(remaining.size());
  for (const Customer& c : remaining) placement.unserved.push_back(c.id);
  return placement;
}

}  // namespace darkstore
