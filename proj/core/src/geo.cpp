#include "darkstore/geo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace darkstore {

double distance(Point a, Point b) { return std::hypot(b.x - a.x, b.y - a.y); }

TrafficModel::TrafficModel(Point center, std::vector<double> radii,
                           std::vector<double> multipliers)
    : center_(center),
      radii_(std::move(radii)),
      multipliers_(std::move(multipliers)) {}

TrafficModel TrafficModel::uniform(double minutes_per_unit) {
  return zoned(Point{}, {}, {minutes_per_unit});
}

TrafficModel TrafficModel::zoned(Point center, std::vector<double> radii,
                                 std::vector<double> multipliers) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw std::invalid_argument("traffic center must be finite");
  }
  if (multipliers.size() != radii.size() + 1) {
    throw std::invalid_argument(
        "traffic model needs exactly one more multiplier than zone radii (got " +
        std::to_string(multipliers.size()) + " multipliers, " +
        std::to_string(radii.size()) + " radii)");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || radii[i] <= 0.0) {
      throw std::invalid_argument("zone radii must be positive and finite");
    }
    if (i > 0 && radii[i] <= radii[i - 1]) {
      throw std::invalid_argument("zone radii must be strictly ascending");
    }
  }
  for (double m : multipliers) {
    if (!std::isfinite(m) || m <= 0.0) {
      throw std::invalid_argument("traffic multipliers must be positive");
    }
  }
  return TrafficModel(center, std::move(radii), std::move(multipliers));
}

double TrafficModel::min_multiplier() const {
  return *std::min_element(multipliers_.begin(), multipliers_.end());
}

double TrafficModel::max_multiplier() const {
  return *std::max_element(multipliers_.begin(), multipliers_.end());
}

double zone_multiplier(const TrafficModel& model, Point p) {
  const auto radii = model.radii();
  const auto multipliers = model.multipliers();
  if (radii.empty()) return multipliers.front();
  const double r = distance(model.center(), p);
  // First radius >= r: boundary points land in the inner zone.
  const auto it = std::lower_bound(radii.begin(), radii.end(), r);
  return multipliers[static_cast<std::size_t>(it - radii.begin())];
}

double travel_time(const TrafficModel& model, Point a, Point b) {
  // Integrate in a canonical direction so that t(a,b) == t(b,a) exactly.
  if (std::tie(b.x, b.y) < std::tie(a.x, a.y)) std::swap(a, b);

  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double length = std::hypot(dx, dy);
  if (length == 0.0) return 0.0;
  if (model.is_uniform()) return length * model.multipliers().front();

  // Segment parameters in (0,1) where a + t*(b-a) crosses a zone circle.
  std::vector<double> cuts;
  cuts.reserve(2 * model.radii().size() + 2);
  cuts.push_back(0.0);

  const double fx = a.x - model.center().x;
  const double fy = a.y - model.center().y;
  const double qa = dx * dx + dy * dy;
  const double qb = 2.0 * (fx * dx + fy * dy);
  const double ff = fx * fx + fy * fy;
  for (double r : model.radii()) {
    const double qc = ff - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) continue;
    // Numerically stable roots of qa t^2 + qb t + qc = 0.
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    const std::array<double, 2> roots{q / qa, qc / q};
    for (double t : roots) {
      if (t > 0.0 && t < 1.0) cuts.push_back(t);
    }
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double t0 = cuts[i - 1];
    const double t1 = cuts[i];
    if (t1 <= t0) continue;
    const double tm = 0.5 * (t0 + t1);
    const Point mid{a.x + tm * dx, a.y + tm * dy};
    total += (t1 - t0) * length * zone_multiplier(model, mid);
  }
  return total;
}

}  // namespace darkstore
