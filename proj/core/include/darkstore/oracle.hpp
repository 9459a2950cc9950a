#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "darkstore/geo.hpp"
#include "darkstore/popgen.hpp"
#include "darkstore/router.hpp"

namespace darkstore {

/// Largest customer list the exhaustive searches accept.
inline constexpr std::size_t kOracleMaxCustomers = 8;

class OracleSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  std::size_t best_customers_served = 0;
  /// Path time of the witness, return legs included.
  double best_total_path_time = 0.0;
  /// The selected trips only, as a depot-delimited path.
  MultiTripPath witness;
};

/// Exhaustive search over every subset and ordering of the serviceable
/// customers: each ordering is split into trips, the top D trips are kept,
/// and the plan serving the most customers wins (ties: shorter witness path,
/// then enumeration order). Since evaluate_depot's output is one of the
/// enumerated plans, its served count can never exceed this one.
/// Throws OracleSizeError when customers.size() > kOracleMaxCustomers.
OracleResult exact_best_service(Point depot, std::span<const Customer> customers,
                                const TrafficModel& model,
                                const RoutingParams& params);

struct OracleDepot {
  Point location;
  OracleResult result;
};

/// exact_best_service at each candidate; most customers served wins, ties go
/// to the earlier candidate. Throws std::invalid_argument on no candidates.
OracleDepot exact_best_depot(std::span<const Point> candidates,
                             std::span<const Customer> customers,
                             const TrafficModel& model,
                             const RoutingParams& params);

}  // namespace darkstore
