#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "darkstore/geo.hpp"

namespace darkstore {

using CustomerId = std::int64_t;

struct Customer {
  CustomerId id = 0;
  Point location;

  friend bool operator==(const Customer&, const Customer&) = default;
};

/// Axis-aligned rectangle holding the map. Requires min < max on both axes.
struct MapBounds {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  Point center() const {
    return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y)};
  }
  bool contains(Point p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }

  /// Throws std::invalid_argument when the rectangle is empty or non-finite.
  void validate() const;

  friend bool operator==(const MapBounds&, const MapBounds&) = default;
};

/// Customers i.i.d. uniform over `bounds`, ids 0..count-1.
std::vector<Customer> generate_uniform(const MapBounds& bounds,
                                       std::size_t count, std::uint64_t seed);

/// Customers i.i.d. normal around the map center with per-axis standard
/// deviation `sigma`. Out-of-bounds draws are rejected and redrawn.
std::vector<Customer> generate_gaussian(const MapBounds& bounds,
                                        std::size_t count, double sigma,
                                        std::uint64_t seed);

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `id,x,y` with a header row and LF line endings. Coordinates use
/// the shortest round-trip decimal representation.
void write_customers_csv(std::ostream& out, std::span<const Customer> customers);

/// Parses the format produced by write_customers_csv. Throws CsvError with
/// the offending line number on malformed input or duplicate ids.
std::vector<Customer> read_customers_csv(std::istream& in);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace darkstore
