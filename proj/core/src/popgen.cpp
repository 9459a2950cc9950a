#include "darkstore/popgen.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string_view>
#include <unordered_set>

namespace darkstore {

void MapBounds::validate() const {
  for (double v : {min.x, min.y, max.x, max.y}) {
    if (!std::isfinite(v)) throw std::invalid_argument("map bounds must be finite");
  }
  if (!(min.x < max.x) || !(min.y < max.y)) {
    throw std::invalid_argument("map bounds need min < max on both axes");
  }
}

std::vector<Customer> generate_uniform(const MapBounds& bounds,
                                       std::size_t count, std::uint64_t seed) {
  bounds.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xs(bounds.min.x, bounds.max.x);
  std::uniform_real_distribution<double> ys(bounds.min.y, bounds.max.y);

  std::vector<Customer> customers;
  customers.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = xs(rng);
    const double y = ys(rng);
    customers.push_back({static_cast<CustomerId>(i), {x, y}});
  }
  return customers;
}

std::vector<Customer> generate_gaussian(const MapBounds& bounds,
                                        std::size_t count, double sigma,
                                        std::uint64_t seed) {
  bounds.validate();
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw std::invalid_argument("gaussian sigma must be positive");
  }
  std::mt19937_64 rng(seed);
  const Point mid = bounds.center();
  std::normal_distribution<double> xs(mid.x, sigma);
  std::normal_distribution<double> ys(mid.y, sigma);

  std::vector<Customer> customers;
  customers.reserve(count);
  while (customers.size() < count) {
    const Point p{xs(rng), ys(rng)};
    if (!bounds.contains(p)) continue;
    customers.push_back({static_cast<CustomerId>(customers.size()), p});
  }
  return customers;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_customers_csv(std::ostream& out,
                         std::span<const Customer> customers) {
  out << "id,x,y\n";
  for (const Customer& c : customers) {
    out << c.id << ',' << format_double(c.location.x) << ','
        << format_double(c.location.y) << '\n';
  }
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line_no, const char* name) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw CsvError("line " + std::to_string(line_no) + ": invalid " + name +
                   " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<Customer> read_customers_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "id,x,y") {
    throw CsvError("line 1: expected header 'id,x,y'");
  }

  std::vector<Customer> customers;
  std::unordered_set<CustomerId> seen;
  while (next_line()) {
    if (line.empty()) continue;
    std::string_view row(line);
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        row.find(',', c2 + 1) != std::string_view::npos) {
      throw CsvError("line " + std::to_string(line_no) +
                     ": expected three fields id,x,y");
    }
    Customer c;
    c.id = parse_field<CustomerId>(row.substr(0, c1), line_no, "id");
    c.location.x = parse_field<double>(row.substr(c1 + 1, c2 - c1 - 1), line_no, "x");
    c.location.y = parse_field<double>(row.substr(c2 + 1), line_no, "y");
    if (!std::isfinite(c.location.x) || !std::isfinite(c.location.y)) {
      throw CsvError("line " + std::to_string(line_no) +
                     ": coordinates must be finite");
    }
    if (!seen.insert(c.id).second) {
      throw CsvError("line " + std::to_string(line_no) + ": duplicate id " +
                     std::to_string(c.id));
    }
    customers.push_back(c);
  }
  return customers;
}

}  // namespace darkstore
