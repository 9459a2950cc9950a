#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <unordered_map>

#include "darkstore/scenario.hpp"

namespace darkstore {

namespace {

constexpr double kCanvasWidth = 800.0;
constexpr double kMargin = 20.0;

constexpr std::array<std::string_view, 8> kColors = {
    "orange", "green", "red", "blue", "purple", "brown", "magenta", "teal"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Map coordinates to SVG pixels, y axis pointing up.
class Projection {
 public:
  explicit Projection(const MapBounds& b)
      : bounds_(b), scale_((kCanvasWidth - 2 * kMargin) / b.width()) {}

  double width() const { return kCanvasWidth; }
  double height() const { return bounds_.height() * scale_ + 2 * kMargin; }
  double x(double mx) const { return (mx - bounds_.min.x) * scale_ + kMargin; }
  double y(double my) const { return (bounds_.max.y - my) * scale_ + kMargin; }
  double length(double d) const { return d * scale_; }

 private:
  MapBounds bounds_;
  double scale_;
};

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view warehouse_color(std::size_t index) {
  return kColors[index % kColors.size()];
}

std::string render_svg(const RunReport& report) {
  const ScenarioConfig& cfg = report.config;
  const Projection proj(cfg.bounds);
  std::ostringstream svg;

  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fmt(proj.width()) << "\" height=\"" << fmt(proj.height())
      << "\" viewBox=\"0 0 " << fmt(proj.width()) << ' ' << fmt(proj.height())
      << "\">\n";
  if (!cfg.name.empty()) svg << "  <title>" << escape(cfg.name) << "</title>\n";
  svg << "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" << fmt(proj.width())
      << "\" height=\"" << fmt(proj.height()) << "\" fill=\"white\"/>\n";
  svg << "  <rect class=\"map\" x=\"" << fmt(proj.x(cfg.bounds.min.x)) << "\" y=\""
      << fmt(proj.y(cfg.bounds.max.y)) << "\" width=\""
      << fmt(proj.length(cfg.bounds.width())) << "\" height=\""
      << fmt(proj.length(cfg.bounds.height()))
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Zones are drawn for uniform traffic too, for comparison across cases.
  svg << "  <g class=\"zones\">\n";
  for (double r : cfg.traffic.radii) {
    svg << "    <circle class=\"zone\" cx=\"" << fmt(proj.x(cfg.traffic.center.x))
        << "\" cy=\"" << fmt(proj.y(cfg.traffic.center.y)) << "\" r=\""
        << fmt(proj.length(r))
        << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
  }
  svg << "  </g>\n";

  std::unordered_map<CustomerId, std::size_t> served_by;
  const auto& placed = report.placement.warehouses;
  for (std::size_t w = 0; w < placed.size(); ++w) {
    for (CustomerId id : placed[w].evaluation.served_ids()) served_by[id] = w;
  }

  svg << "  <g class=\"customers\">\n";
  for (const Customer& c : report.customers) {
    const auto it = served_by.find(c.id);
    const std::string_view fill =
        it == served_by.end() ? std::string_view("#555555") : warehouse_color(it->second);
    svg << "    <circle class=\"customer\" data-id=\"" << c.id << "\" cx=\""
        << fmt(proj.x(c.location.x)) << "\" cy=\"" << fmt(proj.y(c.location.y))
        << "\" r=\"2.5\" fill=\"" << fill << "\"/>\n";
  }
  svg << "  </g>\n";

  svg << "  <g class=\"routes\">\n";
  for (std::size_t w = 0; w < placed.size(); ++w) {
    const Point depot = placed[w].location;
    const auto& trips = placed[w].evaluation.trips;
    for (std::size_t t = 0; t < trips.size(); ++t) {
      svg << "    <polyline class=\"route\" data-warehouse=\"" << (w + 1)
          << "\" data-trip=\"" << (t + 1) << "\" data-stops=\"";
      for (std::size_t s = 0; s < trips[t].stops.size(); ++s) {
        svg << (s ? " " : "") << trips[t].stops[s].id;
      }
      svg << "\" stroke=\"" << warehouse_color(w)
          << "\" stroke-width=\"1.5\" fill=\"none\" points=\"";
      svg << fmt(proj.x(depot.x)) << ',' << fmt(proj.y(depot.y));
      for (const Customer& c : trips[t].stops) {
        svg << ' ' << fmt(proj.x(c.location.x)) << ',' << fmt(proj.y(c.location.y));
      }
      svg << ' ' << fmt(proj.x(depot.x)) << ',' << fmt(proj.y(depot.y)) << "\"/>\n";
    }
  }
  svg << "  </g>\n";

  svg << "  <g class=\"warehouses\">\n";
  for (std::size_t w = 0; w < placed.size(); ++w) {
    const Point p = placed[w].location;
    svg << "    <rect class=\"warehouse\" data-warehouse=\"" << (w + 1) << "\" x=\""
        << fmt(proj.x(p.x) - 6) << "\" y=\"" << fmt(proj.y(p.y) - 6)
        << "\" width=\"12\" height=\"12\" fill=\"" << warehouse_color(w)
        << "\" stroke=\"black\"/>\n";
    svg << "    <text x=\"" << fmt(proj.x(p.x) + 8) << "\" y=\"" << fmt(proj.y(p.y) - 8)
        << "\" font-family=\"sans-serif\" font-size=\"12\">W" << (w + 1)
        << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace darkstore
