#include "causalgeo/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace causalgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed-point coordinate formatting: three decimals, no negative zero.
std::string fmt(double v) {
  if (std::fabs(v) < 5e-4) {
    v = 0.0;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string pt(double x, double y) { return fmt(x) + "," + fmt(y); }

void text_at(std::ostringstream& os, double x, double y, const std::string& body,
             const char* anchor = "middle", const char* size = "15") {
  os << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"" << size
     << "\" font-family=\"serif\" font-style=\"italic\" text-anchor=\"" << anchor << "\">"
     << body << "</text>\n";
}

void line(std::ostringstream& os, double x1, double y1, double x2, double y2,
          const char* style) {
  os << "  <line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
     << "\" y2=\"" << fmt(y2) << "\" " << style << "/>\n";
}

void dot(std::ostringstream& os, double x, double y, double r, const char* style) {
  os << "  <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r) << "\" "
     << style << "/>\n";
}

std::string svg_open(int w, int h, const std::string& title) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
     << "  <title>" << title << "</title>\n"
     << "  <rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  return os.str();
}

// ===== developed-sector figure =====

std::string cone_figure(const Report& report) {
  const double theta = report.claims().at("sector_angle_rad").at("value").get<double>();

  const double ax = 300.0, ay = 235.0;  // apex
  const double unit = 115.0;            // one base-length unit in px
  const double rim = 1.45 * unit;       // sector edge length drawn

  // Two adjacent developed copies of the sector, sharing the vertical edge.
  // Screen angles grow clockwise, so "up" is -pi/2.
  const double shared = -0.5 * kPi;
  const double start = shared - theta;
  const double stop = shared + theta;

  auto polar = [&](double r, double alpha) {
    return std::pair<double, double>{ax + r * std::cos(alpha), ay + r * std::sin(alpha)};
  };

  std::ostringstream os;
  os << svg_open(600, 420, "Two adjacent developed copies of the sector");

  const int large = theta > kPi ? 1 : 0;
  for (int copy = 0; copy < 2; ++copy) {
    const double a0 = copy == 0 ? start : shared;
    const double a1 = copy == 0 ? shared : stop;
    const auto [x0, y0] = polar(rim, a0);
    const auto [x1, y1] = polar(rim, a1);
    os << "  <path d=\"M " << pt(ax, ay) << " L " << pt(x0, y0) << " A " << fmt(rim) << " "
       << fmt(rim) << " 0 " << large << " 1 " << pt(x1, y1) << " Z\" fill=\""
       << (copy == 0 ? "#eef4fb" : "#fdf3e7") << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  }

  // Sample points a and b at unit radius, half a sector apart across the
  // shared edge; sigma is their direct developed chord, eta1/eta2 the legs of
  // the competing route through the apex.
  const auto [pax, pay] = polar(unit, shared - 0.25 * theta);
  const auto [pbx, pby] = polar(unit, shared + 0.25 * theta);
  line(os, pax, pay, pbx, pby, "stroke=\"#1b6f2a\" stroke-width=\"2\"");
  line(os, pax, pay, ax, ay, "stroke=\"#b03a2e\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
  line(os, ax, ay, pbx, pby, "stroke=\"#b03a2e\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
  dot(os, pax, pay, 3.5, "fill=\"#111111\"");
  dot(os, pbx, pby, 3.5, "fill=\"#111111\"");
  dot(os, ax, ay, 3.0, "fill=\"#b03a2e\"");

  text_at(os, pax - 14.0, pay + 2.0, "a");
  text_at(os, pbx + 14.0, pby + 2.0, "b");
  text_at(os, 0.5 * (pax + pbx), 0.5 * (pay + pby) - 9.0, "&#963;");
  text_at(os, 0.5 * (pax + ax) - 12.0, 0.5 * (pay + ay), "&#951;&#8321;");
  text_at(os, 0.5 * (ax + pbx) + 12.0, 0.5 * (ay + pby), "&#951;&#8322;");

  const double deg = theta * 180.0 / kPi;
  text_at(os, ax, 410.0, "&#952; = " + fmt(deg) + "&#176; per copy", "middle", "14");
  os << "</svg>\n";
  return os.str();
}

// ===== punctured-axis figure =====

std::string punctured_figure() {
  const double axis_y = 150.0;
  const double x_scale = 118.0;
  const double t_scale = 90.0;
  auto X = [&](double x) { return 300.0 + x * x_scale; };
  auto Y = [&](double t) { return axis_y - t * t_scale; };

  std::ostringstream os;
  os << svg_open(600, 300, "The punctured axis with the fixed event pair");

  // Crossing windows on the axis: future window of p = (-1, 1) is (0, 2);
  // past window of q = (1, -1) is (-2, 0).
  os << "  <rect x=\"" << fmt(X(0.0)) << "\" y=\"" << fmt(axis_y - 5.0) << "\" width=\""
     << fmt(2.0 * x_scale) << "\" height=\"10\" fill=\"#1b6f2a\" fill-opacity=\"0.18\"/>\n";
  os << "  <rect x=\"" << fmt(X(-2.0)) << "\" y=\"" << fmt(axis_y - 5.0) << "\" width=\""
     << fmt(2.0 * x_scale) << "\" height=\"10\" fill=\"#1a5276\" fill-opacity=\"0.18\"/>\n";

  // Reachable-gap bar: the right gap (0, inf) is the only sheet meeting both
  // closures in the future direction.
  os << "  <rect x=\"" << fmt(X(0.0)) << "\" y=\"" << fmt(axis_y + 8.0) << "\" width=\""
     << fmt(2.0 * x_scale) << "\" height=\"5\" fill=\"#d4ac0d\"/>\n";

  line(os, 40.0, axis_y, 560.0, axis_y, "stroke=\"#333333\" stroke-width=\"1.2\"");

  // Light rays bounding the windows.
  const double px = X(1.0), py = Y(-1.0), qx = X(-1.0), qy = Y(1.0);
  const char* ray = "stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4,4\"";
  line(os, px, py, X(0.0), axis_y, ray);
  line(os, px, py, X(2.0), axis_y, ray);
  line(os, qx, qy, X(-2.0), axis_y, ray);
  line(os, qx, qy, X(0.0), axis_y, ray);

  // Removed points: the origin and the accumulating left sequence.
  dot(os, X(0.0), axis_y, 3.2, "fill=\"white\" stroke=\"#b03a2e\" stroke-width=\"1.6\"");
  for (int k = 1; k <= 12; ++k) {
    dot(os, X(-1.0 / k), axis_y, 2.6, "fill=\"white\" stroke=\"#b03a2e\" stroke-width=\"1.3\"");
  }
  text_at(os, X(0.0) + 2.0, axis_y - 12.0, "r");
  text_at(os, X(-1.0), axis_y + 22.0, "r&#8321;");
  text_at(os, X(-0.5), axis_y + 22.0, "r&#8322;");
  text_at(os, X(-1.0 / 3.0), axis_y - 12.0, "r&#8323;");
  text_at(os, X(-0.17), axis_y + 22.0, "&#8943;", "middle", "13");

  dot(os, px, py, 3.5, "fill=\"#111111\"");
  dot(os, qx, qy, 3.5, "fill=\"#111111\"");
  text_at(os, px + 13.0, py + 4.0, "p");
  text_at(os, qx - 13.0, qy + 4.0, "q");

  text_at(os, X(1.0), axis_y - 40.0, "future window of p", "middle", "12");
  text_at(os, X(-1.0), axis_y + 44.0, "past window of q", "middle", "12");
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string emit_svg(const Scenario& s, const Report& report) {
  if (s.name == "cone-cover-closure") {
    return cone_figure(report);
  }
  if (s.name == "punctured-reflectivity") {
    return punctured_figure();
  }
  throw scenario_error("scenario '" + s.name + "' has no diagram mapping");
}

}  // namespace causalgeo
