#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace georoute {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_csv(std::ostream& out, const SweepReport& report, bool header) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << to_string(r.algorithm) << ',' << to_string(r.obstacle) << ',' << format_real(r.density) << ','
        << r.trials << ',' << format_real(r.success_rate) << ',' << format_real(r.median_hops) << ','
        << format_real(r.median_distance) << ',' << r.fail_ttl << ',' << r.fail_oob << ','
        << r.fail_stuck + r.fail_no_nodes << '\n';
  }
}

namespace {

class SvgCanvas {
 public:
  SvgCanvas(const Region& region, double scale) : region_(region), scale_(scale) {}

  double x(double wx) const { return (wx - region_.x_min) * scale_; }
  double y(double wy) const { return (region_.y_max - wy) * scale_; }
  double width() const { return region_.width() * scale_; }
  double height() const { return region_.height() * scale_; }

 private:
  Region region_;
  double scale_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_trace_svg(std::ostream& out, const World& world, const TrialOutcome& outcome, Vec2 source, Vec2 dest,
                     const TraceSvgOptions& options) {
  const SvgCanvas c(world.region(), options.pixels_per_unit);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(c.width()) << "\" height=\""
      << num(c.height()) << "\" viewBox=\"0 0 " << num(c.width()) << ' ' << num(c.height()) << "\">\n";
  out << "  <title>" << to_string(outcome.status) << ", " << outcome.hops << " hops</title>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << num(c.width()) << "\" height=\"" << num(c.height())
      << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";

  if (options.draw_nodes && world.size() > 0) {
    out << "  <g fill=\"#9a9a9a\">\n";
    for (const auto& p : world.positions()) {
      out << "    <circle cx=\"" << num(c.x(p.x)) << "\" cy=\"" << num(c.y(p.y)) << "\" r=\"1.2\"/>\n";
    }
    out << "  </g>\n";
  }
  if (!world.obstacle().walls.empty()) {
    out << "  <g stroke=\"black\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
    for (const auto& w : world.obstacle().walls) {
      out << "    <line x1=\"" << num(c.x(w.a.x)) << "\" y1=\"" << num(c.y(w.a.y)) << "\" x2=\"" << num(c.x(w.b.x))
          << "\" y2=\"" << num(c.y(w.b.y)) << "\"/>\n";
    }
    out << "  </g>\n";
  }

  out << "  <path fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" d=\"";
  for (std::size_t i = 0; i < outcome.path.size(); ++i) {
    out << (i == 0 ? "M" : " L") << num(c.x(outcome.path[i].x)) << ',' << num(c.y(outcome.path[i].y));
  }
  if (outcome.path.empty()) out << "M" << num(c.x(source.x)) << ',' << num(c.y(source.y));
  out << "\"/>\n";

  out << "  <circle cx=\"" << num(c.x(source.x)) << "\" cy=\"" << num(c.y(source.y))
      << "\" r=\"5\" fill=\"#2e86c1\"/>\n";
  out << "  <circle cx=\"" << num(c.x(dest.x)) << "\" cy=\"" << num(c.y(dest.y))
      << "\" r=\"" << num(options.pixels_per_unit) << "\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"2\"/>\n";
  out << "  <circle cx=\"" << num(c.x(dest.x)) << "\" cy=\"" << num(c.y(dest.y)) << "\" r=\"5\" fill=\"#27ae60\"/>\n";
  out << "</svg>\n";
}

void write_trace_csv(std::ostream& out, const TrialOutcome& outcome) {
  out << "step,x,y\n";
  char buf[96];
  for (std::size_t i = 0; i < outcome.path.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f\n", i, outcome.path[i].x, outcome.path[i].y);
    out << buf;
  }
}

}  // namespace georoute
