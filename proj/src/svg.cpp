#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace burnstab {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0, kMargin = 48.0;

struct Bounds {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;

  void include(double x, double y) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }

  void pad() {
    const double dx = (x_hi - x_lo) * 0.05 + 1e-12;
    const double dy = (y_hi - y_lo) * 0.05 + 1e-12;
    x_lo -= dx; x_hi += dx;
    y_lo -= dy; y_hi += dy;
  }
};

Bounds fresh_bounds(double x0, double y0) {
  Bounds b;
  b.x_lo = b.x_hi = x0;
  b.y_lo = b.y_hi = y0;
  return b;
}

struct Mapper {
  Bounds b;
  double px(double x) const {
    return kMargin + (x - b.x_lo) / (b.x_hi - b.x_lo) * (kWidth - 2 * kMargin);
  }
  double py(double y) const {
    return kHeight - kMargin -
           (y - b.y_lo) / (b.y_hi - b.y_lo) * (kHeight - 2 * kMargin);
  }
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

void open_svg(std::ostringstream& s) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
    << kHeight << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& s, const Mapper& m, const std::string& x_label,
          const std::string& y_label) {
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
    << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
    << "\" fill=\"none\" stroke=\"#555\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = m.b.x_lo + (m.b.x_hi - m.b.x_lo) * i / 4.0;
    const double fy = m.b.y_lo + (m.b.y_hi - m.b.y_lo) * i / 4.0;
    s << "<text x=\"" << m.px(fx) << "\" y=\"" << kHeight - kMargin + 16
      << "\" font-size=\"10\" text-anchor=\"middle\">" << fx << "</text>\n";
    s << "<text x=\"" << kMargin - 6 << "\" y=\"" << m.py(fy) + 3
      << "\" font-size=\"10\" text-anchor=\"end\">" << fy << "</text>\n";
  }
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
    << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  s << "<text x=\"14\" y=\"" << kHeight / 2
    << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << kHeight / 2 << ")\">" << y_label << "</text>\n";
}

void polyline(std::ostringstream& s, const Mapper& m,
              const std::vector<std::pair<double, double>>& pts,
              const char* color) {
  if (pts.size() < 2) return;
  s << "<polyline fill=\"none\" stroke=\"" << color
    << "\" stroke-width=\"0.8\" points=\"";
  for (const auto& [x, y] : pts) s << m.px(x) << ',' << m.py(y) << ' ';
  s << "\"/>\n";
}

double coord_of(const State& st, int i) {
  return i == 0 ? st.a : (i == 1 ? st.f : st.b);
}

const char* coord_label(int i) { return i == 0 ? "a" : (i == 1 ? "f" : "b"); }

}  // namespace

std::string phase_svg(const std::vector<const Trajectory*>& trajs, Plane plane,
                      const State* marker) {
  const auto [iu, iv] = plane_axes(plane);
  Bounds b = marker ? fresh_bounds(coord_of(*marker, iu), coord_of(*marker, iv))
                    : Bounds{};
  bool seeded = marker != nullptr;
  for (const Trajectory* t : trajs)
    for (const State& st : t->states) {
      if (!seeded) {
        b = fresh_bounds(coord_of(st, iu), coord_of(st, iv));
        seeded = true;
      }
      b.include(coord_of(st, iu), coord_of(st, iv));
    }
  b.pad();
  Mapper m{b};

  std::ostringstream s;
  open_svg(s);
  axes(s, m, coord_label(iu), coord_label(iv));
  int ci = 0;
  for (const Trajectory* t : trajs) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t->states.size());
    for (const State& st : t->states)
      pts.emplace_back(coord_of(st, iu), coord_of(st, iv));
    polyline(s, m, pts, kColors[ci++ % 6]);
  }
  if (marker)
    s << "<circle cx=\"" << m.px(coord_of(*marker, iu)) << "\" cy=\""
      << m.py(coord_of(*marker, iv))
      << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string series_svg(const std::vector<const Trajectory*>& trajs,
                       int coord) {
  Bounds b;
  bool seeded = false;
  for (const Trajectory* t : trajs)
    for (std::size_t i = 0; i < t->times.size(); ++i) {
      if (!seeded) {
        b = fresh_bounds(t->times[i], coord_of(t->states[i], coord));
        seeded = true;
      }
      b.include(t->times[i], coord_of(t->states[i], coord));
    }
  b.pad();
  Mapper m{b};

  std::ostringstream s;
  open_svg(s);
  axes(s, m, "t", coord_label(coord));
  int ci = 0;
  for (const Trajectory* t : trajs) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t->times.size());
    for (std::size_t i = 0; i < t->times.size(); ++i)
      pts.emplace_back(t->times[i], coord_of(t->states[i], coord));
    polyline(s, m, pts, kColors[ci++ % 6]);
  }
  s << "</svg>\n";
  return s.str();
}

std::string field_svg(const StreamlineField& field) {
  const auto [iu, iv] = plane_axes(field.spec.plane);
  Bounds b;
  bool seeded = false;
  for (const FieldSample& fs : field.samples) {
    if (!seeded) {
      b = fresh_bounds(coord_of(fs.point, iu), coord_of(fs.point, iv));
      seeded = true;
    }
    b.include(coord_of(fs.point, iu), coord_of(fs.point, iv));
  }
  b.pad();
  Mapper m{b};

  // Arrow length: a fixed fraction of the grid pitch, direction from the field.
  const double pitch = std::min((b.x_hi - b.x_lo) / std::max(1, field.spec.nu),
                                (b.y_hi - b.y_lo) / std::max(1, field.spec.nv));

  std::ostringstream s;
  open_svg(s);
  axes(s, m, coord_label(iu), coord_label(iv));
  for (const FieldSample& fs : field.samples) {
    const double vx = coord_of(fs.velocity, iu);
    const double vy = coord_of(fs.velocity, iv);
    const double n = std::hypot(vx, vy);
    if (n == 0.0) {
      s << "<circle cx=\"" << m.px(coord_of(fs.point, iu)) << "\" cy=\""
        << m.py(coord_of(fs.point, iv)) << "\" r=\"1.5\" fill=\"#d62728\"/>\n";
      continue;
    }
    const double x0 = coord_of(fs.point, iu), y0 = coord_of(fs.point, iv);
    const double x1 = x0 + 0.4 * pitch * vx / n;
    const double y1 = y0 + 0.4 * pitch * vy / n;
    s << "<line x1=\"" << m.px(x0) << "\" y1=\"" << m.py(y0) << "\" x2=\""
      << m.px(x1) << "\" y2=\"" << m.py(y1)
      << "\" stroke=\"#555\" stroke-width=\"0.8\"/>\n"
      << "<circle cx=\"" << m.px(x0) << "\" cy=\"" << m.py(y0)
      << "\" r=\"1\" fill=\"#555\"/>\n";
  }
  int ci = 0;
  for (const Trajectory& t : field.short_trajectories) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t.states.size());
    for (const State& st : t.states)
      pts.emplace_back(coord_of(st, iu), coord_of(st, iv));
    polyline(s, m, pts, kColors[ci++ % 6]);
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace burnstab
