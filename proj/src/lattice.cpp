#include "gridforce/lattice.hpp"

#include <algorithm>

namespace gridforce {

std::vector<Point> Rect::points() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(area()));
  for (Coord x = lo.x(); x <= hi.x(); ++x)
    for (Coord y = lo.y(); y <= hi.y(); ++y) out.push_back(pt(x, y));
  return out;
}

std::optional<Rect> intersect(const Rect& a, const Rect& b) {
  const Coord x0 = std::max(a.lo.x(), b.lo.x());
  const Coord x1 = std::min(a.hi.x(), b.hi.x());
  const Coord y0 = std::max(a.lo.y(), b.lo.y());
  const Coord y1 = std::min(a.hi.y(), b.hi.y());
  if (x0 > x1 || y0 > y1) return std::nullopt;
  return Rect::from_bounds(x0, x1, y0, y1);
}

std::optional<Rect> bounding_box(std::span<const Point> pts) {
  if (pts.empty()) return std::nullopt;
  Coord x0 = pts[0].x(), x1 = x0, y0 = pts[0].y(), y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x());
    x1 = std::max(x1, p.x());
    y0 = std::min(y0, p.y());
    y1 = std::max(y1, p.y());
  }
  return Rect::from_bounds(x0, x1, y0, y1);
}

Distance dist_to_set(const Point& g, std::span<const Point> s) {
  Distance best;
  for (const auto& p : s) {
    const Coord d = taxicab_norm(g - p);
    if (!best || d < *best) best = d;
  }
  return best;
}

std::vector<Point> lattice_points_in(const Lattice& lattice, const Rect& r) {
  std::vector<Point> out;
  // first lattice coordinate >= lo on each axis
  const Coord x0 = r.lo.x() + floor_mod(lattice.anchor.x() - r.lo.x(), lattice.w);
  const Coord y0 = r.lo.y() + floor_mod(lattice.anchor.y() - r.lo.y(), lattice.h);
  for (Coord x = x0; x <= r.hi.x(); x += lattice.w)
    for (Coord y = y0; y <= r.hi.y(); y += lattice.h) out.push_back(pt(x, y));
  return out;
}

std::vector<Point> nonzero_ball(Coord radius) {
  std::vector<Point> out;
  for (Coord x = -radius; x <= radius; ++x)
    for (Coord y = -radius; y <= radius; ++y)
      if (const Coord n = taxicab_norm(pt(x, y)); n > 0 && n <= radius) out.push_back(pt(x, y));
  std::stable_sort(out.begin(), out.end(),
                   [](const Point& a, const Point& b) { return taxicab_norm(a) < taxicab_norm(b); });
  return out;
}

}  // namespace gridforce
