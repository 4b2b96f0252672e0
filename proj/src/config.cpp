#include "gridforce/config.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace gridforce {

Config::Config(const Rect& rect, bool fill)
    : rect_(rect), cells_(static_cast<std::size_t>(rect.area()), fill ? 1 : 0) {}

Config Config::from_rows(Point lo, const std::vector<std::string>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("Config::from_rows: empty rows");
  const auto w = static_cast<Coord>(rows.front().size());
  const auto h = static_cast<Coord>(rows.size());
  Config out(Rect(lo, pt(lo.x() + w - 1, lo.y() + h - 1)));
  for (Coord j = 0; j < h; ++j) {
    const auto& row = rows[static_cast<std::size_t>(j)];
    if (static_cast<Coord>(row.size()) != w) throw std::invalid_argument("Config::from_rows: ragged rows");
    for (Coord i = 0; i < w; ++i) {
      const Point g = pt(lo.x() + i, lo.y() + j);
      switch (row[static_cast<std::size_t>(i)]) {
        case '0': out.set(g, false); break;
        case '1': out.set(g, true); break;
        case '.': out.set_hole(g); break;
        default: throw std::invalid_argument("Config::from_rows: bad character");
      }
    }
  }
  return out;
}

bool Config::value(const Point& g) const {
  if (!defined(g)) throw std::out_of_range("Config::value: undefined point");
  return cells_[rect_.index(g)] == 1;
}

std::optional<bool> Config::at(const Point& g) const {
  if (!defined(g)) return std::nullopt;
  return cells_[rect_.index(g)] == 1;
}

void Config::set(const Point& g, bool v) {
  if (!rect_.contains(g)) throw std::out_of_range("Config::set: outside rect");
  cells_[rect_.index(g)] = v ? 1 : 0;
}

void Config::set_hole(const Point& g) {
  if (!rect_.contains(g)) throw std::out_of_range("Config::set_hole: outside rect");
  cells_[rect_.index(g)] = kHole;
}

PointSet Config::holes() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] == kHole) out.push_back(rect_.point_at(i));
  return PointSet(std::move(out));
}

std::size_t Config::hole_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), kHole));
}

std::vector<Point> Config::domain() const {
  std::vector<Point> out;
  out.reserve(cells_.size());
  for (const auto& g : rect_.points())
    if (defined(g)) out.push_back(g);
  return out;
}

bool matches_at(const Config& p, const Config& f, const Point& sigma, bool flipped) {
  const Rect& fr = f.rect();
  if (!p.rect().contains(fr.translated(sigma))) return false;
  const std::uint8_t inv = flipped ? 1 : 0;
  const Coord fw = fr.width();
  const Point base = fr.lo + sigma;
  for (Coord j = 0; j < fr.height(); ++j) {
    std::size_t pi = p.rect().index(pt(base.x(), base.y() + j));
    std::size_t fi = static_cast<std::size_t>(j * fw);
    for (Coord i = 0; i < fw; ++i, ++pi, ++fi) {
      const std::uint8_t pv = p.cell(pi);
      const std::uint8_t fv = f.cell(fi);
      if (pv == Config::kHole || fv == Config::kHole || pv != (fv ^ inv)) return false;
    }
  }
  return true;
}

bool PatternSet::matches_at(const Config& x, const Point& g) const {
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const Config& f) { return gridforce::matches_at(x, f, g, false); });
}

std::optional<Rect> PatternSet::extent() const {
  std::vector<Point> corners;
  for (const auto& f : patterns) {
    corners.push_back(f.rect().lo);
    corners.push_back(f.rect().hi);
  }
  return bounding_box(corners);
}

std::vector<std::uint8_t> PatternSet::position_mask(const Config& x) const {
  std::vector<std::uint8_t> mask(x.cell_count(), 0);
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = matches_at(x, x.rect().point_at(i)) ? 1 : 0;
  return mask;
}

Config flip(const Config& p) {
  Config out = p;
  for (const auto& g : p.rect().points())
    if (p.defined(g)) out.set(g, !p.value(g));
  return out;
}

Config tile(const Config& q, Coord nx, Coord ny, const FlipMask& mask, const Point& anchor) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("tile: counts must be >= 1");
  if (!q.hole_free()) throw std::invalid_argument("tile: building block must be hole-free");
  const Coord w = q.rect().width();
  const Coord h = q.rect().height();
  const Point hi = pt(checked_add(anchor.x(), checked_mul(nx, w) - 1), checked_add(anchor.y(), checked_mul(ny, h) - 1));
  Config out(Rect(anchor, hi));
  const Coord a = q.rect().lo.x();
  const Coord c = q.rect().lo.y();
  for (Coord i = 0; i < nx; ++i) {
    for (Coord j = 0; j < ny; ++j) {
      const bool flipped = mask && mask(i, j);
      for (Coord di = 0; di < w; ++di)
        for (Coord dj = 0; dj < h; ++dj) {
          const bool v = q.value(pt(a + di, c + dj));
          out.set(pt(anchor.x() + i * w + di, anchor.y() + j * h + dj), flipped ? !v : v);
        }
    }
  }
  return out;
}

PointSet find_occurrences(const Config& p, const Config& f, bool flipped) {
  if (!f.hole_free()) throw std::invalid_argument("find_occurrences: pattern must be hole-free");
  std::vector<Point> out;
  const Rect& pr = p.rect();
  const Rect& fr = f.rect();
  if (fr.width() > pr.width() || fr.height() > pr.height()) return {};
  // sigma ranges so that sigma + fr stays inside pr
  const Coord sx0 = pr.lo.x() - fr.lo.x(), sx1 = pr.hi.x() - fr.hi.x();
  const Coord sy0 = pr.lo.y() - fr.lo.y(), sy1 = pr.hi.y() - fr.hi.y();
  for (Coord sx = sx0; sx <= sx1; ++sx)
    for (Coord sy = sy0; sy <= sy1; ++sy)
      if (matches_at(p, f, pt(sx, sy), flipped)) out.push_back(pt(sx, sy));
  return PointSet(std::move(out));
}

namespace {
constexpr std::array<Point, 4> kNeighbours = {Point{{1, 0}}, Point{{-1, 0}}, Point{{0, 1}}, Point{{0, -1}}};
}

PointSet boundary(const PointSet& a) {
  std::vector<Point> out;
  for (const auto& g : a) {
    for (const auto& s : kNeighbours) {
      if (!a.contains(g + s)) {
        out.push_back(g);
        break;
      }
    }
  }
  return PointSet(std::move(out));
}

PointSet boundary(const Rect& r) {
  std::vector<Point> out;
  for (Coord x = r.lo.x(); x <= r.hi.x(); ++x) {
    out.push_back(pt(x, r.lo.y()));
    out.push_back(pt(x, r.hi.y()));
  }
  for (Coord y = r.lo.y(); y <= r.hi.y(); ++y) {
    out.push_back(pt(r.lo.x(), y));
    out.push_back(pt(r.hi.x(), y));
  }
  return PointSet(std::move(out));
}

Config restrict_to(const Config& p, const Rect& r) {
  if (!p.rect().contains(r)) throw std::invalid_argument("restrict_to: rectangle not inside configuration");
  Config out(r);
  for (const auto& g : r.points()) {
    if (p.is_hole(g))
      out.set_hole(g);
    else
      out.set(g, p.value(g));
  }
  return out;
}

Config translate(const Config& p, const Point& t) {
  Config out(p.rect().translated(t));
  for (const auto& g : p.rect().points()) {
    if (p.is_hole(g))
      out.set_hole(g + t);
    else
      out.set(g + t, p.value(g));
  }
  return out;
}

Point reflect(const Point& g, int sx, int sy) { return pt(sx * g.x(), sy * g.y()); }

PointSet reflect(const PointSet& s, int sx, int sy) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (const auto& g : s) out.push_back(reflect(g, sx, sy));
  return PointSet(std::move(out));
}

Config reflect(const Config& p, int sx, int sy) {
  const Point a = reflect(p.rect().lo, sx, sy);
  const Point b = reflect(p.rect().hi, sx, sy);
  Config out(Rect::from_bounds(std::min(a.x(), b.x()), std::max(a.x(), b.x()), std::min(a.y(), b.y()),
                               std::max(a.y(), b.y())));
  for (const auto& g : p.rect().points()) {
    if (p.is_hole(g))
      out.set_hole(reflect(g, sx, sy));
    else
      out.set(reflect(g, sx, sy), p.value(g));
  }
  return out;
}

std::string to_pgm(const Config& p) {
  std::ostringstream os;
  const Rect& r = p.rect();
  os << "P2\n" << r.width() << ' ' << r.height() << "\n2\n";
  for (Coord y = r.hi.y(); y >= r.lo.y(); --y) {
    for (Coord x = r.lo.x(); x <= r.hi.x(); ++x) {
      const auto v = p.at(pt(x, y));
      os << (x == r.lo.x() ? "" : " ") << (v ? (*v ? 2 : 0) : 1);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_ascii(const Config& p) {
  std::string out;
  const Rect& r = p.rect();
  for (Coord y = r.hi.y(); y >= r.lo.y(); --y) {
    for (Coord x = r.lo.x(); x <= r.hi.x(); ++x) {
      const auto v = p.at(pt(x, y));
      out += v ? (*v ? '1' : '0') : '.';
    }
    out += '\n';
  }
  return out;
}

}  // namespace gridforce
