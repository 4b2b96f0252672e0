#include "gridforce/witness.hpp"

#include <stdexcept>

namespace gridforce {

namespace {

bool differs_at(const Config& p, const Point& g, const Point& t, const Point& tau) {
  const Point a = g + tau;
  const Point b = a + t;
  const auto va = p.at(a);
  if (!va) return false;
  const auto vb = p.at(b);
  return vb && *va != *vb;
}

// Occurrence mask of f in p indexed by translation sigma.
class OccurrenceMap {
 public:
  OccurrenceMap(const Config& p, const Config& f, bool flipped) {
    const Rect& pr = p.rect();
    const Rect& fr = f.rect();
    if (fr.width() > pr.width() || fr.height() > pr.height()) return;
    range_ = Rect::from_bounds(pr.lo.x() - fr.lo.x(), pr.hi.x() - fr.hi.x(), pr.lo.y() - fr.lo.y(),
                               pr.hi.y() - fr.hi.y());
    mask_.assign(static_cast<std::size_t>(range_->area()), 0);
    for (std::size_t i = 0; i < mask_.size(); ++i)
      mask_[i] = matches_at(p, f, range_->point_at(i), flipped) ? 1 : 0;
  }
  bool contains(const Point& sigma) const { return range_ && range_->contains(sigma) && mask_[range_->index(sigma)]; }

 private:
  std::optional<Rect> range_;
  std::vector<std::uint8_t> mask_;
};

// Rect of positions g such that g + probe stays in window, or nullopt.
std::optional<Rect> admissible_region(const Rect& window, const Rect& probe) {
  const Coord x0 = window.lo.x() - probe.lo.x();
  const Coord x1 = window.hi.x() - probe.hi.x();
  const Coord y0 = window.lo.y() - probe.lo.y();
  const Coord y1 = window.hi.y() - probe.hi.y();
  if (x0 > x1 || y0 > y1) return std::nullopt;
  return Rect::from_bounds(x0, x1, y0, y1);
}

}  // namespace

std::optional<Point> first_shift_failure(const Config& p, const Point& t, const PointSet& T) {
  if (t.is_zero()) throw std::invalid_argument("shift witness: t must be nonzero");
  for (const auto& g : p.domain()) {
    bool ok = false;
    for (const auto& tau : T) {
      if (differs_at(p, g, t, tau)) {
        ok = true;
        break;
      }
    }
    if (!ok) return g;
  }
  return std::nullopt;
}

bool check_shift_witness(const Config& p, const Point& t, const PointSet& T) {
  return !first_shift_failure(p, t, T).has_value();
}

std::optional<Point> first_pattern_failure(const Config& p, const Config& f, const PointSet& F, bool flipped) {
  if (!f.hole_free()) throw std::invalid_argument("pattern witness: pattern must be hole-free");
  const OccurrenceMap occ(p, f, flipped);
  for (const auto& g : p.domain()) {
    bool ok = false;
    for (const auto& sigma : F) {
      if (occ.contains(g + sigma)) {
        ok = true;
        break;
      }
    }
    if (!ok) return g;
  }
  return std::nullopt;
}

bool check_pattern_witness(const Config& p, const Config& f, const PointSet& F, bool flipped) {
  return !first_pattern_failure(p, f, F, flipped).has_value();
}

Verdict window_two_coloring_check(const Config& x, const Point& s, const PointSet& T) {
  if (s.is_zero()) throw std::invalid_argument("window_two_coloring_check: s must be nonzero");
  Verdict v;
  const Rect& win = x.rect();
  std::optional<Rect> region = win;
  if (const auto box = bounding_box(T.points())) {
    // both g + T and g + s + T must be inside the window
    const auto probe = bounding_box(std::vector<Point>{box->lo, box->hi, box->lo + s, box->hi + s});
    region = admissible_region(win, *probe);
  }
  for (const auto& g : win.points()) {
    if (!region || !region->contains(g)) {
      ++v.rim_excluded;
      continue;
    }
    ++v.checked;
    bool ok = false;
    for (const auto& tau : T) {
      if (differs_at(x, g, s, tau)) {
        ok = true;
        break;
      }
    }
    if (!ok) v.failing.push_back(g);
  }
  v.pass = v.failing.empty();
  return v;
}

bool window_two_coloring_ok(const Config& x, const Point& s, const PointSet& T) {
  return window_two_coloring_check(x, s, T).pass;
}

Verdict recurrence_check(const Config& x, const PatternSet& b, const PointSet& T) {
  Verdict v;
  const Rect& win = x.rect();
  const auto mask = b.position_mask(x);
  std::optional<Rect> region = win;
  if (const auto box = bounding_box(T.points())) {
    const Rect ext = b.extent().value_or(Rect(pt(0, 0), pt(0, 0)));
    const Rect probe = Rect(box->lo + ext.lo, box->hi + ext.hi);
    region = admissible_region(win, probe);
  }
  for (const auto& g : win.points()) {
    if (!region || !region->contains(g)) {
      ++v.rim_excluded;
      continue;
    }
    ++v.checked;
    bool ok = false;
    for (const auto& tau : T) {
      const Point q = g + tau;
      if (win.contains(q) && mask[win.index(q)]) {
        ok = true;
        break;
      }
    }
    if (!ok) v.failing.push_back(g);
  }
  v.pass = v.failing.empty();
  return v;
}

OddSet odd_ball(Coord radius) {
  std::vector<Point> pts;
  for (Coord x = -radius; x <= radius; ++x)
    for (Coord y = -radius; y <= radius; ++y) {
      const Coord n = taxicab_norm(pt(x, y));
      if (n <= radius && n % 2 == 1) pts.push_back(pt(x, y));
    }
  return OddSet{radius, PointSet(std::move(pts))};
}

std::optional<OddSet> find_odd_recurrence(const Config& x, const PatternSet& b, Coord max_radius) {
  // even radii add no odd-norm points, so only odd radii are candidates
  for (Coord r = 1; r <= max_radius; r += 2) {
    OddSet t = odd_ball(r);
    const Verdict v = recurrence_check(x, b, t.members);
    if (v.checked == 0) return std::nullopt;
    if (v.pass) return t;
  }
  return std::nullopt;
}

std::vector<Point> admissible_lattice_points(const Config& x, const PatternSet& b, const Lattice& lattice) {
  std::vector<Point> out;
  const Rect ext = b.extent().value_or(Rect(pt(0, 0), pt(0, 0)));
  const auto region = admissible_region(x.rect(), ext);
  if (!region) return out;
  return lattice_points_in(lattice, *region);
}

std::optional<Lattice> find_lattice_in(const Config& x, const PatternSet& b, Coord max_spacing,
                                       std::size_t min_points) {
  const Rect& win = x.rect();
  const auto mask = b.position_mask(x);
  for (Coord sum = 2; sum <= 2 * max_spacing; ++sum) {
    for (Coord w = std::max<Coord>(1, sum - max_spacing); w <= std::min(max_spacing, sum - 1); ++w) {
      const Coord h = sum - w;
      for (Coord kx = 0; kx < w; ++kx)
        for (Coord ky = 0; ky < h; ++ky) {
          const Lattice lattice(win.lo + pt(kx, ky), w, h);
          const auto pts = admissible_lattice_points(x, b, lattice);
          if (pts.size() < min_points) continue;
          const bool all = std::all_of(pts.begin(), pts.end(), [&](const Point& g) { return mask[win.index(g)] != 0; });
          if (all) return lattice;
        }
    }
  }
  return std::nullopt;
}

ColorGrid::ColorGrid(const Rect& r, std::vector<int> c) : rect(r), colors(std::move(c)) {
  if (static_cast<Coord>(colors.size()) != rect.area()) throw std::invalid_argument("ColorGrid: size mismatch");
}

bool chromatic_check(const ColorGrid& c, int k) {
  for (const auto& g : c.rect.points()) {
    const int v = c.at(g);
    if (v < 0 || v >= k) return false;
    const Point r = g + pt(1, 0);
    const Point u = g + pt(0, 1);
    if (c.rect.contains(r) && c.at(r) == v) return false;
    if (c.rect.contains(u) && c.at(u) == v) return false;
  }
  return true;
}

namespace {

// 2D prefix sums of an indicator over a W x H grid.
class Prefix {
 public:
  Prefix(Coord w, Coord h) : w_(w), h_(h), s_(static_cast<std::size_t>((w + 1) * (h + 1)), 0) {}
  void set(Coord x, Coord y) { raw_.push_back({x, y}); }
  void build() {
    std::vector<int> grid(static_cast<std::size_t>(w_ * h_), 0);
    for (auto [x, y] : raw_) grid[static_cast<std::size_t>(y * w_ + x)] = 1;
    for (Coord y = 0; y < h_; ++y)
      for (Coord x = 0; x < w_; ++x)
        at(x + 1, y + 1) = grid[static_cast<std::size_t>(y * w_ + x)] + at(x, y + 1) + at(x + 1, y) - at(x, y);
  }
  /// Count over [x0, x1] x [y0, y1]; empty ranges count 0.
  int count(Coord x0, Coord x1, Coord y0, Coord y1) const {
    if (x0 > x1 || y0 > y1) return 0;
    return get(x1 + 1, y1 + 1) - get(x0, y1 + 1) - get(x1 + 1, y0) + get(x0, y0);
  }

 private:
  int& at(Coord x, Coord y) { return s_[static_cast<std::size_t>(y * (w_ + 1) + x)]; }
  int get(Coord x, Coord y) const { return s_[static_cast<std::size_t>(y * (w_ + 1) + x)]; }
  Coord w_, h_;
  std::vector<int> s_;
  std::vector<std::pair<Coord, Coord>> raw_;
};

}  // namespace

Rect largest_two_colored_rect(const ColorGrid& c) {
  const Coord W = c.rect.width();
  const Coord H = c.rect.height();
  auto col = [&](Coord x, Coord y) { return c.colors[static_cast<std::size_t>(y * W + x)]; };
  // Proper with <= 2 colours <=> no equal neighbours and every same-parity
  // pair at offsets (1,1), (1,-1), (2,0), (0,2) agrees.
  Prefix right(W, H), up(W, H), diag(W, H), anti(W, H), h2(W, H), v2(W, H);
  for (Coord y = 0; y < H; ++y)
    for (Coord x = 0; x < W; ++x) {
      if (x + 1 < W && col(x, y) == col(x + 1, y)) right.set(x, y);
      if (y + 1 < H && col(x, y) == col(x, y + 1)) up.set(x, y);
      if (x + 1 < W && y + 1 < H && col(x, y) != col(x + 1, y + 1)) diag.set(x, y);
      if (x + 1 < W && y + 1 < H && col(x + 1, y) != col(x, y + 1)) anti.set(x, y);
      if (x + 2 < W && col(x, y) != col(x + 2, y)) h2.set(x, y);
      if (y + 2 < H && col(x, y) != col(x, y + 2)) v2.set(x, y);
    }
  for (auto* p : {&right, &up, &diag, &anti, &h2, &v2}) p->build();

  Coord best_min = 0, best_area = 0;
  Rect best = Rect(c.rect.lo, c.rect.lo);
  for (Coord x0 = 0; x0 < W; ++x0)
    for (Coord y0 = 0; y0 < H; ++y0)
      for (Coord x1 = x0; x1 < W; ++x1) {
        if (right.count(x0, x1 - 1, y0, y0) > 0 || h2.count(x0, x1 - 2, y0, y0) > 0) break;
        for (Coord y1 = y0; y1 < H; ++y1) {
          const bool ok = right.count(x0, x1 - 1, y0, y1) == 0 && up.count(x0, x1, y0, y1 - 1) == 0 &&
                          diag.count(x0, x1 - 1, y0, y1 - 1) == 0 && anti.count(x0, x1 - 1, y0, y1 - 1) == 0 &&
                          h2.count(x0, x1 - 2, y0, y1) == 0 && v2.count(x0, x1, y0, y1 - 2) == 0;
          if (!ok) break;
          const Coord w = x1 - x0 + 1, h = y1 - y0 + 1;
          const Coord m = std::min(w, h), area = w * h;
          if (m > best_min || (m == best_min && area > best_area) ||
              (m == best_min && area == best_area && w > best.width())) {
            best_min = m;
            best_area = area;
            best = Rect(c.rect.lo + pt(x0, y0), c.rect.lo + pt(x1, y1));
          }
        }
      }
  return best;
}

}  // namespace gridforce
