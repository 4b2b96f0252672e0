#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gridforce {

using Coord = std::int64_t;

// Checked integer arithmetic. Constructions grow domains multiplicatively, so
// wraparound is reported instead of silently producing garbage.
inline Coord checked_add(Coord a, Coord b) {
  Coord r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coordinate overflow in addition");
  return r;
}
inline Coord checked_sub(Coord a, Coord b) {
  Coord r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("coordinate overflow in subtraction");
  return r;
}
inline Coord checked_mul(Coord a, Coord b) {
  Coord r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coordinate overflow in multiplication");
  return r;
}

/// Floor division and the matching non-negative remainder (b > 0).
inline Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline Coord floor_mod(Coord a, Coord b) { return a - floor_div(a, b) * b; }

/// A point of Z^D. Only D = 2 is used by the constructions; the norm and
/// arithmetic work for any D.
template <std::size_t D>
struct Vec {
  std::array<Coord, D> c{};

  constexpr Coord& operator[](std::size_t i) { return c[i]; }
  constexpr Coord operator[](std::size_t i) const { return c[i]; }

  constexpr Coord x() const requires(D >= 1) { return c[0]; }
  constexpr Coord y() const requires(D >= 2) { return c[1]; }

  friend constexpr auto operator<=>(const Vec&, const Vec&) = default;

  friend Vec operator+(const Vec& a, const Vec& b) {
    Vec r;
    for (std::size_t i = 0; i < D; ++i) r.c[i] = checked_add(a.c[i], b.c[i]);
    return r;
  }
  friend Vec operator-(const Vec& a, const Vec& b) {
    Vec r;
    for (std::size_t i = 0; i < D; ++i) r.c[i] = checked_sub(a.c[i], b.c[i]);
    return r;
  }
  friend Vec operator-(const Vec& a) { return Vec{} - a; }

  constexpr bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](Coord v) { return v == 0; });
  }
};

using Point = Vec<2>;

inline Point pt(Coord x, Coord y) { return Point{{x, y}}; }

/// ||g|| = sum |g_i|.
template <std::size_t D>
Coord taxicab_norm(const Vec<D>& g) {
  Coord s = 0;
  for (std::size_t i = 0; i < D; ++i) {
    if (g[i] == std::numeric_limits<Coord>::min()) throw std::overflow_error("taxicab norm overflow");
    s = checked_add(s, g[i] < 0 ? -g[i] : g[i]);
  }
  return s;
}

/// Sorted, duplicate-free finite set of points.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<Point> pts) : pts_(pts) { normalize(); }
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) { normalize(); }

  bool contains(const Point& p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }
  bool empty() const { return pts_.empty(); }
  std::size_t size() const { return pts_.size(); }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }
  std::span<const Point> points() const { return pts_; }

  void insert(const Point& p) {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) pts_.insert(it, p);
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  void normalize() {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }
  std::vector<Point> pts_;
};

/// Axis-aligned box [lo.x, hi.x] x [lo.y, hi.y], bounds inclusive.
struct Rect {
  Point lo;
  Point hi;

  Rect() = default;
  Rect(Point lo_, Point hi_) : lo(lo_), hi(hi_) {
    if (lo.x() > hi.x() || lo.y() > hi.y()) throw std::invalid_argument("Rect: lo must be <= hi componentwise");
    (void)width();
    (void)height();
  }
  /// [a,b] x [c,d]
  static Rect from_bounds(Coord a, Coord b, Coord c, Coord d) { return Rect(pt(a, c), pt(b, d)); }

  Coord width() const { return checked_add(checked_sub(hi.x(), lo.x()), 1); }
  Coord height() const { return checked_add(checked_sub(hi.y(), lo.y()), 1); }
  Coord area() const { return checked_mul(width(), height()); }

  bool contains(const Point& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }
  bool contains(const Rect& r) const { return contains(r.lo) && contains(r.hi); }

  Rect translated(const Point& t) const { return Rect(lo + t, hi + t); }

  /// Row-major index (x fastest) of a contained point.
  std::size_t index(const Point& p) const {
    return static_cast<std::size_t>((p.y() - lo.y()) * width() + (p.x() - lo.x()));
  }
  Point point_at(std::size_t idx) const {
    const auto w = static_cast<std::size_t>(width());
    return pt(lo.x() + static_cast<Coord>(idx % w), lo.y() + static_cast<Coord>(idx / w));
  }

  /// All points, lexicographic (x, then y) order.
  std::vector<Point> points() const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Intersection, or nullopt when empty.
std::optional<Rect> intersect(const Rect& a, const Rect& b);

/// Smallest box containing every point; nullopt for an empty set.
std::optional<Rect> bounding_box(std::span<const Point> pts);

/// Coset k + (wZ x hZ).
struct Lattice {
  Point anchor;
  Coord w = 1;
  Coord h = 1;

  Lattice() = default;
  Lattice(Point k, Coord w_, Coord h_) : anchor(k), w(w_), h(h_) {
    if (w < 1 || h < 1) throw std::invalid_argument("Lattice: spacings must be positive");
  }

  bool contains(const Point& g) const {
    return floor_mod(g.x() - anchor.x(), w) == 0 && floor_mod(g.y() - anchor.y(), h) == 0;
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// Distance value: nullopt stands for +infinity (empty target set).
using Distance = std::optional<Coord>;

/// rho(g, S) = min over s in S of ||g - s||.
Distance dist_to_set(const Point& g, std::span<const Point> s);
inline Distance dist_to_set(const Point& g, const PointSet& s) { return dist_to_set(g, s.points()); }

/// Points of L inside R, lexicographically sorted.
std::vector<Point> lattice_points_in(const Lattice& lattice, const Rect& r);

/// { g : 0 < ||g|| <= radius }, ordered by norm, then lexicographically.
std::vector<Point> nonzero_ball(Coord radius);

}  // namespace gridforce
