#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gridforce/lattice.hpp"

namespace gridforce {

/// A finite partial {0,1}-configuration: a dense grid over a rectangle with
/// optional hole cells where the value is undefined.
class Config {
 public:
  static constexpr std::uint8_t kHole = 2;

  Config() : Config(Rect(pt(0, 0), pt(0, 0))) {}
  explicit Config(const Rect& rect, bool fill = false);

  /// Rows are listed from low to high second coordinate, each row from low to
  /// high first coordinate; characters '0'/'1', '.' marks a hole.
  static Config from_rows(Point lo, const std::vector<std::string>& rows);

  const Rect& rect() const { return rect_; }

  bool in_rect(const Point& g) const { return rect_.contains(g); }
  bool defined(const Point& g) const { return rect_.contains(g) && cells_[rect_.index(g)] != kHole; }
  bool is_hole(const Point& g) const { return rect_.contains(g) && cells_[rect_.index(g)] == kHole; }

  /// Value at a defined point; throws std::out_of_range otherwise.
  bool value(const Point& g) const;
  std::optional<bool> at(const Point& g) const;

  void set(const Point& g, bool v);
  void set_hole(const Point& g);

  /// Raw cell (0, 1 or kHole) by row-major index.
  std::uint8_t cell(std::size_t idx) const { return cells_[idx]; }
  std::size_t cell_count() const { return cells_.size(); }

  PointSet holes() const;
  std::size_t hole_count() const;
  bool hole_free() const { return hole_count() == 0; }

  /// Defined points, lexicographic order.
  std::vector<Point> domain() const;

  friend bool operator==(const Config&, const Config&) = default;

 private:
  Rect rect_;
  std::vector<std::uint8_t> cells_;
};

/// Cylinder description of a set B: position g is a B-position iff some
/// pattern f satisfies x(g+u) = f(u) for every u in dom(f).
struct PatternSet {
  std::vector<Config> patterns;

  bool matches_at(const Config& x, const Point& g) const;
  /// Union of pattern boxes, used to decide whether a probe is in-window.
  std::optional<Rect> extent() const;
  /// Row-major mask over x.rect(): 1 where the position is a B-position.
  std::vector<std::uint8_t> position_mask(const Config& x) const;
};

/// Does f (translated by sigma) match p? Out-of-domain or hole cells never match.
bool matches_at(const Config& p, const Config& f, const Point& sigma, bool flipped = false);

/// Complement every defined bit; rect and holes unchanged.
Config flip(const Config& p);

using FlipMask = std::function<bool(Coord i, Coord j)>;

/// nx x ny grid of copies of q whose block (0,0) starts at anchor; block
/// (i,j) is flip(q) when mask(i,j). Requires q hole-free, nx, ny >= 1.
Config tile(const Config& q, Coord nx, Coord ny, const FlipMask& mask, const Point& anchor);

/// All sigma with sigma + dom(f) inside the defined part of p and
/// p(sigma+u) = f(u) (or 1 - f(u) when flipped).
PointSet find_occurrences(const Config& p, const Config& f, bool flipped);

/// Points of A with a 4-neighbour outside A.
PointSet boundary(const PointSet& a);
/// Boundary of a full rectangle, without materializing the interior.
PointSet boundary(const Rect& r);

/// Restriction to a sub-rectangle of p.rect().
Config restrict_to(const Config& p, const Rect& r);

/// (t . p)(t + g) = p(g).
Config translate(const Config& p, const Point& t);

/// Image under (x, y) -> (sx * x, sy * y) with sx, sy in {-1, +1}.
Config reflect(const Config& p, int sx, int sy);
Point reflect(const Point& g, int sx, int sy);
PointSet reflect(const PointSet& s, int sx, int sy);

/// P2 greymap, highest row first: bits as 0 / 2, holes as 1.
std::string to_pgm(const Config& p);
/// One text line per row, highest row first: '0', '1', '.' for holes.
std::string to_ascii(const Config& p);

}  // namespace gridforce
