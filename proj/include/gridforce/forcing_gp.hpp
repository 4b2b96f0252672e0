#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gridforce/config.hpp"
#include "gridforce/forcing_mt.hpp"
#include "gridforce/lattice.hpp"

namespace gridforce {

/// A condition of the grid periodicity forcing P_gp(n): a configuration on a
/// rectangle with power-of-n sides and exactly one hole u.
struct GpCondition {
  int n = 2;
  Config p;

  const Rect& rect() const { return p.rect(); }
  Coord w() const { return p.rect().width(); }
  Coord h() const { return p.rect().height(); }
  /// The unique hole; throws std::logic_error unless there is exactly one.
  Point u() const;

  friend bool operator==(const GpCondition&, const GpCondition&) = default;
};

bool is_power_of(Coord value, Coord base);
/// Smallest power of base that is >= value.
Coord next_power_of(Coord value, Coord base);

bool validate_gp(const GpCondition& c);

/// c1 <= c2: R(c1) is tiled by R(c2) over an offset set A, c1 copies c2 on
/// every tile, and u(c1) = u(c2) + t for some t in A.
bool is_extension_gp(const GpCondition& c1, const GpCondition& c2);

/// Inclusive tile index ranges i0..i1, j0..j1 (tile (i,j) sits at (i w, j h)).
struct TileRanges {
  Coord i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  Coord nx() const { return i1 - i0 + 1; }
  Coord ny() const { return j1 - j0 + 1; }
};

/// Offsets A = { (i w(q), j h(q)) } for the given ranges.
std::vector<Point> tile_offsets(const GpCondition& q, const TileRanges& ranges);

/// Tile q over the ranges, put the new hole at u(q) + new_hole_offset and
/// fill the other displaced holes from hole_fills (default 0). Throws
/// std::invalid_argument when the offset is not in A or a tile count is not
/// a power of n.
GpCondition extend_tile_gp(const GpCondition& q, const TileRanges& ranges, const Point& new_hole_offset,
                           const std::map<Point, bool>& hole_fills = {});

/// A horizontal (row y = index) or vertical (column x = index) line.
struct Line {
  enum class Axis { Row, Col };
  Axis axis = Axis::Row;
  Coord index = 0;

  static Line row(Coord y) { return {Axis::Row, y}; }
  static Line col(Coord x) { return {Axis::Col, x}; }
  friend auto operator<=>(const Line&, const Line&) = default;
};

std::string describe(const Line& l);

/// Does u + (wZ x hZ) meet the line?
bool hole_lattice_meets(const Point& u, Coord w, Coord h, const Line& l);

struct GpShiftStep {
  GpCondition condition;
  Point g;  // p(g) != p(g + s)
};

/// Extend q so that u(q) + s is covered and p(u(q)) != p(u(q) + s). New hole
/// offsets meeting any line in `avoid` are skipped when possible.
GpShiftStep discriminate_shift_gp(const GpCondition& q, const Point& s, const std::vector<Line>& avoid = {});

/// Extend q until g is a defined point.
GpCondition cover_gp(const GpCondition& q, const Point& g, const std::vector<Line>& avoid = {});

/// Extend q until its hole lattice misses the line.
GpCondition line_clear_gp(const GpCondition& q, const Line& line, const std::vector<Line>& avoid = {});

struct LineClear {
  Line line;
};

using GpRequirement = std::variant<Shift, Cover, LineClear>;
using GpSchedule = std::vector<GpRequirement>;

std::string describe(const GpRequirement& r);

struct GpLimits {
  Coord max_side = 4096;
  std::size_t max_steps = 10000;
  /// Tiles per axis of the emitted window; 0 picks the smallest power of n >= 4.
  Coord window_blocks = 0;
};

struct GpStepRecord {
  GpRequirement requirement;
  std::string action;  // "unchanged" or "extended"
  std::optional<Point> witness;
  Rect domain;
  Point hole;
};

struct GpCertificate {
  GpCondition seed;
  GpCondition final_condition;
  /// One more extension of final_condition; the emitted approximation of x_G.
  GpCondition window;
  std::vector<GpStepRecord> steps;
};

GpCertificate build_generic_gp(const GpCondition& seed, const GpSchedule& sched, const GpLimits& limits);

std::vector<std::string> replay(const GpCertificate& cert);

/// Minimal period of the in-window segment of x on the line; the segment
/// length when nothing shorter is consistent, nullopt below length 2. Throws
/// std::invalid_argument if the line misses the window or crosses a hole.
std::optional<Coord> detect_line_period(const Config& x, const Line& line);

/// Every residue class k mod (w, h) other than u's is constant on the window.
bool verify_grid_periodicity(const Config& x, Coord w, Coord h, const Point& u);
std::optional<Point> grid_periodicity_failure(const Config& x, Coord w, Coord h, const Point& u);

struct LatticeDemo {
  GpCertificate cert;
  Lattice lattice;
  std::vector<Point> verified_points;
  bool pass = false;
};

/// Seed a condition containing f at translation 0, build, and verify that
/// f occurs at every admissible point of (0,0) + (w_final Z x h_final Z).
LatticeDemo lattice_demo(const Config& f, const GpSchedule& sched, const GpLimits& limits, int n = 2);

/// A function of the size x size patch at a position (patch translated to
/// start at the origin).
struct LocalRule {
  Coord size = 1;
  std::function<std::int64_t(const Config&)> eval;
};

struct ConstantDemo {
  GpCertificate cert;
  Lattice lattice;
  std::int64_t value = 0;
  std::vector<Point> points;
  bool pass = false;
};

/// Patch of x at g, translated to [0, size)^2.
Config patch_at(const Config& x, const Point& g, Coord size);

ConstantDemo constant_on_lattice_demo(const LocalRule& rule, const GpSchedule& sched, const GpLimits& limits,
                                      int n = 2);

/// P2 render of a window with the hole lattice of (w, h, u) highlighted:
/// bits 0 / 2, holes 1, defined hole-lattice cells 3.
std::string to_pgm_gp(const Config& x, Coord w, Coord h, const Point& u);

}  // namespace gridforce
