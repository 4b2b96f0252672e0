#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridforce/config.hpp"
#include "gridforce/lattice.hpp"

namespace gridforce {

/// Outcome of a windowed verifier. Quantifiers range over admissible
/// positions only (every probe in-window); the rest are counted as rim.
struct Verdict {
  bool pass = true;
  std::size_t checked = 0;
  std::size_t rim_excluded = 0;
  std::vector<Point> failing;
};

/// Condition (a): for every g in dom(p) some tau in T has g+tau, g+t+tau in
/// dom(p) with p(g+tau) != p(g+t+tau). Throws on t = 0.
bool check_shift_witness(const Config& p, const Point& t, const PointSet& T);
/// First g violating condition (a), if any.
std::optional<Point> first_shift_failure(const Config& p, const Point& t, const PointSet& T);

/// Conditions (b1) / (b2): every g in dom(p) has sigma in F with
/// g + sigma + dom(f) inside dom(p) and p = f (resp. 1 - f) there.
bool check_pattern_witness(const Config& p, const Config& f, const PointSet& F, bool flipped);
std::optional<Point> first_pattern_failure(const Config& p, const Config& f, const PointSet& F, bool flipped);

/// Windowed 2-coloring test for shift s: every admissible g has t in T with
/// x(g+t) != x(g+s+t).
Verdict window_two_coloring_check(const Config& x, const Point& s, const PointSet& T);
bool window_two_coloring_ok(const Config& x, const Point& s, const PointSet& T);

/// Windowed recurrence: every admissible g has tau in T with g+tau a B-position.
Verdict recurrence_check(const Config& x, const PatternSet& b, const PointSet& T);

/// Finite subset of O = { g : ||g|| odd } of bounded norm.
struct OddSet {
  Coord radius = 0;
  PointSet members;
};

/// {g : ||g|| odd, ||g|| <= radius}
OddSet odd_ball(Coord radius);

/// Smallest radius whose odd ball passes recurrence_check non-vacuously.
std::optional<OddSet> find_odd_recurrence(const Config& x, const PatternSet& b, Coord max_radius);

/// First lattice (spacings by (w+h, w, h), anchors lexicographic) with at
/// least min_points admissible in-window points, all of them B-positions.
std::optional<Lattice> find_lattice_in(const Config& x, const PatternSet& b, Coord max_spacing,
                                       std::size_t min_points = 9);

/// Lattice points of L whose pattern probes stay inside the window.
std::vector<Point> admissible_lattice_points(const Config& x, const PatternSet& b, const Lattice& lattice);

/// Integer colours over a rectangle, row-major like Config.
struct ColorGrid {
  Rect rect;
  std::vector<int> colors;

  ColorGrid(const Rect& r, std::vector<int> c);
  int at(const Point& g) const { return colors[rect.index(g)]; }
};

/// Proper colouring of the 4-neighbour grid graph with colours in [0, k).
bool chromatic_check(const ColorGrid& c, int k);

/// Maximal sub-rectangle (by shorter side, then area, then width; first in
/// scan order on ties) on which c is a proper colouring with at most two
/// colours.
Rect largest_two_colored_rect(const ColorGrid& c);

}  // namespace gridforce
