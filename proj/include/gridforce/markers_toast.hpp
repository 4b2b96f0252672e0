#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridforce/config.hpp"
#include "gridforce/lattice.hpp"

namespace gridforce {

// ---------------------------------------------------------------------------
// Rectangular marker partitions

struct RectPartition {
  int level = 0;
  std::vector<Rect> rects;

  /// Smallest / largest edge length over all rects.
  Coord min_edge() const;
  Coord max_edge() const;
};

struct PartitionLevelReport {
  int level = 0;
  Coord v = 0;  // min edge
  Coord w = 0;  // max edge
  bool partitions_window = true;
};

struct ProbeProfile {
  Point probe;
  std::vector<Coord> phi;  // rho(probe, union of rect boundaries) per level
  bool looks_divergent = false;
};

struct PartitionReport {
  Rect window;
  std::vector<PartitionLevelReport> levels;
  std::vector<ProbeProfile> probes;
  /// v(n) decreased somewhere: clause (increasing size) contradicted at window scale.
  bool increasing_size_violated = false;
  /// Probes whose profile is not non-decreasing with last > first.
  std::vector<Point> flagged_probes;
};

/// Per-level edge bounds and per-probe boundary-distance profiles. All
/// partitions must share one window (the bounding box of level 0).
PartitionReport check_partition_props(const std::vector<RectPartition>& seq, const std::vector<Point>& probes);

// ---------------------------------------------------------------------------
// Shifted-stack condition

/// Columns of copies of p (domain [-a,a]^2), column c pushed down by
/// c mod (2a+1), restricted to [0,b]^2. Requires b >= 2a+1.
Config build_shifted_stack(const Config& p, Coord b);

/// Centres of full copies of p inside the window under that layout.
PointSet copy_centers(Coord a, const Rect& window);

struct SegmentCoverResult {
  bool covered = true;
  std::size_t segments_checked = 0;
  /// Left end of an uncovered segment.
  std::optional<Point> counterexample;
};

/// Every horizontal segment of seg_len points lying in the window shrunk by
/// 2a on each side contains a copy centre.
SegmentCoverResult check_segment_center_cover(Coord a, const Rect& window, Coord seg_len);

/// 2 (2a+1)^2: any longer horizontal edge meets a copy centre.
inline Coord segment_threshold(Coord a) { return 2 * (2 * a + 1) * (2 * a + 1); }

// ---------------------------------------------------------------------------
// Toast

struct Toast {
  std::optional<Rect> window;  // defaults to the bounding box of all classes
  bool layered = true;
  std::vector<std::vector<PointSet>> levels;

  Rect effective_window() const;
};

struct ToastViolation {
  std::string clause;  // "disjoint", "(0)", "(1)", "(2)", "(2')"
  std::size_t level = 0;
  std::size_t index = 0;
  std::string detail;
};

struct ToastReport {
  std::vector<ToastViolation> violations;
  std::size_t rim_exempt = 0;
  bool ok() const { return violations.empty(); }
};

ToastReport check_toast(const Toast& t);

/// Levels k = 0..levels-1, class [-k,k]^2 at level k.
Toast concentric_squares(int levels, bool layered = true);

/// f_x(n) = rho(x, union of class boundaries at level n) if x is covered at
/// level n, else 0.
std::vector<Coord> fx_profile(const Toast& t, const Point& x);

struct GrowthFailure {
  Point probe;
  std::size_t level = 0;  // f(level) >= f(level + 1)
};

struct GrowthReport {
  std::vector<GrowthFailure> failures;
  std::vector<Point> uncovered;
  bool ok() const { return failures.empty(); }
};

/// Strict growth of f_x from its first covered level on. Throws
/// std::invalid_argument for unlayered toast.
GrowthReport check_fx_strict_growth(const Toast& t, const std::vector<Point>& probes);

/// P2 render: class boundaries 0, other points shaded by covering depth.
std::string to_pgm(const Toast& t);

}  // namespace gridforce
