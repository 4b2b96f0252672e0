#include "gridforce/markers_toast.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gridforce {

namespace {

// rho(x, boundary of r) without materializing the boundary.
Coord dist_to_rect_boundary(const Point& x, const Rect& r) {
  if (r.contains(x))
    return std::min({x.x() - r.lo.x(), r.hi.x() - x.x(), x.y() - r.lo.y(), r.hi.y() - x.y()});
  const Coord dx = x.x() < r.lo.x() ? r.lo.x() - x.x() : (x.x() > r.hi.x() ? x.x() - r.hi.x() : 0);
  const Coord dy = x.y() < r.lo.y() ? r.lo.y() - x.y() : (x.y() > r.hi.y() ? x.y() - r.hi.y() : 0);
  return dx + dy;
}

}  // namespace

Coord RectPartition::min_edge() const {
  Coord v = std::numeric_limits<Coord>::max();
  for (const auto& r : rects) v = std::min({v, r.width(), r.height()});
  return rects.empty() ? 0 : v;
}

Coord RectPartition::max_edge() const {
  Coord w = 0;
  for (const auto& r : rects) w = std::max({w, r.width(), r.height()});
  return w;
}

PartitionReport check_partition_props(const std::vector<RectPartition>& seq, const std::vector<Point>& probes) {
  if (seq.empty() || seq.front().rects.empty()) throw std::invalid_argument("check_partition_props: empty sequence");
  PartitionReport rep;
  {
    std::vector<Point> corners;
    for (const auto& r : seq.front().rects) {
      corners.push_back(r.lo);
      corners.push_back(r.hi);
    }
    rep.window = *bounding_box(corners);
  }
  for (const auto& part : seq) {
    PartitionLevelReport lr{part.level, part.min_edge(), part.max_edge(), true};
    Coord area = 0;
    for (std::size_t i = 0; i < part.rects.size(); ++i) {
      const Rect& r = part.rects[i];
      if (!rep.window.contains(r)) lr.partitions_window = false;
      area += r.area();
      for (std::size_t j = i + 1; j < part.rects.size(); ++j)
        if (intersect(r, part.rects[j])) lr.partitions_window = false;
    }
    if (area != rep.window.area()) lr.partitions_window = false;
    if (!rep.levels.empty() && lr.v < rep.levels.back().v) rep.increasing_size_violated = true;
    rep.levels.push_back(lr);
  }
  for (const auto& x : probes) {
    ProbeProfile prof{x, {}, false};
    for (const auto& part : seq) {
      Coord best = std::numeric_limits<Coord>::max();
      for (const auto& r : part.rects) best = std::min(best, dist_to_rect_boundary(x, r));
      prof.phi.push_back(best);
    }
    const bool monotone = std::is_sorted(prof.phi.begin(), prof.phi.end());
    prof.looks_divergent = monotone && prof.phi.size() >= 2 && prof.phi.back() > prof.phi.front();
    if (!prof.looks_divergent) rep.flagged_probes.push_back(x);
    rep.probes.push_back(std::move(prof));
  }
  return rep;
}

Config build_shifted_stack(const Config& p, Coord b) {
  const Rect& dom = p.rect();
  const Coord a = dom.hi.x();
  if (a < 0 || dom != Rect::from_bounds(-a, a, -a, a)) throw std::invalid_argument("build_shifted_stack: p must live on [-a,a]^2");
  if (!p.hole_free()) throw std::invalid_argument("build_shifted_stack: p must be hole-free");
  const Coord s = 2 * a + 1;
  if (b < s) throw std::invalid_argument("build_shifted_stack: need b >= 2a+1");
  Config r(Rect::from_bounds(0, b, 0, b));
  for (Coord i = 0; i <= b; ++i) {
    const Coord ip = floor_mod(i, s);
    const Coord col = (i - ip) / s;
    for (Coord j = 0; j <= b; ++j) {
      const Coord jp = floor_mod(j + col, s);
      r.set(pt(i, j), p.value(pt(ip - a, jp - a)));
    }
  }
  return r;
}

PointSet copy_centers(Coord a, const Rect& window) {
  const Coord s = 2 * a + 1;
  std::vector<Point> out;
  for (Coord x = window.lo.x() + a; x <= window.hi.x() - a; ++x) {
    if (floor_mod(x - a, s) != 0) continue;
    const Coord col = floor_div(x - a, s);
    for (Coord y = window.lo.y() + a; y <= window.hi.y() - a; ++y)
      if (floor_mod(y - (a - col), s) == 0) out.push_back(pt(x, y));
  }
  return PointSet(std::move(out));
}

SegmentCoverResult check_segment_center_cover(Coord a, const Rect& window, Coord seg_len) {
  if (seg_len < 1) throw std::invalid_argument("check_segment_center_cover: seg_len must be positive");
  SegmentCoverResult res;
  const Coord m = 2 * a;
  if (window.width() <= 2 * m || window.height() <= 2 * m) return res;
  const Rect inner = Rect::from_bounds(window.lo.x() + m, window.hi.x() - m, window.lo.y() + m, window.hi.y() - m);
  const PointSet centers = copy_centers(a, window);
  for (Coord y = inner.lo.y(); y <= inner.hi.y(); ++y) {
    // prefix counts of centres along the row
    std::vector<Coord> pre(static_cast<std::size_t>(inner.width() + 1), 0);
    for (Coord x = inner.lo.x(); x <= inner.hi.x(); ++x) {
      const auto k = static_cast<std::size_t>(x - inner.lo.x());
      pre[k + 1] = pre[k] + (centers.contains(pt(x, y)) ? 1 : 0);
    }
    for (Coord x0 = inner.lo.x(); x0 + seg_len - 1 <= inner.hi.x(); ++x0) {
      ++res.segments_checked;
      const auto k = static_cast<std::size_t>(x0 - inner.lo.x());
      if (pre[k + static_cast<std::size_t>(seg_len)] - pre[k] == 0) {
        res.covered = false;
        if (!res.counterexample) res.counterexample = pt(x0, y);
      }
    }
  }
  return res;
}

Rect Toast::effective_window() const {
  if (window) return *window;
  std::vector<Point> corners;
  for (const auto& level : levels)
    for (const auto& c : level)
      if (auto b = bounding_box(c.points())) {
        corners.push_back(b->lo);
        corners.push_back(b->hi);
      }
  if (corners.empty()) return Rect(pt(0, 0), pt(0, 0));
  return *bounding_box(corners);
}

namespace {

bool subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool meets(const PointSet& a, const PointSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

PointSet interior(const PointSet& c) {
  const PointSet bd = boundary(c);
  std::vector<Point> out;
  std::set_difference(c.begin(), c.end(), bd.begin(), bd.end(), std::back_inserter(out));
  return PointSet(std::move(out));
}

}  // namespace

ToastReport check_toast(const Toast& t) {
  ToastReport rep;
  const Rect win = t.effective_window();
  Coord diameter = 0;
  for (std::size_t n = 0; n < t.levels.size(); ++n) {
    const auto& level = t.levels[n];
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (level[i].empty()) rep.violations.push_back({"disjoint", n, i, "empty class"});
      if (auto b = bounding_box(level[i].points())) diameter = std::max({diameter, b->width(), b->height()});
      for (std::size_t j = i + 1; j < level.size(); ++j)
        if (meets(level[i], level[j]))
          rep.violations.push_back({"disjoint", n, i, "overlaps class " + std::to_string(j) + " of the same level"});
    }
  }

  // (0): the window core (margin = largest class diameter) is covered
  if (win.width() > 2 * diameter && win.height() > 2 * diameter) {
    const Rect core = Rect::from_bounds(win.lo.x() + diameter, win.hi.x() - diameter, win.lo.y() + diameter,
                                        win.hi.y() - diameter);
    for (const auto& g : core.points()) {
      bool covered = false;
      for (const auto& level : t.levels) {
        covered = std::any_of(level.begin(), level.end(), [&](const PointSet& c) { return c.contains(g); });
        if (covered) break;
      }
      if (!covered) {
        std::ostringstream os;
        os << "core point (" << g.x() << ',' << g.y() << ") in no class";
        rep.violations.push_back({"(0)", 0, 0, os.str()});
        break;
      }
    }
  }

  // (1): across levels, meeting classes nest
  for (std::size_t n = 0; n < t.levels.size(); ++n)
    for (std::size_t i = 0; i < t.levels[n].size(); ++i)
      for (std::size_t m = n + 1; m < t.levels.size(); ++m)
        for (std::size_t j = 0; j < t.levels[m].size(); ++j) {
          const auto& c = t.levels[n][i];
          const auto& cp = t.levels[m][j];
          if (meets(c, cp) && !subset(c, cp))
            rep.violations.push_back({"(1)", n, i,
                                      "meets level " + std::to_string(m) + " class " + std::to_string(j) +
                                          " without being contained in it"});
        }

  // (2) / (2'): strict interior nesting one level up (layered) or anywhere above
  std::vector<std::vector<PointSet>> interiors(t.levels.size());
  for (std::size_t m = 0; m < t.levels.size(); ++m)
    for (const auto& c : t.levels[m]) interiors[m].push_back(interior(c));
  const std::string clause = t.layered ? "(2')" : "(2)";
  for (std::size_t n = 0; n < t.levels.size(); ++n) {
    for (std::size_t i = 0; i < t.levels[n].size(); ++i) {
      const auto& c = t.levels[n][i];
      const auto box = bounding_box(c.points());
      const bool top = n + 1 >= t.levels.size();
      const bool at_rim = !box || !win.contains(Rect(box->lo - pt(1, 1), box->hi + pt(1, 1)));
      if (top || at_rim) {
        ++rep.rim_exempt;
        continue;
      }
      const std::size_t m_end = t.layered ? n + 2 : t.levels.size();
      bool found = false;
      for (std::size_t m = n + 1; m < m_end && !found; ++m)
        for (const auto& in : interiors[m])
          if (subset(c, in)) {
            found = true;
            break;
          }
      if (!found)
        rep.violations.push_back({clause, n, i,
                                  t.layered ? "not inside the interior of any class one level up"
                                            : "not inside the interior of any higher class"});
    }
  }
  return rep;
}

Toast concentric_squares(int levels, bool layered) {
  Toast t;
  t.layered = layered;
  for (int k = 0; k < levels; ++k) t.levels.push_back({PointSet(Rect::from_bounds(-k, k, -k, k).points())});
  return t;
}

std::vector<Coord> fx_profile(const Toast& t, const Point& x) {
  std::vector<Coord> out;
  for (const auto& level : t.levels) {
    const bool covered = std::any_of(level.begin(), level.end(), [&](const PointSet& c) { return c.contains(x); });
    if (!covered) {
      out.push_back(0);
      continue;
    }
    Distance best;
    for (const auto& c : level) {
      const Distance d = dist_to_set(x, boundary(c));
      if (d && (!best || *d < *best)) best = d;
    }
    out.push_back(best.value_or(0));
  }
  return out;
}

GrowthReport check_fx_strict_growth(const Toast& t, const std::vector<Point>& probes) {
  if (!t.layered) throw std::invalid_argument("check_fx_strict_growth: requires layered toast");
  GrowthReport rep;
  for (const auto& x : probes) {
    std::optional<std::size_t> first;
    for (std::size_t n = 0; n < t.levels.size() && !first; ++n)
      if (std::any_of(t.levels[n].begin(), t.levels[n].end(), [&](const PointSet& c) { return c.contains(x); })) first = n;
    if (!first) {
      rep.uncovered.push_back(x);
      continue;
    }
    const auto f = fx_profile(t, x);
    for (std::size_t n = *first; n + 1 < f.size(); ++n)
      if (!(f[n] < f[n + 1])) rep.failures.push_back({x, n});
  }
  return rep;
}

std::string to_pgm(const Toast& t) {
  const Rect win = t.effective_window();
  std::vector<PointSet> bds;
  for (const auto& level : t.levels)
    for (const auto& c : level) bds.push_back(boundary(c));
  std::ostringstream os;
  os << "P2\n" << win.width() << ' ' << win.height() << '\n' << t.levels.size() + 1 << '\n';
  for (Coord y = win.hi.y(); y >= win.lo.y(); --y) {
    for (Coord x = win.lo.x(); x <= win.hi.x(); ++x) {
      const Point g = pt(x, y);
      const bool on_bd = std::any_of(bds.begin(), bds.end(), [&](const PointSet& b) { return b.contains(g); });
      std::size_t depth = 0;
      for (const auto& level : t.levels)
        if (std::any_of(level.begin(), level.end(), [&](const PointSet& c) { return c.contains(g); })) ++depth;
      os << (x == win.lo.x() ? "" : " ") << (on_bd ? 0 : depth + 1);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gridforce
