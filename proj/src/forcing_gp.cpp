#include "gridforce/forcing_gp.hpp"

#include <sstream>
#include <stdexcept>

#include "gridforce/witness.hpp"

namespace gridforce {

Point GpCondition::u() const {
  const PointSet hs = p.holes();
  if (hs.size() != 1) throw std::logic_error("GpCondition: expected exactly one hole");
  return *hs.begin();
}

bool is_power_of(Coord value, Coord base) {
  if (value < 1 || base < 2) return false;
  while (value % base == 0) value /= base;
  return value == 1;
}

Coord next_power_of(Coord value, Coord base) {
  Coord p = 1;
  while (p < value) p = checked_mul(p, base);
  return p;
}

bool validate_gp(const GpCondition& c) {
  if (c.n < 2) return false;
  if (c.p.hole_count() != 1) return false;
  return is_power_of(c.w(), c.n) && is_power_of(c.h(), c.n);
}

bool is_extension_gp(const GpCondition& c1, const GpCondition& c2) {
  if (c1.n != c2.n || c1.p.hole_count() != 1 || c2.p.hole_count() != 1) return false;
  const Coord w = c2.w(), h = c2.h();
  const Point d = c1.rect().lo - c2.rect().lo;
  if (c1.w() % w != 0 || c1.h() % h != 0 || floor_mod(d.x(), w) != 0 || floor_mod(d.y(), h) != 0) return false;
  const TileRanges ranges{d.x() / w, d.x() / w + c1.w() / w - 1, d.y() / h, d.y() / h + c1.h() / h - 1};
  const auto offsets = tile_offsets(c2, ranges);
  // (c)
  const Point u1 = c1.u();
  const Point u2 = c2.u();
  if (std::find(offsets.begin(), offsets.end(), u1 - u2) == offsets.end()) return false;
  // (b)
  for (const auto& t : offsets)
    for (const auto& c : c2.rect().points()) {
      const auto v = c2.p.at(c);
      if (v && c1.p.at(c + t) != v) return false;
    }
  return true;
}

std::vector<Point> tile_offsets(const GpCondition& q, const TileRanges& r) {
  std::vector<Point> out;
  for (Coord i = r.i0; i <= r.i1; ++i)
    for (Coord j = r.j0; j <= r.j1; ++j) out.push_back(pt(checked_mul(i, q.w()), checked_mul(j, q.h())));
  return out;
}

GpCondition extend_tile_gp(const GpCondition& q, const TileRanges& ranges, const Point& new_hole_offset,
                           const std::map<Point, bool>& hole_fills) {
  if (ranges.nx() < 1 || ranges.ny() < 1) throw std::invalid_argument("extend_tile_gp: empty tile range");
  if (!is_power_of(ranges.nx(), q.n) || !is_power_of(ranges.ny(), q.n))
    throw std::invalid_argument("extend_tile_gp: tile counts must be powers of n");
  const auto offsets = tile_offsets(q, ranges);
  if (std::find(offsets.begin(), offsets.end(), new_hole_offset) == offsets.end())
    throw std::invalid_argument("extend_tile_gp: new hole offset not in A");
  const Point u = q.u();
  const Rect& r = q.rect();
  const Point lo = r.lo + pt(checked_mul(ranges.i0, q.w()), checked_mul(ranges.j0, q.h()));
  const Point hi = lo + pt(checked_mul(ranges.nx(), q.w()) - 1, checked_mul(ranges.ny(), q.h()) - 1);
  GpCondition out{q.n, Config(Rect(lo, hi))};
  for (const auto& t : offsets) {
    for (const auto& c : r.points()) {
      if (c == u) continue;
      out.p.set(c + t, q.p.value(c));
    }
    const Point slot = u + t;
    if (t == new_hole_offset) {
      out.p.set_hole(slot);
    } else {
      const auto it = hole_fills.find(slot);
      out.p.set(slot, it != hole_fills.end() && it->second);
    }
  }
  return out;
}

std::string describe(const Line& l) {
  return (l.axis == Line::Axis::Row ? "row y=" : "col x=") + std::to_string(l.index);
}

bool hole_lattice_meets(const Point& u, Coord w, Coord h, const Line& l) {
  if (l.axis == Line::Axis::Row) return floor_mod(l.index - u.y(), h) == 0;
  return floor_mod(l.index - u.x(), w) == 0;
}

namespace {

// Grow a block range [lo, hi] to a power-of-n count, extending on the side
// the target lies (upwards when the target is block 0).
void round_range(Coord& lo, Coord& hi, Coord target, Coord n) {
  const Coord want = next_power_of(hi - lo + 1, n);
  const Coord extra = want - (hi - lo + 1);
  if (target < 0)
    lo -= extra;
  else
    hi += extra;
}

TileRanges ranges_reaching(const GpCondition& q, const Point& g) {
  const Rect& r = q.rect();
  const Coord bi = floor_div(g.x() - r.lo.x(), q.w());
  const Coord bj = floor_div(g.y() - r.lo.y(), q.h());
  TileRanges tr{std::min<Coord>(0, bi), std::max<Coord>(0, bi), std::min<Coord>(0, bj), std::max<Coord>(0, bj)};
  round_range(tr.i0, tr.i1, bi, q.n);
  round_range(tr.j0, tr.j1, bj, q.n);
  return tr;
}

// Blocks for discriminating shift s: reach u + s, never stay a single block
// (the old hole must move off u), and leave a slot besides u and u + s.
TileRanges shift_ranges(const GpCondition& q, const Point& s) {
  TileRanges tr = ranges_reaching(q, q.u() + s);
  if (tr.nx() == 1 && tr.ny() == 1) tr.i1 = q.n - 1;
  const bool slot = floor_mod(s.x(), q.w()) == 0 && floor_mod(s.y(), q.h()) == 0;
  if (slot && tr.nx() * tr.ny() == 2) {
    if (tr.ny() == 1)
      tr.j1 = tr.j0 + q.n - 1;
    else
      tr.i1 = tr.i0 + q.n - 1;
  }
  return tr;
}

// Lexicographically greatest offset t in A with u + t not in `forbidden`,
// preferring offsets whose new hole lattice misses every line in `avoid`.
Point choose_hole(const GpCondition& q, const TileRanges& ranges, const std::vector<Point>& forbidden,
                  const std::vector<Line>& avoid, const std::vector<Line>& must_avoid) {
  auto offsets = tile_offsets(q, ranges);
  std::sort(offsets.begin(), offsets.end());
  const Point u = q.u();
  const Coord w = q.w() * ranges.nx(), h = q.h() * ranges.ny();
  auto clear_of = [&](const Point& t, const std::vector<Line>& lines) {
    return std::none_of(lines.begin(), lines.end(), [&](const Line& l) { return hole_lattice_meets(u + t, w, h, l); });
  };
  auto allowed = [&](const Point& t) { return std::find(forbidden.begin(), forbidden.end(), u + t) == forbidden.end(); };
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it)
    if (allowed(*it) && clear_of(*it, avoid) && clear_of(*it, must_avoid)) return *it;
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it)
    if (allowed(*it) && clear_of(*it, must_avoid)) return *it;
  throw InvariantError("grid periodicity: no admissible new hole position");
}

}  // namespace

GpShiftStep discriminate_shift_gp(const GpCondition& q, const Point& s, const std::vector<Line>& avoid) {
  if (s.is_zero()) throw std::invalid_argument("discriminate_shift_gp: s must be nonzero");
  const Point u = q.u();
  const Point target = u + s;
  const TileRanges ranges = shift_ranges(q, s);
  const auto offsets = tile_offsets(q, ranges);
  const bool target_is_slot = std::find(offsets.begin(), offsets.end(), s) != offsets.end();
  std::vector<Point> forbidden{u};
  if (target_is_slot) forbidden.push_back(target);
  const Point hole = choose_hole(q, ranges, forbidden, avoid, {});

  std::map<Point, bool> fills;
  if (target_is_slot) {
    fills[u] = true;
    fills[target] = false;
  } else {
    // value at target is a copy of q at the matching point of R(q)
    const Rect& r = q.rect();
    const Point c = pt(r.lo.x() + floor_mod(target.x() - r.lo.x(), q.w()), r.lo.y() + floor_mod(target.y() - r.lo.y(), q.h()));
    fills[u] = !q.p.value(c);
  }
  GpShiftStep step{extend_tile_gp(q, ranges, hole, fills), u};
  if (step.condition.p.at(u) == step.condition.p.at(target) || !step.condition.p.defined(target))
    throw InvariantError("discriminate_shift_gp: witnessed pair does not differ");
  return step;
}

GpCondition cover_gp(const GpCondition& q, const Point& g, const std::vector<Line>& avoid) {
  if (q.p.defined(g)) return q;
  TileRanges ranges = ranges_reaching(q, g);
  if (ranges.nx() == 1 && ranges.ny() == 1) ranges.i1 = q.n - 1;
  const Point hole = choose_hole(q, ranges, {g}, avoid, {});
  return extend_tile_gp(q, ranges, hole);
}

GpCondition line_clear_gp(const GpCondition& q, const Line& line, const std::vector<Line>& avoid) {
  if (!hole_lattice_meets(q.u(), q.w(), q.h(), line)) return q;
  TileRanges ranges;
  if (line.axis == Line::Axis::Row)
    ranges.j1 = q.n - 1;
  else
    ranges.i1 = q.n - 1;
  const Point hole = choose_hole(q, ranges, {}, avoid, {line});
  return extend_tile_gp(q, ranges, hole);
}

std::string describe(const GpRequirement& r) {
  return std::visit(
      [](const auto& req) -> std::string {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, LineClear>)
          return "LineClear(" + describe(req.line) + ")";
        else
          return describe(Requirement{req});
      },
      r);
}

namespace {

void check_gp_side(const GpCondition& c, const GpLimits& limits, const std::string& what) {
  if (c.w() > limits.max_side || c.h() > limits.max_side) {
    std::ostringstream os;
    os << what << " needs a " << c.w() << "x" << c.h() << " domain, above max_side " << limits.max_side;
    throw ResourceLimitError(os.str());
  }
}

// Side check before materializing a tiling of q over `ranges`.
void precheck(const GpCondition& q, const TileRanges& r, const GpLimits& limits, const std::string& what) {
  const Coord w = checked_mul(q.w(), r.nx()), h = checked_mul(q.h(), r.ny());
  if (w > limits.max_side || h > limits.max_side) {
    std::ostringstream os;
    os << what << " needs a " << w << "x" << h << " domain, above max_side " << limits.max_side;
    throw ResourceLimitError(os.str());
  }
}

}  // namespace

GpCertificate build_generic_gp(const GpCondition& seed, const GpSchedule& sched, const GpLimits& limits) {
  if (!validate_gp(seed)) throw std::invalid_argument("build_generic_gp: invalid seed condition");
  if (sched.size() > limits.max_steps) throw ResourceLimitError("build_generic_gp: schedule longer than max_steps");
  std::vector<Line> scheduled;
  for (const auto& r : sched) {
    if (const auto* lc = std::get_if<LineClear>(&r)) scheduled.push_back(lc->line);
    if (const auto* s = std::get_if<Shift>(&r); s && s->t.is_zero())
      throw std::invalid_argument("build_generic_gp: Shift requires s != 0");
  }
  check_gp_side(seed, limits, "seed");

  GpCertificate cert;
  cert.seed = seed;
  GpCondition cur = seed;
  for (const auto& r : sched) {
    const std::string what = describe(r);
    GpStepRecord rec{r, "unchanged", std::nullopt, cur.rect(), cur.u()};
    if (const auto* sh = std::get_if<Shift>(&r)) {
      precheck(cur, shift_ranges(cur, sh->t), limits, what);
      auto step = discriminate_shift_gp(cur, sh->t, scheduled);
      cur = std::move(step.condition);
      rec.witness = step.g;
      rec.action = "extended";
    } else if (const auto* cov = std::get_if<Cover>(&r)) {
      if (!cur.p.defined(cov->g)) {
        TileRanges pre = ranges_reaching(cur, cov->g);
        if (pre.nx() == 1 && pre.ny() == 1) pre.i1 = cur.n - 1;
        precheck(cur, pre, limits, what);
        cur = cover_gp(cur, cov->g, scheduled);
        rec.action = "extended";
      }
    } else {
      const auto& lc = std::get<LineClear>(r);
      if (hole_lattice_meets(cur.u(), cur.w(), cur.h(), lc.line)) {
        TileRanges pre;
        (lc.line.axis == Line::Axis::Row ? pre.j1 : pre.i1) = cur.n - 1;
        precheck(cur, pre, limits, what);
        cur = line_clear_gp(cur, lc.line, scheduled);
        rec.action = "extended";
      }
    }
    rec.domain = cur.rect();
    rec.hole = cur.u();
    cert.steps.push_back(std::move(rec));
  }
  cert.final_condition = cur;

  const Coord blocks = limits.window_blocks > 0 ? limits.window_blocks : next_power_of(4, cur.n);
  const TileRanges wr{0, blocks - 1, 0, blocks - 1};
  precheck(cur, wr, limits, "window");
  const Point hole = choose_hole(cur, wr, {}, scheduled, {});
  cert.window = extend_tile_gp(cur, wr, hole);

  if (auto errs = replay(cert); !errs.empty()) throw InvariantError("build_generic_gp: certificate does not replay: " + errs.front());
  return cert;
}

std::vector<std::string> replay(const GpCertificate& cert) {
  std::vector<std::string> errs;
  const GpCondition& fin = cert.final_condition;
  const GpCondition& win = cert.window;
  if (!validate_gp(cert.seed)) errs.push_back("seed is not a condition");
  if (!validate_gp(fin)) errs.push_back("final condition is not a condition");
  if (!validate_gp(win)) errs.push_back("window is not a condition");
  if (!errs.empty()) return errs;
  if (!is_extension_gp(fin, cert.seed)) errs.push_back("final condition does not extend the seed");
  if (!is_extension_gp(win, fin)) errs.push_back("window does not extend the final condition");
  const Point u = fin.u();
  if (auto bad = grid_periodicity_failure(win.p, fin.w(), fin.h(), u)) {
    std::ostringstream os;
    os << "grid periodicity fails at (" << bad->x() << ',' << bad->y() << ')';
    errs.push_back(os.str());
  }
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& rec = cert.steps[k];
    const std::string tag = "step " + std::to_string(k) + " " + describe(rec.requirement);
    if (const auto* sh = std::get_if<Shift>(&rec.requirement)) {
      if (!rec.witness) {
        errs.push_back(tag + ": no witness pair recorded");
        continue;
      }
      const auto a = win.p.at(*rec.witness);
      const auto b = win.p.at(*rec.witness + sh->t);
      if (!a || !b || *a == *b) errs.push_back(tag + ": witnessed pair does not differ in window");
    } else if (const auto* cov = std::get_if<Cover>(&rec.requirement)) {
      if (!fin.p.defined(cov->g)) errs.push_back(tag + ": point not defined in final condition");
    } else {
      const auto& lc = std::get<LineClear>(rec.requirement);
      if (hole_lattice_meets(u, fin.w(), fin.h(), lc.line)) errs.push_back(tag + ": hole lattice meets the line");
    }
  }
  return errs;
}

std::optional<Coord> detect_line_period(const Config& x, const Line& line) {
  const Rect& r = x.rect();
  std::vector<std::uint8_t> seg;
  if (line.axis == Line::Axis::Row) {
    if (line.index < r.lo.y() || line.index > r.hi.y()) throw std::invalid_argument("detect_line_period: row outside window");
    for (Coord i = r.lo.x(); i <= r.hi.x(); ++i) {
      const auto v = x.at(pt(i, line.index));
      if (!v) throw std::invalid_argument("detect_line_period: hole on line");
      seg.push_back(*v);
    }
  } else {
    if (line.index < r.lo.x() || line.index > r.hi.x()) throw std::invalid_argument("detect_line_period: column outside window");
    for (Coord j = r.lo.y(); j <= r.hi.y(); ++j) {
      const auto v = x.at(pt(line.index, j));
      if (!v) throw std::invalid_argument("detect_line_period: hole on line");
      seg.push_back(*v);
    }
  }
  const auto len = static_cast<Coord>(seg.size());
  if (len < 2) return std::nullopt;
  for (Coord p = 1; p < len; ++p) {
    bool ok = true;
    for (Coord i = 0; i + p < len && ok; ++i) ok = seg[static_cast<std::size_t>(i)] == seg[static_cast<std::size_t>(i + p)];
    if (ok) return p;
  }
  return len;
}

std::optional<Point> grid_periodicity_failure(const Config& x, Coord w, Coord h, const Point& u) {
  if (w < 1 || h < 1) throw std::invalid_argument("grid periodicity: spacings must be positive");
  const Point u_class = pt(floor_mod(u.x(), w), floor_mod(u.y(), h));
  std::map<Point, bool> seen;
  for (const auto& g : x.rect().points()) {
    const auto v = x.at(g);
    if (!v) continue;
    const Point k = pt(floor_mod(g.x(), w), floor_mod(g.y(), h));
    if (k == u_class) continue;
    auto [it, inserted] = seen.emplace(k, *v);
    if (!inserted && it->second != *v) return g;
  }
  return std::nullopt;
}

bool verify_grid_periodicity(const Config& x, Coord w, Coord h, const Point& u) {
  return !grid_periodicity_failure(x, w, h, u).has_value();
}

LatticeDemo lattice_demo(const Config& f, const GpSchedule& sched, const GpLimits& limits, int n) {
  if (!f.hole_free()) throw std::invalid_argument("lattice_demo: pattern must be hole-free");
  const Coord side = next_power_of(std::max(f.rect().width(), f.rect().height()) + 1, n);
  if (side > limits.max_side) throw ResourceLimitError("lattice_demo: pattern larger than max_side allows");
  const Point lo = f.rect().lo;
  GpCondition seed{n, Config(Rect(lo, lo + pt(side - 1, side - 1)))};
  for (const auto& g : f.rect().points()) seed.p.set(g, f.value(g));
  seed.p.set_hole(seed.rect().hi);

  LatticeDemo out;
  out.cert = build_generic_gp(seed, sched, limits);
  const auto& fin = out.cert.final_condition;
  out.lattice = Lattice(pt(0, 0), fin.w(), fin.h());
  const Config& x = out.cert.window.p;
  const auto pts = admissible_lattice_points(x, PatternSet{{f}}, out.lattice);
  out.pass = pts.size() >= 9;
  for (const auto& s : pts) {
    if (matches_at(x, f, s, false))
      out.verified_points.push_back(s);
    else
      out.pass = false;
  }
  return out;
}

Config patch_at(const Config& x, const Point& g, Coord size) {
  return translate(restrict_to(x, Rect(g, g + pt(size - 1, size - 1))), -g);
}

ConstantDemo constant_on_lattice_demo(const LocalRule& rule, const GpSchedule& sched, const GpLimits& limits, int n) {
  if (rule.size < 1 || !rule.eval) throw std::invalid_argument("constant_on_lattice_demo: bad rule");
  const Coord side = next_power_of(rule.size + 1, n);
  GpCondition seed{n, Config(Rect(pt(0, 0), pt(side - 1, side - 1)))};
  for (const auto& g : seed.rect().points()) seed.p.set(g, (g.x() + g.y()) % 2 != 0);
  seed.p.set_hole(seed.rect().hi);

  ConstantDemo out;
  out.cert = build_generic_gp(seed, sched, limits);
  const auto& fin = out.cert.final_condition;
  const Point u = fin.u();
  const Coord r = rule.size;
  // anchor: first point of the final block whose patch avoids the hole lattice
  std::optional<Point> anchor;
  for (const auto& k : fin.rect().points()) {
    const Rect box(k, k + pt(r - 1, r - 1));
    if (!fin.rect().contains(box)) continue;
    const auto cells = box.points();
    const bool clear = std::none_of(cells.begin(), cells.end(), [&](const Point& g) {
      return floor_mod(g.x() - u.x(), fin.w()) == 0 && floor_mod(g.y() - u.y(), fin.h()) == 0;
    });
    if (clear) {
      anchor = k;
      break;
    }
  }
  if (!anchor) throw InvariantError("constant_on_lattice_demo: no hole-free patch in the final block");
  out.lattice = Lattice(*anchor, fin.w(), fin.h());
  const Config& x = out.cert.window.p;
  const Rect region(x.rect().lo, x.rect().hi - pt(r - 1, r - 1));
  out.points = lattice_points_in(out.lattice, region);
  out.pass = out.points.size() >= 9;
  std::optional<std::int64_t> value;
  for (const auto& g : out.points) {
    const Config patch = patch_at(x, g, r);
    if (!patch.hole_free()) {
      out.pass = false;
      continue;
    }
    const std::int64_t v = rule.eval(patch);
    if (!value) value = v;
    if (v != *value) out.pass = false;
  }
  out.value = value.value_or(0);
  return out;
}

std::string to_pgm_gp(const Config& x, Coord w, Coord h, const Point& u) {
  std::ostringstream os;
  const Rect& r = x.rect();
  os << "P2\n" << r.width() << ' ' << r.height() << "\n3\n";
  for (Coord y = r.hi.y(); y >= r.lo.y(); --y) {
    for (Coord i = r.lo.x(); i <= r.hi.x(); ++i) {
      const Point g = pt(i, y);
      const auto v = x.at(g);
      int shade = v ? (*v ? 2 : 0) : 1;
      if (v && floor_mod(g.x() - u.x(), w) == 0 && floor_mod(g.y() - u.y(), h) == 0) shade = 3;
      os << (i == r.lo.x() ? "" : " ") << shade;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gridforce
