#include "gridforce/forcing_mt.hpp"

#include <sstream>

#include "gridforce/witness.hpp"

namespace gridforce {

namespace {

std::string point_str(const Point& g) {
  std::ostringstream os;
  os << '(' << g.x() << ',' << g.y() << ')';
  return os.str();
}

PointSet rect_set(const Rect& r) { return PointSet(r.points()); }

/// { base - g : g in r }
PointSet difference_set(const Point& base, const Rect& r) {
  return rect_set(Rect(base - r.hi, base - r.lo));
}

Coord round_up_odd(Coord n) { return n % 2 == 0 ? n + 1 : n; }

struct BlockRange {
  Coord lo = 0;
  Coord hi = 0;
  Coord count() const { return hi - lo + 1; }
};

// Block range along one axis that reaches block index `target` from block 0.
BlockRange reach(Coord target, bool odd) {
  BlockRange r{std::min<Coord>(0, target), std::max<Coord>(0, target)};
  if (odd && r.count() % 2 == 0) {
    if (target > 0)
      ++r.hi;
    else
      --r.lo;
  }
  return r;
}

struct CoverPlan {
  BlockRange bx, by;
};

CoverPlan plan_cover(const Rect& dom, const Point& g, bool odd) {
  const Coord w = dom.width(), h = dom.height();
  return {reach(floor_div(g.x() - dom.lo.x(), w), odd), reach(floor_div(g.y() - dom.lo.y(), h), odd)};
}

// Block counts for the shift construction in the reflected frame (t >= 0).
struct ShiftPlan {
  Coord i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  Coord nx = 1, ny = 1;
};

ShiftPlan plan_shift(const Rect& dom, const Point& t, bool odd) {
  ShiftPlan s;
  const Coord a = dom.lo.x(), b = dom.hi.x(), c = dom.lo.y(), d = dom.hi.y();
  const Coord w = dom.width(), h = dom.height();
  // b + t1 = a + i0 w + i1, d + t2 = c + j0 h + j1
  s.i0 = floor_div(checked_add(b, t.x()) - a, w);
  s.i1 = floor_mod(checked_add(b, t.x()) - a, w);
  s.j0 = floor_div(checked_add(d, t.y()) - c, h);
  s.j1 = floor_mod(checked_add(d, t.y()) - c, h);
  s.nx = s.i0 + 1;
  s.ny = s.j0 + 1;
  if (odd) {
    s.nx = round_up_odd(s.nx);
    s.ny = round_up_odd(s.ny);
  }
  return s;
}

int sign_of(Coord v) { return v < 0 ? -1 : 1; }

bool has_shift(const MtCondition& c, const Point& t) {
  return std::any_of(c.shifts.begin(), c.shifts.end(), [&](const ShiftWitness& s) { return s.t == t; });
}

Coord pattern_copies(bool odd) { return odd ? 3 : 2; }

}  // namespace

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << "clause " << v.clause << " index " << v.index;
  if (v.g) os << " at g=" << point_str(*v.g);
  if (!v.detail.empty()) os << ": " << v.detail;
  return os.str();
}

std::vector<Violation> validate(const MtCondition& c) {
  std::vector<Violation> out;
  const Rect& r = c.p.rect();
  if (!c.p.hole_free()) out.push_back({"domain", 0, std::nullopt, "p must be hole-free"});
  if (c.odd_mode && (r.width() % 2 == 0 || r.height() % 2 == 0))
    out.push_back({"domain", 0, std::nullopt, "odd mode requires odd side lengths"});
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < c.shifts.size(); ++i) {
    const auto& s = c.shifts[i];
    if (s.t.is_zero()) {
      out.push_back({"(a)", i, std::nullopt, "shift t must be nonzero"});
      continue;
    }
    if (auto g = first_shift_failure(c.p, s.t, s.T))
      out.push_back({"(a)", i, g, "no tau in T_i separates g+tau and g+t+tau"});
  }
  for (std::size_t j = 0; j < c.patterns.size(); ++j) {
    const auto& pw = c.patterns[j];
    if (!pw.f.hole_free()) {
      out.push_back({"(b1)", j, std::nullopt, "pattern must be hole-free"});
      continue;
    }
    if (auto g = first_pattern_failure(c.p, pw.f, pw.F, false))
      out.push_back({"(b1)", j, g, "no sigma in F_j places f_j"});
    if (auto g = first_pattern_failure(c.p, pw.f, pw.F, true))
      out.push_back({"(b2)", j, g, "no sigma in F_j places flip(f_j)"});
  }
  return out;
}

bool is_extension(const MtCondition& c1, const MtCondition& c2) {
  if (c1.odd_mode != c2.odd_mode) return false;
  // (i)
  if (!c1.p.rect().contains(c2.p.rect())) return false;
  for (const auto& g : c2.p.rect().points()) {
    const auto v2 = c2.p.at(g);
    if (v2 && c1.p.at(g) != v2) return false;
  }
  // (ii)-(v)
  if (c1.shifts.size() < c2.shifts.size() || c1.patterns.size() < c2.patterns.size()) return false;
  if (!std::equal(c2.shifts.begin(), c2.shifts.end(), c1.shifts.begin())) return false;
  return std::equal(c2.patterns.begin(), c2.patterns.end(), c1.patterns.begin());
}

MtCondition extend_cover(const MtCondition& c, const Point& g) {
  const Rect& dom = c.p.rect();
  if (dom.contains(g)) return c;
  const auto plan = plan_cover(dom, g, c.odd_mode);
  const Point anchor = dom.lo + pt(checked_mul(plan.bx.lo, dom.width()), checked_mul(plan.by.lo, dom.height()));
  MtCondition out = c;
  out.p = tile(c.p, plan.bx.count(), plan.by.count(), nullptr, anchor);
  return out;
}

ShiftStep extend_shift_step(const MtCondition& c, const Point& t) {
  if (t.is_zero()) throw std::invalid_argument("extend_shift: t must be nonzero");
  if (has_shift(c, t)) return {c, std::nullopt, false, false};

  const int sx = sign_of(t.x()), sy = sign_of(t.y());
  const Config q = reflect(c.p, sx, sy);
  const Point tr = reflect(t, sx, sy);
  const Rect& dom = q.rect();
  const auto plan = plan_shift(dom, tr, c.odd_mode);
  const Point corner = dom.hi;  // (b, d)
  const bool flip_last = q.value(dom.lo + pt(plan.i1, plan.j1)) == q.value(corner);
  const Config pr = tile(
      q, plan.nx, plan.ny, [&](Coord i, Coord j) { return flip_last && i == plan.i0 && j == plan.j0; }, dom.lo);
  if (pr.value(corner) == pr.value(corner + tr)) throw InvariantError("extend_shift: flip rule failed to separate");

  ShiftStep step;
  step.condition = c;
  step.condition.p = reflect(pr, sx, sy);
  step.condition.shifts.push_back({t, reflect(difference_set(corner, pr.rect()), sx, sy)});
  step.witness = reflect(corner, sx, sy);
  step.flipped_last_tile = flip_last;
  return step;
}

MtCondition extend_shift(const MtCondition& c, const Point& t) { return extend_shift_step(c, t).condition; }

std::optional<ShiftStep> witness_shift_in_place(const MtCondition& c, const Point& t) {
  if (t.is_zero()) throw std::invalid_argument("witness_shift_in_place: t must be nonzero");
  if (has_shift(c, t)) return ShiftStep{c, std::nullopt, false, false};
  for (const auto& g0 : c.p.rect().points()) {
    const auto a = c.p.at(g0);
    const auto b = c.p.at(g0 + t);
    if (a && b && *a != *b) {
      ShiftStep step;
      step.condition = c;
      step.condition.shifts.push_back({t, difference_set(g0, c.p.rect())});
      step.witness = g0;
      step.reused_existing_pair = true;
      return step;
    }
  }
  return std::nullopt;
}

MtCondition extend_pattern(const MtCondition& c) {
  const Rect& dom = c.p.rect();
  const Coord k = pattern_copies(c.odd_mode);
  const Coord a = dom.lo.x(), cc = dom.lo.y(), d = dom.hi.y();
  const Coord w = dom.width();
  MtCondition out = c;
  out.p = tile(c.p, k, 1, [](Coord i, Coord) { return i == 1; }, dom.lo);
  // copy of q at translation 0, flip(q) at (w, 0)
  const Rect f_range = Rect::from_bounds(-(a + k * w - 1), w - a, -d, -cc);
  out.patterns.push_back({c.p, rect_set(f_range)});
  return out;
}

Duplication duplicate_odd(const MtCondition& c) {
  if (!c.odd_mode) throw std::invalid_argument("duplicate_odd: requires odd mode");
  const Rect& dom = c.p.rect();
  MtCondition out = c;
  out.p = tile(c.p, 3, 1, nullptr, dom.lo);
  return {out, pt(dom.width(), 0)};
}

std::string describe(const Requirement& r) {
  return std::visit(
      [](const auto& req) -> std::string {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, Cover>) return "Cover" + point_str(req.g);
        if constexpr (std::is_same_v<T, Shift>) return "Shift" + point_str(req.t);
        if constexpr (std::is_same_v<T, SelfPattern>) return "SelfPattern";
        if constexpr (std::is_same_v<T, DuplicateOdd>) return "DuplicateOdd";
      },
      r);
}

namespace {

void check_side(Coord w, Coord h, const Limits& limits, const Requirement& r) {
  if (w > limits.max_side || h > limits.max_side) {
    std::ostringstream os;
    os << describe(r) << " needs a " << w << "x" << h << " domain, above max_side " << limits.max_side;
    throw ResourceLimitError(os.str());
  }
}

}  // namespace

Certificate build_generic(const MtCondition& start, const Schedule& sched, const Limits& limits) {
  if (auto v = validate(start); !v.empty()) throw std::invalid_argument("build_generic: invalid start: " + describe(v.front()));
  for (const auto& r : sched) {
    if (std::holds_alternative<DuplicateOdd>(r) && !start.odd_mode)
      throw std::invalid_argument("build_generic: DuplicateOdd requires odd mode");
    if (const auto* s = std::get_if<Shift>(&r); s && s->t.is_zero())
      throw std::invalid_argument("build_generic: Shift requires t != 0");
  }
  if (sched.size() > limits.max_steps) throw ResourceLimitError("build_generic: schedule longer than max_steps");

  Certificate cert;
  cert.start = start;
  MtCondition cur = start;
  for (const auto& r : sched) {
    StepRecord rec{r, "unchanged", std::nullopt, std::nullopt, std::nullopt, cur.p.rect()};
    const Rect dom = cur.p.rect();
    if (const auto* cov = std::get_if<Cover>(&r)) {
      if (!dom.contains(cov->g)) {
        const auto plan = plan_cover(dom, cov->g, cur.odd_mode);
        check_side(checked_mul(plan.bx.count(), dom.width()), checked_mul(plan.by.count(), dom.height()), limits, r);
        cur = extend_cover(cur, cov->g);
        rec.action = "tiled";
      }
    } else if (const auto* sh = std::get_if<Shift>(&r)) {
      if (!has_shift(cur, sh->t)) {
        auto step = witness_shift_in_place(cur, sh->t);
        if (!step) {
          const Point tr = reflect(sh->t, sign_of(sh->t.x()), sign_of(sh->t.y()));
          const Point ra = reflect(dom.lo, sign_of(sh->t.x()), sign_of(sh->t.y()));
          const Point rb = reflect(dom.hi, sign_of(sh->t.x()), sign_of(sh->t.y()));
          const Rect rdom = Rect::from_bounds(std::min(ra.x(), rb.x()), std::max(ra.x(), rb.x()),
                                              std::min(ra.y(), rb.y()), std::max(ra.y(), rb.y()));
          const auto plan = plan_shift(rdom, tr, cur.odd_mode);
          check_side(checked_mul(plan.nx, dom.width()), checked_mul(plan.ny, dom.height()), limits, r);
          step = extend_shift_step(cur, sh->t);
          rec.action = step->flipped_last_tile ? "flipped-last-tile" : "tiled";
        } else {
          rec.action = "reused-pair";
        }
        cur = std::move(step->condition);
        rec.witness = step->witness;
      }
      for (std::size_t i = 0; i < cur.shifts.size(); ++i)
        if (cur.shifts[i].t == sh->t) rec.shift_index = i;
    } else if (std::holds_alternative<SelfPattern>(r)) {
      check_side(checked_mul(dom.width(), pattern_copies(cur.odd_mode)), dom.height(), limits, r);
      cur = extend_pattern(cur);
      rec.action = "pattern";
      rec.pattern_index = cur.patterns.size() - 1;
    } else {
      check_side(checked_mul(dom.width(), 3), dom.height(), limits, r);
      auto dup = duplicate_odd(cur);
      cur = std::move(dup.condition);
      rec.action = "duplicated";
      rec.witness = dup.offset;
    }
    rec.domain = cur.p.rect();
    cert.steps.push_back(std::move(rec));
  }
  cert.final_condition = std::move(cur);
  if (auto errs = replay(cert); !errs.empty()) throw InvariantError("build_generic: certificate does not replay: " + errs.front());
  return cert;
}

std::vector<std::string> replay(const Certificate& cert) {
  std::vector<std::string> errs;
  const MtCondition& fin = cert.final_condition;
  for (const auto& v : validate(fin)) errs.push_back(describe(v));
  if (!is_extension(fin, cert.start)) errs.push_back("final condition does not extend the start condition");
  Rect prev = cert.start.p.rect();
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& rec = cert.steps[k];
    const std::string tag = "step " + std::to_string(k) + " " + describe(rec.requirement);
    if (!fin.p.rect().contains(rec.domain)) errs.push_back(tag + ": recorded domain not inside final window");
    if (const auto* cov = std::get_if<Cover>(&rec.requirement)) {
      if (!rec.domain.contains(cov->g)) errs.push_back(tag + ": point not covered");
    } else if (const auto* sh = std::get_if<Shift>(&rec.requirement)) {
      if (!rec.shift_index || *rec.shift_index >= fin.shifts.size() || fin.shifts[*rec.shift_index].t != sh->t) {
        errs.push_back(tag + ": shift not recorded in final condition");
      } else {
        const auto& s = fin.shifts[*rec.shift_index];
        if (!check_shift_witness(fin.p, s.t, s.T)) errs.push_back(tag + ": clause (a) fails on final window");
        if (rec.witness) {
          const auto a = fin.p.at(*rec.witness);
          const auto b = fin.p.at(*rec.witness + s.t);
          if (!a || !b || *a == *b) errs.push_back(tag + ": recorded pair does not differ");
        }
      }
    } else if (std::holds_alternative<SelfPattern>(rec.requirement)) {
      if (!rec.pattern_index || *rec.pattern_index >= fin.patterns.size()) {
        errs.push_back(tag + ": pattern not recorded in final condition");
      } else {
        const auto& pw = fin.patterns[*rec.pattern_index];
        if (pw.f.rect() != prev) errs.push_back(tag + ": pattern domain differs from the pre-step domain");
        if (!check_pattern_witness(fin.p, pw.f, pw.F, false)) errs.push_back(tag + ": clause (b1) fails on final window");
        if (!check_pattern_witness(fin.p, pw.f, pw.F, true)) errs.push_back(tag + ": clause (b2) fails on final window");
      }
    } else {
      const Point off = rec.witness.value_or(pt(0, 0));
      const Config block = restrict_to(fin.p, prev);
      const PointSet occ = find_occurrences(fin.p, block, false);
      if (taxicab_norm(off) % 2 != 1) errs.push_back(tag + ": duplication offset has even norm");
      if (!occ.contains(pt(0, 0)) || !occ.contains(off)) errs.push_back(tag + ": copies not found at 0 and offset");
    }
    prev = rec.domain;
  }
  return errs;
}

}  // namespace gridforce
