// Acceptance suite: one line per criterion, exit status nonzero on any FAIL.
// Usage: acceptance [--criterion N]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridforce/config.hpp"
#include "gridforce/forcing_gp.hpp"
#include "gridforce/forcing_mt.hpp"
#include "gridforce/json_io.hpp"
#include "gridforce/markers_toast.hpp"
#include "gridforce/witness.hpp"
#include "oracles.hpp"

using namespace gridforce;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string str(const Point& g) {
  std::ostringstream os;
  os << '(' << g.x() << ',' << g.y() << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

constexpr int kRandomConditions = 500;
constexpr double kSoundnessSeconds = 60.0;

void density_soundness(Outcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<Coord> far(-20, 20), near(-6, 6);
  int failures = 0;
  for (int k = 0; k < kRandomConditions; ++k) {
    const MtCondition c = oracle::random_condition(rng, k % 4 == 3);
    if (!is_valid(c)) {
      out.fail("generator produced an invalid condition at sample " + std::to_string(k));
      ++failures;
      continue;
    }
    const Point g = pt(far(rng), far(rng));
    Point t = pt(near(rng), near(rng));
    if (t.is_zero()) t = pt(1, -1);
    const std::pair<const char*, MtCondition> results[] = {
        {"extend_cover", extend_cover(c, g)}, {"extend_shift", extend_shift(c, t)}, {"extend_pattern", extend_pattern(c)}};
    for (const auto& [name, r] : results) {
      if (is_valid(r) && is_extension(r, c)) continue;
      ++failures;
      out.fail(std::string(name) + " on sample " + std::to_string(k));
    }
  }
  const double secs = seconds_since(t0);
  out.expect(secs <= kSoundnessSeconds, "runtime above 60 s");
  out.detail << kRandomConditions << " conditions x 3 operations, " << failures << " failures, " << secs << " s";
}

// ---------------------------------------------------------------------------

constexpr Coord kShiftRadius = 3;
constexpr double kGenericSeconds = 120.0;

void generic_minimal_coloring(Outcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  MtCondition start;
  start.p = oracle::random_config(rng, Rect::from_bounds(0, 2, 0, 2));
  Schedule sched;
  for (const auto& t : nonzero_ball(kShiftRadius)) sched.push_back(Shift{t});
  sched.push_back(SelfPattern{});
  sched.push_back(SelfPattern{});
  const Certificate cert = build_generic(start, sched, Limits{});
  const MtCondition& fin = cert.final_condition;
  out.expect(fin.shifts.size() == nonzero_ball(kShiftRadius).size(), "not every shift recorded");
  out.expect(fin.patterns.size() == 2, "pattern witnesses missing");
  std::size_t checked = 0;
  for (const auto& s : fin.shifts) {
    const Verdict v = window_two_coloring_check(fin.p, s.t, s.T);
    checked += v.checked;
    out.expect(v.pass, "two-coloring check fails for t=" + str(s.t));
    out.expect(oracle::shift_witness(fin.p, s.t, {s.T.begin(), s.T.end()}), "shift witness oracle fails for t=" + str(s.t));
  }
  for (std::size_t j = 0; j < fin.patterns.size(); ++j)
    for (bool flipped : {false, true}) {
      const auto& pw = fin.patterns[j];
      out.expect(check_pattern_witness(fin.p, pw.f, pw.F, flipped),
                 "pattern " + std::to_string(j) + (flipped ? " flipped" : " plain") + " fails");
      out.expect(oracle::pattern_witness(fin.p, pw.f, {pw.F.begin(), pw.F.end()}, flipped),
                 "pattern oracle " + std::to_string(j) + " fails");
    }
  out.expect(replay(cert).empty(), "certificate does not replay");
  const double secs = seconds_since(t0);
  out.expect(secs <= kGenericSeconds, "runtime above 120 s");
  out.detail << fin.shifts.size() << " shifts + " << fin.patterns.size() << " patterns on a " << fin.p.rect().width()
             << "x" << fin.p.rect().height() << " window, " << checked << " admissible probes, " << secs << " s";
}

// ---------------------------------------------------------------------------

constexpr Coord kOddMaxRadius = 15;

void odd_recurrence(Outcome& out) {
  std::mt19937_64 rng(3);
  MtCondition seed;
  seed.odd_mode = true;
  seed.p = oracle::random_config(rng, Rect::from_bounds(0, 2, 0, 2));

  const Duplication dup = duplicate_odd(seed);
  out.expect(is_valid(dup.condition), "duplicated condition invalid");
  out.expect(taxicab_norm(dup.offset) % 2 == 1, "offset norm even");
  const auto occ = oracle::occurrences(dup.condition.p, seed.p, false);
  out.expect(occ.count(pt(0, 0)) == 1, "no copy at 0");
  out.expect(occ.count(dup.offset) == 1, "no copy at the offset");

  const Certificate cert =
      build_generic(seed, {DuplicateOdd{}, Shift{pt(1, 0)}, SelfPattern{}, Cover{pt(60, 40)}, Cover{pt(-40, -30)}},
                    Limits{});
  out.expect(replay(cert).empty(), "certificate does not replay");
  const Config& x = cert.final_condition.p;
  const PatternSet b{{seed.p}};
  const auto found = find_odd_recurrence(x, b, kOddMaxRadius);
  if (!found) {
    out.fail("find_odd_recurrence found no odd set up to radius " + std::to_string(kOddMaxRadius));
  } else {
    for (const auto& g : found->members) out.expect(oracle::norm1(g.x(), g.y()) % 2 == 1, "member " + str(g) + " even");
    // brute-force recurrence over the admissible positions
    std::size_t admissible = 0;
    for (const auto& g : x.rect().points()) {
      bool inside = true, hit = false;
      for (const auto& tau : found->members) {
        inside = inside && x.in_rect(g + tau + seed.p.rect().lo) && x.in_rect(g + tau + seed.p.rect().hi);
        hit = hit || oracle::matches(x, seed.p, g.x() + tau.x(), g.y() + tau.y(), false);
      }
      if (!inside) continue;
      ++admissible;
      out.expect(hit, "no odd-step copy from " + str(g));
    }
    out.expect(admissible > 0, "no admissible position");
    out.detail << "offset " << str(dup.offset) << ", odd radius " << found->radius << " (" << found->members.size()
               << " members), " << admissible << " admissible positions on " << x.rect().width() << "x"
               << x.rect().height();
  }
}

// ---------------------------------------------------------------------------

constexpr Coord kMinGpSide = 64;
constexpr std::size_t kMinLines = 10;

void grid_periodicity(Outcome& out) {
  const auto t0 = Clock::now();
  GpCondition seed{2, Config(Rect::from_bounds(0, 1, 0, 1))};
  seed.p.set(pt(0, 1), true);
  seed.p.set_hole(pt(1, 1));
  GpSchedule sched;
  std::vector<Line> lines;
  for (Coord k = 0; k < 6; ++k) {
    lines.push_back(Line::row(2 * k + 1));
    lines.push_back(Line::col(3 * k + 2));
  }
  const std::vector<Point> shifts{pt(1, 0), pt(0, 1), pt(1, 1), pt(2, -1), pt(-3, 2), pt(5, 0), pt(0, -7)};
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k < shifts.size()) sched.push_back(Shift{shifts[k]});
    sched.push_back(LineClear{lines[k]});
  }
  sched.push_back(Cover{pt(20, 20)});
  const GpCertificate cert = build_generic_gp(seed, sched, GpLimits{});
  const auto& fin = cert.final_condition;
  const Config& x = cert.window.p;
  out.expect(x.rect().width() >= kMinGpSide && x.rect().height() >= kMinGpSide, "window side below 64");
  out.expect(replay(cert).empty(), "certificate does not replay");

  out.expect(verify_grid_periodicity(x, fin.w(), fin.h(), fin.u()), "(a) grid periodicity fails");

  std::size_t lines_ok = 0;
  for (const auto& l : lines) {
    const auto per = detect_line_period(x, l);
    const Coord side = l.axis == Line::Axis::Row ? fin.w() : fin.h();
    std::string s;
    const Rect& r = x.rect();
    if (l.axis == Line::Axis::Row)
      for (Coord i = r.lo.x(); i <= r.hi.x(); ++i) s += x.value(pt(i, l.index)) ? '1' : '0';
    else
      for (Coord j = r.lo.y(); j <= r.hi.y(); ++j) s += x.value(pt(l.index, j)) ? '1' : '0';
    const bool ok = per && is_power_of(*per, 2) && side % *per == 0 &&
                    static_cast<std::size_t>(*per) == oracle::min_period(s);
    out.expect(ok, "(b) line " + describe(l));
    lines_ok += ok;
  }
  out.expect(lines.size() >= kMinLines, "(b) fewer than 10 lines");

  std::size_t pairs = 0;
  for (const auto& rec : cert.steps)
    if (const auto* sh = std::get_if<Shift>(&rec.requirement)) {
      const bool ok = rec.witness && x.defined(*rec.witness) && x.defined(*rec.witness + sh->t) &&
                      x.value(*rec.witness) != x.value(*rec.witness + sh->t);
      out.expect(ok, "(c) shift " + str(sh->t));
      pairs += ok;
    }
  const double secs = seconds_since(t0);
  out.expect(secs <= 120.0, "runtime above 120 s");
  out.detail << "window " << x.rect().width() << "x" << x.rect().height() << ", block " << fin.w() << "x" << fin.h()
             << ", " << lines_ok << "/" << lines.size() << " lines periodic, " << pairs << "/" << shifts.size()
             << " shift pairs, " << secs << " s";
}

// ---------------------------------------------------------------------------

constexpr int kLatticePatterns = 20;
constexpr std::size_t kMinLatticePoints = 9;

void lattice_theorem(Outcome& out) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Coord> side(1, 3);
  const GpSchedule sched{Shift{pt(1, 0)}, Shift{pt(0, 1)}, LineClear{Line::row(0)}, Shift{pt(2, 3)}};
  std::size_t min_points = 0;
  for (int k = 0; k < kLatticePatterns; ++k) {
    const Config f = oracle::random_config(rng, Rect::from_bounds(0, side(rng) - 1, 0, side(rng) - 1));
    const LatticeDemo d = lattice_demo(f, sched, GpLimits{});
    const Config& x = d.cert.window.p;
    std::size_t verified = 0;
    for (const auto& g : lattice_points_in(d.lattice, x.rect())) {
      if (!x.rect().contains(Rect(g + f.rect().lo, g + f.rect().hi))) continue;
      const bool ok = oracle::matches(x, f, g.x(), g.y(), false);
      out.expect(ok, "pattern " + std::to_string(k) + " misses lattice point " + str(g));
      verified += ok;
    }
    out.expect(d.pass, "lattice_demo reports failure for pattern " + std::to_string(k));
    out.expect(verified >= kMinLatticePoints, "pattern " + std::to_string(k) + ": fewer than 9 points");
    min_points = k == 0 ? verified : std::min(min_points, verified);
  }
  out.detail << kLatticePatterns << " patterns, at least " << min_points << " verified lattice points each";
}

// ---------------------------------------------------------------------------

constexpr double kCoverSeconds = 30.0;

void shifted_stack_cover(Outcome& out) {
  const auto t0 = Clock::now();
  for (Coord a = 0; a <= 2; ++a) {
    const Coord s = 2 * a + 1;
    const Coord side = 5 * s * s;
    const Rect win = Rect::from_bounds(0, side - 1, 0, side - 1);
    const auto above = check_segment_center_cover(a, win, segment_threshold(a) + 1);
    out.expect(above.covered, "a=" + std::to_string(a) + ": uncovered segment at length " +
                                  std::to_string(segment_threshold(a) + 1));
    const auto short_len = check_segment_center_cover(a, win, s);
    const bool short_fails = !short_len.covered && short_len.counterexample.has_value();
    out.expect(short_fails, "a=" + std::to_string(a) + ": length " + std::to_string(s) +
                                " has no counterexample (every point is a copy centre when a=0)");
    out.detail << "a=" << a << ": len " << segment_threshold(a) + 1 << (above.covered ? " covered" : " NOT covered")
               << ", len " << s << (short_fails ? " fails at " + str(*short_len.counterexample) : " covered") << "; ";
  }
  const double secs = seconds_since(t0);
  out.expect(secs <= kCoverSeconds, "runtime above 30 s");
  out.detail << secs << " s";
}

// ---------------------------------------------------------------------------

constexpr int kToastLevels = 8;

void toast_core(Outcome& out) {
  const Toast t = concentric_squares(kToastLevels);
  const ToastReport rep = check_toast(t);
  out.expect(rep.ok(), "concentric squares rejected");
  const auto growth = check_fx_strict_growth(t, {pt(0, 0)});
  out.expect(growth.ok() && growth.uncovered.empty(), "f_x not strictly increasing at the centre");
  const auto f = fx_profile(t, pt(0, 0));
  for (int k = 0; k < kToastLevels; ++k) out.expect(f[static_cast<std::size_t>(k)] == k, "f_x(k) != k at k=" + std::to_string(k));

  Toast defect = t;
  defect.levels[3] = defect.levels[4];  // level-3 class hugs its superclass
  const ToastReport bad = check_toast(defect);
  const bool flagged = std::any_of(bad.violations.begin(), bad.violations.end(),
                                   [](const ToastViolation& v) { return v.clause == "(2')" && v.level == 3; });
  out.expect(flagged, "margin-0 defect not flagged by (2')");
  out.expect(!check_fx_strict_growth(defect, {pt(0, 0)}).ok(), "defect passes the growth check");
  out.detail << kToastLevels << " levels, f_x = 0.." << kToastLevels - 1 << ", defect flagged: "
             << (flagged ? "(2') at level 3" : "no");
}

// ---------------------------------------------------------------------------

template <class T>
bool json_round_trip(const T& v) {
  const std::string text = json(v).dump();
  return json(json::parse(text).get<T>()).dump() == text;
}

void algebraic_sanity(Outcome& out) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<Coord> side(1, 12), off(-6, 6);
  int flips = 0;
  for (int k = 0; k < 1000; ++k) {
    Config c = oracle::random_config(rng, Rect::from_bounds(off(rng), 6, off(rng), 6));
    if (k % 5 == 0) c.set_hole(c.rect().hi);
    out.expect(flip(flip(c)) == c, "flip twice differs on sample " + std::to_string(k));
    ++flips;
  }

  std::size_t mt_chains = 0, mt_pairs = 0;
  std::uniform_int_distribution<Coord> small(-3, 3);
  for (int k = 0; k < 12; ++k) {
    const bool odd = k % 2 == 1;
    const MtCondition start = oracle::random_condition(rng, odd);
    Schedule sched;
    for (int i = 0; i < 4; ++i)
      if (Point t = pt(small(rng), small(rng)); !t.is_zero()) sched.push_back(Shift{t});
    sched.push_back(SelfPattern{});
    sched.push_back(Cover{pt(small(rng) * 4, small(rng) * 4)});
    if (odd) sched.push_back(DuplicateOdd{});
    std::vector<MtCondition> chain{start};
    for (std::size_t n = 1; n <= sched.size(); ++n)
      chain.push_back(build_generic(start, Schedule(sched.begin(), sched.begin() + static_cast<long>(n)), Limits{}).final_condition);
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i; j < chain.size(); ++j) {
        out.expect(is_extension(chain[j], chain[i]), "mt chain " + std::to_string(k) + " breaks at " +
                                                         std::to_string(i) + "<=" + std::to_string(j));
        ++mt_pairs;
      }
    const Certificate cert = build_generic(start, sched, Limits{});
    out.expect(json_round_trip(start) && json_round_trip(cert), "mt json round trip");
    ++mt_chains;
  }

  std::size_t gp_chains = 0, gp_pairs = 0;
  for (int k = 0; k < 12; ++k) {
    const int n = k % 3 == 2 ? 3 : 2;
    GpCondition seed{n, oracle::random_config(rng, Rect::from_bounds(0, n - 1, 0, n - 1))};
    seed.p.set_hole(pt(static_cast<Coord>(rng() % static_cast<std::uint64_t>(n)), 0));
    GpSchedule sched;
    for (int i = 0; i < 3; ++i) {
      if (Point s = pt(small(rng), small(rng)); !s.is_zero()) sched.push_back(Shift{s});
      sched.push_back(LineClear{i % 2 ? Line::col(small(rng)) : Line::row(small(rng))});
    }
    sched.push_back(Cover{pt(small(rng) * 3, small(rng) * 3)});
    const GpCertificate cert = build_generic_gp(seed, sched, GpLimits{});
    std::vector<GpCondition> chain{seed};
    for (const auto& rec : cert.steps) {
      GpCondition c{n, restrict_to(cert.window.p, rec.domain)};
      c.p.set_hole(rec.hole);
      chain.push_back(c);
    }
    out.expect(chain.back() == cert.final_condition, "gp chain does not end at the final condition");
    chain.push_back(cert.window);
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i; j < chain.size(); ++j) {
        out.expect(is_extension_gp(chain[j], chain[i]), "gp chain " + std::to_string(k) + " breaks at " +
                                                            std::to_string(i) + "<=" + std::to_string(j));
        ++gp_pairs;
      }
    out.expect(json_round_trip(seed) && json_round_trip(cert), "gp json round trip");
    ++gp_chains;
  }

  Toast t = concentric_squares(4);
  t.window = Rect::from_bounds(-6, 6, -6, 6);
  const std::vector<RectPartition> parts{{0, {Rect::from_bounds(0, 3, 0, 3)}},
                                         {1, {Rect::from_bounds(0, 1, 0, 3), Rect::from_bounds(2, 3, 0, 3)}}};
  const std::string ptext = partitions_to_json(parts).dump();
  const bool misc = json_round_trip(pt(-3, 9)) && json_round_trip(Rect::from_bounds(-1, 4, 2, 2)) &&
                    json_round_trip(PointSet{pt(0, 1), pt(-2, 2)}) && json_round_trip(Lattice(pt(1, 2), 3, 4)) &&
                    json_round_trip(t) && json_round_trip(Requirement{DuplicateOdd{}}) &&
                    json_round_trip(GpRequirement{LineClear{Line::col(-2)}}) &&
                    partitions_to_json(partitions_from_json(json::parse(ptext))).dump() == ptext;
  out.expect(misc, "json round trip of a basic type");
  out.detail << flips << " double flips, " << mt_chains << " mt chains (" << mt_pairs << " ordered pairs), " << gp_chains
             << " gp chains (" << gp_pairs << " ordered pairs), json round trips";
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "density-construction soundness", density_soundness},
    {2, "generic minimal 2-coloring certificate", generic_minimal_coloring},
    {3, "odd recurrence", odd_recurrence},
    {4, "grid periodicity", grid_periodicity},
    {5, "lattice containment demo", lattice_theorem},
    {6, "shifted-stack segment cover", shifted_stack_cover},
    {7, "toast core", toast_core},
    {8, "algebraic sanity", algebraic_sanity},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Outcome out;
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && out.pass;
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (out.pass ? "PASS" : "FAIL") << "  "
              << out.detail.str() << '\n';
    for (const auto& f : out.failures) std::cout << "    failed: " << f << '\n';
  }
  if (!ran) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return all_pass ? 0 : 1;
}
