#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gridforce/witness.hpp"
#include "oracles.hpp"

using namespace gridforce;

namespace {

Config cell(bool v) { return Config(Rect::from_bounds(0, 0, 0, 0), v); }

PatternSet all_positions() {
  return PatternSet{{cell(false), cell(true)}};
}

// Recurrence from the definition, over positions whose probes stay inside.
bool recurrence_oracle(const Config& x, const PatternSet& b, const std::set<Point>& T, std::size_t* checked) {
  *checked = 0;
  for (const auto& g : x.rect().points()) {
    bool admissible = true;
    for (const auto& tau : T)
      for (const auto& f : b.patterns)
        for (const auto& u : f.rect().points()) admissible = admissible && x.in_rect(g + tau + u);
    if (!admissible) continue;
    ++*checked;
    bool hit = false;
    for (const auto& tau : T)
      for (const auto& f : b.patterns) hit = hit || oracle::matches(x, f, g.x() + tau.x(), g.y() + tau.y(), false);
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("check_shift_witness") {
  const Config constant(Rect::from_bounds(0, 4, 0, 4), true);
  CHECK_FALSE(check_shift_witness(constant, pt(1, 0), PointSet{pt(0, 0), pt(1, 1), pt(-2, 3)}));
  const Config cb = oracle::checkerboard(Rect::from_bounds(0, 2, 0, 2));
  CHECK(check_shift_witness(cb, pt(1, 0), PointSet{pt(0, 0), pt(-1, 0)}));
  CHECK_FALSE(check_shift_witness(cb, pt(1, 0), PointSet{pt(0, 0)}));
  CHECK(first_shift_failure(cb, pt(1, 0), PointSet{pt(0, 0)}) == pt(2, 0));
  CHECK_FALSE(check_shift_witness(cb, pt(1, 0), PointSet{}));
  CHECK_THROWS_AS(check_shift_witness(cb, pt(0, 0), PointSet{pt(0, 0)}), std::invalid_argument);
}

TEST_CASE("check_shift_witness matches the definition and is monotone in T") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Coord> d(-2, 2), s(1, 5);
  for (int k = 0; k < 300; ++k) {
    const Config p = oracle::random_config(rng, Rect::from_bounds(0, s(rng), 0, s(rng)));
    Point t = pt(d(rng), d(rng));
    if (t.is_zero()) t = pt(1, 0);
    std::set<Point> T;
    for (int i = 0; i < 4; ++i) T.insert(pt(d(rng), d(rng)));
    const bool got = check_shift_witness(p, t, PointSet({T.begin(), T.end()}));
    CHECK(got == oracle::shift_witness(p, t, T));
    T.insert(pt(d(rng), d(rng)));
    if (got) CHECK(check_shift_witness(p, t, PointSet({T.begin(), T.end()})));
  }
}

TEST_CASE("check_pattern_witness") {
  const Config zeros(Rect::from_bounds(0, 2, 0, 2), false);
  CHECK(check_pattern_witness(zeros, cell(false), PointSet{pt(0, 0)}, false));
  CHECK(check_pattern_witness(zeros, cell(false), PointSet(Rect::from_bounds(-2, 0, -2, 0).points()), false));
  CHECK_FALSE(check_pattern_witness(zeros, zeros, PointSet{pt(0, 0), pt(1, 1)}, true));
  CHECK_FALSE(check_pattern_witness(zeros, cell(false), PointSet{}, false));

  const Config two(Rect::from_bounds(0, 1, 0, 0), false);
  CHECK_FALSE(check_pattern_witness(zeros, two, PointSet{pt(0, 0)}, false));
  CHECK(first_pattern_failure(zeros, two, PointSet{pt(0, 0)}, false) == pt(2, 0));
  CHECK(check_pattern_witness(zeros, two, PointSet{pt(0, 0), pt(-1, 0)}, false));
}

TEST_CASE("check_pattern_witness matches the definition") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<Coord> d(-3, 3), s(1, 2);
  for (int k = 0; k < 300; ++k) {
    const Config p = oracle::random_config(rng, Rect::from_bounds(0, 4, 0, 3));
    const Config f = oracle::random_config(rng, Rect::from_bounds(0, s(rng) - 1, 0, s(rng) - 1));
    std::set<Point> F;
    for (int i = 0; i < 8; ++i) F.insert(pt(d(rng), d(rng)));
    for (bool fl : {false, true})
      CHECK(check_pattern_witness(p, f, PointSet({F.begin(), F.end()}), fl) == oracle::pattern_witness(p, f, F, fl));
  }
}

TEST_CASE("window_two_coloring_check") {
  for (Coord side : {3, 5, 8}) {
    const Config cb = oracle::checkerboard(Rect::from_bounds(0, side - 1, 0, side - 1));
    const Verdict v = window_two_coloring_check(cb, pt(1, 0), PointSet{pt(0, 0)});
    CHECK(v.pass);
    CHECK(v.checked == static_cast<std::size_t>((side - 1) * side));
    CHECK(v.rim_excluded == static_cast<std::size_t>(side));
  }
  const Config constant(Rect::from_bounds(0, 5, 0, 5), false);
  CHECK_FALSE(window_two_coloring_ok(constant, pt(0, 1), PointSet{pt(0, 0), pt(1, 2)}));
  const Config tiny(Rect::from_bounds(0, 1, 0, 1), false);
  const Verdict vac = window_two_coloring_check(tiny, pt(5, 0), PointSet{pt(0, 0)});
  CHECK(vac.pass);
  CHECK(vac.checked == 0);
}

TEST_CASE("window_two_coloring_check passes on every sub-window of a passing window") {
  std::mt19937_64 rng(33);
  const Config x = oracle::checkerboard(Rect::from_bounds(0, 9, 0, 9));
  std::uniform_int_distribution<Coord> d(0, 9);
  for (int k = 0; k < 100; ++k) {
    Coord a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a > b) std::swap(a, b);
    if (c > e) std::swap(c, e);
    const Config sub = restrict_to(x, Rect::from_bounds(a, b, c, e));
    CHECK(window_two_coloring_ok(sub, pt(0, 1), PointSet{pt(0, 0), pt(1, 0)}));
  }
}

TEST_CASE("recurrence_check") {
  const Config cb = oracle::checkerboard(Rect::from_bounds(0, 5, 0, 5));
  CHECK(recurrence_check(cb, all_positions(), PointSet{pt(0, 0)}).pass);
  const PatternSet ones{{cell(true)}};
  CHECK(recurrence_check(cb, ones, PointSet{pt(0, 0), pt(1, 0)}).pass);
  CHECK_FALSE(recurrence_check(cb, ones, PointSet{pt(0, 0)}).pass);
  CHECK_FALSE(recurrence_check(cb, ones, PointSet{}).pass);
}

TEST_CASE("recurrence_check matches the definition; supersets of passing T pass") {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<Coord> d(-2, 2);
  for (int k = 0; k < 200; ++k) {
    const Config x = oracle::random_config(rng, Rect::from_bounds(0, 6, 0, 6));
    const PatternSet b{{oracle::random_config(rng, Rect::from_bounds(0, 1, 0, 0))}};
    std::set<Point> T;
    for (int i = 0; i < 3; ++i) T.insert(pt(d(rng), d(rng)));
    std::size_t checked = 0;
    const Verdict v = recurrence_check(x, b, PointSet({T.begin(), T.end()}));
    CHECK(v.pass == recurrence_oracle(x, b, T, &checked));
    if (v.pass) CHECK(v.checked == checked);
    if (v.pass) {
      std::set<Point> bigger = T;
      bigger.insert(pt(d(rng), d(rng)));
      std::size_t c2 = 0;
      CHECK(recurrence_oracle(x, b, bigger, &c2) == recurrence_check(x, b, PointSet({bigger.begin(), bigger.end()})).pass);
    }
  }
}

TEST_CASE("find_odd_recurrence") {
  const Config cb = oracle::checkerboard(Rect::from_bounds(0, 9, 0, 9));
  // A 1-cell sits an odd step from only the 0-cells of a checkerboard, so
  // no odd set works for the 1-cells themselves.
  CHECK_FALSE(find_odd_recurrence(cb, PatternSet{{cell(true)}}, 3).has_value());
  for (Coord r = 1; r <= 3; r += 2) {
    std::size_t checked = 0;
    const auto ball = odd_ball(r).members;
    CHECK_FALSE(recurrence_oracle(cb, PatternSet{{cell(true)}}, {ball.begin(), ball.end()}, &checked));
  }
  const Config zeros(Rect::from_bounds(0, 5, 0, 5), false);
  CHECK_FALSE(find_odd_recurrence(zeros, PatternSet{{cell(true)}}, 5).has_value());
  const auto all = find_odd_recurrence(cb, all_positions(), 5);
  REQUIRE(all.has_value());
  CHECK(all->radius == 1);
  CHECK(all->members == PointSet{pt(-1, 0), pt(0, -1), pt(0, 1), pt(1, 0)});
}

TEST_CASE("find_odd_recurrence members have odd norm and pass recurrence") {
  std::mt19937_64 rng(35);
  for (int k = 0; k < 50; ++k) {
    const Config x = oracle::random_config(rng, Rect::from_bounds(0, 11, 0, 11));
    const PatternSet b{{cell(rng() % 2 == 1)}};
    if (auto o = find_odd_recurrence(x, b, 5)) {
      for (const auto& g : o->members) CHECK(taxicab_norm(g) % 2 == 1);
      CHECK(recurrence_check(x, b, o->members).pass);
    }
  }
  for (Coord r = 0; r <= 4; ++r)
    for (const auto& g : odd_ball(r).members) CHECK((taxicab_norm(g) % 2 == 1 && taxicab_norm(g) <= r));
}

TEST_CASE("find_lattice_in") {
  const Config cb = oracle::checkerboard(Rect::from_bounds(0, 7, 0, 7));
  const auto all = find_lattice_in(cb, all_positions(), 4);
  REQUIRE(all.has_value());
  CHECK(all->anchor == pt(0, 0));
  CHECK(all->w == 1);
  CHECK(all->h == 1);

  const auto even = find_lattice_in(cb, PatternSet{{cell(false)}}, 4);
  REQUIRE(even.has_value());
  CHECK(even->w == 2);
  CHECK(even->h == 2);
  const auto pts = admissible_lattice_points(cb, PatternSet{{cell(false)}}, *even);
  CHECK(pts.size() >= 9);
  for (const auto& g : lattice_points_in(*even, cb.rect())) CHECK(cb.value(g) == false);

  const Config zeros(Rect::from_bounds(0, 7, 0, 7), false);
  CHECK_FALSE(find_lattice_in(zeros, PatternSet{{cell(true)}}, 4).has_value());
}

TEST_CASE("find_lattice_in results verified post hoc") {
  std::mt19937_64 rng(36);
  for (int k = 0; k < 40; ++k) {
    const Config q = oracle::random_config(rng, Rect::from_bounds(0, 2, 0, 1));
    const Config x = tile(q, 5, 6, [](Coord, Coord) { return false; }, pt(0, 0));
    const PatternSet b{{oracle::random_config(rng, Rect::from_bounds(0, 1, 0, 0))}};
    if (auto l = find_lattice_in(x, b, 6)) {
      const auto pts = admissible_lattice_points(x, b, *l);
      CHECK(pts.size() >= 9);
      for (const auto& g : pts) CHECK(oracle::matches(x, b.patterns[0], g.x(), g.y(), false));
    } else {
      CHECK(oracle::occurrences(x, b.patterns[0], false).empty());
    }
  }
}

TEST_CASE("chromatic checks") {
  const Rect r = Rect::from_bounds(0, 5, 0, 4);
  std::vector<int> cb, constant(static_cast<std::size_t>(r.area()), 0), stripes;
  for (std::size_t i = 0; i < static_cast<std::size_t>(r.area()); ++i) {
    const Point g = r.point_at(i);
    cb.push_back(static_cast<int>((g.x() + g.y()) % 2));
    stripes.push_back(static_cast<int>((g.x() + g.y()) % 3));
  }
  const ColorGrid c1(r, cb), c2(r, constant), c3(r, stripes);
  CHECK(chromatic_check(c1, 2));
  CHECK(largest_two_colored_rect(c1) == r);
  CHECK_FALSE(chromatic_check(c2, 2));
  CHECK(chromatic_check(c3, 3));
  CHECK_FALSE(chromatic_check(c3, 2));
  const Rect best = largest_two_colored_rect(c3);
  CHECK(best.width() == 2);
  CHECK(best.height() == 1);
}

TEST_CASE("largest_two_colored_rect against exhaustive search") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 60; ++k) {
    const Rect r = Rect::from_bounds(0, 5, 0, 4);
    std::vector<int> colors;
    for (std::size_t i = 0; i < static_cast<std::size_t>(r.area()); ++i) {
      const Point g = r.point_at(i);
      colors.push_back(rng() % 5 == 0 ? static_cast<int>(rng() % 3) : static_cast<int>((g.x() + g.y()) % 2));
    }
    const ColorGrid c(r, colors);
    auto two_colored = [&](const Rect& s) {
      std::set<int> used;
      for (const auto& g : s.points()) {
        used.insert(c.at(g));
        if (s.contains(g + pt(1, 0)) && c.at(g) == c.at(g + pt(1, 0))) return false;
        if (s.contains(g + pt(0, 1)) && c.at(g) == c.at(g + pt(0, 1))) return false;
      }
      return used.size() <= 2;
    };
    Coord best_min = 0, best_area = 0;
    for (const auto& lo : r.points())
      for (const auto& hi : r.points())
        if (lo.x() <= hi.x() && lo.y() <= hi.y()) {
          const Rect s(lo, hi);
          if (!two_colored(s)) continue;
          const Coord m = std::min(s.width(), s.height());
          if (m > best_min || (m == best_min && s.area() > best_area)) {
            best_min = m;
            best_area = s.area();
          }
        }
    const Rect got = largest_two_colored_rect(c);
    CHECK(two_colored(got));
    CHECK(std::min(got.width(), got.height()) == best_min);
    CHECK(got.area() == best_area);
  }
}
