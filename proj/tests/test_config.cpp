#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gridforce/config.hpp"
#include "oracles.hpp"

using namespace gridforce;

namespace {

std::set<Point> as_set(const PointSet& s) { return {s.begin(), s.end()}; }
const FlipMask kNever = [](Coord, Coord) { return false; };

}  // namespace

TEST_CASE("flip") {
  const Config zeros(Rect::from_bounds(0, 1, 0, 1), false);
  CHECK(flip(zeros) == Config(Rect::from_bounds(0, 1, 0, 1), true));
  Config one(Rect::from_bounds(0, 0, 0, 0), true);
  CHECK(flip(one).value(pt(0, 0)) == false);

  Config holed = Config::from_rows(pt(0, 0), {"0.", "11"});
  const Config fh = flip(holed);
  CHECK(fh.is_hole(pt(1, 0)));
  CHECK(fh.value(pt(0, 0)) == true);
  CHECK(fh.value(pt(1, 1)) == false);
}

TEST_CASE("flip is an involution") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<Coord> s(1, 8);
  for (int k = 0; k < 200; ++k) {
    const Config c = oracle::random_config(rng, Rect::from_bounds(0, s(rng) - 1, 0, s(rng) - 1));
    CHECK(flip(flip(c)) == c);
  }
}

TEST_CASE("tile") {
  const Config q = Config::from_rows(pt(0, 0), {"01", "10"});
  CHECK(tile(q, 1, 1, kNever, pt(0, 0)) == q);

  const Config cell(Rect::from_bounds(0, 0, 0, 0), false);
  const Config two = tile(cell, 2, 1, [](Coord i, Coord) { return i % 2 == 1; }, pt(0, 0));
  CHECK(two.rect() == Rect::from_bounds(0, 1, 0, 0));
  CHECK(two.value(pt(0, 0)) == false);
  CHECK(two.value(pt(1, 0)) == true);

  const Config big = tile(q, 2, 2, kNever, pt(0, 0));
  CHECK(big.rect() == Rect::from_bounds(0, 3, 0, 3));
  CHECK(big.value(pt(3, 3)) == q.value(pt(1, 1)));
  for (const auto& g : big.rect().points()) CHECK(big.value(g) == q.value(pt(g.x() % 2, g.y() % 2)));

  CHECK_THROWS_AS(tile(q, 0, 1, kNever, pt(0, 0)), std::invalid_argument);
}

TEST_CASE("tile then restrict recovers q; flipped blocks hold flip(q)") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<Coord> s(1, 4), off(-5, 5);
  for (int k = 0; k < 100; ++k) {
    const Coord w = s(rng), h = s(rng);
    const Point lo = pt(off(rng), off(rng));
    const Config q = oracle::random_config(rng, Rect(lo, lo + pt(w - 1, h - 1)));
    const Coord nx = s(rng), ny = s(rng);
    const Point anchor = pt(off(rng), off(rng));
    auto mask = [](Coord i, Coord j) { return (i + 2 * j) % 3 == 0; };
    const Config t = tile(q, nx, ny, mask, anchor);
    for (Coord i = 0; i < nx; ++i)
      for (Coord j = 0; j < ny; ++j) {
        const Point at = anchor + pt(i * w, j * h);
        const Config block = translate(restrict_to(t, Rect(at, at + pt(w - 1, h - 1))), q.rect().lo - at);
        CHECK(block == (mask(i, j) ? flip(q) : q));
      }
  }
}

TEST_CASE("find_occurrences") {
  const Config zero(Rect::from_bounds(0, 0, 0, 0), false);
  const Config zeros(Rect::from_bounds(0, 1, 0, 1), false);
  CHECK(find_occurrences(zeros, zero, false).size() == 4);
  CHECK(find_occurrences(zeros, zeros, false).contains(pt(0, 0)));
  CHECK(find_occurrences(zeros, zeros, true).empty());
}

TEST_CASE("find_occurrences agrees with brute force and the flip identity") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Coord> s(1, 3), off(-3, 3);
  for (int k = 0; k < 150; ++k) {
    const Config p = oracle::random_config(rng, Rect::from_bounds(off(rng), 6, off(rng), 5));
    const Point lo = pt(off(rng), off(rng));
    const Config f = oracle::random_config(rng, Rect(lo, lo + pt(s(rng) - 1, s(rng) - 1)));
    for (bool fl : {false, true}) {
      CHECK(as_set(find_occurrences(p, f, fl)) == oracle::occurrences(p, f, fl));
      CHECK(find_occurrences(p, f, fl) == find_occurrences(p, flip(f), !fl));
    }
  }
}

TEST_CASE("boundary") {
  CHECK(boundary(PointSet{pt(0, 0)}) == PointSet{pt(0, 0)});
  const PointSet sq(Rect::from_bounds(0, 2, 0, 2).points());
  const PointSet b = boundary(sq);
  CHECK(b.size() == 8);
  CHECK_FALSE(b.contains(pt(1, 1)));
  CHECK(boundary(PointSet{}).empty());
}

TEST_CASE("boundary agrees with neighbour enumeration") {
  std::mt19937_64 rng(24);
  std::bernoulli_distribution in(0.6);
  for (int k = 0; k < 100; ++k) {
    std::vector<Point> a;
    for (const auto& g : Rect::from_bounds(-3, 4, -2, 5).points())
      if (in(rng)) a.push_back(g);
    const PointSet s(a);
    const PointSet b = boundary(s);
    CHECK(as_set(b) == oracle::boundary_of({a.begin(), a.end()}));
    for (const auto& g : b) CHECK(s.contains(g));
  }
  for (Coord w = 3; w <= 7; ++w)
    for (Coord h = 3; h <= 6; ++h) {
      const Rect r = Rect::from_bounds(1, w, -2, h - 3);
      CHECK(static_cast<Coord>(boundary(r).size()) == 2 * w + 2 * h - 4);
      CHECK(boundary(r) == boundary(PointSet(r.points())));
    }
}

TEST_CASE("from_rows, holes and renders") {
  const Config c = Config::from_rows(pt(-1, 2), {"01.", "110"});
  CHECK(c.rect() == Rect::from_bounds(-1, 1, 2, 3));
  CHECK(c.value(pt(0, 2)) == true);
  CHECK(c.is_hole(pt(1, 2)));
  CHECK_FALSE(c.at(pt(1, 2)).has_value());
  CHECK_THROWS_AS(c.value(pt(1, 2)), std::out_of_range);
  CHECK(c.hole_count() == 1);
  CHECK(to_ascii(c) == "110\n01.\n");
  CHECK(to_pgm(c) == "P2\n3 2\n2\n2 2 0\n0 2 1\n");
}

TEST_CASE("pattern set positions") {
  const Config x = oracle::checkerboard(Rect::from_bounds(0, 3, 0, 3));
  PatternSet b{{Config(Rect::from_bounds(0, 0, 0, 0), true)}};
  const auto mask = b.position_mask(x);
  for (const auto& g : x.rect().points()) CHECK((mask[x.rect().index(g)] == 1) == x.value(g));
}

TEST_CASE("reflect") {
  const Config c = Config::from_rows(pt(0, 0), {"01", "11"});
  const Config r = reflect(c, -1, 1);
  CHECK(r.rect() == Rect::from_bounds(-1, 0, 0, 1));
  CHECK(r.value(pt(-1, 0)) == c.value(pt(1, 0)));
  CHECK(reflect(r, -1, 1) == c);
}
