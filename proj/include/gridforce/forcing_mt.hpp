#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gridforce/config.hpp"
#include "gridforce/lattice.hpp"

namespace gridforce {

/// Raised when a construction step would exceed the configured limits.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a built object fails its own post-hoc verification.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShiftWitness {
  Point t;
  PointSet T;
  friend bool operator==(const ShiftWitness&, const ShiftWitness&) = default;
};

struct PatternWitness {
  Config f;
  PointSet F;
  friend bool operator==(const PatternWitness&, const PatternWitness&) = default;
};

/// A condition of the minimal 2-coloring forcing (odd_mode: the odd variant).
struct MtCondition {
  Config p;
  std::vector<ShiftWitness> shifts;
  std::vector<PatternWitness> patterns;
  bool odd_mode = false;

  friend bool operator==(const MtCondition&, const MtCondition&) = default;
};

struct Violation {
  std::string clause;  // "domain", "(a)", "(b1)", "(b2)"
  std::size_t index = 0;
  std::optional<Point> g;
  std::string detail;
};

std::string describe(const Violation& v);

/// Empty iff c is a condition.
std::vector<Violation> validate(const MtCondition& c);
inline bool is_valid(const MtCondition& c) { return validate(c).empty(); }

/// c1 <= c2: p1 extends p2 and c2's witness lists are prefixes of c1's.
bool is_extension(const MtCondition& c1, const MtCondition& c2);

/// Tile p until it covers g (odd tile counts in odd mode).
MtCondition extend_cover(const MtCondition& c, const Point& g);

struct ShiftStep {
  MtCondition condition;
  /// Pair (witness, witness + t) with differing values; nullopt when t was
  /// already scheduled and c is returned unchanged.
  std::optional<Point> witness;
  bool flipped_last_tile = false;
  bool reused_existing_pair = false;
};

/// Tiling by q with the last tile possibly flipped so that
/// p(b,d) != p((b,d)+t); appends (t, (b,d) - dom(p)). Other sign cases are
/// reduced to t >= 0 by reflecting the plane.
ShiftStep extend_shift_step(const MtCondition& c, const Point& t);
MtCondition extend_shift(const MtCondition& c, const Point& t);

/// Zero-growth variant: if p already contains g0, g0+t with different values,
/// append (t, g0 - dom(p)) without touching p.
std::optional<ShiftStep> witness_shift_in_place(const MtCondition& c, const Point& t);

/// Place q and flip(q) side by side (q, flip(q), q in odd mode) and append
/// (q, F) to the pattern list.
MtCondition extend_pattern(const MtCondition& c);

struct Duplication {
  MtCondition condition;
  Point offset;
};

/// Three copies of p in a row; copies sit at 0 and (w, 0), w odd.
Duplication duplicate_odd(const MtCondition& c);

struct Cover {
  Point g;
};
struct Shift {
  Point t;
};
struct SelfPattern {};
struct DuplicateOdd {};

using Requirement = std::variant<Cover, Shift, SelfPattern, DuplicateOdd>;
using Schedule = std::vector<Requirement>;

std::string describe(const Requirement& r);

struct Limits {
  Coord max_side = 4096;
  std::size_t max_steps = 10000;
};

struct StepRecord {
  Requirement requirement;
  /// How the requirement was met: "unchanged", "tiled", "reused-pair",
  /// "flipped-last-tile", "pattern", "duplicated".
  std::string action;
  std::optional<std::size_t> shift_index;
  std::optional<std::size_t> pattern_index;
  std::optional<Point> witness;  // shift pair base or duplication offset
  Rect domain;                   // domain after the step
};

struct Certificate {
  MtCondition start;
  MtCondition final_condition;
  std::vector<StepRecord> steps;
};

/// Meet each requirement in order. Throws std::invalid_argument on an invalid
/// start or schedule, ResourceLimitError when a step exceeds the limits.
Certificate build_generic(const MtCondition& start, const Schedule& sched, const Limits& limits);

/// Replay a certificate from scratch; empty iff every record checks out.
std::vector<std::string> replay(const Certificate& cert);

}  // namespace gridforce
