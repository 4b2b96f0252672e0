#include "gridforce/json_io.hpp"

#include <stdexcept>
#include <string>

namespace gridforce {

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const Rect& r) { j = json::array({r.lo.x(), r.hi.x(), r.lo.y(), r.hi.y()}); }

void from_json(const json& j, Rect& r) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("rect: expected [a,b,c,d]");
  const auto a = j[0].get<Coord>(), b = j[1].get<Coord>(), c = j[2].get<Coord>(), d = j[3].get<Coord>();
  if (a > b || c > d) throw std::invalid_argument("rect: empty");
  r = Rect::from_bounds(a, b, c, d);
}

void to_json(json& j, const PointSet& s) { j = json(s.points()); }
void from_json(const json& j, PointSet& s) { s = PointSet(j.get<std::vector<Point>>()); }

void to_json(json& j, const Lattice& l) { j = {{"anchor", l.anchor}, {"w", l.w}, {"h", l.h}}; }
void from_json(const json& j, Lattice& l) {
  l.anchor = j.at("anchor").get<Point>();
  l.w = j.at("w").get<Coord>();
  l.h = j.at("h").get<Coord>();
  if (l.w < 1 || l.h < 1) throw std::invalid_argument("lattice: spacings must be positive");
}

void to_json(json& j, const Config& c) {
  const Rect& r = c.rect();
  json rows = json::array();
  std::size_t idx = 0;
  for (Coord y = 0; y < r.height(); ++y) {
    std::string row(static_cast<std::size_t>(r.width()), '0');
    for (auto& ch : row) ch = c.cell(idx++) == 1 ? '1' : '0';
    rows.push_back(std::move(row));
  }
  j = {{"rect", r}, {"rows", std::move(rows)}, {"holes", c.holes()}};
}

void from_json(const json& j, Config& c) {
  const Rect r = j.at("rect").get<Rect>();
  const auto rows = j.at("rows").get<std::vector<std::string>>();
  if (static_cast<Coord>(rows.size()) != r.height()) throw std::invalid_argument("config: row count does not match rect");
  for (const auto& row : rows)
    if (static_cast<Coord>(row.size()) != r.width()) throw std::invalid_argument("config: row length does not match rect");
  c = Config::from_rows(r.lo, rows);
  if (j.contains("holes"))
    for (const auto& h : j.at("holes").get<std::vector<Point>>()) {
      if (!r.contains(h)) throw std::invalid_argument("config: hole outside rect");
      c.set_hole(h);
    }
}

void to_json(json& j, const ShiftWitness& w) { j = {{"t", w.t}, {"T", w.T}}; }
void from_json(const json& j, ShiftWitness& w) {
  w.t = j.at("t").get<Point>();
  w.T = j.at("T").get<PointSet>();
}

void to_json(json& j, const PatternWitness& w) { j = {{"f", w.f}, {"F", w.F}}; }
void from_json(const json& j, PatternWitness& w) {
  w.f = j.at("f").get<Config>();
  w.F = j.at("F").get<PointSet>();
}

void to_json(json& j, const MtCondition& c) {
  j = {{"p", c.p}, {"shifts", c.shifts}, {"patterns", c.patterns}, {"odd", c.odd_mode}};
}
void from_json(const json& j, MtCondition& c) {
  c.p = j.at("p").get<Config>();
  c.shifts = j.value("shifts", json::array()).get<std::vector<ShiftWitness>>();
  c.patterns = j.value("patterns", json::array()).get<std::vector<PatternWitness>>();
  c.odd_mode = j.value("odd", false);
}

void to_json(json& j, const Requirement& r) {
  if (const auto* c = std::get_if<Cover>(&r))
    j = {{"cover", c->g}};
  else if (const auto* s = std::get_if<Shift>(&r))
    j = {{"shift", s->t}};
  else if (std::holds_alternative<SelfPattern>(r))
    j = "self-pattern";
  else
    j = "duplicate-odd";
}

void from_json(const json& j, Requirement& r) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "self-pattern")
      r = SelfPattern{};
    else if (s == "duplicate-odd")
      r = DuplicateOdd{};
    else
      throw std::invalid_argument("unknown requirement: " + s);
  } else if (j.contains("cover")) {
    r = Cover{j.at("cover").get<Point>()};
  } else if (j.contains("shift")) {
    r = Shift{j.at("shift").get<Point>()};
  } else {
    throw std::invalid_argument("unknown requirement: " + j.dump());
  }
}

void to_json(json& j, const StepRecord& s) {
  j = {{"requirement", s.requirement}, {"action", s.action},  {"shift_index", opt(s.shift_index)},
       {"pattern_index", opt(s.pattern_index)}, {"witness", opt(s.witness)}, {"domain", s.domain}};
}
void from_json(const json& j, StepRecord& s) {
  s.requirement = j.at("requirement").get<Requirement>();
  s.action = j.at("action").get<std::string>();
  s.shift_index = get_opt<std::size_t>(j, "shift_index");
  s.pattern_index = get_opt<std::size_t>(j, "pattern_index");
  s.witness = get_opt<Point>(j, "witness");
  s.domain = j.at("domain").get<Rect>();
}

void to_json(json& j, const Certificate& c) {
  json manifest = json::array();
  for (std::size_t i = 0; i < c.final_condition.shifts.size(); ++i)
    manifest.push_back({{"check", "(a)"}, {"shift", i}});
  for (std::size_t i = 0; i < c.final_condition.patterns.size(); ++i) {
    manifest.push_back({{"check", "(b1)"}, {"pattern", i}});
    manifest.push_back({{"check", "(b2)"}, {"pattern", i}});
  }
  manifest.push_back({{"check", "extension"}});
  manifest.push_back({{"check", "steps"}, {"count", c.steps.size()}});
  j = {{"kind", "mt"}, {"start", c.start}, {"final", c.final_condition}, {"steps", c.steps}, {"replay", manifest}};
}
void from_json(const json& j, Certificate& c) {
  if (j.value("kind", "mt") != "mt") throw std::invalid_argument("certificate: expected kind mt");
  c.start = j.at("start").get<MtCondition>();
  c.final_condition = j.at("final").get<MtCondition>();
  c.steps = j.at("steps").get<std::vector<StepRecord>>();
}

void to_json(json& j, const GpCondition& c) {
  to_json(j, c.p);
  j["n"] = c.n;
  if (c.p.hole_count() == 1) j["u"] = c.u();
}
void from_json(const json& j, GpCondition& c) {
  c.n = j.at("n").get<int>();
  from_json(j, c.p);
  if (j.contains("u")) {
    const Point u = j.at("u").get<Point>();
    if (!c.p.in_rect(u)) throw std::invalid_argument("gp condition: u outside rect");
    c.p.set_hole(u);
  }
}

void to_json(json& j, const Line& l) {
  j = l.axis == Line::Axis::Row ? json{{"row", l.index}} : json{{"col", l.index}};
}
void from_json(const json& j, Line& l) {
  if (j.contains("row"))
    l = Line::row(j.at("row").get<Coord>());
  else if (j.contains("col"))
    l = Line::col(j.at("col").get<Coord>());
  else
    throw std::invalid_argument("line: expected row or col");
}

void to_json(json& j, const GpRequirement& r) {
  if (const auto* c = std::get_if<Cover>(&r))
    j = {{"cover", c->g}};
  else if (const auto* s = std::get_if<Shift>(&r))
    j = {{"shift", s->t}};
  else
    j = {{"line_clear", std::get<LineClear>(r).line}};
}
void from_json(const json& j, GpRequirement& r) {
  if (j.contains("cover"))
    r = Cover{j.at("cover").get<Point>()};
  else if (j.contains("shift"))
    r = Shift{j.at("shift").get<Point>()};
  else if (j.contains("line_clear"))
    r = LineClear{j.at("line_clear").get<Line>()};
  else
    throw std::invalid_argument("unknown requirement: " + j.dump());
}

void to_json(json& j, const GpStepRecord& s) {
  j = {{"requirement", s.requirement},
       {"action", s.action},
       {"witness", opt(s.witness)},
       {"domain", s.domain},
       {"hole", s.hole}};
}
void from_json(const json& j, GpStepRecord& s) {
  s.requirement = j.at("requirement").get<GpRequirement>();
  s.action = j.at("action").get<std::string>();
  s.witness = get_opt<Point>(j, "witness");
  s.domain = j.at("domain").get<Rect>();
  s.hole = j.at("hole").get<Point>();
}

void to_json(json& j, const GpCertificate& c) {
  json manifest = json::array({{{"check", "extension-chain"}, {"count", c.steps.size()}},
                               {{"check", "window-extends-final"}},
                               {{"check", "grid-periodicity"}}});
  j = {{"kind", "gp"},
       {"seed", c.seed},
       {"final", c.final_condition},
       {"window", c.window},
       {"steps", c.steps},
       {"replay", manifest}};
}
void from_json(const json& j, GpCertificate& c) {
  if (j.value("kind", "gp") != "gp") throw std::invalid_argument("certificate: expected kind gp");
  c.seed = j.at("seed").get<GpCondition>();
  c.final_condition = j.at("final").get<GpCondition>();
  c.window = j.at("window").get<GpCondition>();
  c.steps = j.at("steps").get<std::vector<GpStepRecord>>();
}

void to_json(json& j, const Toast& t) {
  json levels = json::array();
  for (const auto& level : t.levels) {
    json classes = json::array();
    for (const auto& c : level) classes.push_back({{"class", c}});
    levels.push_back(std::move(classes));
  }
  j = {{"layered", t.layered}, {"levels", std::move(levels)}};
  if (t.window) j["window"] = *t.window;
}
void from_json(const json& j, Toast& t) {
  t.layered = j.value("layered", true);
  t.window = get_opt<Rect>(j, "window");
  t.levels.clear();
  for (const auto& level : j.at("levels")) {
    std::vector<PointSet> classes;
    for (const auto& c : level) classes.push_back(c.at("class").get<PointSet>());
    t.levels.push_back(std::move(classes));
  }
}

json partitions_to_json(const std::vector<RectPartition>& seq) {
  json levels = json::array();
  for (const auto& p : seq) levels.push_back({{"rects", p.rects}});
  return {{"levels", std::move(levels)}};
}

std::vector<RectPartition> partitions_from_json(const json& j) {
  std::vector<RectPartition> out;
  int n = 0;
  for (const auto& level : j.at("levels")) out.push_back({n++, level.at("rects").get<std::vector<Rect>>()});
  return out;
}

json verdict_json(const Verdict& v, const json& witness_used) {
  return {{"pass", v.pass},
          {"failing_positions", v.failing},
          {"witness_used", witness_used},
          {"checked", v.checked},
          {"rim_excluded", v.rim_excluded}};
}

}  // namespace gridforce
