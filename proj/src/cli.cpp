#include "gridforce/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace gridforce::cli {

namespace fs = std::filesystem;

namespace {

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::invalid_argument("cannot open " + p.string());
  return json::parse(in);
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + p.string());
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Writes name.json, plus name.pgm / name.txt per format; returns written paths.
json write_artifact(const RunOptions& opts, const std::string& name, const json& j, const std::string& pgm,
                    const std::string& ascii) {
  json files = json::array();
  if (opts.out.empty()) return files;
  const fs::path base = opts.out / name;
  write_file(base.string() + ".json", dump(j));
  files.push_back(base.string() + ".json");
  if (opts.format == Format::Pgm && !pgm.empty()) {
    write_file(base.string() + ".pgm", pgm);
    files.push_back(base.string() + ".pgm");
  } else if (opts.format == Format::Ascii && !ascii.empty()) {
    write_file(base.string() + ".txt", ascii);
    files.push_back(base.string() + ".txt");
  }
  return files;
}

template <class L>
L apply_limits(L lim, const json& spec, const RunOptions& opts) {
  if (spec.contains("limits")) {
    const auto& l = spec.at("limits");
    lim.max_side = l.value("max_side", lim.max_side);
    lim.max_steps = l.value("max_steps", lim.max_steps);
  }
  if (opts.max_side) lim.max_side = *opts.max_side;
  if (opts.max_steps) lim.max_steps = *opts.max_steps;
  if (lim.max_side < 1 || lim.max_steps < 1) throw std::invalid_argument("limits must be positive");
  return lim;
}

json check_entry(const std::string& clause, bool pass, std::vector<Point> failing, const json& witness) {
  return {{"clause", clause}, {"pass", pass}, {"failing_positions", std::move(failing)}, {"witness_used", witness}};
}

json compare_windows(const Config& expected, const Config& got) {
  std::vector<Point> diff;
  if (expected.rect() != got.rect()) return check_entry("window", false, {}, {{"rect", expected.rect()}});
  for (const auto& g : expected.rect().points())
    if (expected.at(g) != got.at(g)) diff.push_back(g);
  const bool same = diff.empty();
  return check_entry("window", same, std::move(diff), {{"rect", expected.rect()}});
}

Config checkerboard(const Rect& r) {
  Config c(r);
  for (const auto& g : r.points()) c.set(g, floor_mod(g.x() + g.y(), 2) == 1);
  return c;
}

json verify_mt(const Certificate& cert, const std::optional<Config>& window) {
  const MtCondition& fin = cert.final_condition;
  json checks = json::array();
  for (std::size_t i = 0; i < fin.shifts.size(); ++i) {
    const auto& s = fin.shifts[i];
    std::vector<Point> bad;
    if (auto g = first_shift_failure(fin.p, s.t, s.T)) bad.push_back(*g);
    checks.push_back(check_entry("(a)", bad.empty(), bad, s));
  }
  for (std::size_t i = 0; i < fin.patterns.size(); ++i)
    for (bool flipped : {false, true}) {
      const auto& pw = fin.patterns[i];
      std::vector<Point> bad;
      if (auto g = first_pattern_failure(fin.p, pw.f, pw.F, flipped)) bad.push_back(*g);
      checks.push_back(check_entry(flipped ? "(b2)" : "(b1)", bad.empty(), bad, {{"pattern", i}, {"F", pw.F}}));
    }
  if (window) checks.push_back(compare_windows(fin.p, *window));
  const auto errs = replay(cert);
  checks.push_back(check_entry("replay", errs.empty(), {}, {{"errors", errs}}));
  return checks;
}

json verify_gp(const GpCertificate& cert, const std::optional<Config>& window) {
  json checks = json::array();
  const GpCondition& fin = cert.final_condition;
  if (validate_gp(fin) && validate_gp(cert.window)) {
    std::vector<Point> bad;
    if (auto g = grid_periodicity_failure(cert.window.p, fin.w(), fin.h(), fin.u())) bad.push_back(*g);
    checks.push_back(check_entry("grid-periodicity", bad.empty(), bad,
                                 {{"w", fin.w()}, {"h", fin.h()}, {"u", fin.u()}}));
  }
  if (window) checks.push_back(compare_windows(cert.window.p, *window));
  const auto errs = replay(cert);
  checks.push_back(check_entry("replay", errs.empty(), {}, {{"errors", errs}}));
  return checks;
}

}  // namespace

json cmd_build_mt(const json& spec, const RunOptions& opts) {
  MtCondition start;
  if (spec.contains("start")) {
    start = spec.at("start").get<MtCondition>();
  } else {
    start.p = spec.at("seed").get<Config>();
    start.odd_mode = spec.value("odd", false);
  }
  Schedule sched;
  for (const auto& t : nonzero_ball(spec.value("shifts_up_to", Coord{0}))) sched.push_back(Shift{t});
  if (spec.contains("schedule")) {
    auto more = spec.at("schedule").get<Schedule>();
    sched.insert(sched.end(), more.begin(), more.end());
  }
  for (int i = 0; i < spec.value("self_patterns", 0); ++i) sched.push_back(SelfPattern{});
  const Limits limits = apply_limits(Limits{}, spec, opts);

  const Certificate cert = build_generic(start, sched, limits);
  const Config& x = cert.final_condition.p;
  json files = write_artifact(opts, "window", json(x), to_pgm(x), to_ascii(x));
  for (auto& f : write_artifact(opts, "certificate", json(cert), "", "")) files.push_back(f);
  return {{"command", "build-mt"},
          {"pass", true},
          {"window", x.rect()},
          {"steps", cert.steps.size()},
          {"shifts", cert.final_condition.shifts.size()},
          {"patterns", cert.final_condition.patterns.size()},
          {"files", files}};
}

json cmd_build_gp(const json& spec, const RunOptions& opts) {
  GpCondition seed;
  if (spec.contains("seed")) {
    seed = spec.at("seed").get<GpCondition>();
  } else {
    seed.n = spec.value("n", 2);
    if (seed.n < 2) throw std::invalid_argument("n must be at least 2");
    seed.p = Config(Rect::from_bounds(0, seed.n - 1, 0, seed.n - 1));
    seed.p.set_hole(pt(0, 0));
  }
  const GpSchedule sched = spec.value("schedule", json::array()).get<GpSchedule>();
  GpLimits limits = apply_limits(GpLimits{}, spec, opts);
  limits.window_blocks = spec.value("window_blocks", Coord{0});

  const GpCertificate cert = build_generic_gp(seed, sched, limits);
  const GpCondition& fin = cert.final_condition;
  const Config& x = cert.window.p;
  json files = write_artifact(opts, "window", json(cert.window), to_pgm_gp(x, fin.w(), fin.h(), fin.u()), to_ascii(x));
  for (auto& f : write_artifact(opts, "certificate", json(cert), "", "")) files.push_back(f);
  return {{"command", "build-gp"},
          {"pass", true},
          {"window", x.rect()},
          {"lattice", Lattice(fin.u(), fin.w(), fin.h())},
          {"steps", cert.steps.size()},
          {"files", files}};
}

json cmd_verify(const json& spec, const RunOptions& opts) {
  const fs::path dir = opts.spec.has_parent_path() ? opts.spec.parent_path() : fs::path(".");
  json cert_json = spec;
  std::optional<Config> window;
  if (spec.contains("certificate")) {
    cert_json = spec.at("certificate").is_string() ? read_json(dir / spec.at("certificate").get<std::string>())
                                                   : spec.at("certificate");
    if (spec.contains("window")) {
      const json w = spec.at("window").is_string() ? read_json(dir / spec.at("window").get<std::string>())
                                                   : spec.at("window");
      window = w.get<Config>();
    }
  }
  const std::string kind = cert_json.value("kind", "");
  json checks;
  if (kind == "mt")
    checks = verify_mt(cert_json.get<Certificate>(), window);
  else if (kind == "gp")
    checks = verify_gp(cert_json.get<GpCertificate>(), window);
  else
    throw std::invalid_argument("verify: certificate kind must be mt or gp");

  bool pass = true;
  std::string first_failure;
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) {
      if (pass) first_failure = c.at("clause").get<std::string>();
      pass = false;
    }
  json report = {{"command", "verify"}, {"kind", kind}, {"pass", pass}, {"checks", checks}};
  if (!pass) {
    report["failing_clause"] = first_failure;
    throw VerificationFailure("verification failed: clause " + first_failure, report);
  }
  return report;
}

json cmd_toast(const json& spec, const RunOptions& opts) {
  Toast t = spec.contains("concentric") ? concentric_squares(spec.at("concentric").get<int>(), spec.value("layered", true))
                                        : spec.get<Toast>();
  const Rect win = t.effective_window();
  std::vector<Point> probes;
  if (spec.contains("probes"))
    probes = spec.at("probes").get<std::vector<Point>>();
  else
    probes.push_back(pt(floor_div(win.lo.x() + win.hi.x(), 2), floor_div(win.lo.y() + win.hi.y(), 2)));

  const ToastReport rep = check_toast(t);
  json violations = json::array();
  for (const auto& v : rep.violations)
    violations.push_back({{"clause", v.clause}, {"level", v.level}, {"index", v.index}, {"detail", v.detail}});
  json growth = json::array();
  bool growth_ok = true;
  if (t.layered) {
    const GrowthReport g = check_fx_strict_growth(t, probes);
    growth_ok = g.ok();
    for (const auto& x : probes) {
      bool strict = std::none_of(g.failures.begin(), g.failures.end(), [&](const GrowthFailure& f) { return f.probe == x; });
      growth.push_back({{"probe", x}, {"f", fx_profile(t, x)}, {"strict_growth", strict}});
    }
  }
  json files = write_artifact(opts, "toast", json(t), to_pgm(t), "");
  json report = {{"command", "toast"},
                 {"pass", rep.ok() && growth_ok},
                 {"layered", t.layered},
                 {"levels", t.levels.size()},
                 {"window", win},
                 {"violations", violations},
                 {"rim_exempt", rep.rim_exempt},
                 {"growth", growth},
                 {"files", files}};
  if (!rep.ok()) throw VerificationFailure("toast check failed: clause " + rep.violations.front().clause, report);
  if (!growth_ok) throw VerificationFailure("toast check failed: f_x not strictly increasing", report);
  return report;
}

json cmd_markers(const json& spec, const RunOptions& opts) {
  json report = {{"command", "markers"}, {"pass", true}};
  json files = json::array();
  if (spec.contains("shifted_stack")) {
    const auto& s = spec.at("shifted_stack");
    const Coord a = s.value("a", Coord{1});
    if (a < 0) throw std::invalid_argument("shifted_stack: a must be non-negative");
    const Coord side = s.value("window_side", 5 * (2 * a + 1) * (2 * a + 1));
    if (side < 2 * a + 2) throw std::invalid_argument("shifted_stack: window too small");
    const Rect win = Rect::from_bounds(0, side - 1, 0, side - 1);
    const Config p = s.contains("p") ? s.at("p").get<Config>() : checkerboard(Rect::from_bounds(-a, a, -a, a));
    const Config stack = build_shifted_stack(p, side - 1);
    const Coord threshold = segment_threshold(a);

    auto cover_json = [&](Coord len) {
      const auto r = check_segment_center_cover(a, win, len);
      return json{{"seg_len", len},
                  {"covered", r.covered},
                  {"segments_checked", r.segments_checked},
                  {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}};
    };
    json cover = cover_json(threshold + 1);
    json extra = json::array();
    for (const auto len : s.value("seg_lens", std::vector<Coord>{})) extra.push_back(cover_json(len));
    report["shifted_stack"] = {{"a", a},
                               {"window", win},
                               {"threshold", threshold},
                               {"centers", copy_centers(a, win).size()},
                               {"cover", cover},
                               {"other_lengths", extra}};
    if (!cover.at("covered").get<bool>()) report["pass"] = false;
    for (auto& f : write_artifact(opts, "stack", json(stack), to_pgm(stack), to_ascii(stack))) files.push_back(f);
  }
  if (spec.contains("partitions")) {
    const auto seq = partitions_from_json(spec.at("partitions"));
    const auto probes = spec.value("probes", std::vector<Point>{});
    const PartitionReport pr = check_partition_props(seq, probes);
    json levels = json::array();
    for (const auto& l : pr.levels) {
      if (!l.partitions_window) throw std::invalid_argument("partitions: level " + std::to_string(l.level) +
                                                            " does not partition the window");
      levels.push_back({{"level", l.level}, {"v", l.v}, {"w", l.w}});
    }
    json prof = json::array();
    for (const auto& p : pr.probes)
      prof.push_back({{"probe", p.probe}, {"phi", p.phi}, {"looks_divergent", p.looks_divergent}});
    report["partitions"] = {{"window", pr.window},
                            {"levels", levels},
                            {"increasing_size_violated", pr.increasing_size_violated},
                            {"probes", prof},
                            {"flagged_probes", pr.flagged_probes}};
  }
  if (!spec.contains("shifted_stack") && !spec.contains("partitions"))
    throw std::invalid_argument("markers: spec needs shifted_stack or partitions");
  report["files"] = files;
  if (!report.at("pass").get<bool>()) throw VerificationFailure("segment cover fails above the threshold", report);
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite windows of generic colorings of Z^2 and their verifiers", "gridforce"};
  app.require_subcommand(1);
  RunOptions opts;
  std::string format = "json";
  std::optional<Coord> max_side;
  std::optional<std::size_t> max_steps;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"build-mt", "Build a window of a generic minimal 2-coloring"},
      {"build-gp", "Build a window of a generic grid-periodic point"},
      {"verify", "Replay a certificate and recompute its witnesses"},
      {"toast", "Check toast axioms and f_x growth"},
      {"markers", "Shifted-stack segment cover and marker partition profiles"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--spec", opts.spec, "Spec JSON")->required();
    sub->add_option("--out", opts.out, "Artifact directory");
    sub->add_option("--format", format, "json|pgm|ascii")->check(CLI::IsMember({"json", "pgm", "ascii"}));
    sub->add_option("--max-side", max_side, "Largest allowed side length");
    sub->add_option("--max-steps", max_steps, "Largest allowed schedule length");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  std::string command;
  try {
    app.parse(rev);
    command = app.get_subcommands().front()->get_name();
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kInvalidSpec;
  }
  opts.format = format == "pgm" ? Format::Pgm : format == "ascii" ? Format::Ascii : Format::Json;
  opts.max_side = max_side;
  opts.max_steps = max_steps;

  auto fail = [&](int code, const std::string& msg, json report = json::object()) {
    report["command"] = command;
    report["pass"] = false;
    report["error"] = msg;
    report["exit_code"] = code;
    out << dump(report);
    err << "gridforce " << command << ": " << msg << '\n';
    return code;
  };
  try {
    const json spec = read_json(opts.spec);
    json report;
    if (command == "build-mt")
      report = cmd_build_mt(spec, opts);
    else if (command == "build-gp")
      report = cmd_build_gp(spec, opts);
    else if (command == "verify")
      report = cmd_verify(spec, opts);
    else if (command == "toast")
      report = cmd_toast(spec, opts);
    else
      report = cmd_markers(spec, opts);
    out << dump(report);
    return kOk;
  } catch (const VerificationFailure& e) {
    return fail(kInvariantFailure, e.what(), e.report());
  } catch (const ResourceLimitError& e) {
    return fail(kResourceLimit, e.what());
  } catch (const std::overflow_error& e) {
    return fail(kResourceLimit, e.what());
  } catch (const InvariantError& e) {
    return fail(kInvariantFailure, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kInvalidSpec, e.what());
  } catch (const json::exception& e) {
    return fail(kInvalidSpec, e.what());
  } catch (const std::exception& e) {
    return fail(kInvariantFailure, e.what());
  }
}

}  // namespace gridforce::cli
