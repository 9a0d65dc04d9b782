#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coxdiv/experiments.hpp"
#include "coxdiv/version.hpp"

using namespace coxdiv;

namespace {

struct GroupChoice {
  std::string family;  // gamma:<d> or omega:<d>
  std::string graph_path;

  PresentationGraph resolve() const {
    if (!family.empty()) return build_family(parse_family(family));
    if (!graph_path.empty()) return read_graph_file(graph_path);
    fail(Errc::invalid_parameter, "pass either --family or --graph");
  }

  std::string label() const { return !family.empty() ? family : "graph:" + graph_path; }

  void attach(CLI::App* cmd) {
    auto* fam = cmd->add_option("--family", family, "built-in family, gamma:<d> or omega:<d>");
    auto* gr = cmd->add_option("--graph", graph_path, "presentation graph as JSON");
    fam->excludes(gr);
    gr->excludes(fam);
  }
};

struct BudgetChoice {
  int threads = 1;
  std::uint64_t max_vertices = 20'000'000;
  double max_seconds = 0;

  BuildBudget budget() const { return BuildBudget{max_vertices, max_seconds}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--threads", threads, "worker threads for sphere expansion")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--max-vertices", max_vertices, "vertex budget for ball construction");
    cmd->add_option("--max-seconds", max_seconds, "wall-clock budget for ball construction");
  }
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  write_text_file(out_path, content);
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

PeripheralStructure peripherals(const PresentationGraph& g,
                                const std::vector<std::string>& subgroup_args) {
  if (subgroup_args.empty()) return PeripheralStructure::gamma_inside_omega(g);
  PeripheralStructure P;
  for (const auto& arg : subgroup_args) P.subgroups.push_back(GenSet(g, split_names(arg)));
  return P;
}

Json subgroups_config(const PresentationGraph& g, const PeripheralStructure& P) {
  Json arr = Json::array();
  for (const auto& sub : P.subgroups) {
    Json names = Json::array();
    for (Gen s : sub.members()) names.push_back(g.name(s));
    arr.push_back(std::move(names));
  }
  return arr;
}

// --- ball ------------------------------------------------------------------

struct BallArgs {
  GroupChoice group;
  BudgetChoice budget;
  int radius = 0;
  std::string base;
  std::uint64_t seed = 1;
  std::string out;
};

int run_ball(const BallArgs& a) {
  const auto g = a.group.resolve();
  const auto base = normal_form(Word::parse(g, a.base), g);
  const auto ball = build_ball(g, base, a.radius, a.budget.budget(), a.budget.threads);
  Json config{{"command", "ball"},
              {"group", a.group.label()},
              {"base", base.str(g)},
              {"radius", a.radius},
              {"seed", a.seed},
              {"max_vertices", a.budget.max_vertices}};
  emit(a.out, ball_stats_csv(ball, config));
  if (!ball.complete()) {
    std::cerr << "ball stopped at radius " << ball.completed_radius() << " of " << a.radius
              << " (" << ball.size() << " vertices); spheres above that are missing\n";
    return 1;
  }
  return 0;
}

// --- ldiv ------------------------------------------------------------------

struct LdivArgs {
  GroupChoice group;
  BudgetChoice budget;
  std::string period;
  std::string anchor;
  int r_min = 1;
  int r_max = 0;
  int trunc_factor = 3;
  int truncation = 0;  // 0 = trunc_factor * r
  long long probe_t = 0;
  bool single_probe = false;
  std::uint64_t seed = 1;
  std::string out;
  std::string json_out;
};

int run_ldiv(const LdivArgs& a) {
  const auto g = a.group.resolve();
  const GeodesicSpec spec(g, Word::parse(g, a.period),
                          normal_form(Word::parse(g, a.anchor), g));
  if (a.r_min < 1 || a.r_max < a.r_min)
    fail(Errc::invalid_parameter, "need 1 <= r-min <= r-max");

  Json config{{"command", "ldiv"},
              {"group", a.group.label()},
              {"period", spec.label(g)},
              {"anchor", spec.anchor().str(g)},
              {"r_min", a.r_min},
              {"r_max", a.r_max},
              {"trunc_factor", a.trunc_factor},
              {"truncation", a.truncation},
              {"seed", a.seed},
              {"max_vertices", a.budget.max_vertices}};
  if (a.single_probe) config["probe_t"] = a.probe_t;

  BallCache cache;
  ProbeContext ctx;
  ctx.budget = a.budget.budget();
  ctx.threads = a.budget.threads;
  ctx.cache = &cache;

  std::vector<DivergenceSample> samples;
  bool clipped = false;
  for (int r = a.r_min; r <= a.r_max; ++r) {
    const int trunc = a.truncation > 0 ? a.truncation : a.trunc_factor * r;
    try {
      samples.push_back(a.single_probe ? rho(spec, g, r, a.probe_t, trunc, ctx)
                                       : ldiv(spec, g, r, trunc, ctx));
    } catch (const Error& e) {
      if (e.code() != Errc::budget_exceeded) throw;
      std::cerr << "r=" << r << ": " << e.what() << "; emitting the completed radii\n";
      clipped = true;
      break;
    }
  }
  emit(a.out, samples_csv(a.group.label(), spec.label(g), samples, config));
  if (!a.json_out.empty()) {
    Json doc{{"tool", {{"name", kToolName}, {"version", kToolVersion}}}, {"config", config}};
    Json arr = Json::array();
    for (const auto& s : samples) arr.push_back(sample_json(s));
    doc["samples"] = std::move(arr);
    doc["fit"] = fit_json(fit_growth(samples));
    write_text_file(a.json_out, doc.dump(2) + "\n");
  }
  return clipped ? 1 : 0;
}

// --- gersten ---------------------------------------------------------------

struct GerstenArgs {
  GroupChoice group;
  BudgetChoice budget;
  int radius = 0;
  double rho_frac = 1.0;
  int r_min = 1;
  int r_max = 0;
  std::string mode = "auto";
  std::uint32_t pair_cap = 512;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gersten(const GerstenArgs& a) {
  const auto g = a.group.resolve();
  if (a.r_min < 1 || a.r_max < a.r_min)
    fail(Errc::invalid_parameter, "need 1 <= r-min <= r-max");
  if (a.r_max > a.radius)
    fail(Errc::invalid_parameter, "r-max cannot exceed the ball radius");
  GerstenOptions opt;
  opt.pair_cap = a.pair_cap;
  opt.seed = a.seed;
  if (a.mode == "auto")
    opt.mode = PairMode::automatic;
  else if (a.mode == "exhaustive")
    opt.mode = PairMode::exhaustive;
  else if (a.mode == "sampled")
    opt.mode = PairMode::sampled;
  else
    fail(Errc::invalid_parameter, "mode must be auto, exhaustive or sampled");

  const auto ball = build_ball(g, {}, a.radius, a.budget.budget(), a.budget.threads);
  Json config{{"command", "gersten"}, {"group", a.group.label()}, {"radius", a.radius},
              {"rho_frac", a.rho_frac}, {"r_min", a.r_min},       {"r_max", a.r_max},
              {"mode", a.mode},         {"pair_cap", a.pair_cap}, {"seed", a.seed}};

  std::vector<DivergenceSample> samples;
  const int top = std::min(a.r_max, ball.completed_radius());
  for (int r = a.r_min; r <= top; ++r) samples.push_back(gersten_delta(ball, a.rho_frac, r, opt));
  emit(a.out, samples_csv(a.group.label(), "sphere-pairs", samples, config));
  if (!ball.complete()) {
    std::cerr << "ball stopped at radius " << ball.completed_radius() << " of " << a.radius
              << "; higher radii are missing\n";
    return 1;
  }
  return 0;
}

// --- cone ------------------------------------------------------------------

struct ConeArgs {
  GroupChoice group;
  BudgetChoice budget;
  int radius = 0;
  std::string base;
  std::vector<std::string> subgroups;
  std::uint64_t seed = 1;
  std::string out;
};

int run_cone(const ConeArgs& a) {
  const auto g = a.group.resolve();
  const auto base = normal_form(Word::parse(g, a.base), g);
  const auto ball = build_ball(g, base, a.radius, a.budget.budget(), a.budget.threads);
  const auto P = peripherals(g, a.subgroups);
  const auto cb = build_coned_off(ball, P);
  Json config{{"command", "cone"},
              {"group", a.group.label()},
              {"base", base.str(g)},
              {"radius", a.radius},
              {"subgroups", subgroups_config(g, P)},
              {"seed", a.seed}};
  emit(a.out, coned_ball_json(cb, config).dump(2) + "\n");
  return ball.complete() ? 0 : 1;
}

// --- transitions -------------------------------------------------------------

struct TransitionsArgs {
  GroupChoice group;
  std::string period;
  std::string anchor;
  int len = 11;
  int epsilon = 1;
  int window = 2;
  std::vector<std::string> subgroups;
  std::uint64_t seed = 1;
  std::string out;
};

int run_transitions(const TransitionsArgs& a) {
  const auto g = a.group.resolve();
  const GeodesicSpec spec(g, Word::parse(g, a.period),
                          normal_form(Word::parse(g, a.anchor), g));
  if (a.len < 1) fail(Errc::invalid_parameter, "segment length must be >= 1");
  const auto P = peripherals(g, a.subgroups);
  std::vector<NormalForm> segment;
  for (int t = 0; t < a.len; ++t) segment.push_back(spec.point(t, g));
  const auto anchor_ball = build_ball(g, NormalForm{}, 0);
  const auto ann = classify_transitions(segment, P, a.epsilon, a.window, anchor_ball);
  Json config{{"command", "transitions"},
              {"group", a.group.label()},
              {"period", spec.label(g)},
              {"anchor", spec.anchor().str(g)},
              {"len", a.len},
              {"epsilon", a.epsilon},
              {"R", a.window},
              {"subgroups", subgroups_config(g, P)},
              {"seed", a.seed}};
  emit(a.out, transitions_csv(ann, g, config));
  return 0;
}

// --- experiment --------------------------------------------------------------

struct ExperimentArgs {
  BudgetChoice budget;
  std::string kind;
  std::vector<int> d_list = {1, 2};
  int r_max = 3;
  int trunc_factor = 3;
  int epsilon = 1;
  int window = 2;
  int segment_len = 11;
  std::uint64_t seed = 1;
  std::string out_dir;
};

int run_experiment(const ExperimentArgs& a) {
  ProbeContext ctx;
  ctx.budget = a.budget.budget();
  ctx.threads = a.budget.threads;

  ReportPaths paths;
  bool complete = true;
  if (a.kind == "spectrum") {
    const auto rep = run_gamma_spectrum(a.d_list, a.r_max, a.trunc_factor, ctx, a.seed);
    Json config{{"command", "experiment"},      {"kind", "spectrum"},
                {"d", a.d_list},                {"r_max", a.r_max},
                {"trunc_factor", a.trunc_factor}, {"seed", a.seed},
                {"max_vertices", a.budget.max_vertices}};
    paths = write_report(a.out_dir, spectrum_stem(rep), spectrum_json(rep, config),
                         spectrum_markdown(rep));
    complete = rep.complete;
  } else if (a.kind == "gap") {
    if (a.d_list.empty()) fail(Errc::invalid_parameter, "gap experiment needs --d");
    const int d = a.d_list.front();
    const auto g = build_family({FamilyKind::omega, d});
    const auto rep = run_omega_gap(d, a.r_max, a.trunc_factor, a.epsilon, a.window,
                                   a.segment_len, ctx, a.seed);
    Json config{{"command", "experiment"},
                {"kind", "gap"},
                {"d", d},
                {"r_max", a.r_max},
                {"trunc_factor", a.trunc_factor},
                {"epsilon", a.epsilon},
                {"R", a.window},
                {"segment_len", a.segment_len},
                {"seed", a.seed},
                {"max_vertices", a.budget.max_vertices}};
    paths = write_report(a.out_dir, gap_stem(rep), gap_json(rep, config, g), gap_markdown(rep, g));
    complete = rep.complete;
  } else {
    fail(Errc::invalid_parameter, "kind must be spectrum or gap");
  }
  std::cout << paths.json_path << '\n' << paths.md_path << '\n';
  if (!complete)
    std::cerr << "experiment hit its budget; the report marks the missing radii\n";
  return complete ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divergence laboratory for right-angled Coxeter groups"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  BallArgs ball_args;
  auto* ball_cmd = app.add_subcommand("ball", "build a Cayley ball and print sphere statistics");
  ball_args.group.attach(ball_cmd);
  ball_args.budget.attach(ball_cmd);
  ball_cmd->add_option("--radius", ball_args.radius, "ball radius")->required();
  ball_cmd->add_option("--base", ball_args.base, "basepoint word (default identity)");
  ball_cmd->add_option("--seed", ball_args.seed, "seed recorded in the output");
  ball_cmd->add_option("--out", ball_args.out, "CSV path (default stdout)");

  LdivArgs ldiv_args;
  auto* ldiv_cmd =
      app.add_subcommand("ldiv", "lower divergence of a periodic geodesic across scales");
  ldiv_args.group.attach(ldiv_cmd);
  ldiv_args.budget.attach(ldiv_cmd);
  ldiv_cmd->add_option("--period,--word", ldiv_args.period, "geodesic period, e.g. 'a2 b2'")
      ->required();
  ldiv_cmd->add_option("--anchor", ldiv_args.anchor, "anchor word (default identity)");
  ldiv_cmd->add_option("--r-min", ldiv_args.r_min, "smallest scale");
  ldiv_cmd->add_option("--r-max", ldiv_args.r_max, "largest scale")->required();
  ldiv_cmd->add_option("--trunc-factor", ldiv_args.trunc_factor,
                       "truncation radius as a multiple of r");
  ldiv_cmd->add_option("--truncation", ldiv_args.truncation,
                       "fixed truncation radius overriding the factor");
  auto* probe_opt =
      ldiv_cmd->add_option("--probe", ldiv_args.probe_t, "probe a single window position t");
  ldiv_cmd->add_option("--seed", ldiv_args.seed, "seed recorded in the output");
  ldiv_cmd->add_option("--out", ldiv_args.out, "CSV path (default stdout)");
  ldiv_cmd->add_option("--json", ldiv_args.json_out, "also write a JSON report here");

  GerstenArgs gersten_args;
  auto* gersten_cmd =
      app.add_subcommand("gersten", "sphere-pair divergence sup over one ball");
  gersten_args.group.attach(gersten_cmd);
  gersten_args.budget.attach(gersten_cmd);
  gersten_cmd->add_option("--radius", gersten_args.radius, "ball radius")->required();
  gersten_cmd->add_option("--rho-frac,--rho", gersten_args.rho_frac,
                          "keep-out fraction in (0,1]");
  gersten_cmd->add_option("--r-min", gersten_args.r_min, "smallest sphere");
  gersten_cmd->add_option("--r-max", gersten_args.r_max, "largest sphere")->required();
  gersten_cmd->add_option("--mode", gersten_args.mode, "auto, exhaustive or sampled");
  gersten_cmd->add_option("--pair-cap", gersten_args.pair_cap, "sampled-pair budget");
  gersten_cmd->add_option("--seed", gersten_args.seed, "sampling seed");
  gersten_cmd->add_option("--out", gersten_args.out, "CSV path (default stdout)");

  ConeArgs cone_args;
  auto* cone_cmd = app.add_subcommand("cone", "cone off peripheral cosets inside a ball");
  cone_args.group.attach(cone_cmd);
  cone_args.budget.attach(cone_cmd);
  cone_cmd->add_option("--radius", cone_args.radius, "ball radius")->required();
  cone_cmd->add_option("--base", cone_args.base, "basepoint word (default identity)");
  cone_cmd->add_option("--subgroup", cone_args.subgroups,
                       "peripheral generators, e.g. 'a0 b0' (repeatable; default: all "
                       "generators except c1 c2)");
  cone_cmd->add_option("--seed", cone_args.seed, "seed recorded in the output");
  cone_cmd->add_option("--out", cone_args.out, "JSON path (default stdout)");

  TransitionsArgs trans_args;
  auto* trans_cmd = app.add_subcommand(
      "transitions", "deep/transition classification along a geodesic segment");
  trans_args.group.attach(trans_cmd);
  trans_cmd->add_option("--period,--word", trans_args.period, "geodesic period")->required();
  trans_cmd->add_option("--anchor", trans_args.anchor, "anchor word (default identity)");
  trans_cmd->add_option("--len", trans_args.len, "segment length in vertices");
  trans_cmd->add_option("--epsilon", trans_args.epsilon, "closeness threshold");
  trans_cmd->add_option("--R", trans_args.window, "window radius");
  trans_cmd->add_option("--subgroup", trans_args.subgroups, "peripheral generators (repeatable)");
  trans_cmd->add_option("--seed", trans_args.seed, "seed recorded in the output");
  trans_cmd->add_option("--out", trans_args.out, "CSV path (default stdout)");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "canned multi-family reports");
  exp_args.budget.attach(exp_cmd);
  exp_cmd->add_option("--kind", exp_args.kind, "spectrum or gap")->required();
  exp_cmd->add_option("--d", exp_args.d_list, "family parameters")->delimiter(',');
  exp_cmd->add_option("--r-max", exp_args.r_max, "largest scale");
  exp_cmd->add_option("--trunc-factor", exp_args.trunc_factor,
                      "truncation radius as a multiple of r");
  exp_cmd->add_option("--epsilon", exp_args.epsilon, "closeness threshold (gap)");
  exp_cmd->add_option("--R", exp_args.window, "window radius (gap)");
  exp_cmd->add_option("--segment-len", exp_args.segment_len, "classified segment length (gap)");
  exp_cmd->add_option("--seed", exp_args.seed, "seed recorded in the report");
  exp_cmd->add_option("--out-dir", exp_args.out_dir, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(ball_cmd)) return run_ball(ball_args);
    if (app.got_subcommand(ldiv_cmd)) {
      ldiv_args.single_probe = probe_opt->count() > 0;
      return run_ldiv(ldiv_args);
    }
    if (app.got_subcommand(gersten_cmd)) return run_gersten(gersten_args);
    if (app.got_subcommand(cone_cmd)) return run_cone(cone_args);
    if (app.got_subcommand(trans_cmd)) return run_transitions(trans_args);
    if (app.got_subcommand(exp_cmd)) return run_experiment(exp_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::budget_exceeded ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
