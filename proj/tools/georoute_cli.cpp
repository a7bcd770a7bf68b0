// georoute command line: sweeps, single-trial traces and world checks.
// Talks to the library only through the C API.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "georoute/georoute.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + s + "'");
  return v;
}

/// "start:stop:step" (inclusive within 1e-9), a comma list, or one value.
std::vector<double> parse_densities(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("density range must be start:stop:step");
    const double start = parse_number(parts[0]), stop = parse_number(parts[1]), step = parse_number(parts[2]);
    if (!(step > 0.0)) throw UsageError("density step must be positive");
    if (stop < start - 1e-9) throw UsageError("density range is empty");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(p));
  }
  if (out.empty()) throw UsageError("no densities given");
  for (double d : out) {
    if (d < 0.0) throw UsageError("densities must be >= 0");
  }
  return out;
}

/// GEOROUTE_SEED beats --seed when set.
std::uint64_t effective_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("GEOROUTE_SEED");
  if (!env || !*env) return flag_seed;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-') throw UsageError(std::string("bad GEOROUTE_SEED: ") + env);
  return v;
}

void check(geo_status st) {
  if (st == GEO_OK) return;
  if (st == GEO_ERR_INVALID_ARGUMENT) throw UsageError(geo_last_error());
  throw RuntimeError(geo_last_error());
}

template <typename Handle, typename Fn>
std::string fetch_text(const Handle* h, Fn fn) {
  std::size_t needed = 0;
  const geo_status st = fn(h, nullptr, 0, &needed);
  if (st != GEO_ERR_BUFFER_TOO_SMALL) check(st);
  std::string text(needed + 1, '\0');
  check(fn(h, text.data(), text.size(), &needed));
  text.resize(needed);
  return text;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw RuntimeError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RuntimeError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw RuntimeError("failed writing '" + path + "'");
}

struct ParamFlags {
  double beta = 1.0 / 6.0;
  double epsilon = 0.05;
  std::string contour = "scaled";
  bool no_oob = false;
  std::size_t ltp_budget = 5;

  void add_to(CLI::App& app) {
    app.add_option("--beta", beta, "turn scale in [0,1]")->capture_default_str();
    app.add_option("--epsilon", epsilon, "gric+ neighbor drop probability")->capture_default_str();
    app.add_option("--contour", contour, "contour turn rule")->check(CLI::IsMember({"scaled", "clamped"}))
        ->capture_default_str();
    app.add_flag("--no-oob", no_oob, "disable the border failure rule");
    app.add_option("--ltp-budget", ltp_budget, "LTP backtrack budget")->capture_default_str();
  }

  geo_params apply(geo_params p) const {
    p.beta = beta;
    p.epsilon = epsilon;
    p.contour_clamped = contour == "clamped";
    p.disable_out_of_bounds = no_oob;
    p.ltp_backtrack_budget = ltp_budget;
    return p;
  }
};

const std::vector<std::string> kAlgorithms = {"greedy", "inertia", "gric-", "gric+", "ltp", "face"};
const std::vector<std::string> kObstacles = {"none", "stripe", "ushape", "concave1", "concave2"};

struct SweepArgs {
  std::string algo = "gric+";
  std::string obstacle = "none";
  std::string densities;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
  ParamFlags params;
};

int run_sweep(const SweepArgs& a) {
  const std::vector<double> densities = parse_densities(a.densities);
  geo_sweep_config cfg;
  geo_sweep_config_init(&cfg);
  cfg.algorithm = a.algo.c_str();
  cfg.obstacle = a.obstacle.c_str();
  cfg.densities = densities.data();
  cfg.density_count = densities.size();
  cfg.trials_per_point = a.trials;
  cfg.master_seed = effective_seed(a.seed);
  cfg.workers = a.workers;
  cfg.params = a.params.apply(cfg.params);

  geo_report* report = nullptr;
  check(geo_sweep_run(&cfg, &report));
  std::unique_ptr<geo_report, decltype(&geo_report_free)> guard(report, geo_report_free);
  emit(a.out, fetch_text(report, geo_report_csv));
  return kExitOk;
}

struct TraceArgs {
  std::string algo = "gric-";
  std::string obstacle = "none";
  double density = 6.0;
  std::size_t trial = 0;
  std::uint64_t seed = 1;
  std::string format = "svg";
  std::string out;
  ParamFlags params;
};

int run_trace(const TraceArgs& a) {
  geo_trace_config cfg;
  geo_trace_config_init(&cfg);
  cfg.algorithm = a.algo.c_str();
  cfg.obstacle = a.obstacle.c_str();
  cfg.density = a.density;
  cfg.trial_index = a.trial;
  cfg.master_seed = effective_seed(a.seed);
  cfg.params = a.params.apply(cfg.params);

  geo_trace* trace = nullptr;
  check(geo_trace_run(&cfg, &trace));
  std::unique_ptr<geo_trace, decltype(&geo_trace_free)> guard(trace, geo_trace_free);
  geo_trace_info info;
  check(geo_trace_get_info(trace, &info));
  emit(a.out, a.format == "csv" ? fetch_text(trace, geo_trace_csv) : fetch_text(trace, geo_trace_svg));
  std::fprintf(stderr, "%s: %s after %zu hops, distance %.4f\n", a.algo.c_str(), info.status, info.hops,
               info.distance);
  return kExitOk;
}

struct GraphArgs {
  double density = 4.5;
  std::string obstacle = "none";
  std::size_t trial = 0;
  std::uint64_t seed = 1;
  std::string dump;
};

int run_graphcheck(const GraphArgs& a) {
  geo_world* world = nullptr;
  check(geo_world_create(a.density, a.obstacle.c_str(), effective_seed(a.seed), a.trial, &world));
  std::unique_ptr<geo_world, decltype(&geo_world_free)> guard(world, geo_world_free);
  geo_world_stats s;
  check(geo_world_get_stats(world, &s));

  std::printf("nodes %zu\n", s.nodes);
  std::printf("links %zu\n", s.links / 2);
  std::printf("mean_degree %.4f\n", s.mean_degree);
  std::printf("interior_mean_degree %.4f (pi*d = %.4f, %zu interior nodes)\n", s.interior_mean_degree,
              std::numbers::pi * a.density, s.interior_nodes);
  std::printf("gabriel_edges %zu\n", s.gabriel_edges);
  std::printf("planarity %s\n", s.gabriel_planar ? "PASS" : "FAIL");
  std::printf("components %zu\n", s.components);
  std::printf("connectivity %s\n", s.components <= 1 ? "connected" : "disconnected");
  std::fflush(stdout);
  if (!a.dump.empty()) emit(a.dump, fetch_text(world, geo_world_dump));
  return kExitOk;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

/// Splices a flat key=value config file into the subcommand's arguments.
/// Keys already given as flags are skipped, so flags win.
std::vector<std::string> merge_config(const CLI::App& sub, std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::FileError&) {
    throw UsageError("cannot read config file '" + path + "'");
  }
  std::vector<std::string> extra;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--" || item.name.empty()) continue;  // section markers
    const std::string flag = "--" + item.name;
    if (given_on_command_line(args, flag) || item.name == "config") continue;
    const CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option(flag);
    } catch (const CLI::OptionNotFound&) {
      throw UsageError("unknown key '" + item.name + "' in " + path);
    }
    if (opt->get_expected_min() == 0) {
      if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "1")) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    extra.insert(extra.end(), item.inputs.begin(), item.inputs.end());
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geographic routing experiments on random unit-disk networks", "georoute"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(geo_version()));

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "run a density sweep and write CSV");
  std::string config_path;
  sw->add_option("--config", config_path, "flat key=value file; flags win");
  sw->add_option("--algo", sweep.algo, "algorithm or 'all'")->capture_default_str()->check([](const std::string& s) {
    if (s == "all" || std::find(kAlgorithms.begin(), kAlgorithms.end(), s) != kAlgorithms.end()) return std::string();
    return "unknown algorithm '" + s + "'";
  });
  sw->add_option("--obstacle", sweep.obstacle)->check(CLI::IsMember(kObstacles))->capture_default_str();
  sw->add_option("--densities", sweep.densities, "start:stop:step or a comma list")->required();
  sw->add_option("--trials", sweep.trials, "trials per density")->check(CLI::PositiveNumber)->capture_default_str();
  sw->add_option("--seed", sweep.seed, "master seed (GEOROUTE_SEED overrides)")->capture_default_str();
  sw->add_option("--workers", sweep.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  sw->add_option("--out", sweep.out, "output file (default: standard output)");
  sweep.params.add_to(*sw);

  TraceArgs trace;
  auto* tr = app.add_subcommand("trace", "route one seeded trial and draw it");
  tr->add_option("--config", config_path, "flat key=value file; flags win");
  tr->add_option("--algo", trace.algo)->check(CLI::IsMember(kAlgorithms))->capture_default_str();
  tr->add_option("--obstacle", trace.obstacle)->check(CLI::IsMember(kObstacles))->capture_default_str();
  tr->add_option("--density", trace.density)->check(CLI::NonNegativeNumber)->capture_default_str();
  tr->add_option("--trial", trace.trial, "trial index within the seed")->capture_default_str();
  tr->add_option("--seed", trace.seed, "master seed (GEOROUTE_SEED overrides)")->capture_default_str();
  tr->add_option("--format", trace.format)->check(CLI::IsMember({"svg", "csv"}))->capture_default_str();
  tr->add_option("--out", trace.out, "output file (default: standard output)");
  trace.params.add_to(*tr);

  GraphArgs graph;
  auto* gc = app.add_subcommand("graphcheck", "generate a world and report its graph statistics");
  gc->add_option("--config", config_path, "flat key=value file; flags win");
  gc->add_option("--density", graph.density)->check(CLI::NonNegativeNumber)->capture_default_str();
  gc->add_option("--obstacle", graph.obstacle)->check(CLI::IsMember(kObstacles))->capture_default_str();
  gc->add_option("--trial", graph.trial)->capture_default_str();
  gc->add_option("--seed", graph.seed, "master seed (GEOROUTE_SEED overrides)")->capture_default_str();
  gc->add_option("--dump", graph.dump, "write the world in worldv1 format");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty()) {
      for (CLI::App* sub : {sw, tr, gc}) {
        if (args[0] == sub->get_name()) args = merge_config(*sub, std::move(args));
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sw) return run_sweep(sweep);
    if (*tr) return run_trace(trace);
    if (*gc) return run_graphcheck(graph);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
