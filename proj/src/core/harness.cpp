#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

namespace georoute {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Inertia: return "inertia";
    case Algorithm::GricMinus: return "gric-";
    case Algorithm::GricPlus: return "gric+";
    case Algorithm::Ltp: return "ltp";
    case Algorithm::Face: return "face";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (name == to_string(a)) return a;
  }
  throw ConfigError("unknown algorithm: " + std::string(name));
}

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Success: return "success";
    case TrialStatus::FailTtl: return "fail_ttl";
    case TrialStatus::FailOutOfBounds: return "fail_oob";
    case TrialStatus::FailStuck: return "fail_stuck";
    case TrialStatus::FailNoNodes: return "fail_no_nodes";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (trials_per_point < 1) throw ConfigError("trials_per_point must be at least 1");
  for (double d : densities) {
    if (!std::isfinite(d) || d < 0.0) throw ConfigError("densities must be finite and >= 0");
  }
  try {
    params.validate();
  } catch (const RoutingError& e) {
    throw ConfigError(e.what());
  }
}

namespace {

using Stepper = std::function<std::optional<NodeId>(NodeId)>;

Stepper make_stepper(const World& world, Algorithm algorithm, const RouteOptions& options, Rng& rng, NodeId source) {
  const Vec2 dest = options.destination;
  switch (algorithm) {
    case Algorithm::Greedy:
      return [&world, dest](NodeId at) { return greedy_step(world, at, dest); };
    case Algorithm::Inertia: {
      auto state = std::make_shared<MessageState>(MessageState::at_source(dest));
      const double beta = options.params.beta;
      return [&world, state, beta](NodeId at) -> std::optional<NodeId> {
        auto step = inertia_only_step(world, at, *state, beta);
        if (!step) return std::nullopt;
        *state = step->state;
        return step->next;
      };
    }
    case Algorithm::GricMinus:
    case Algorithm::GricPlus: {
      auto state = std::make_shared<MessageState>(MessageState::at_source(dest));
      RoutingParams params = options.params;
      params.randomized = algorithm == Algorithm::GricPlus;
      return [&world, &rng, state, params](NodeId at) -> std::optional<NodeId> {
        auto step = gric_step(world, at, *state, params, rng);
        if (!step) return std::nullopt;
        *state = step->state;
        return step->next;
      };
    }
    case Algorithm::Ltp: {
      auto state = std::make_shared<LtpState>(LtpState::at(source, options.ltp_backtrack_budget));
      return [&world, &rng, state, dest](NodeId) -> std::optional<NodeId> {
        const LtpMove move = ltp_step(world, *state, dest, rng);
        if (move.kind == LtpMove::Kind::Stuck) return std::nullopt;
        return move.node;
      };
    }
    case Algorithm::Face: {
      if (!world.has_gabriel()) throw WorldError("face routing needs the Gabriel subgraph");
      auto state = std::make_shared<FaceState>(FaceState::start(world.pos(source), dest));
      return [&world, state](NodeId at) { return face_step(world, at, *state); };
    }
  }
  throw ConfigError("unhandled algorithm");
}

}  // namespace

TrialOutcome route_message(const World& world, Algorithm algorithm, const RouteOptions& options, Rng& rng) {
  TrialOutcome out;
  const auto source = world.closest_node(options.source);
  if (!source) {
    out.status = TrialStatus::FailNoNodes;
    return out;
  }
  const std::size_t ttl = options.ttl.value_or(world.size());
  Stepper step = make_stepper(world, algorithm, options, rng, *source);

  NodeId at = *source;
  out.start = world.pos(at);
  if (options.record_path) out.path.push_back(out.start);
  while (true) {
    const Vec2 here = world.pos(at);
    out.end = here;
    if (distance(here, options.destination) < 1.0) {
      out.status = TrialStatus::Success;
      return out;
    }
    if (!options.disable_out_of_bounds && world.region().border_distance(here) <= 1.0) {
      out.status = TrialStatus::FailOutOfBounds;
      return out;
    }
    if (out.hops > ttl) {
      out.status = TrialStatus::FailTtl;
      return out;
    }
    const auto next = step(at);
    if (!next) {
      out.status = TrialStatus::FailStuck;
      return out;
    }
    out.distance += distance(here, world.pos(*next));
    ++out.hops;
    at = *next;
    if (options.record_path) out.path.push_back(world.pos(at));
  }
}

std::uint64_t world_seed(std::uint64_t master_seed, double density, std::size_t trial_index) {
  return derive_seed(master_seed, density, trial_index, Stream::World);
}

std::uint64_t routing_seed(std::uint64_t master_seed, double density, std::size_t trial_index, Algorithm algorithm) {
  return derive_seed(master_seed, density, trial_index, Stream::Routing, static_cast<std::uint64_t>(algorithm) + 1);
}

namespace {

World build_world(const ExperimentConfig& config, double density, std::size_t trial_index, bool gabriel) {
  World::BuildOptions opts;
  opts.gabriel = gabriel;
  return deploy(density, config.region, make_obstacle(config.obstacle), world_seed(config.master_seed, density, trial_index),
                opts);
}

RouteOptions route_options(const ExperimentConfig& config) {
  RouteOptions o;
  o.disable_out_of_bounds = config.disable_out_of_bounds;
  o.params = config.params;
  o.ltp_backtrack_budget = config.ltp_backtrack_budget;
  return o;
}

}  // namespace

World build_trial_world(const ExperimentConfig& config, double density, std::size_t trial_index) {
  return build_world(config, density, trial_index, true);
}

TrialOutcome run_trial(const ExperimentConfig& config, double density, std::size_t trial_index, bool record_path) {
  config.validate();
  const World world = build_world(config, density, trial_index, config.algorithm == Algorithm::Face);
  return run_trial(config, world, density, trial_index, record_path);
}

TrialOutcome run_trial(const ExperimentConfig& config, const World& world, double density, std::size_t trial_index,
                       bool record_path) {
  RouteOptions opts = route_options(config);
  opts.record_path = record_path;
  Rng rng(routing_seed(config.master_seed, density, trial_index, config.algorithm));
  return route_message(world, config.algorithm, opts, rng);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

SweepRow aggregate(Algorithm algorithm, ObstacleKind obstacle, double density, std::span<const TrialOutcome> outcomes) {
  SweepRow row{algorithm, obstacle, density};
  row.trials = outcomes.size();
  std::vector<double> hops, dist;
  for (const auto& o : outcomes) {
    switch (o.status) {
      case TrialStatus::Success:
        ++row.successes;
        hops.push_back(static_cast<double>(o.hops));
        dist.push_back(o.distance);
        break;
      case TrialStatus::FailTtl: ++row.fail_ttl; break;
      case TrialStatus::FailOutOfBounds: ++row.fail_oob; break;
      case TrialStatus::FailStuck: ++row.fail_stuck; break;
      case TrialStatus::FailNoNodes: ++row.fail_no_nodes; break;
    }
  }
  row.success_rate = row.trials ? static_cast<double>(row.successes) / static_cast<double>(row.trials) : 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.median_hops = hops.empty() ? nan : median(std::move(hops));
  row.median_distance = dist.empty() ? nan : median(std::move(dist));
  return row;
}

SweepReport run_sweep(const ExperimentConfig& config) {
  const Algorithm one[] = {config.algorithm};
  return run_sweep(config, one);
}

SweepReport run_sweep(const ExperimentConfig& config, std::span<const Algorithm> algorithms) {
  config.validate();
  const bool need_gabriel = std::find(algorithms.begin(), algorithms.end(), Algorithm::Face) != algorithms.end();
  const std::size_t per_point = config.trials_per_point;
  const std::size_t cells = config.densities.size() * per_point;
  const std::size_t n_algos = algorithms.size();

  // outcomes[(cell * n_algos) + k]; each cell owns its world.
  std::vector<TrialOutcome> outcomes(cells * n_algos);
  const RouteOptions opts = route_options(config);

  auto run_cell = [&](std::size_t cell) {
    const double density = config.densities[cell / per_point];
    const std::size_t trial = cell % per_point;
    const World world = build_world(config, density, trial, need_gabriel);
    for (std::size_t k = 0; k < n_algos; ++k) {
      Rng rng(routing_seed(config.master_seed, density, trial, algorithms[k]));
      outcomes[cell * n_algos + k] = route_message(world, algorithms[k], opts, rng);
    }
  };

  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1 || cells < 2) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, cells); ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < cells; c = next++) {
          try {
            run_cell(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SweepReport report;
  std::vector<TrialOutcome> slice(per_point);
  for (std::size_t k = 0; k < n_algos; ++k) {
    for (std::size_t di = 0; di < config.densities.size(); ++di) {
      for (std::size_t t = 0; t < per_point; ++t) {
        slice[t] = std::move(outcomes[(di * per_point + t) * n_algos + k]);
      }
      report.rows.push_back(aggregate(algorithms[k], config.obstacle, config.densities[di], slice));
    }
  }
  return report;
}

}  // namespace georoute
