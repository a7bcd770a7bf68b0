#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "baselines.hpp"
#include "routing.hpp"
#include "world.hpp"

namespace georoute {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm { Greedy, Inertia, GricMinus, GricPlus, Ltp, Face };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Greedy, Algorithm::Inertia,  Algorithm::GricMinus,
                                               Algorithm::GricPlus, Algorithm::Ltp, Algorithm::Face};

/// CLI spelling: greedy, inertia, gric-, gric+, ltp, face.
const char* to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

/// Source and destination points of every experiment.
inline constexpr Vec2 kSourcePoint{0.0, 10.0};
inline constexpr Vec2 kDestinationPoint{20.0, 10.0};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::GricPlus;
  ObstacleKind obstacle = ObstacleKind::None;
  std::vector<double> densities;
  std::size_t trials_per_point = 1000;
  std::uint64_t master_seed = 0;
  RoutingParams params;  // `randomized` is set from the algorithm
  bool disable_out_of_bounds = false;
  std::size_t ltp_backtrack_budget = 5;
  unsigned workers = 1;
  Region region = Region::standard();

  void validate() const;
};

enum class TrialStatus { Success, FailTtl, FailOutOfBounds, FailStuck, FailNoNodes };

const char* to_string(TrialStatus s);

struct TrialOutcome {
  TrialStatus status = TrialStatus::FailNoNodes;
  std::size_t hops = 0;
  double distance = 0.0;
  Vec2 start;  // node the message was attached to
  Vec2 end;    // node holding the message when the trial ended
  std::vector<Vec2> path;  // only when recording
};

struct RouteOptions {
  Vec2 source = kSourcePoint;
  Vec2 destination = kDestinationPoint;
  bool disable_out_of_bounds = false;
  /// Hop budget; defaults to the node count.
  std::optional<std::size_t> ttl;
  bool record_path = false;
  RoutingParams params;
  std::size_t ltp_backtrack_budget = 5;
};

/// Routes one message over an existing world with the experiment's success
/// and failure rules.
TrialOutcome route_message(const World& world, Algorithm algorithm, const RouteOptions& options, Rng& rng);

/// Seed of the world for one trial; shared by every algorithm.
std::uint64_t world_seed(std::uint64_t master_seed, double density, std::size_t trial_index);
/// Seed of the routing randomness for one trial and algorithm.
std::uint64_t routing_seed(std::uint64_t master_seed, double density, std::size_t trial_index, Algorithm algorithm);

World build_trial_world(const ExperimentConfig& config, double density, std::size_t trial_index);

TrialOutcome run_trial(const ExperimentConfig& config, double density, std::size_t trial_index,
                       bool record_path = false);
/// Same trial, routed over a world the caller already built (for tracing).
TrialOutcome run_trial(const ExperimentConfig& config, const World& world, double density, std::size_t trial_index,
                       bool record_path);

struct SweepRow {
  Algorithm algorithm;
  ObstacleKind obstacle;
  double density;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double median_hops = 0.0;      // NaN when no trial succeeded
  double median_distance = 0.0;  // NaN when no trial succeeded
  std::size_t successes = 0;
  std::size_t fail_ttl = 0;
  std::size_t fail_oob = 0;
  std::size_t fail_stuck = 0;
  std::size_t fail_no_nodes = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

SweepReport run_sweep(const ExperimentConfig& config);

/// Sweeps several algorithms over the same worlds. Rows are grouped by
/// algorithm in the given order, then by density.
SweepReport run_sweep(const ExperimentConfig& config, std::span<const Algorithm> algorithms);

/// Standard median; mean of the two central values for even sizes.
/// Throws std::invalid_argument on empty input.
double median(std::vector<double> values);

SweepRow aggregate(Algorithm algorithm, ObstacleKind obstacle, double density,
                   std::span<const TrialOutcome> outcomes);

}  // namespace georoute
