#include "baselines.hpp"

#include <algorithm>
#include <cmath>

namespace georoute {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kImproveEps = 1e-12;

/// Clockwise angle in [0, 2pi) swept from `ref` to `dir`.
double clockwise_angle(Vec2 ref, Vec2 dir) {
  double a = std::atan2(cross(dir, ref), dot(dir, ref));
  if (a < 0.0) a += kTwoPi;
  return a;
}

/// First Gabriel neighbor of `x` met when sweeping clockwise from `ref`. A
/// neighbor lying exactly on `ref` is taken first if `include_ref`, last
/// otherwise.
std::optional<NodeId> sweep_clockwise(const World& world, NodeId x, Vec2 ref, bool include_ref) {
  std::optional<NodeId> best;
  double best_angle = std::numeric_limits<double>::infinity();
  for (NodeId y : world.gabriel_links(x)) {
    double a = clockwise_angle(ref, world.pos(y) - world.pos(x));
    if (a == 0.0 && !include_ref) a = kTwoPi;
    if (a < best_angle) {
      best_angle = a;
      best = y;
    }
  }
  return best;
}

}  // namespace

std::optional<NodeId> greedy_step(const World& world, NodeId current, Vec2 dest) {
  double best_d2 = (world.pos(current) - dest).norm2();
  std::optional<NodeId> best;
  for (NodeId m : world.out_links(current)) {
    const double d2 = (world.pos(m) - dest).norm2();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = m;
    }
  }
  return best;
}

std::optional<Step> inertia_only_step(const World& world, NodeId current, const MessageState& state,
                                      double beta) {
  RoutingParams params;
  params.beta = beta;
  params.randomized = false;
  const Vec2 here = world.pos(current);
  const Decision d = decide(state, here, params, /*use_contour=*/false);
  const auto next = best_projection(world, current, d.ideal, world.out_links(current));
  if (!next) return std::nullopt;
  return Step{*next, advance(state, here, world.pos(*next), Flag::Down)};
}

LtpMove ltp_step(const World& world, LtpState& state, Vec2 dest, Rng& rng) {
  if (state.stack.empty()) return {LtpMove::Kind::Stuck, 0};
  auto& top = state.stack.back();
  const double here_d2 = (world.pos(top.node) - dest).norm2();

  std::vector<NodeId> closer;
  for (NodeId m : world.out_links(top.node)) {
    if ((world.pos(m) - dest).norm2() < here_d2 &&
        std::find(top.tried.begin(), top.tried.end(), m) == top.tried.end()) {
      closer.push_back(m);
    }
  }
  if (!closer.empty()) {
    const NodeId pick = closer[rng.below(closer.size())];
    top.tried.push_back(pick);
    state.stack.push_back({pick, {}});
    return {LtpMove::Kind::Forward, pick};
  }
  if (state.stack.size() == 1 || state.backtracks_left == 0) return {LtpMove::Kind::Stuck, 0};
  --state.backtracks_left;
  state.stack.pop_back();
  return {LtpMove::Kind::Backtrack, state.stack.back().node};
}

std::optional<NodeId> face_step(const World& world, NodeId current, FaceState& state) {
  const Vec2 x = world.pos(current);
  const bool fresh = !state.prev.has_value();
  const Vec2 ref = fresh ? state.target - x : world.pos(*state.prev) - x;
  auto next = sweep_clockwise(world, current, ref, fresh);
  if (!next) return std::nullopt;

  // The face being walked lies left of x -> y. Switch to the face on the right
  // only where the anchor-target segment leaves the current face, i.e. the
  // target is strictly right of the edge. Each switch moves the anchor
  // strictly closer to the target, so this loop is bounded by the degree.
  for (std::size_t guard = 0; guard <= world.gabriel_links(current).size(); ++guard) {
    const Vec2 y = world.pos(*next);
    Vec2 q;
    const double anchor_gap = distance(state.anchor, state.target);
    if (state.anchor == state.target || orientation(x, y, state.target) >= 0 ||
        !segment_intersection_point(Segment(x, y), Segment(state.anchor, state.target), q) ||
        distance(q, state.target) >= anchor_gap - kImproveEps) {
      break;
    }
    state.anchor = q;
    state.first_edge.reset();
    next = sweep_clockwise(world, current, y - x, false);
  }

  const std::pair<NodeId, NodeId> edge{current, *next};
  if (state.first_edge && *state.first_edge == edge) return std::nullopt;
  if (!state.first_edge) state.first_edge = edge;
  state.prev = current;
  return next;
}

std::size_t face_hop_bound(const World& world) { return 3 * world.gabriel_edge_count() + 3; }

FaceRoute face_route(const World& world, NodeId source, Vec2 target, std::size_t ttl) {
  if (!world.has_gabriel()) throw WorldError("face routing needs the Gabriel subgraph");
  FaceRoute route{FaceResult::Undeliverable, 0, 0.0, {source}};
  FaceState state = FaceState::start(world.pos(source), target);
  NodeId at = source;
  while (true) {
    if (distance(world.pos(at), target) < 1.0) {
      route.result = FaceResult::Delivered;
      return route;
    }
    if (route.hops >= ttl) {
      route.result = FaceResult::TtlExceeded;
      return route;
    }
    const auto next = face_step(world, at, state);
    if (!next) {
      route.result = FaceResult::Undeliverable;
      return route;
    }
    route.distance += distance(world.pos(at), world.pos(*next));
    ++route.hops;
    at = *next;
    route.path.push_back(at);
  }
}

}  // namespace georoute
