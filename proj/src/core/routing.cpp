#include "routing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace georoute {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(Flag f) {
  switch (f) {
    case Flag::Down: return "down";
    case Flag::UpE: return "up-E";
    case Flag::UpW: return "up-W";
  }
  return "?";
}

const char* to_string(Mode m) { return m == Mode::Inertia ? "inertia" : "contour"; }

void RoutingParams::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw RoutingError("beta must lie in [0, 1]");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw RoutingError("epsilon must lie in [0, 1)");
}

Vec2 effective_prev_direction(const MessageState& state, Vec2 current) {
  if (!state.prev_pos) {
    const Vec2 d = state.dest_pos - current;
    if (d.is_zero()) throw GeometryError("message is already at its destination");
    return d;
  }
  const Vec2 d = current - *state.prev_pos;
  if (d.is_zero()) throw GeometryError("previous hop has zero length");
  return d;
}

Flag raise_flag(Flag flag, Compass compass) {
  if (flag != Flag::Down) throw RoutingError("raise_flag called with the flag up");
  switch (compass) {
    case Compass::SW: return Flag::UpW;
    case Compass::SE: return Flag::UpE;
    default: return Flag::Down;
  }
}

Flag lower_flag(Flag flag, Compass compass) {
  if (flag == Flag::Down) throw RoutingError("lower_flag called with the flag down");
  if (flag == Flag::UpW && compass == Compass::NW) return Flag::Down;
  if (flag == Flag::UpE && compass == Compass::NE) return Flag::Down;
  return flag;
}

Mode mode_selector(Flag flag, Compass compass) {
  if (flag == Flag::UpE && (compass == Compass::NW || compass == Compass::SW)) return Mode::Contour;
  if (flag == Flag::UpW && (compass == Compass::NE || compass == Compass::SE)) return Mode::Contour;
  return Mode::Inertia;
}

Angle inertia_turn(Angle alpha, double beta) {
  const double bound = beta * kPi;
  return Angle(std::clamp(alpha.radians(), -bound, bound));
}

double long_way_angle(Angle alpha) {
  const double a = alpha.radians();
  const double sign = a < 0.0 ? -1.0 : 1.0;
  return -sign * (2.0 * kPi - std::abs(a));
}

Angle contour_turn(Angle alpha, double beta, ContourTurn rule) {
  const double long_way = long_way_angle(alpha);
  if (rule == ContourTurn::Clamped) {
    const double bound = beta * kPi;
    return Angle(std::clamp(long_way, -bound, bound));
  }
  return Angle(beta * long_way);
}

Vec2 inertia_ideal(Vec2 v_prev, Vec2 v_dest, double beta) {
  return rotate(v_prev, inertia_turn(angle_from_to(v_prev, v_dest), beta));
}

Vec2 contour_ideal(Vec2 v_prev, Vec2 v_dest, double beta, ContourTurn rule) {
  return rotate(v_prev, contour_turn(angle_from_to(v_prev, v_dest), beta, rule));
}

std::optional<NodeId> best_projection(const World& world, NodeId current, Vec2 ideal,
                                      std::span<const NodeId> candidates) {
  const Vec2 here = world.pos(current);
  std::optional<NodeId> best;
  double best_progress = -std::numeric_limits<double>::infinity();
  for (NodeId m : candidates) {
    const double progress = dot(ideal, world.pos(m) - here);
    if (progress > best_progress || (progress == best_progress && best && m < *best)) {
      best_progress = progress;
      best = m;
    }
  }
  return best;
}

std::optional<NodeId> next_hop(const World& world, NodeId current, Vec2 ideal, const RoutingParams& params,
                               Rng& rng) {
  const auto neighbors = world.out_links(current);
  if (neighbors.empty()) return std::nullopt;
  if (!params.randomized) return best_projection(world, current, ideal, neighbors);

  std::vector<NodeId> kept;
  kept.reserve(neighbors.size());
  for (NodeId m : neighbors) {
    if (rng.bernoulli(1.0 - params.epsilon)) kept.push_back(m);
  }
  if (kept.empty()) return best_projection(world, current, ideal, neighbors);
  return best_projection(world, current, ideal, kept);
}

Decision decide(const MessageState& state, Vec2 current, const RoutingParams& params, bool use_contour) {
  const Vec2 v_prev = effective_prev_direction(state, current);
  const Vec2 v_dest = state.dest_pos - current;
  const Angle alpha = angle_from_to(v_prev, v_dest);
  const Compass c = compass_of(alpha);

  Flag flag = state.flag;
  Mode mode = Mode::Inertia;
  if (use_contour) {
    flag = flag == Flag::Down ? raise_flag(flag, c) : lower_flag(flag, c);
    mode = mode_selector(flag, c);
  }
  const Angle turn = mode == Mode::Inertia ? inertia_turn(alpha, params.beta)
                                           : contour_turn(alpha, params.beta, params.contour_turn);
  return Decision{c, flag, mode, turn, rotate(v_prev, turn)};
}

MessageState advance(const MessageState& state, Vec2 current, Vec2 next, Flag flag) {
  MessageState s = state;
  s.prev_pos = current;
  s.flag = flag;
  s.hops += 1;
  s.path_length += distance(current, next);
  return s;
}

std::optional<Step> gric_step(const World& world, NodeId current, const MessageState& state,
                              const RoutingParams& params, Rng& rng) {
  const Vec2 here = world.pos(current);
  const Decision d = decide(state, here, params);
  const auto next = next_hop(world, current, d.ideal, params, rng);
  if (!next) return std::nullopt;
  return Step{*next, advance(state, here, world.pos(*next), d.flag)};
}

}  // namespace georoute
