#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "geometry.hpp"
#include "rng.hpp"
#include "world.hpp"

namespace georoute {

class RoutingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Flag { Down, UpE, UpW };
enum class Mode { Inertia, Contour };

const char* to_string(Flag f);
const char* to_string(Mode m);

/// How the contour-mode turn is damped. Scaled multiplies the long-way angle
/// by beta; Clamped bounds it to +-beta*pi like the inertia turn.
enum class ContourTurn { Scaled, Clamped };

struct RoutingParams {
  double beta = 1.0 / 6.0;
  double epsilon = 0.05;
  bool randomized = false;
  ContourTurn contour_turn = ContourTurn::Scaled;

  void validate() const;
};

/// State piggy-backed on a message between hops.
struct MessageState {
  std::optional<Vec2> prev_pos;  // empty at the source
  Vec2 dest_pos;
  Flag flag = Flag::Down;
  std::size_t hops = 0;
  double path_length = 0.0;

  static MessageState at_source(Vec2 dest) { return MessageState{std::nullopt, dest, Flag::Down, 0, 0.0}; }
};

/// Direction of the last hop. At the source the message is taken to have
/// travelled toward its destination, so this is dest - current.
Vec2 effective_prev_direction(const MessageState& state, Vec2 current);

/// Only valid with a lowered flag.
Flag raise_flag(Flag flag, Compass compass);
/// Only valid with a raised flag.
Flag lower_flag(Flag flag, Compass compass);
Mode mode_selector(Flag flag, Compass compass);

/// Inertia turn: alpha clamped to [-beta*pi, beta*pi].
Angle inertia_turn(Angle alpha, double beta);
/// -sign(alpha)(2pi - |alpha|), left unnormalized: in (-2pi, -pi] for
/// alpha >= 0 and (pi, 2pi) for alpha < 0.
double long_way_angle(Angle alpha);
/// Contour turn: the long way round, -sign(alpha)(2pi - |alpha|), damped by
/// beta (sign(0) taken as +1).
Angle contour_turn(Angle alpha, double beta, ContourTurn rule = ContourTurn::Scaled);

Vec2 inertia_ideal(Vec2 v_prev, Vec2 v_dest, double beta);
Vec2 contour_ideal(Vec2 v_prev, Vec2 v_dest, double beta, ContourTurn rule = ContourTurn::Scaled);

/// Neighbor with the largest projection of (pos(m) - pos(current)) on
/// `ideal`; ties go to the smallest id. Empty when `candidates` is empty.
std::optional<NodeId> best_projection(const World& world, NodeId current, Vec2 ideal,
                                      std::span<const NodeId> candidates);

/// Forwarding choice for an ideal direction. The randomized variant keeps each
/// neighbor with probability 1 - epsilon and falls back to the full set when
/// nothing survives. Empty only when the node has no out-links.
std::optional<NodeId> next_hop(const World& world, NodeId current, Vec2 ideal, const RoutingParams& params,
                               Rng& rng);

/// Everything GRIC decides at one node before choosing a neighbor.
struct Decision {
  Compass compass;
  Flag flag;  // after raise/lower
  Mode mode;
  Angle turn;
  Vec2 ideal;
};

/// `use_contour = false` gives plain inertia routing: no flag updates and
/// the mode is always Inertia.
Decision decide(const MessageState& state, Vec2 current, const RoutingParams& params, bool use_contour = true);

struct Step {
  NodeId next;
  MessageState state;
};

/// One GRIC hop from `current`. Empty when the node has no out-links.
std::optional<Step> gric_step(const World& world, NodeId current, const MessageState& state,
                              const RoutingParams& params, Rng& rng);

/// Advances the message bookkeeping for a hop current -> next.
MessageState advance(const MessageState& state, Vec2 current, Vec2 next, Flag flag);

}  // namespace georoute
