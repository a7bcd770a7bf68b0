#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "routing.hpp"
#include "world.hpp"

namespace georoute {

/// Distance-greedy forwarding. Returns the neighbor strictly closer to
/// `dest` that minimizes the remaining distance; empty at a local minimum.
std::optional<NodeId> greedy_step(const World& world, NodeId current, Vec2 dest);

/// Inertia routing without flags or contour mode.
std::optional<Step> inertia_only_step(const World& world, NodeId current, const MessageState& state,
                                      double beta);

// ---------------------------------------------------------------------------
// LTP-style randomized greedy with backtracking.

struct LtpState {
  struct Frame {
    NodeId node;
    std::vector<NodeId> tried;  // children already forwarded to from this frame
  };
  std::vector<Frame> stack;
  std::size_t backtracks_left = std::numeric_limits<std::size_t>::max();

  static LtpState at(NodeId source, std::size_t backtrack_budget = std::numeric_limits<std::size_t>::max()) {
    return LtpState{{Frame{source, {}}}, backtrack_budget};
  }
  NodeId current() const { return stack.back().node; }
};

struct LtpMove {
  enum class Kind { Forward, Backtrack, Stuck };
  Kind kind;
  NodeId node;  // destination of the move; unused for Stuck
};

/// Forwards to a uniformly chosen untried neighbor strictly closer to `dest`;
/// otherwise pops back to the predecessor. Stuck once the stack (or the
/// backtrack budget) is exhausted.
LtpMove ltp_step(const World& world, LtpState& state, Vec2 dest, Rng& rng);

// ---------------------------------------------------------------------------
// FACE-2 on the Gabriel subgraph.

struct FaceState {
  Vec2 anchor;  // where the current face traversal began
  Vec2 target;
  std::optional<NodeId> prev;
  std::optional<std::pair<NodeId, NodeId>> first_edge;  // first edge walked on the current face

  static FaceState start(Vec2 source_pos, Vec2 target) { return FaceState{source_pos, target, std::nullopt, std::nullopt}; }
};

/// One hop of face traversal: next Gabriel edge clockwise from the incoming
/// edge, switching faces at edges that cross the anchor-target segment
/// closer to the target. Empty when the node is isolated in the Gabriel
/// graph or the current face has been walked all the way round.
std::optional<NodeId> face_step(const World& world, NodeId current, FaceState& state);

enum class FaceResult { Delivered, Undeliverable, TtlExceeded };

struct FaceRoute {
  FaceResult result;
  std::size_t hops = 0;
  double distance = 0.0;
  std::vector<NodeId> path;
};

/// Standalone FACE-2 walk from `source` until a node within distance < 1 of
/// `target` is reached. Applies no border rule.
FaceRoute face_route(const World& world, NodeId source, Vec2 target, std::size_t ttl);

/// Hop bound on a complete FACE-2 walk: every Gabriel edge is walked a
/// bounded number of times.
std::size_t face_hop_bound(const World& world);

}  // namespace georoute
