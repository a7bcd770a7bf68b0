#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace georoute {

using NodeId = std::uint32_t;

class WorldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Region {
  double x_min = -5.0;
  double x_max = 25.0;
  double y_min = -5.0;
  double y_max = 25.0;

  Region() = default;
  Region(double x0, double x1, double y0, double y1);

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(Vec2 p) const;
  /// Euclidean distance from an interior point to the nearest border line.
  double border_distance(Vec2 p) const;

  /// The 30x30 square -5 <= x, y <= 25 used by every experiment.
  static Region standard() { return Region{}; }
};

enum class ObstacleKind { None, Stripe, UShape, Concave1, Concave2 };

struct Obstacle {
  ObstacleKind kind = ObstacleKind::None;
  std::vector<Segment> walls;
};

const char* to_string(ObstacleKind kind);
/// Accepts none, stripe, ushape, concave1, concave2. Throws WorldError on
/// anything else.
ObstacleKind parse_obstacle(std::string_view name);
Obstacle make_obstacle(ObstacleKind kind);
inline Obstacle make_obstacle(std::string_view name) { return make_obstacle(parse_obstacle(name)); }

/// True when the segment p-q touches any wall.
bool blocked_by(const Obstacle& obstacle, Vec2 p, Vec2 q);

/// Compressed adjacency lists; each list is sorted by NodeId.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(const std::vector<std::vector<NodeId>>& lists);

  std::span<const NodeId> operator[](NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t entry_count() const { return targets_.size(); }
  bool contains(NodeId u, NodeId v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// A deployed network instance. Immutable once built.
class World {
 public:
  struct BuildOptions {
    bool gabriel = true;
  };

  World() = default;
  World(Region region, std::vector<Vec2> nodes, Obstacle obstacle, BuildOptions options);
  World(Region region, std::vector<Vec2> nodes, Obstacle obstacle)
      : World(region, std::move(nodes), std::move(obstacle), BuildOptions{}) {}

  const Region& region() const { return region_; }
  const Obstacle& obstacle() const { return obstacle_; }
  std::size_t size() const { return nodes_.size(); }
  Vec2 pos(NodeId u) const { return nodes_[u]; }
  const std::vector<Vec2>& positions() const { return nodes_; }

  std::span<const NodeId> out_links(NodeId u) const { return out_[u]; }
  std::span<const NodeId> gabriel_links(NodeId u) const { return gabriel_[u]; }
  bool has_gabriel() const { return has_gabriel_; }

  std::size_t link_count() const { return out_.entry_count(); }
  /// Undirected Gabriel edge count.
  std::size_t gabriel_edge_count() const { return gabriel_.entry_count() / 2; }

  /// Node closest to `p`, ties to the smaller id. Empty for an empty world.
  std::optional<NodeId> closest_node(Vec2 p) const;

 private:
  void build_links();
  void build_gabriel();

  Region region_;
  std::vector<Vec2> nodes_;
  Obstacle obstacle_;
  Adjacency out_;
  Adjacency gabriel_;
  bool has_gabriel_ = false;
};

/// Number of nodes deployed for `density` over `region`.
std::size_t node_count_for(double density, const Region& region);

/// Uniform deployment of round(density * area) nodes. Deterministic in
/// `rng_seed`.
World deploy(double density, const Region& region, const Obstacle& obstacle, std::uint64_t rng_seed,
             World::BuildOptions options = {});

/// Gabriel test on the world's links: (u, v) survives iff no third node lies
/// strictly inside the disk with diameter uv.
std::vector<std::pair<NodeId, NodeId>> gabriel_subgraph(const World& world);

struct WorldStats {
  std::size_t nodes = 0;
  std::size_t links = 0;
  double mean_degree = 0.0;
  /// Mean out-degree over nodes at least one unit from the border.
  double interior_mean_degree = 0.0;
  std::size_t interior_nodes = 0;
  std::size_t gabriel_edges = 0;
  bool gabriel_planar = true;
  std::size_t components = 0;
};

WorldStats compute_stats(const World& world);

/// Pairwise crossing scan over the Gabriel edges.
bool gabriel_is_planar(const World& world);

/// Connected-component label per node over the given adjacency.
std::vector<std::uint32_t> component_labels(const World& world, bool use_gabriel);

/// worldv1 text dump: header, "id x y" per node, "u v" per directed link.
void write_world(std::ostream& out, const World& world);

struct WorldDump {
  std::vector<Vec2> nodes;
  std::vector<std::pair<NodeId, NodeId>> links;
};

WorldDump read_world(std::istream& in);

}  // namespace georoute
