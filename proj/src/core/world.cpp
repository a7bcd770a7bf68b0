#include "world.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "rng.hpp"

namespace georoute {

namespace {

constexpr double kGabrielEps = 1e-12;

/// Uniform bucket grid with unit cells over a region.
class Grid {
 public:
  Grid(const Region& region, const std::vector<Vec2>& points)
      : x0_(region.x_min),
        y0_(region.y_min),
        cols_(std::max(1, static_cast<int>(std::ceil(region.width())))),
        rows_(std::max(1, static_cast<int>(std::ceil(region.height())))),
        start_(static_cast<std::size_t>(cols_) * rows_ + 1, 0) {
    std::vector<std::size_t> cell_of(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      cell_of[i] = cell_index(points[i]);
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) items_[fill[cell_of[i]]++] = static_cast<NodeId>(i);
  }

  /// Calls fn(id) for every point in cells overlapping the square of
  /// half-width `radius` around p. Ids come out grouped by cell, each cell in
  /// ascending id order.
  template <typename Fn>
  void for_each_near(Vec2 p, double radius, Fn&& fn) const {
    const int cx0 = clamp_col(static_cast<int>(std::floor(p.x - radius - x0_)));
    const int cx1 = clamp_col(static_cast<int>(std::floor(p.x + radius - x0_)));
    const int cy0 = clamp_row(static_cast<int>(std::floor(p.y - radius - y0_)));
    const int cy1 = clamp_row(static_cast<int>(std::floor(p.y + radius - y0_)));
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        const std::size_t c = static_cast<std::size_t>(cy) * cols_ + cx;
        for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) fn(items_[k]);
      }
    }
  }

 private:
  int clamp_col(int c) const { return std::clamp(c, 0, cols_ - 1); }
  int clamp_row(int r) const { return std::clamp(r, 0, rows_ - 1); }
  std::size_t cell_index(Vec2 p) const {
    const int cx = clamp_col(static_cast<int>(std::floor(p.x - x0_)));
    const int cy = clamp_row(static_cast<int>(std::floor(p.y - y0_)));
    return static_cast<std::size_t>(cy) * cols_ + cx;
  }

  double x0_, y0_;
  int cols_, rows_;
  std::vector<std::size_t> start_;
  std::vector<NodeId> items_;
};

}  // namespace

Region::Region(double x0, double x1, double y0, double y1) : x_min(x0), x_max(x1), y_min(y0), y_max(y1) {
  if (!(x_min < x_max) || !(y_min < y_max)) throw WorldError("empty region");
}

bool Region::contains(Vec2 p) const {
  return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
}

double Region::border_distance(Vec2 p) const {
  return std::min({p.x - x_min, x_max - p.x, p.y - y_min, y_max - p.y});
}

const char* to_string(ObstacleKind kind) {
  switch (kind) {
    case ObstacleKind::None: return "none";
    case ObstacleKind::Stripe: return "stripe";
    case ObstacleKind::UShape: return "ushape";
    case ObstacleKind::Concave1: return "concave1";
    case ObstacleKind::Concave2: return "concave2";
  }
  return "?";
}

ObstacleKind parse_obstacle(std::string_view name) {
  for (auto kind : {ObstacleKind::None, ObstacleKind::Stripe, ObstacleKind::UShape, ObstacleKind::Concave1,
                    ObstacleKind::Concave2}) {
    if (name == to_string(kind)) return kind;
  }
  throw WorldError("unknown obstacle: " + std::string(name));
}

Obstacle make_obstacle(ObstacleKind kind) {
  // Zero-thickness polylines placed across the a=(0,10) -> b=(20,10) axis.
  Obstacle o{kind, {}};
  auto wall = [&o](double x0, double y0, double x1, double y1) { o.walls.emplace_back(Vec2{x0, y0}, Vec2{x1, y1}); };
  auto box = [&] {
    wall(6, 5, 14, 5);
    wall(14, 5, 14, 15);
    wall(6, 15, 14, 15);
  };
  switch (kind) {
    case ObstacleKind::None:
      break;
    case ObstacleKind::Stripe:
      // Long enough that plain greedy dead-ends against it, short enough for
      // inertia to come round the tip.
      wall(10, 6.75, 10, 13.25);
      break;
    case ObstacleKind::UShape:
      box();
      break;
    case ObstacleKind::Concave1:
      box();
      // Short lips: a trap that randomized contour routing still leaves.
      wall(6, 5, 6.3, 5.3);
      wall(6, 15, 6.3, 14.7);
      break;
    case ObstacleKind::Concave2:
      box();
      wall(6, 5, 10, 8);
      wall(6, 15, 10, 12);
      break;
  }
  return o;
}

bool blocked_by(const Obstacle& obstacle, Vec2 p, Vec2 q) {
  if (obstacle.walls.empty() || p == q) return false;
  const Segment link(p, q);
  for (const auto& w : obstacle.walls) {
    if (segments_intersect(link, w)) return true;
  }
  return false;
}

Adjacency::Adjacency(const std::vector<std::vector<NodeId>>& lists) {
  offsets_.reserve(lists.size() + 1);
  offsets_.push_back(0);
  for (const auto& l : lists) {
    targets_.insert(targets_.end(), l.begin(), l.end());
    std::sort(targets_.end() - static_cast<std::ptrdiff_t>(l.size()), targets_.end());
    offsets_.push_back(targets_.size());
  }
}

bool Adjacency::contains(NodeId u, NodeId v) const {
  const auto row = (*this)[u];
  return std::binary_search(row.begin(), row.end(), v);
}

World::World(Region region, std::vector<Vec2> nodes, Obstacle obstacle, BuildOptions options)
    : region_(region), nodes_(std::move(nodes)), obstacle_(std::move(obstacle)) {
  for (const auto& p : nodes_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw WorldError("non-finite node position");
  }
  build_links();
  if (options.gabriel) build_gabriel();
}

void World::build_links() {
  const Grid grid(region_, nodes_);
  std::vector<std::vector<NodeId>> lists(nodes_.size());
  for (NodeId u = 0; u < nodes_.size(); ++u) {
    const Vec2 p = nodes_[u];
    grid.for_each_near(p, 1.0, [&](NodeId v) {
      // Each unordered pair is decided once and recorded in both directions.
      if (v <= u) return;
      const Vec2 q = nodes_[v];
      if ((q - p).norm2() > 1.0) return;
      if (p == q || blocked_by(obstacle_, p, q)) return;
      lists[u].push_back(v);
      lists[v].push_back(u);
    });
  }
  out_ = Adjacency(lists);
}

void World::build_gabriel() {
  std::vector<std::vector<NodeId>> lists(nodes_.size());
  for (const auto& [u, v] : gabriel_subgraph(*this)) {
    lists[u].push_back(v);
    lists[v].push_back(u);
  }
  gabriel_ = Adjacency(lists);
  has_gabriel_ = true;
}

std::optional<NodeId> World::closest_node(Vec2 p) const {
  if (nodes_.empty()) return std::nullopt;
  NodeId best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (NodeId u = 0; u < nodes_.size(); ++u) {
    const double d2 = (nodes_[u] - p).norm2();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = u;
    }
  }
  return best;
}

std::vector<std::pair<NodeId, NodeId>> gabriel_subgraph(const World& world) {
  const auto& pts = world.positions();
  const Grid grid(world.region(), pts);
  std::vector<std::pair<NodeId, NodeId>> kept;
  for (NodeId u = 0; u < pts.size(); ++u) {
    for (NodeId v : world.out_links(u)) {
      if (v <= u) continue;
      const Vec2 mid = (pts[u] + pts[v]) * 0.5;
      const double r = distance(pts[u], pts[v]) * 0.5;
      const double limit = r - kGabrielEps;
      bool empty = true;
      if (limit > 0.0) {
        const double limit2 = limit * limit;
        grid.for_each_near(mid, r, [&](NodeId w) {
          if (!empty || w == u || w == v) return;
          if ((pts[w] - mid).norm2() < limit2) empty = false;
        });
      }
      if (empty) kept.emplace_back(u, v);
    }
  }
  return kept;
}

std::size_t node_count_for(double density, const Region& region) {
  if (!(density >= 0.0) || !std::isfinite(density)) throw WorldError("density must be a finite value >= 0");
  return static_cast<std::size_t>(std::llround(density * region.area()));
}

World deploy(double density, const Region& region, const Obstacle& obstacle, std::uint64_t rng_seed,
             World::BuildOptions options) {
  const std::size_t n = node_count_for(density, region);
  Rng rng(rng_seed);
  std::vector<Vec2> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(region.x_min, region.x_max);
    const double y = rng.uniform(region.y_min, region.y_max);
    nodes.emplace_back(x, y);
  }
  return World(region, std::move(nodes), obstacle, options);
}

bool gabriel_is_planar(const World& world) {
  if (!world.has_gabriel()) throw WorldError("world built without Gabriel links");
  const auto& pts = world.positions();
  const Grid grid(world.region(), pts);
  for (NodeId u = 0; u < pts.size(); ++u) {
    for (NodeId v : world.gabriel_links(u)) {
      if (v <= u) continue;
      const Segment e(pts[u], pts[v]);
      bool crossing = false;
      // Any crossing edge of length <= 1 has an endpoint within 2 of u.
      grid.for_each_near(pts[u], 2.0, [&](NodeId x) {
        if (crossing) return;
        for (NodeId y : world.gabriel_links(x)) {
          if (y <= x || x == u || x == v || y == u || y == v) continue;
          if (segments_cross_strictly(e, Segment(pts[x], pts[y]))) {
            crossing = true;
            return;
          }
        }
      });
      if (crossing) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> component_labels(const World& world, bool use_gabriel) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(world.size(), kUnset);
  std::uint32_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < world.size(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : use_gabriel ? world.gabriel_links(u) : world.out_links(u)) {
        if (label[v] == kUnset) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

WorldStats compute_stats(const World& world) {
  WorldStats s;
  s.nodes = world.size();
  s.links = world.link_count();
  if (s.nodes > 0) s.mean_degree = static_cast<double>(s.links) / static_cast<double>(s.nodes);
  std::size_t interior_links = 0;
  for (NodeId u = 0; u < world.size(); ++u) {
    if (world.region().border_distance(world.pos(u)) >= 1.0) {
      ++s.interior_nodes;
      interior_links += world.out_links(u).size();
    }
  }
  if (s.interior_nodes > 0) {
    s.interior_mean_degree = static_cast<double>(interior_links) / static_cast<double>(s.interior_nodes);
  }
  if (world.has_gabriel()) {
    s.gabriel_edges = world.gabriel_edge_count();
    s.gabriel_planar = gabriel_is_planar(world);
  }
  const auto labels = component_labels(world, false);
  s.components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  return s;
}

void write_world(std::ostream& out, const World& world) {
  out << "worldv1\n";
  char buf[96];
  for (NodeId u = 0; u < world.size(); ++u) {
    std::snprintf(buf, sizeof buf, "%u %.17g %.17g\n", u, world.pos(u).x, world.pos(u).y);
    out << buf;
  }
  for (NodeId u = 0; u < world.size(); ++u) {
    for (NodeId v : world.out_links(u)) out << u << ' ' << v << '\n';
  }
}

WorldDump read_world(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "worldv1") throw WorldError("missing worldv1 header");
  WorldDump dump;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);
    if (fields.size() == 3) {
      if (!dump.links.empty()) throw WorldError("node line after link lines");
      if (std::stoul(fields[0]) != dump.nodes.size()) throw WorldError("node ids must be dense and ordered");
      dump.nodes.emplace_back(std::stod(fields[1]), std::stod(fields[2]));
    } else if (fields.size() == 2) {
      const auto u = static_cast<NodeId>(std::stoul(fields[0]));
      const auto v = static_cast<NodeId>(std::stoul(fields[1]));
      if (u >= dump.nodes.size() || v >= dump.nodes.size()) throw WorldError("link refers to unknown node");
      dump.links.emplace_back(u, v);
    } else {
      throw WorldError("malformed worldv1 line: " + line);
    }
  }
  return dump;
}

}  // namespace georoute
