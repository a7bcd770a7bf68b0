#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "rng.hpp"
#include "world.hpp"

using namespace georoute;

namespace {

World two_nodes(double gap) { return World(Region::standard(), {{0, 0}, {gap, 0}}, make_obstacle(ObstacleKind::None)); }

std::set<std::pair<NodeId, NodeId>> link_set(const World& w) {
  std::set<std::pair<NodeId, NodeId>> s;
  for (NodeId u = 0; u < w.size(); ++u) {
    for (NodeId v : w.out_links(u)) s.emplace(u, v);
  }
  return s;
}

}  // namespace

TEST(Region, StandardGeometry) {
  const Region r = Region::standard();
  EXPECT_DOUBLE_EQ(r.area(), 900.0);
  EXPECT_TRUE(r.contains({-5, -5}));
  EXPECT_FALSE(r.contains({25.1, 0}));
  EXPECT_DOUBLE_EQ(r.border_distance({0, 10}), 5.0);
  EXPECT_DOUBLE_EQ(r.border_distance({24, 10}), 1.0);
  EXPECT_THROW(Region(1, 1, 0, 2), WorldError);
}

TEST(Deploy, ZeroDensityIsEmpty) {
  const World w = deploy(0.0, Region::standard(), make_obstacle(ObstacleKind::None), 1);
  EXPECT_EQ(w.size(), 0u);
  EXPECT_EQ(w.link_count(), 0u);
  EXPECT_FALSE(w.closest_node({0, 0}).has_value());
}

TEST(Deploy, NodeCountIsDensityTimesArea) {
  EXPECT_EQ(node_count_for(5.0, Region::standard()), 4500u);
  EXPECT_EQ(node_count_for(4.5, Region::standard()), 4050u);
  EXPECT_EQ(deploy(5.0, Region::standard(), make_obstacle(ObstacleKind::None), 3).size(), 4500u);
  EXPECT_THROW(node_count_for(-1.0, Region::standard()), WorldError);
  EXPECT_THROW(node_count_for(NAN, Region::standard()), WorldError);
}

TEST(Deploy, NodesStayInsideTheRegion) {
  const World w = deploy(2.0, Region::standard(), make_obstacle(ObstacleKind::Stripe), 5);
  for (const auto& p : w.positions()) EXPECT_TRUE(w.region().contains(p));
}

TEST(Deploy, SameSeedSameWorld) {
  const auto a = deploy(3.0, Region::standard(), make_obstacle(ObstacleKind::UShape), 77);
  const auto b = deploy(3.0, Region::standard(), make_obstacle(ObstacleKind::UShape), 77);
  std::ostringstream da, db;
  write_world(da, a);
  write_world(db, b);
  EXPECT_EQ(da.str(), db.str());
  const auto c = deploy(3.0, Region::standard(), make_obstacle(ObstacleKind::UShape), 78);
  std::ostringstream dc;
  write_world(dc, c);
  EXPECT_NE(da.str(), dc.str());
}

TEST(Links, UnitDiskThreshold) {
  const World close = two_nodes(0.99);
  EXPECT_EQ(close.out_links(0).size(), 1u);
  EXPECT_EQ(close.out_links(1).size(), 1u);
  EXPECT_EQ(two_nodes(1.01).link_count(), 0u);
  EXPECT_EQ(two_nodes(1.0).link_count(), 2u);  // distance exactly 1 links
}

TEST(Links, WallsBlockLinks) {
  const Obstacle wall{ObstacleKind::Stripe, {Segment({0.5, -1}, {0.5, 1})}};
  const World w(Region::standard(), {{0, 0}, {0.9, 0}, {0, 0.5}}, wall);
  EXPECT_EQ(w.out_links(0).size(), 1u);
  EXPECT_TRUE(std::find(w.out_links(0).begin(), w.out_links(0).end(), 2u) != w.out_links(0).end());
  EXPECT_TRUE(w.out_links(1).empty());
}

TEST(Links, TouchingAWallEndpointBlocks) {
  // The link passes exactly through the wall's end.
  const Obstacle wall{ObstacleKind::Stripe, {Segment({0.5, 0}, {0.5, 2})}};
  const World w(Region::standard(), {{0, 0}, {0.9, 0}}, wall);
  EXPECT_EQ(w.link_count(), 0u);
}

TEST(Links, MatchBruteForce) {
  // The grid build against an all-pairs scan.
  const Obstacle ob = make_obstacle(ObstacleKind::Concave2);
  const World w = deploy(2.5, Region::standard(), ob, 9);
  std::set<std::pair<NodeId, NodeId>> want;
  for (NodeId u = 0; u < w.size(); ++u) {
    for (NodeId v = 0; v < w.size(); ++v) {
      if (u == v) continue;
      const Vec2 p = w.pos(u), q = w.pos(v);
      if (distance(p, q) > 1.0 || p == q) continue;
      bool blocked = false;
      for (const auto& s : ob.walls) blocked = blocked || segments_intersect(Segment(p, q), s);
      if (!blocked) want.emplace(u, v);
    }
  }
  EXPECT_EQ(link_set(w), want);
}

TEST(Links, NoLinkCrossesAWall) {
  const World w = deploy(4.0, Region::standard(), make_obstacle(ObstacleKind::UShape), 4);
  for (NodeId u = 0; u < w.size(); ++u) {
    for (NodeId v : w.out_links(u)) EXPECT_FALSE(blocked_by(w.obstacle(), w.pos(u), w.pos(v)));
  }
}

TEST(Obstacles, ShapesAndNames) {
  EXPECT_TRUE(make_obstacle(ObstacleKind::None).walls.empty());
  const auto stripe = make_obstacle(ObstacleKind::Stripe);
  ASSERT_EQ(stripe.walls.size(), 1u);
  EXPECT_DOUBLE_EQ(stripe.walls[0].a.x, stripe.walls[0].b.x);  // vertical
  EXPECT_DOUBLE_EQ((stripe.walls[0].a.y + stripe.walls[0].b.y) / 2, 10.0);  // centred on the a-b axis
  const auto u = make_obstacle(ObstacleKind::UShape);
  ASSERT_EQ(u.walls.size(), 3u);
  // The open side faces the source: no wall at the smallest x.
  double min_x = 1e9;
  for (const auto& s : u.walls) min_x = std::min({min_x, s.a.x, s.b.x});
  for (const auto& s : u.walls) EXPECT_FALSE(s.a.x == min_x && s.b.x == min_x);
  EXPECT_EQ(make_obstacle(ObstacleKind::Concave1).walls.size(), 5u);
  EXPECT_EQ(make_obstacle(ObstacleKind::Concave2).walls.size(), 5u);
  EXPECT_EQ(parse_obstacle("concave2"), ObstacleKind::Concave2);
  EXPECT_STREQ(to_string(ObstacleKind::UShape), "ushape");
  EXPECT_THROW(parse_obstacle("circle"), WorldError);
}

TEST(Gabriel, KeepsEmptyDiameterDisk) {
  const World w(Region::standard(), {{0, 0}, {0.9, 0}}, make_obstacle(ObstacleKind::None));
  EXPECT_EQ(w.gabriel_edge_count(), 1u);
}

TEST(Gabriel, RemovesEdgeWithWitnessInside) {
  const World w(Region::standard(), {{0, 0}, {0.9, 0}, {0.45, 0.05}}, make_obstacle(ObstacleKind::None));
  const auto g0 = w.gabriel_links(0);
  EXPECT_TRUE(std::find(g0.begin(), g0.end(), 1u) == g0.end());
  EXPECT_EQ(w.gabriel_edge_count(), 2u);
}

TEST(Gabriel, CollinearTripleDropsTheLongEdge) {
  const World w(Region::standard(), {{0, 0}, {0.5, 0}, {1, 0}}, make_obstacle(ObstacleKind::None));
  EXPECT_EQ(w.link_count(), 6u);
  EXPECT_EQ(w.gabriel_edge_count(), 2u);
  const auto g0 = w.gabriel_links(0);
  EXPECT_TRUE(std::find(g0.begin(), g0.end(), 2u) == g0.end());
}

TEST(Gabriel, WitnessOnTheCircleDoesNotRemove) {
  // (0.45, 0.45) lies on the circle with diameter (0,0)-(0.9,0).
  const World w(Region::standard(), {{0, 0}, {0.9, 0}, {0.45, 0.45}}, make_obstacle(ObstacleKind::None));
  EXPECT_EQ(w.gabriel_edge_count(), 3u);
}

TEST(Gabriel, MatchesBruteForce) {
  const World w = deploy(3.0, Region::standard(), make_obstacle(ObstacleKind::Stripe), 21);
  std::set<std::pair<NodeId, NodeId>> want, got;
  for (NodeId u = 0; u < w.size(); ++u) {
    for (NodeId v : w.out_links(u)) {
      if (v <= u) continue;
      const Vec2 c = (w.pos(u) + w.pos(v)) * 0.5;
      const double r = distance(w.pos(u), w.pos(v)) / 2;
      bool empty = true;
      for (NodeId x = 0; x < w.size() && empty; ++x) {
        if (x != u && x != v && distance(w.pos(x), c) < r - 1e-12) empty = false;
      }
      if (empty) want.emplace(u, v);
    }
    for (NodeId v : w.gabriel_links(u)) {
      if (v > u) got.emplace(u, v);
    }
  }
  EXPECT_EQ(got, want);
}

TEST(Gabriel, PlanarOnTenSeeds) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const World w = deploy(3.0, Region::standard(), make_obstacle(ObstacleKind::None), seed);
    EXPECT_TRUE(gabriel_is_planar(w)) << "seed " << seed;
  }
}

TEST(Gabriel, KiteKeepsShortDiagonalOnly) {
  const World w(Region::standard(), {{0, 0}, {0.8, 0}, {0.4, 0.3}, {0.4, -0.3}}, make_obstacle(ObstacleKind::None));
  EXPECT_EQ(w.link_count(), 12u);
  EXPECT_EQ(w.gabriel_edge_count(), 5u);
  const auto g0 = w.gabriel_links(0);
  EXPECT_TRUE(std::find(g0.begin(), g0.end(), 1u) == g0.end());
  EXPECT_TRUE(gabriel_is_planar(w));
}

TEST(Stats, CountsAndComponents) {
  const World w(Region::standard(), {{0, 0}, {0.5, 0}, {5, 5}}, make_obstacle(ObstacleKind::None));
  const auto s = compute_stats(w);
  EXPECT_EQ(s.nodes, 3u);
  EXPECT_EQ(s.links, 2u);
  EXPECT_NEAR(s.mean_degree, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(s.components, 2u);
  EXPECT_EQ(s.interior_nodes, 3u);
  EXPECT_TRUE(s.gabriel_planar);
}

TEST(Stats, InteriorDegreeNearPiD) {
  const World w = deploy(4.5, Region::standard(), make_obstacle(ObstacleKind::None), 1);
  const auto s = compute_stats(w);
  EXPECT_NEAR(s.interior_mean_degree, std::numbers::pi * 4.5, 0.05 * std::numbers::pi * 4.5);
}

TEST(Dump, RoundTrips) {
  const World w = deploy(0.5, Region::standard(), make_obstacle(ObstacleKind::Stripe), 8);
  std::stringstream ss;
  write_world(ss, w);
  EXPECT_EQ(ss.str().rfind("worldv1\n", 0), 0u);
  const WorldDump d = read_world(ss);
  ASSERT_EQ(d.nodes.size(), w.size());
  for (NodeId u = 0; u < w.size(); ++u) EXPECT_EQ(d.nodes[u], w.pos(u));  // %.17g is exact
  const std::set<std::pair<NodeId, NodeId>> read_links(d.links.begin(), d.links.end());
  EXPECT_EQ(read_links, link_set(w));
  EXPECT_EQ(d.links.size(), w.link_count());
}

TEST(Dump, RejectsGarbage) {
  std::istringstream no_header("0 1 2\n");
  EXPECT_THROW(read_world(no_header), WorldError);
  std::istringstream bad_link("worldv1\n0 0 0\n0 5\n");
  EXPECT_THROW(read_world(bad_link), WorldError);
}
