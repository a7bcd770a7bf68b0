#include "properties.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "harness.hpp"
#include "output.hpp"

namespace georoute::props {

namespace {

constexpr double kPi = std::numbers::pi;

Result& fail(Result& r, const std::string& what) {
  if (r.ok) r.detail = what;
  r.ok = false;
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Quadrant by the signs of sin and cos, with north along the destination.
Compass quadrant_by_trig(double alpha) {
  const double s = std::sin(alpha), c = std::cos(alpha);
  if (s >= 0.0 && c > 0.0) return Compass::NE;
  if (s > 0.0 && c <= 0.0) return Compass::SE;
  if (s < 0.0 && c >= 0.0) return Compass::NW;
  return Compass::SW;
}

/// Quadrant from two atan2 headings, wrapped by hand.
Compass quadrant_by_headings(Vec2 v_prev, Vec2 v_dest, double& alpha) {
  alpha = std::atan2(v_dest.y, v_dest.x) - std::atan2(v_prev.y, v_prev.x);
  while (alpha >= kPi) alpha -= 2 * kPi;
  while (alpha < -kPi) alpha += 2 * kPi;
  if (alpha < -kPi / 2) return Compass::SW;
  if (alpha < 0) return Compass::NW;
  if (alpha < kPi / 2) return Compass::NE;
  return Compass::SE;
}

double circular_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * kPi);
  return std::min(d, 2 * kPi - d);
}

Vec2 random_vec(Rng& rng, double r) { return {rng.uniform(-r, r), rng.uniform(-r, r)}; }

}  // namespace

Result compass_partition(std::size_t cases, std::uint64_t seed) {
  Result r;
  // Boundaries: each quadrant is closed at its counter-clockwise start.
  const struct {
    double alpha;
    Compass want;
  } edges[] = {
      {-kPi, Compass::SW},
      {std::nextafter(-kPi / 2, -4.0), Compass::SW},
      {-kPi / 2, Compass::NW},
      {std::nextafter(0.0, -1.0), Compass::NW},
      {0.0, Compass::NE},
      {std::nextafter(kPi / 2, 0.0), Compass::NE},
      {kPi / 2, Compass::SE},
      {std::nextafter(kPi, 0.0), Compass::SE},
      {kPi, Compass::SW},  // folds onto -pi
  };
  for (const auto& e : edges) {
    ++r.cases;
    const Compass got = compass_of(Angle(e.alpha));
    if (got != e.want) fail(r, "alpha=" + fmt(e.alpha) + " gave " + to_string(got));
  }

  Rng rng(seed);
  int seen[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const double alpha = rng.uniform(-kPi, kPi);
    const Compass got = compass_of(Angle(alpha));
    ++seen[static_cast<int>(got)];
    if (got != quadrant_by_trig(alpha)) fail(r, "alpha=" + fmt(alpha) + " gave " + to_string(got));

    const Vec2 p = random_vec(rng, 20), prev = random_vec(rng, 20), dest = random_vec(rng, 20);
    if ((p - prev).norm() < 1e-6 || (dest - p).norm() < 1e-6) continue;
    double oracle_alpha = 0.0;
    const Compass want = quadrant_by_headings(p - prev, dest - p, oracle_alpha);
    // Skip readings within rounding distance of a quadrant edge.
    const double to_edge = std::abs(std::remainder(oracle_alpha, kPi / 2));
    if (to_edge < 1e-9) continue;
    const Compass c = compass(p, prev, dest);
    if (c != want) fail(r, "compass at alpha=" + fmt(oracle_alpha) + " gave " + to_string(c));
  }
  for (int q = 0; q < 4; ++q) {
    if (cases >= 100 && seen[q] == 0) fail(r, "a quadrant was never produced");
  }
  return r;
}

Result rotation_isometry(std::size_t cases, std::uint64_t seed) {
  Result r;
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Vec2 u = random_vec(rng, 10), v = random_vec(rng, 10);
    const double g = rng.uniform(-kPi, kPi), h = rng.uniform(-kPi, kPi);
    const Vec2 ru = rotate(u, Angle(g)), rv = rotate(v, Angle(g));
    const double scale = 1.0 + u.norm() * v.norm();

    const std::complex<double> want = std::complex<double>(v.x, v.y) * std::polar(1.0, g);
    if (std::abs(rv.x - want.real()) > 1e-12 * (1 + v.norm()) || std::abs(rv.y - want.imag()) > 1e-12 * (1 + v.norm()))
      fail(r, "rotate disagrees with complex multiplication at gamma=" + fmt(g));
    if (std::abs(rv.norm() - v.norm()) > 1e-12 * (1 + v.norm())) fail(r, "rotation changed a length");
    if (std::abs(dot(ru, rv) - dot(u, v)) > 1e-11 * scale) fail(r, "rotation changed a dot product");
    if (std::abs(cross(ru, rv) - cross(u, v)) > 1e-11 * scale) fail(r, "rotation changed orientation");

    const Vec2 twice = rotate(rotate(v, Angle(g)), Angle(h));
    const Vec2 once = rotate(v, Angle(g) + Angle(h));
    if ((twice - once).norm() > 1e-11 * (1 + v.norm())) fail(r, "rotations do not compose");

    if (v.norm() > 1e-6) {
      const double back = angle_from_to(v, rv).radians();
      if (circular_gap(back, g) > 1e-9) fail(r, "angle_from_to does not invert rotate at gamma=" + fmt(g));
    }
  }
  return r;
}

Result inertia_turn_bound(std::size_t cases, std::uint64_t seed) {
  Result r;
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const double alpha = rng.uniform(-kPi, kPi);
    const double beta = i % 10 == 0 ? 1.0 : 1.0 - rng.uniform01();  // (0, 1]
    const double turned = inertia_turn(Angle(alpha), beta).radians();
    if (std::abs(turned) > beta * kPi + 1e-15) fail(r, "inertia turn exceeds beta*pi at alpha=" + fmt(alpha));
    if (std::abs(alpha) <= beta * kPi && turned != alpha) fail(r, "inertia turn altered a small alpha");
    if (alpha != 0.0 && turned != 0.0 && std::signbit(turned) != std::signbit(alpha))
      fail(r, "inertia turn changed side");
  }
  return r;
}

Result contour_turn_bound(std::size_t cases, std::uint64_t seed) {
  Result r;
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    double alpha = rng.uniform(-kPi, kPi);
    if (alpha == 0.0) alpha = 1e-3;
    const double beta = i % 10 == 0 ? 1.0 : 1.0 - rng.uniform01();
    const double alpha2 = long_way_angle(Angle(alpha));
    if (std::signbit(alpha2) == std::signbit(alpha)) fail(r, "alpha2 on the same side as alpha=" + fmt(alpha));
    if (std::abs(std::abs(alpha2) - (2 * kPi - std::abs(alpha))) > 1e-12) fail(r, "alpha2 has the wrong size");

    const double scaled = contour_turn(Angle(alpha), beta).radians();
    if (std::abs(scaled) > 2 * kPi * beta + 1e-12) fail(r, "|alpha2'| exceeds 2 pi beta at alpha=" + fmt(alpha));
    // Below beta = 1/2 the scaled turn never wraps, so it keeps alpha2's side.
    if (beta < 0.5 && scaled != 0.0 && std::signbit(scaled) == std::signbit(alpha))
      fail(r, "scaled contour turn on the same side as alpha=" + fmt(alpha));
    // Same rotation as alpha2 * beta modulo a full turn.
    if (circular_gap(scaled, beta * alpha2) > 1e-12) fail(r, "scaled contour turn is not beta*alpha2");

    const double clamped = contour_turn(Angle(alpha), beta, ContourTurn::Clamped).radians();
    if (std::abs(clamped) > beta * kPi + 1e-15) fail(r, "clamped contour turn exceeds beta*pi");
  }
  // sign(0) is taken as +1, so alpha = 0 turns right the long way.
  ++r.cases;
  if (!(long_way_angle(Angle(0.0)) < 0.0)) fail(r, "alpha2 at alpha=0 should be negative");
  return r;
}

Result flag_table() {
  Result r;
  struct Row {
    Flag in;
    Compass c;
    Flag out;
    Mode mode;
  };
  const Row table[] = {
      {Flag::Down, Compass::NE, Flag::Down, Mode::Inertia}, {Flag::Down, Compass::NW, Flag::Down, Mode::Inertia},
      {Flag::Down, Compass::SE, Flag::UpE, Mode::Inertia},  {Flag::Down, Compass::SW, Flag::UpW, Mode::Inertia},
      {Flag::UpE, Compass::NE, Flag::Down, Mode::Inertia},  {Flag::UpE, Compass::NW, Flag::UpE, Mode::Contour},
      {Flag::UpE, Compass::SE, Flag::UpE, Mode::Inertia},   {Flag::UpE, Compass::SW, Flag::UpE, Mode::Contour},
      {Flag::UpW, Compass::NE, Flag::UpW, Mode::Contour},   {Flag::UpW, Compass::NW, Flag::Down, Mode::Inertia},
      {Flag::UpW, Compass::SE, Flag::UpW, Mode::Contour},   {Flag::UpW, Compass::SW, Flag::UpW, Mode::Inertia},
  };
  const auto centre = [](Compass c) {
    switch (c) {
      case Compass::NE: return kPi / 4;
      case Compass::NW: return -kPi / 4;
      case Compass::SE: return 3 * kPi / 4;
      case Compass::SW: return -3 * kPi / 4;
    }
    return 0.0;
  };
  for (const Row& row : table) {
    ++r.cases;
    const std::string name = std::string(to_string(row.in)) + "/" + to_string(row.c);
    const Flag out = row.in == Flag::Down ? raise_flag(row.in, row.c) : lower_flag(row.in, row.c);
    if (out != row.out) fail(r, name + ": flag became " + to_string(out));
    if (mode_selector(out, row.c) != row.mode) fail(r, name + ": wrong mode");

    // The same transition driven through a whole decision.
    MessageState s = MessageState::at_source({0, 0});
    s.prev_pos = Vec2{-1, 0};
    s.flag = row.in;
    const double a = centre(row.c);
    s.dest_pos = Vec2{5 * std::cos(a), 5 * std::sin(a)};
    const Decision d = decide(s, {0, 0}, RoutingParams{});
    if (d.compass != row.c || d.flag != row.out || d.mode != row.mode) fail(r, name + ": decide() disagrees");
  }
  return r;
}

Result beta_one_is_projection_greedy(std::size_t cases, std::uint64_t seed) {
  Result r;
  Rng rng(seed);
  RoutingParams params;
  params.beta = 1.0;
  const Flag flags[] = {Flag::Down, Flag::UpE, Flag::UpW};
  const std::size_t worlds = 4;
  for (std::size_t w = 0; w < worlds; ++w) {
    const World world = deploy(4.0, Region::standard(), make_obstacle(ObstacleKind::None), rng.below(1u << 30));
    const std::size_t quota = cases / worlds + (w < cases % worlds ? 1 : 0);
    for (std::size_t i = 0; i < quota;) {
      const NodeId u = static_cast<NodeId>(rng.below(world.size()));
      const auto links = world.out_links(u);
      if (links.empty()) continue;
      const Vec2 here = world.pos(u);
      MessageState s = MessageState::at_source({rng.uniform(-5, 25), rng.uniform(-5, 25)});
      if ((s.dest_pos - here).norm() < 1e-6) continue;
      if (rng.below(4) != 0) s.prev_pos = here + Vec2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      if (s.prev_pos && (*s.prev_pos - here).norm() < 1e-6) continue;
      s.flag = flags[rng.below(3)];
      ++i;
      ++r.cases;

      // Oracle: plain projection on the destination direction.
      const Vec2 to_dest = s.dest_pos - here;
      NodeId want = links[0];
      double best = -1e300, runner_up = -1e300;
      for (NodeId m : links) {
        const double p = dot(to_dest, world.pos(m) - here) / to_dest.norm();
        if (p > best || (p == best && m < want)) {
          runner_up = best;
          best = p;
          want = m;
        } else if (p > runner_up) {
          runner_up = p;
        }
      }
      Rng unused(0);
      const Decision d = decide(s, here, params);
      const auto got = next_hop(world, u, d.ideal, params, unused);
      if (!got) {
        fail(r, "no hop chosen");
        continue;
      }
      if (*got != want && best - runner_up > 1e-9) {
        fail(r, "node " + std::to_string(u) + ": chose " + std::to_string(*got) + ", greedy projection chose " +
                    std::to_string(want));
      }
    }
  }
  return r;
}

Result epsilon_zero_equivalence(std::size_t cases, std::size_t routes, std::uint64_t seed) {
  Result r;
  Rng rng(seed);
  RoutingParams plain, randomized;
  randomized.randomized = true;
  randomized.epsilon = 0.0;
  const World world = deploy(5.0, Region::standard(), make_obstacle(ObstacleKind::UShape), rng.below(1u << 30));
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const NodeId u = static_cast<NodeId>(rng.below(world.size()));
    const double g = rng.uniform(-kPi, kPi);
    const Vec2 ideal{std::cos(g), std::sin(g)};
    Rng a(i), b(i);
    if (next_hop(world, u, ideal, plain, a) != next_hop(world, u, ideal, randomized, b))
      fail(r, "next hop differs at node " + std::to_string(u));
  }

  ExperimentConfig cfg;
  cfg.obstacle = ObstacleKind::UShape;
  cfg.master_seed = seed;
  RouteOptions opts;
  opts.record_path = true;
  opts.params.epsilon = 0.0;
  for (std::size_t t = 0; t < routes; ++t, ++r.cases) {
    const double d = 4.0 + static_cast<double>(t % 5);
    const World w = build_trial_world(cfg, d, t);
    Rng a(routing_seed(seed, d, t, Algorithm::GricMinus)), b(routing_seed(seed, d, t, Algorithm::GricPlus));
    const auto minus = route_message(w, Algorithm::GricMinus, opts, a);
    const auto plus = route_message(w, Algorithm::GricPlus, opts, b);
    if (minus.status != plus.status || minus.hops != plus.hops || minus.path != plus.path)
      fail(r, "routes differ in trial " + std::to_string(t));
  }
  return r;
}

Result sweep_worker_determinism(std::uint64_t seed) {
  Result r;
  ExperimentConfig cfg;
  cfg.obstacle = ObstacleKind::Stripe;
  cfg.densities = {2.0, 3.5, 5.0};
  cfg.trials_per_point = 12;
  cfg.master_seed = seed;
  std::string first;
  for (unsigned workers : {1u, 2u, 4u}) {
    ++r.cases;
    cfg.workers = workers;
    std::ostringstream os;
    write_csv(os, run_sweep(cfg, kAllAlgorithms));
    if (workers == 1) {
      first = os.str();
    } else if (os.str() != first) {
      fail(r, "CSV differs with " + std::to_string(workers) + " workers");
    }
  }
  return r;
}

}  // namespace georoute::props
