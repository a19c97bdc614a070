#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "msc/random.hpp"

using namespace msc;
using namespace msc::testing;

TEST_CASE("angle_between uses the rays at the shared vertex") {
  Instance line(2, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}});
  CHECK(angle_between(line, 0, 1) == doctest::Approx(180.0));
  Instance corner(2, {{0, 0}, {1, 0}, {1, 1}}, {{0, 1}, {1, 2}});
  CHECK(angle_between(corner, 0, 1) == doctest::Approx(90.0));
}

TEST_CASE("angle_between small angle against arctangent and dot product") {
  Instance thin(2, {{0, 0}, {1, 0}, {1, 0.0001}}, {{0, 1}, {0, 2}});
  double by_atan = std::atan(0.0001) * 180.0 / std::numbers::pi;
  // Second route: acos of the normalized dot product of (1,0) and (1,1e-4).
  double by_dot = std::acos(1.0 / std::hypot(1.0, 0.0001)) * 180.0 / std::numbers::pi;
  double a = angle_between(thin, 0, 1);
  CHECK(a == doctest::Approx(by_atan).epsilon(1e-12));
  CHECK(std::abs(a - by_dot) < 1e-6);
  CHECK(a == doctest::Approx(0.0057296).epsilon(1e-4));
}

TEST_CASE("angle_between errors") {
  Instance two(2, {{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(angle_between(two, 0, 1), Error);
  try {
    angle_between(two, 0, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotAdjacent);
  }
  CHECK_THROWS(Instance(2, {{0, 0}, {0, 0}}, {{0, 1}}));
  try {
    Instance(2, {{0, 0}, {0, 0}}, {{0, 1}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateEdge);
  }
}

TEST_CASE("instance invariants") {
  CHECK_THROWS(Instance(2, {{0, 0}, {1, 0}}, {{0, 0}}));
  CHECK_THROWS(Instance(2, {{0, 0}, {1, 0}}, {{0, 1}, {1, 0}}));
  CHECK_THROWS(Instance(2, {{0, 0}, {1, 0}}, {{0, 2}}));
  Instance g(2, {{0, 0}, {1, 0}, {2, 2}}, {{1, 0}, {2, 1}});
  CHECK(g.edge(0).u == 0);
  CHECK(g.find_edge(1, 0).value() == 0);
  CHECK(g.shared_vertex(0, 1) == 1);
}

TEST_CASE("lambda_of examples") {
  Instance leaf = star({0});
  CHECK(lambda_of(leaf, 0).lambda == 0.0);
  CHECK_FALSE(lambda_of(leaf, 0).bounding_pair.has_value());
  CHECK(lambda_of(star({0, 90}), 0).lambda == doctest::Approx(90));
  ConeInfo c = lambda_of(star({0, 100, 220}), 0);
  CHECK(c.lambda == doctest::Approx(220));
  CHECK(c.outer_gap == doctest::Approx(140));
  // Outer gap runs from 220 to 360, so the cone starts at edge 0 and ends at 220.
  CHECK(c.bounding_pair->first == 0);
  CHECK(c.bounding_pair->second == 2);
  CHECK(c.outer_bisector == doctest::Approx(290));
}

TEST_CASE("validate and evaluate examples") {
  Instance empty(2, {{0, 0}}, {});
  CHECK(validate(empty, {}).empty());
  Instance corner = star({0, 90});
  auto v = validate(corner, {{0, 0}});
  REQUIRE(v.size() == 1);
  CHECK(v[0].deficit == doctest::Approx(90));

  Instance single(2, {{0, 0}, {1, 1}}, {{0, 1}});
  Evaluation e1 = evaluate(single, {{0}});
  CHECK(e1.makespan == 0);
  CHECK(e1.total_energy == 0);
  CHECK(e1.bottleneck_energy == 0);

  Instance path = path_1d(3);
  Evaluation e2 = evaluate(path, {{0, 180}});
  CHECK(e2.makespan == doctest::Approx(180));
  CHECK(e2.total_energy == doctest::Approx(180));
  CHECK(e2.bottleneck_energy == doctest::Approx(180));

  Instance s3 = star({0, 90, 180});
  Evaluation e3 = evaluate(s3, {{0, 90, 180}});
  CHECK(e3.per_vertex_rotation[0] == doctest::Approx(180));
  CHECK(e3.total_energy == doctest::Approx(180));
  CHECK(e3.bottleneck_energy == doctest::Approx(180));
  CHECK_THROWS_AS(evaluate(s3, {{0, 90}}), Error);
}

TEST_CASE("induce_order ties and orders") {
  Instance s3 = star({0, 90, 180});
  auto ord = induce_order(s3, {{180, 90, 0}});
  CHECK(ord.sequence[0] == std::vector<int>{2, 1, 0});
  Instance pair(2, {{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {{0, 1}, {2, 3}});
  auto o2 = induce_order(pair, {{0, 0}});
  CHECK(o2.sequence[0].size() == 1);
  // Two edges leaving vertex 0 in the same direction.
  Instance twin(2, {{0, 0}, {1, 0}, {2, 0}}, {{0, 2}, {0, 1}});
  auto o3 = induce_order(twin, {{5, 5}});
  CHECK(o3.sequence[0] == std::vector<int>{0, 1});
  CHECK(evaluate(twin, {{5, 5}}).total_energy == 0);
}

TEST_CASE("rotation_of_sweep") {
  Instance s3 = star({0, 90, 180});
  std::vector<int> mono{0, 1, 2}, rev{2, 1, 0}, zig{0, 2, 1};
  CHECK(rotation_of_sweep(s3, 0, mono) == doctest::Approx(lambda_of(s3, 0).lambda));
  CHECK(rotation_of_sweep(s3, 0, rev) == doctest::Approx(lambda_of(s3, 0).lambda));
  CHECK(rotation_of_sweep(s3, 0, zig) == doctest::Approx(270));
  std::vector<int> bad{0};
  CHECK_THROWS_AS(rotation_of_sweep(s3, 1, std::vector<int>{1}), Error);
  (void)bad;
}

TEST_CASE("property: symmetry and triangle inequality of alpha") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance g = gen_random({7, 0.6, seed});
    for (int v = 0; v < g.num_vertices(); ++v) {
      const auto& inc = g.incident(v);
      for (int e : inc) {
        for (int f : inc) {
          if (e == f) continue;
          CHECK(angle_between(g, e, f) == angle_between(g, f, e));
          for (int h : inc) {
            if (h == e || h == f) continue;
            CHECK(angle_between(g, e, h) <=
                  angle_between(g, e, f) + angle_between(g, f, h) + 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("property: lambda cone is minimal on a half-degree grid") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance g = gen_random({8, 0.7, seed});
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) < 2) continue;
      ConeInfo c = lambda_of(g, v);
      std::vector<double> dirs;
      for (int e : g.incident(v)) dirs.push_back(direction(g, v, e));
      double start = direction(g, v, c.bounding_pair->first);
      for (double d : dirs) CHECK(ccw_delta(start, d) <= c.lambda + 1e-9);
      // Grid sweep: smallest cone starting at a grid angle and containing all.
      double best = 360;
      for (int k = 0; k < 720; ++k) {
        double s = k * 0.5;
        double w = 0;
        for (double d : dirs) w = std::max(w, ccw_delta(s, d));
        best = std::min(best, w);
      }
      CHECK(c.lambda <= best + 1e-9);
      CHECK(c.lambda >= best - 0.5 - 1e-9);
    }
  }
}

TEST_CASE("property: rotation at least lambda and rigid-motion invariance") {
  Rng rng(42);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance g = gen_random({6, 0.6, seed});
    // A valid schedule: scan every edge 180 apart in id order.
    ScanCover sc;
    for (int e = 0; e < g.num_edges(); ++e) sc.times.push_back(180.0 * e);
    REQUIRE(validate(g, sc).empty());
    Evaluation ev = evaluate(g, sc);
    double sum = 0, mx = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
      sum += ev.per_vertex_rotation[v];
      mx = std::max(mx, ev.per_vertex_rotation[v]);
      if (g.degree(v) >= 2) CHECK(ev.per_vertex_rotation[v] >= lambda_of(g, v).lambda - 1e-9);
    }
    CHECK(std::abs(ev.total_energy - sum) <= 1e-9);
    CHECK(ev.bottleneck_energy == mx);

    double th = rng.uniform(0, 2 * std::numbers::pi);
    double dx = rng.uniform(-5, 5), dy = rng.uniform(-5, 5);
    std::vector<Point> moved;
    for (const Point& p : g.points()) {
      moved.push_back({std::cos(th) * p.x - std::sin(th) * p.y + dx,
                       std::sin(th) * p.x + std::cos(th) * p.y + dy});
    }
    Instance h(2, moved, g.edges());
    for (int v = 0; v < g.num_vertices(); ++v) {
      CHECK(std::abs(lambda_of(g, v).lambda - lambda_of(h, v).lambda) < 1e-9);
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      for (int f = e + 1; f < g.num_edges(); ++f) {
        if (g.shared_vertex(e, f) < 0) continue;
        CHECK(std::abs(angle_between(g, e, f) - angle_between(h, e, f)) < 1e-9);
      }
    }
    Evaluation eh = evaluate(h, sc);
    CHECK(std::abs(eh.total_energy - ev.total_energy) < 1e-9);
    CHECK(std::abs(eh.bottleneck_energy - ev.bottleneck_energy) < 1e-9);
  }
}
