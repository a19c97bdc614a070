#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "msc/core.hpp"
#include "msc/instances.hpp"
#include "msc/random.hpp"

namespace msc::testing {

inline Point polar(double degrees, double r = 1.0, Point c = {0, 0}) {
  double a = degrees * std::numbers::pi / 180.0;
  return {c.x + r * std::cos(a), c.y + r * std::sin(a)};
}

// Center vertex 0 with a leaf per direction.
inline Instance star(std::vector<double> degrees) {
  std::vector<Point> pts{{0, 0}};
  std::vector<Edge> es;
  for (double d : degrees) {
    pts.push_back(polar(d));
    es.push_back({0, static_cast<int>(pts.size()) - 1});
  }
  return Instance(2, pts, es);
}

inline Instance path_1d(int n) {
  std::vector<Point> pts;
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) pts.push_back({static_cast<double>(i), 0});
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Instance(1, pts, es);
}

inline Instance triangle() {
  return Instance(2, {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}, {{0, 1}, {1, 2}, {0, 2}});
}

// Random 2D instance with at most `max_edges` edges (extra edges dropped).
inline Instance small_random(int n, double p, std::uint64_t seed, int max_edges) {
  Instance g = gen_random({n, p, seed});
  std::vector<Edge> es = g.edges();
  if (static_cast<int>(es.size()) > max_edges) es.resize(max_edges);
  return Instance(2, g.points(), es, g.name());
}

inline Instance truncate(const Instance& g, int max_edges) {
  std::vector<Edge> es = g.edges();
  if (static_cast<int>(es.size()) > max_edges) es.resize(max_edges);
  return Instance(g.dimension(), g.points(), es, g.name());
}

inline double sum_lambda(const Instance& g) {
  double s = 0;
  for (int v = 0; v < g.num_vertices(); ++v) s += lambda_of(g, v).lambda;
  return s;
}

inline double max_lambda(const Instance& g) {
  double s = 0;
  for (int v = 0; v < g.num_vertices(); ++v) s = std::max(s, lambda_of(g, v).lambda);
  return s;
}

// Random bipartite instance; returns per-vertex sides (1 or 2). With
// `separable`, side 1 lies in x > 0.5 and side 2 in x < -0.5.
struct Bipartite {
  Instance inst;
  std::vector<int> side;
};

inline Bipartite random_bipartite(int n, double p, std::uint64_t seed, bool separable,
                                  int max_edges = 1 << 30) {
  Rng rng(seed);
  std::vector<Point> pts(n);
  std::vector<int> side(n);
  for (int v = 0; v < n; ++v) {
    side[v] = v % 2 == 0 ? 1 : 2;
    double x = rng.uniform01(), y = rng.uniform01();
    if (separable) x = side[v] == 1 ? 0.5 + x : -0.5 - x;
    pts[v] = {x, y};
  }
  std::vector<Edge> es;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (side[a] != side[b] && rng.uniform01() < p &&
          static_cast<int>(es.size()) < max_edges) {
        es.push_back({a, b});
      }
    }
  }
  return {Instance(2, pts, es), side};
}

}  // namespace msc::testing
