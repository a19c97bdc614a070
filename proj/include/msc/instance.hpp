#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace msc {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Embedded graph. Immutable after construction; the constructor enforces the
// structural invariants (range, no loops, no duplicates, no zero-length edge).
class Instance {
 public:
  Instance() = default;
  Instance(int dimension, std::vector<Point> points, std::vector<Edge> edges,
           std::string name = {});

  int dimension() const { return dimension_; }
  int num_vertices() const { return static_cast<int>(points_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const Point& point(int v) const { return points_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  int other(int e, int v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }
  bool has_endpoint(int e, int v) const {
    return edges_[e].u == v || edges_[e].v == v;
  }
  // The unique vertex shared by e and f, or -1.
  int shared_vertex(int e, int f) const;
  std::optional<int> find_edge(int a, int b) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.dimension_ == b.dimension_ && a.points_ == b.points_ &&
           a.edges_ == b.edges_ && a.name_ == b.name_;
  }

 private:
  static long long key(int a, int b) {
    return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b);
  }

  int dimension_ = 2;
  std::vector<Point> points_;
  std::vector<Edge> edges_;
  std::string name_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<long long, int> lookup_;
};

}  // namespace msc
