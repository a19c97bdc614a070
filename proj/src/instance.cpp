#include "msc/instance.hpp"

#include <cmath>
#include <utility>

#include "msc/error.hpp"

namespace msc {

Instance::Instance(int dimension, std::vector<Point> points,
                   std::vector<Edge> edges, std::string name)
    : dimension_(dimension),
      points_(std::move(points)),
      edges_(std::move(edges)),
      name_(std::move(name)) {
  if (dimension_ != 1 && dimension_ != 2) {
    throw Error(ErrorKind::kValidation, "dimension must be 1 or 2");
  }
  const int n = num_vertices();
  for (int i = 0; i < n; ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::kValidation,
                  "vertex " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (dimension_ == 1 && p.y != 0.0) {
      throw Error(ErrorKind::kValidation,
                  "1D vertex " + std::to_string(i) + " has a y coordinate");
    }
  }
  incident_.assign(n, {});
  lookup_.reserve(edges_.size() * 2);
  for (int e = 0; e < num_edges(); ++e) {
    Edge& ed = edges_[e];
    if (ed.u < 0 || ed.v < 0 || ed.u >= n || ed.v >= n) {
      throw Error(ErrorKind::kValidation,
                  "edge " + std::to_string(e) + " references a missing vertex");
    }
    if (ed.u == ed.v) {
      throw Error(ErrorKind::kValidation,
                  "edge " + std::to_string(e) + " is a self-loop");
    }
    if (ed.u > ed.v) std::swap(ed.u, ed.v);
    if (!lookup_.emplace(key(ed.u, ed.v), e).second) {
      throw Error(ErrorKind::kValidation,
                  "duplicate edge " + std::to_string(ed.u) + " " +
                      std::to_string(ed.v));
    }
    if (points_[ed.u] == points_[ed.v]) {
      throw Error(ErrorKind::kDegenerateEdge,
                  "edge " + std::to_string(e) + " joins coincident vertices");
    }
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
  }
}

int Instance::shared_vertex(int e, int f) const {
  if (e == f) return -1;
  const Edge& a = edges_[e];
  const Edge& b = edges_[f];
  if (a.u == b.u || a.u == b.v) return a.u;
  if (a.v == b.u || a.v == b.v) return a.v;
  return -1;
}

std::optional<int> Instance::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = lookup_.find(key(a, b));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

}  // namespace msc
