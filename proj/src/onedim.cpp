#include "msc/onedim.hpp"

#include <algorithm>

namespace msc::onedim {
namespace {

void require_line(const Instance& inst) {
  if (inst.dimension() != 1) {
    throw Error(ErrorKind::kWrongDimension, "instance is not one-dimensional");
  }
}

}  // namespace

SideClassification classify(const Instance& inst) {
  require_line(inst);
  SideClassification out;
  for (int v = 0; v < inst.num_vertices(); ++v) {
    bool left = false, right = false;
    for (int e : inst.incident(v)) {
      double x = inst.point(inst.other(e, v)).x;
      if (x < inst.point(v).x) left = true;
      if (x > inst.point(v).x) right = true;
    }
    if (left && right) out.both_side_vertices.push_back(v);
  }
  std::stable_sort(out.both_side_vertices.begin(), out.both_side_vertices.end(),
                   [&](int a, int b) { return inst.point(a).x < inst.point(b).x; });
  return out;
}

Result solve(const Instance& inst) {
  Result r;
  r.classification = classify(inst);
  std::vector<int> index(inst.num_vertices(), 0);
  for (int i = 0; i < r.classification.k(); ++i) {
    index[r.classification.both_side_vertices[i]] = i + 1;
  }
  r.schedule.times.resize(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) {
    int u = inst.edge(e).u, v = inst.edge(e).v;
    int left = inst.point(u).x < inst.point(v).x ? u : v;
    r.schedule.times[e] = 180.0 * index[left];
  }
  r.evaluation = evaluate(inst, r.schedule);
  return r;
}

}  // namespace msc::onedim
