#include "msc/approx.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace msc::approx {

BipartitePartition bipartition(const Instance& inst) {
  const int n = inst.num_vertices();
  BipartitePartition part;
  part.side.assign(n, 0);
  std::vector<int> parent(n, -1), depth(n, 0);
  for (int root = 0; root < n; ++root) {
    if (part.side[root]) continue;
    part.side[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : inst.incident(v)) {
        int w = inst.other(e, v);
        if (!part.side[w]) {
          part.side[w] = 3 - part.side[v];
          parent[w] = v;
          depth[w] = depth[v] + 1;
          q.push(w);
        } else if (part.side[w] == part.side[v]) {
          // Walk both BFS branches up to their meeting point.
          std::vector<int> left, right;
          int a = v, b = w;
          while (depth[a] > depth[b]) left.push_back(a), a = parent[a];
          while (depth[b] > depth[a]) right.push_back(b), b = parent[b];
          while (a != b) {
            left.push_back(a), a = parent[a];
            right.push_back(b), b = parent[b];
          }
          left.push_back(a);
          std::reverse(right.begin(), right.end());
          left.insert(left.end(), right.begin(), right.end());
          throw NotBipartite(left);
        }
      }
    }
  }
  return part;
}

namespace {

void check_partition(const Instance& inst, const BipartitePartition& part) {
  if (static_cast<int>(part.side.size()) != inst.num_vertices()) {
    throw Error(ErrorKind::kInvalidPartition, "partition size mismatch");
  }
  for (int s : part.side) {
    if (s != 1 && s != 2) throw Error(ErrorKind::kInvalidPartition, "side must be 1 or 2");
  }
  for (const Edge& e : inst.edges()) {
    if (part.side[e.u] == part.side[e.v]) {
      throw Error(ErrorKind::kInvalidPartition, "edge " + std::to_string(e.u) + " " +
                                                    std::to_string(e.v) +
                                                    " lies inside one side");
    }
  }
}

int side_one_endpoint(const Instance& inst, const BipartitePartition& part, int e) {
  return part.side[inst.edge(e).u] == 1 ? inst.edge(e).u : inst.edge(e).v;
}

}  // namespace

double facing_offset(const Instance& inst, const BipartitePartition& part, int e) {
  int a = side_one_endpoint(inst, part, e);
  return normalize_degrees(-direction(inst, a, e));
}

ScanCover two_approx(const Instance& inst, const BipartitePartition& part) {
  check_partition(inst, part);
  ScanCover sc;
  sc.times.resize(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) sc.times[e] = facing_offset(inst, part, e);
  return sc;
}

Coloring dsatur(const Instance& inst) {
  const int n = inst.num_vertices();
  Coloring c;
  c.color.assign(n, -1);
  std::vector<std::vector<bool>> seen(n);
  std::vector<int> saturation(n, 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (c.color[v] >= 0) continue;
      if (pick < 0 || saturation[v] > saturation[pick] ||
          (saturation[v] == saturation[pick] && inst.degree(v) > inst.degree(pick))) {
        pick = v;
      }
    }
    int col = 0;
    while (col < static_cast<int>(seen[pick].size()) && seen[pick][col]) ++col;
    c.color[pick] = col;
    c.k = std::max(c.k, col + 1);
    for (int e : inst.incident(pick)) {
      int w = inst.other(e, pick);
      if (c.color[w] >= 0) continue;
      if (static_cast<int>(seen[w].size()) <= col) seen[w].resize(col + 1, false);
      if (!seen[w][col]) {
        seen[w][col] = true;
        ++saturation[w];
      }
    }
  }
  return c;
}

std::vector<BipartiteSubgraph> bipartite_cover(const Instance& inst, const Coloring& c) {
  const int n = inst.num_vertices();
  if (static_cast<int>(c.color.size()) != n) {
    throw Error(ErrorKind::kImproperColoring, "coloring size mismatch");
  }
  for (int col : c.color) {
    if (col < 0 || col >= std::max(c.k, 1)) {
      throw Error(ErrorKind::kImproperColoring, "color out of range");
    }
  }
  for (const Edge& e : inst.edges()) {
    if (c.color[e.u] == c.color[e.v]) {
      throw Error(ErrorKind::kImproperColoring, "monochromatic edge " + std::to_string(e.u) +
                                                    " " + std::to_string(e.v));
    }
  }
  int bits = 0;
  while ((1 << bits) < c.k) ++bits;
  std::vector<std::vector<int>> members(bits);
  for (int e = 0; e < inst.num_edges(); ++e) {
    int diff = c.color[inst.edge(e).u] ^ c.color[inst.edge(e).v];
    int bit = 0;
    while (!((diff >> bit) & 1)) ++bit;
    members[bit].push_back(e);
  }
  std::vector<BipartiteSubgraph> out;
  for (int b = 0; b < bits; ++b) {
    BipartiteSubgraph s;
    s.bit = b;
    std::vector<Edge> es;
    for (int e : members[b]) es.push_back(inst.edge(e));
    s.instance = Instance(inst.dimension(), inst.points(), es, inst.name());
    s.edge_map = members[b];
    s.partition.side.resize(n);
    for (int v = 0; v < n; ++v) s.partition.side[v] = 1 + ((c.color[v] >> b) & 1);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// Short-way turn between two headings.
double turn(double from, double to) {
  double d = ccw_delta(from, to);
  return std::min(d, 360.0 - d);
}

double transition_cost(const std::vector<double>& turns, Objective obj) {
  double s = 0.0;
  for (double t : turns) s = obj == Objective::kTotalEnergy ? s + t : std::max(s, t);
  return s;
}

}  // namespace

ScanCover log_k_approx(const Instance& inst, Objective obj, bool minimize_transitions) {
  const int n = inst.num_vertices();
  try {
    return two_approx(inst, bipartition(inst));
  } catch (const NotBipartite&) {
  }
  std::vector<BipartiteSubgraph> phases = bipartite_cover(inst, dsatur(inst));
  ScanCover sc;
  sc.times.assign(inst.num_edges(), 0.0);
  std::vector<double> heading(n, 0.0);
  std::vector<bool> started(n, false);
  double clock = 0.0;
  for (size_t p = 0; p < phases.size(); ++p) {
    BipartiteSubgraph& ph = phases[p];
    auto start_heading = [&](int v, bool swapped) {
      bool first = (ph.partition.side[v] == 1) != swapped;
      return first ? 0.0 : 180.0;
    };
    auto turns_for = [&](bool swapped) {
      std::vector<double> t(n, 0.0);
      for (int v = 0; v < n; ++v) {
        if (started[v] && ph.instance.degree(v) > 0) t[v] = turn(heading[v], start_heading(v, swapped));
      }
      return t;
    };
    bool swapped = false;
    if (minimize_transitions && p > 0) {
      swapped = transition_cost(turns_for(true), obj) < transition_cost(turns_for(false), obj);
    }
    if (swapped) {
      for (int& s : ph.partition.side) s = 3 - s;
    }
    std::vector<double> turns = turns_for(false);
    double wait = 0.0;
    for (double t : turns) wait = std::max(wait, t);
    clock += wait;
    ScanCover local = two_approx(ph.instance, ph.partition);
    double span = 0.0;
    std::vector<double> last(n, -1.0);
    for (int e = 0; e < ph.instance.num_edges(); ++e) {
      int orig = ph.edge_map[e];
      sc.times[orig] = clock + local.times[e];
      span = std::max(span, local.times[e]);
      for (int v : {ph.instance.edge(e).u, ph.instance.edge(e).v}) {
        if (local.times[e] >= last[v]) {
          last[v] = local.times[e];
          heading[v] = direction(inst, v, orig);
          started[v] = true;
        }
      }
    }
    clock += span;
  }
  return sc;
}

ScanCover apx_general(const Instance& inst, Objective obj) {
  return log_k_approx(inst, obj, true);
}

}  // namespace msc::approx
