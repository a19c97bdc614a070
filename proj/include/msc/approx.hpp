#pragma once

#include <vector>

#include "msc/core.hpp"

namespace msc::approx {

struct BipartitePartition {
  std::vector<int> side;  // 1 or 2 per vertex
};

struct Coloring {
  std::vector<int> color;
  int k = 0;
};

// BFS 2-coloring; in each component the lowest vertex id is on side 1.
// Throws NotBipartite with an odd cycle.
BipartitePartition bipartition(const Instance& inst);

// Side 1 starts at heading 0, side 2 at 180, everyone turns clockwise once.
ScanCover two_approx(const Instance& inst, const BipartitePartition& part);

// Clockwise angle from the side-1 endpoint's start heading (0) to the
// direction of e seen from that endpoint; equals the other endpoint's offset.
double facing_offset(const Instance& inst, const BipartitePartition& part, int e);

Coloring dsatur(const Instance& inst);

struct BipartiteSubgraph {
  Instance instance;           // same vertices, a subset of the edges
  std::vector<int> edge_map;   // subgraph edge -> original edge
  BipartitePartition partition;
  int bit = 0;
};

// ceil(log2 k) subgraphs; an edge goes to the lowest bit where the colors of
// its endpoints differ.
std::vector<BipartiteSubgraph> bipartite_cover(const Instance& inst, const Coloring& c);

// Phases of two_approx run back to back; between phases each vertex turns the
// short way to its next start heading. With `minimize_transitions`, each phase
// may swap which side starts at 0 so that the objective's transition cost is
// smallest.
ScanCover log_k_approx(const Instance& inst, Objective obj,
                       bool minimize_transitions = false);
ScanCover apx_general(const Instance& inst, Objective obj);

}  // namespace msc::approx
