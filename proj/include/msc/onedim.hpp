#pragma once

#include <vector>

#include "msc/core.hpp"

namespace msc::onedim {

struct SideClassification {
  std::vector<int> both_side_vertices;  // left to right
  int k() const { return static_cast<int>(both_side_vertices.size()); }
};

SideClassification classify(const Instance& inst);

struct Result {
  ScanCover schedule;
  Evaluation evaluation;
  SideClassification classification;
};

Result solve(const Instance& inst);

}  // namespace msc::onedim
