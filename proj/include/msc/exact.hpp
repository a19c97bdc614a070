#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "msc/core.hpp"

namespace msc::exact {

struct SolveResult {
  ScanCover schedule;
  double value = 0.0;
  Objective objective = Objective::kTotalEnergy;
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
  double elapsed = 0.0;  // seconds
  std::vector<int> sequence;  // global scan order realizing `schedule`
};

struct BruteForceOptions {
  int max_edges = 9;
  bool override_cap = false;
  std::uint64_t max_sequences = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
};

// Greedy earliest times along a global sequence:
// t_e = max(0, max over earlier adjacent f of t_f + α(e,f)).
ScanCover sequence_schedule(const Instance& inst, std::span<const int> order);

SolveResult brute_force(const Instance& inst, Objective obj,
                        const BruteForceOptions& opt = {});

struct BnbOptions {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 60.0;
  // Optional cell shared between concurrent solves of the same instance and
  // objective; only ever decreases.
  std::atomic<double>* shared_incumbent = nullptr;
};

SolveResult branch_and_bound(const Instance& inst, Objective obj,
                             const BnbOptions& opt = {});

struct LambdaCoverOptions {
  std::uint64_t max_conflicts = 5'000'000;
  // Restrict vertices to a rotation direction.
  std::vector<std::pair<int, Rotation>> forced;
  bool break_symmetry = true;
};

struct LambdaCoverResult {
  bool exists = false;
  DirectionAssignment assignment;  // degree >= 2 vertices, when exists
  ScanCover schedule;              // when exists
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  int choice_vertices = 0;
};

// Throws Error(kBudgetExhausted) when the conflict budget runs out.
LambdaCoverResult lambda_cover_exists(const Instance& inst,
                                      const LambdaCoverOptions& opt = {});

}  // namespace msc::exact
