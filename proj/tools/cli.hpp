#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "msc/core.hpp"
#include "msc/heuristics.hpp"

namespace msc::cli {

struct Budget {
  double seconds = std::numeric_limits<double>::infinity();
  std::optional<std::uint64_t> nodes;
  bool deterministic = false;
};

struct RunOutput {
  std::optional<ScanCover> schedule;
  bool proven_optimal = false;
  std::string status = "ok";
  nlohmann::json extra = nlohmann::json::object();
  std::vector<heuristics::TraceEntry> trace;
};

// Algorithms: bf, bnb, lcover, oned, 2apx, logk, apx, greedy, ils, sa, ga.
// Unknown algorithms or parameter keys throw Error(kInvalidArgument).
RunOutput run_algorithm(const Instance& inst, const std::string& algo, Objective obj,
                        std::uint64_t seed, const Budget& budget,
                        const std::map<std::string, std::string>& params);

// Returns the process exit code: 0 ok, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msc::cli
