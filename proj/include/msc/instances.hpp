#pragma once

#include <cstdint>
#include <string>

#include "msc/core.hpp"

namespace msc {

struct RandomParams {
  int n = 10;
  double p = 0.5;
  std::uint64_t seed = 0;
};

struct CelestialParams {
  int n = 10;
  double orbit_radius = 1.0;
  double obstacle_radius = 0.5;
  std::uint64_t seed = 0;
};

// Stream ids used with derive_seed.
inline constexpr std::uint64_t kPointStream = 1;
inline constexpr std::uint64_t kEdgeStream = 2;

Instance gen_random(const RandomParams& params);
Instance gen_celestial(const CelestialParams& params);
// Random 1D instance: n coordinates uniform in [0,1), edges with probability p.
Instance gen_random_1d(const RandomParams& params);

// Distance from point c to the closed segment ab.
double point_segment_distance(Point c, Point a, Point b);

std::string format_number(double x);
double parse_number(const std::string& token);

std::string write_instance(const Instance& inst);
Instance read_instance(const std::string& text);

std::string write_schedule(const Instance& inst, const ScanCover& sc);
ScanCover read_schedule(const std::string& text, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace msc
