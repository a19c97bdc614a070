#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msc/error.hpp"
#include "msc/instance.hpp"

namespace msc {

inline constexpr double kAngleTol = 1e-9;

enum class Objective { kMakespan, kTotalEnergy, kBottleneckEnergy };

const char* to_string(Objective obj);
// Accepts "ms", "te", "be" (case-insensitive).
Objective parse_objective(const std::string& text);

// Counterclockwise means increasing mathematical angle.
enum class Rotation { kCW, kCCW };

using DirectionAssignment = std::map<int, Rotation>;

// Direction of the ray v -> other(e) in degrees, [0, 360).
double direction(const Instance& inst, int v, int e);

// Angle at the shared vertex between the rays towards the two other
// endpoints, in [0, 180].
double angle_between(const Instance& inst, int e, int f);
// Extended-precision variant. Sums of these, rounded once, make equal
// quantities reached along different paths come out bit-identical.
long double angle_between_ext(const Instance& inst, int e, int f);

// CCW angular distance from `from` to `to`, in [0, 360).
double ccw_delta(double from, double to);
double normalize_degrees(double a);

struct ConeInfo {
  double lambda = 0.0;
  // (first, last): sweeping CCW from `first` through the cone ends at `last`.
  std::optional<std::pair<int, int>> bounding_pair;
  double bisector = 0.0;        // of the Λ-cone
  double outer_bisector = 0.0;  // of the complementary outer cone
  double outer_gap = 360.0;
};

ConeInfo lambda_of(const Instance& inst, int v);

// Every cone of minimum angle at v: one per cyclic gap within `tol` of the
// largest gap. Empty for degree <= 1.
std::vector<ConeInfo> lambda_cones(const Instance& inst, int v,
                                   double tol = kAngleTol);

// Incident edges of v sorted CCW by direction, ties by edge id.
std::vector<int> sorted_by_direction(const Instance& inst, int v);

struct ScanCover {
  std::vector<double> times;  // indexed by edge id
  friend bool operator==(const ScanCover&, const ScanCover&) = default;
};

struct Violation {
  int e = -1;
  int f = -1;
  double deficit = 0.0;  // α(e,f) − |S(e) − S(f)|
};

// Throws MissingEdgeTime on a partial schedule. Returns all violating pairs.
std::vector<Violation> validate(const Instance& inst, const ScanCover& sc,
                                double tol = kAngleTol);

struct InducedOrder {
  std::vector<std::vector<int>> sequence;  // per vertex
  std::string tie_policy = "edge-id ascending";
};

InducedOrder induce_order(const Instance& inst, const ScanCover& sc);

struct Evaluation {
  double makespan = 0.0;
  double total_energy = 0.0;
  double bottleneck_energy = 0.0;
  std::vector<double> per_vertex_rotation;

  double value(Objective obj) const;
};

Evaluation evaluate(const Instance& inst, const ScanCover& sc);

double rotation_of_sweep(const Instance& inst, int v, std::span<const int> order);
long double rotation_of_sweep_ext(const Instance& inst, int v, std::span<const int> order);

// Adjacency lists with cached angles, shared by the solvers.
class AngleTable {
 public:
  struct Neighbor {
    int edge;
    int vertex;  // shared vertex
    double alpha;
  };

  explicit AngleTable(const Instance& inst);
  std::span<const Neighbor> neighbors(int e) const {
    return {adj_.data() + start_[e], adj_.data() + start_[e + 1]};
  }
  double mean_positive_alpha() const;

 private:
  std::vector<int> start_;
  std::vector<Neighbor> adj_;
};

}  // namespace msc
