#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msc/core.hpp"

namespace msc::hardness {

// arctan(1/2) in degrees: the outer cone kept open at every gadget vertex.
inline const double kThetaOut = 26.56505117707799;

struct Mnae3SatInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // 0-based variable ids, 1..3 per clause
};

// `p mnae3sat <vars> <clauses>`, then one clause per line of 1-based ids with
// an optional trailing 0; lines starting with `c` are comments.
Mnae3SatInstance parse_mnae3sat(const std::string& text);
std::string write_mnae3sat(const Mnae3SatInstance& sat);

bool nae_satisfies(const Mnae3SatInstance& sat, const std::vector<bool>& value);
std::optional<std::vector<bool>> nae_brute_force(const Mnae3SatInstance& sat);

// (360 - theta_max + theta_min) / (360 - theta_max).
double gap_constant(double theta_max, double theta_min);

// Maps a gadget's local frame (fragment: v1 at the origin; clause: c1 at the
// origin) into the plane.
struct Placement {
  Point origin{0, 0};
  double rotation = 0.0;  // degrees, CCW
  double scale = 1.0;
};

struct GadgetGraph {
  Instance instance;
  std::map<std::string, int> connectors;
  std::vector<bool> auxiliary;  // degree-1 padding vertices
  double theta_max = 0.0;       // 360 - Lambda(v), equal on all gadget vertices
  double theta_min = 0.0;       // smallest angle between two non-padding edges
  int fragments = 0;
};

// Fragment vertex names, in local order.
inline constexpr const char* kFragmentNames[8] = {"s", "u", "t", "v1", "v2", "v3", "v4", "v5"};
// Coordinates relative to v1.
std::vector<Point> fragment_coordinates();
// Edges as name pairs, in the order of a known Lambda-cover.
std::vector<std::pair<std::string, std::string>> fragment_witness();

// Each builder certifies its gadget with the Lambda-cover decider and throws
// CertificationFailed when a gadget property does not hold.
GadgetGraph build_wire_fragment(const Placement& placement = {});
GadgetGraph build_variable_gadget(int var, int occurrences, const Placement& placement = {});
GadgetGraph build_clause_gadget(const Placement& placement = {});

struct WireOptions {
  // Smallest allowed slack (degrees) between a junction's open gaps and kThetaOut.
  double min_angle = 10.0;
};

// 18 fragments; the outer bisectors of u1 and s18 differ by theta (CCW).
GadgetGraph build_wire(double theta, const WireOptions& opt = {});

struct ReduceOptions {
  double min_angle = 10.0;
};

// Connectors: "x<i>" for one connector of each used variable, "C<j>.c<k>" for
// clause corners (all 0-based, k in 1..3).
GadgetGraph reduce(const Mnae3SatInstance& sat, const ReduceOptions& opt = {});

// Truth values read from a Lambda-cover: clockwise means true. Variables
// without a gadget get false.
std::vector<bool> read_assignment(const GadgetGraph& g, const DirectionAssignment& dirs,
                                  int num_vars);

}  // namespace msc::hardness
