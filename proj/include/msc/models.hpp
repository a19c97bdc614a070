#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "msc/core.hpp"

namespace msc::models {

enum class VarKind { kContinuous, kBinary, kInteger };
enum class VarRole { kTime, kOrder, kPosition, kDisjunction, kAuxMax };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  VarRole role = VarRole::kTime;
  double lb = 0.0;
  double ub = std::numeric_limits<double>::infinity();
};

struct Term {
  int var;
  double coef;
};

enum class Sense { kLe, kGe, kEq };

struct Constraint {
  std::string name;
  std::string family;
  std::vector<Term> terms;
  Sense sense = Sense::kGe;
  double rhs = 0.0;
};

// body holds when the binary `indicator` equals 1.
struct Conditional {
  std::string name;
  int indicator;
  Constraint body;
};

// |a - b| >= rhs, kept native.
struct AbsConstraint {
  std::string name;
  int a, b;
  double rhs;
};

struct LazyFamily {
  std::string tag;
  std::string rule;
  std::vector<int> vertices;  // where the family is not materialized
};

struct MipModel {
  std::string formulation;
  Objective objective = Objective::kTotalEnergy;
  double big_m = 0.0;
  bool integerized = false;
  int scale = 0;  // decimal digits when integerized
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Conditional> conditionals;
  std::vector<AbsConstraint> abs_constraints;
  std::vector<LazyFamily> lazy_families;
  std::vector<Term> goal;  // minimized

  int count(VarRole role) const;
  int count(const std::string& family) const;
  int find(const std::string& name) const;  // -1 if absent
};

double big_m1(int n);       // ceil(log2 n) * 360
double big_m2(int edges);   // |E| * 180

// Subset cuts are listed for vertices of degree <= this, annotated above it.
inline constexpr int kMaterializeSubsetsUpTo = 4;

MipModel build_mip1(const Instance& inst, Objective obj);
MipModel build_mip2(const Instance& inst);
MipModel build_mip3(const Instance& inst, Objective obj);
MipModel build_cp1(const Instance& inst, int scale = 8);
MipModel build_cp2(const Instance& inst, Objective obj, int scale = 8);

// Dispatch on "mip1" | "mip2" | "mip3" | "cp1" | "cp2".
MipModel build(const std::string& formulation, const Instance& inst, Objective obj);

enum class Format {
  kLp,      // LP with \LAZY and \CONDITIONAL comment sidecars
  kPureLp,  // throws Unrepresentable on native conditional or abs constraints
};

std::string emit(const MipModel& model, Format format = Format::kLp);

struct Counts {
  int variables = 0;
  int binaries = 0;
  int generals = 0;
  int constraints = 0;
  int lazy = 0;
  int conditional = 0;
  int objective_terms = 0;
};

Counts summarize(const MipModel& model);
// Reads counts back from emitted text.
Counts parse_counts(const std::string& text);

// Values for every variable, from a schedule: t = S (scaled when integerized),
// x from the induced order, o from the global time order, aux at its tightest.
std::vector<double> assignment_from_schedule(const MipModel& model, const Instance& inst,
                                             const ScanCover& sc);

// Names of violated constraints (linear rows, conditionals, abs).
std::vector<std::string> violations(const MipModel& model, const std::vector<double>& values,
                                    double tol = 1e-6);

double goal_value(const MipModel& model, const std::vector<double>& values);

}  // namespace msc::models
