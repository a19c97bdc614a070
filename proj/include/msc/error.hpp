#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace msc {

enum class ErrorKind {
  kValidation,
  kDegenerateEdge,
  kNotAdjacent,
  kNotIncident,
  kMissingEdgeTime,
  kInfeasibleSchedule,
  kParse,
  kWrongDimension,
  kTooLarge,
  kBudgetExhausted,
  kNotBipartite,
  kInvalidPartition,
  kImproperColoring,
  kNotPermutation,
  kUnsupportedObjective,
  kUnrepresentable,
  kCertificationFailed,
  kPlacementError,
  kThetaOutOfRange,
  kDomainError,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Carries an odd cycle as a closed vertex walk (first vertex not repeated).
class NotBipartite : public Error {
 public:
  explicit NotBipartite(std::vector<int> cycle);
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

}  // namespace msc
