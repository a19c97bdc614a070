#include "msc/error.hpp"

namespace msc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "ValidationError";
    case ErrorKind::kDegenerateEdge: return "DegenerateEdge";
    case ErrorKind::kNotAdjacent: return "NotAdjacent";
    case ErrorKind::kNotIncident: return "NotIncident";
    case ErrorKind::kMissingEdgeTime: return "MissingEdgeTime";
    case ErrorKind::kInfeasibleSchedule: return "InfeasibleSchedule";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kWrongDimension: return "WrongDimension";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kBudgetExhausted: return "BudgetExhausted";
    case ErrorKind::kNotBipartite: return "NotBipartite";
    case ErrorKind::kInvalidPartition: return "InvalidPartition";
    case ErrorKind::kImproperColoring: return "ImproperColoring";
    case ErrorKind::kNotPermutation: return "NotPermutation";
    case ErrorKind::kUnsupportedObjective: return "RequestedObjectiveUnsupported";
    case ErrorKind::kUnrepresentable: return "UnrepresentableConstraint";
    case ErrorKind::kCertificationFailed: return "CertificationFailed";
    case ErrorKind::kPlacementError: return "PlacementError";
    case ErrorKind::kThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

ParseError::ParseError(int line, int column, const std::string& what)
    : Error(ErrorKind::kParse, "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

NotBipartite::NotBipartite(std::vector<int> cycle)
    : Error(ErrorKind::kNotBipartite,
            "graph has an odd cycle of length " + std::to_string(cycle.size())),
      cycle_(std::move(cycle)) {}

}  // namespace msc
