#include <cctype>
#include <charconv>
#include <cstdint>
#include <sstream>

#include "msc/hardness.hpp"

namespace msc::hardness {

namespace {

int to_int(const std::string& tok, int line, int col) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError(line, col, "expected an integer, got '" + tok + "'");
  }
  return v;
}

}  // namespace

Mnae3SatInstance parse_mnae3sat(const std::string& text) {
  Mnae3SatInstance sat;
  std::istringstream in(text);
  std::string line;
  int lineno = 0, expected = -1;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::pair<std::string, int>> toks;  // token, 1-based column
    for (size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (toks.empty() || toks[0].first == "c") continue;
    if (toks[0].first == "p") {
      if (header) throw ParseError(lineno, 1, "duplicate header");
      if (toks.size() != 4 || toks[1].first != "mnae3sat") {
        throw ParseError(lineno, 1, "expected 'p mnae3sat <vars> <clauses>'");
      }
      sat.num_vars = to_int(toks[2].first, lineno, toks[2].second);
      expected = to_int(toks[3].first, lineno, toks[3].second);
      if (sat.num_vars < 0 || expected < 0) throw ParseError(lineno, 1, "negative count");
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, 1, "clause before header");
    std::vector<int> clause;
    for (size_t i = 0; i < toks.size(); ++i) {
      int v = to_int(toks[i].first, lineno, toks[i].second);
      if (v == 0 && i + 1 == toks.size()) break;
      if (v < 0) throw ParseError(lineno, toks[i].second, "negated literals are not allowed");
      if (v < 1 || v > sat.num_vars) throw ParseError(lineno, toks[i].second, "variable out of range");
      clause.push_back(v - 1);
    }
    if (clause.empty() || clause.size() > 3) {
      throw ParseError(lineno, 1, "a clause needs 1 to 3 literals");
    }
    sat.clauses.push_back(clause);
  }
  if (!header) throw ParseError(lineno, 1, "missing header");
  if (static_cast<int>(sat.clauses.size()) != expected) {
    throw ParseError(lineno, 1, "header announces " + std::to_string(expected) + " clauses, found " +
                                    std::to_string(sat.clauses.size()));
  }
  return sat;
}

std::string write_mnae3sat(const Mnae3SatInstance& sat) {
  std::ostringstream out;
  out << "p mnae3sat " << sat.num_vars << " " << sat.clauses.size() << "\n";
  for (const auto& c : sat.clauses) {
    for (int v : c) out << v + 1 << " ";
    out << "0\n";
  }
  return out.str();
}

bool nae_satisfies(const Mnae3SatInstance& sat, const std::vector<bool>& value) {
  for (const auto& c : sat.clauses) {
    bool any_true = false, any_false = false;
    for (int v : c) (value[v] ? any_true : any_false) = true;
    if (!(any_true && any_false)) return false;
  }
  return true;
}

std::optional<std::vector<bool>> nae_brute_force(const Mnae3SatInstance& sat) {
  if (sat.num_vars > 30) throw Error(ErrorKind::kTooLarge, "too many variables to enumerate");
  std::vector<bool> value(sat.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sat.num_vars); ++mask) {
    for (int v = 0; v < sat.num_vars; ++v) value[v] = (mask >> v) & 1;
    if (nae_satisfies(sat, value)) return value;
  }
  return std::nullopt;
}

double gap_constant(double theta_max, double theta_min) {
  if (!(theta_min >= 0.0 && theta_min <= theta_max && theta_max < 360.0)) {
    throw Error(ErrorKind::kDomainError, "gap_constant needs 0 <= theta_min <= theta_max < 360");
  }
  return (360.0 - theta_max + theta_min) / (360.0 - theta_max);
}

}  // namespace msc::hardness
