#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "msc/exact.hpp"

namespace msc::exact {
namespace {

// Dense α matrix in extended precision; -1 marks non-adjacent pairs.
std::vector<long double> alpha_matrix(const Instance& inst) {
  const int m = inst.num_edges();
  std::vector<long double> a(static_cast<size_t>(m) * m, -1.0L);
  for (int e = 0; e < m; ++e) {
    for (int f = 0; f < m; ++f) {
      if (inst.shared_vertex(e, f) >= 0) a[e * m + f] = angle_between_ext(inst, e, f);
    }
  }
  return a;
}

void time_sequence(const std::vector<long double>& alpha, int m, std::span<const int> order,
                   std::vector<long double>& t) {
  for (size_t i = 0; i < order.size(); ++i) {
    int e = order[i];
    long double best = 0.0L;
    for (size_t j = 0; j < i; ++j) {
      long double a = alpha[e * m + order[j]];
      if (a >= 0.0L) best = std::max(best, t[order[j]] + a);
    }
    t[e] = best;
  }
}

}  // namespace

ScanCover sequence_schedule(const Instance& inst, std::span<const int> order) {
  const int m = inst.num_edges();
  std::vector<long double> t(m, 0.0L);
  time_sequence(alpha_matrix(inst), m, order, t);
  ScanCover sc;
  sc.times.assign(t.begin(), t.end());
  return sc;
}

SolveResult brute_force(const Instance& inst, Objective obj, const BruteForceOptions& opt) {
  const int m = inst.num_edges();
  const int n = inst.num_vertices();
  if (m > opt.max_edges && !opt.override_cap) {
    throw Error(ErrorKind::kTooLarge, "brute force is capped at " +
                                          std::to_string(opt.max_edges) + " edges");
  }
  auto start = std::chrono::steady_clock::now();
  std::vector<long double> alpha = alpha_matrix(inst);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long double> t(m, 0.0L), rot(n, 0.0L);
  std::vector<int> last(n, -1);

  SolveResult res;
  res.objective = obj;
  long double best = std::numeric_limits<long double>::infinity();
  bool complete = true;
  std::uint64_t count = 0;
  res.sequence = perm;
  do {
    if (count >= opt.max_sequences ||
        ((count & 1023) == 0 &&
         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
             opt.max_seconds)) {
      complete = false;
      break;
    }
    ++count;
    time_sequence(alpha, m, perm, t);
    std::fill(rot.begin(), rot.end(), 0.0L);
    std::fill(last.begin(), last.end(), -1);
    long double ms = 0.0L;
    for (int e : perm) {
      ms = std::max(ms, t[e]);
      for (int v : {inst.edge(e).u, inst.edge(e).v}) {
        if (last[v] >= 0) rot[v] += alpha[e * m + last[v]];
        last[v] = e;
      }
    }
    long double value = 0.0L;
    if (obj == Objective::kMakespan) {
      value = ms;
    } else if (obj == Objective::kTotalEnergy) {
      for (long double r : rot) value += r;
    } else {
      for (long double r : rot) value = std::max(value, r);
    }
    if (value < best) {
      best = value;
      res.sequence = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  res.nodes_explored = count;
  res.proven_optimal = complete;
  res.schedule = sequence_schedule(inst, res.sequence);
  res.value = evaluate(inst, res.schedule).value(obj);
  res.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace msc::exact
