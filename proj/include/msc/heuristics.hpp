#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "msc/core.hpp"
#include "msc/random.hpp"

namespace msc::heuristics {

// Earliest-feasible times along a global sequence of all edges.
// Throws NotPermutation.
ScanCover decode_and_time(const Instance& inst, std::span<const int> sequence);

// Edges sorted by time, ties by id.
std::vector<int> sequence_of(const ScanCover& sc);

// Objective of a sequence under earliest-feasible timing, with reusable
// buffers. Also supports growing a prefix one edge at a time.
class SequenceCost {
 public:
  explicit SequenceCost(const Instance& inst);

  double value(std::span<const int> sequence, Objective obj);

  void reset();
  // Objective of the prefix after appending e (without appending).
  double peek(int e, Objective obj) const;
  void push(int e);

 private:
  struct Step {
    double time;
    double rot_u, rot_v;
  };
  Step step(int e) const;

  const Instance* inst_;
  AngleTable table_;
  std::vector<double> time_;
  std::vector<bool> placed_;
  std::vector<int> last_;
  std::vector<double> rot_;
  double ms_ = 0.0, te_ = 0.0, be_ = 0.0;
};

struct TraceEntry {
  std::uint64_t iteration = 0;
  double best = 0.0;
  double current = 0.0;
  double temperature = 0.0;  // SA only
};

struct Result {
  ScanCover schedule;
  std::vector<int> sequence;
  double value = 0.0;
  std::uint64_t iterations = 0;
  std::vector<TraceEntry> trace;
};

// Appends the unscanned edge with the smallest prefix objective; ties go to
// the earliest edge in `initial_order`.
Result greedy(const Instance& inst, Objective obj, std::span<const int> initial_order);
Result greedy(const Instance& inst, Objective obj, std::uint64_t seed);

struct IlsOptions {
  std::uint64_t max_iterations = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
};

// Best strictly improving swap of two sequence positions until none is left.
Result ils(const Instance& inst, Objective obj, const ScanCover& start,
           const IlsOptions& opt = {});
Result ils(const Instance& inst, Objective obj, const IlsOptions& opt = {});

struct SaParams {
  double initial_temperature = 0.0;  // <= 0: mean positive alpha
  double cooling = 0.999;
  std::uint64_t reheat_after = 5000;
  double reheat_factor = 2.0;
  std::uint64_t max_steps = 100'000;
  double max_seconds = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
  int chains = 1;
  std::uint64_t trace_every = 1000;
};

// Probability of accepting a move that changes the value by `delta`.
double boltzmann_acceptance(double delta, double temperature);

Result sa(const Instance& inst, Objective obj, const SaParams& params = {});

struct RandomKeyGenome {
  std::vector<double> key;
  std::vector<int> decode() const;  // ascending key, ties by id
};

struct GaParams {
  int population = 200;
  double elite_fraction = 0.10;
  double mutation_fraction = 0.03;
  double greedy_mutation_prob = 0.60;
  double per_edge_mutation_prob = 0.03;
  int max_generations = 300;
  int stall_generations = 60;
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
};

RandomKeyGenome uniform_crossover(const RandomKeyGenome& a, const RandomKeyGenome& b,
                                  Rng& rng);
// Redraws duplicate keys inside the gap to the next larger key so the
// decoded order does not change.
void repair_duplicates(RandomKeyGenome& g, Rng& rng);

// One trace entry per generation: best-ever and generation mean.
Result ga(const Instance& inst, Objective obj, const GaParams& params = {});

}  // namespace msc::heuristics
