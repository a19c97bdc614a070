#include "msc/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

namespace msc::heuristics {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_permutation(const Instance& inst, std::span<const int> seq) {
  const int m = inst.num_edges();
  if (static_cast<int>(seq.size()) != m) {
    throw Error(ErrorKind::kNotPermutation, "sequence has " + std::to_string(seq.size()) +
                                                " entries for " + std::to_string(m) + " edges");
  }
  std::vector<bool> seen(m, false);
  for (int e : seq) {
    if (e < 0 || e >= m || seen[e]) {
      throw Error(ErrorKind::kNotPermutation, "sequence repeats or misses edge " +
                                                  std::to_string(e));
    }
    seen[e] = true;
  }
}

std::vector<int> identity(int m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void shuffle(std::vector<int>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

Result finish(const Instance& inst, Objective obj, std::vector<int> seq) {
  Result r;
  r.schedule = decode_and_time(inst, seq);
  r.value = evaluate(inst, r.schedule).value(obj);
  r.sequence = std::move(seq);
  return r;
}

}  // namespace

SequenceCost::SequenceCost(const Instance& inst)
    : inst_(&inst),
      table_(inst),
      time_(inst.num_edges(), 0.0),
      placed_(inst.num_edges(), false),
      last_(inst.num_vertices(), -1),
      rot_(inst.num_vertices(), 0.0) {}

void SequenceCost::reset() {
  std::fill(placed_.begin(), placed_.end(), false);
  std::fill(last_.begin(), last_.end(), -1);
  std::fill(rot_.begin(), rot_.end(), 0.0);
  ms_ = te_ = be_ = 0.0;
}

SequenceCost::Step SequenceCost::step(int e) const {
  const Edge& ed = inst_->edge(e);
  Step s{0.0, rot_[ed.u], rot_[ed.v]};
  for (const auto& nb : table_.neighbors(e)) {
    if (!placed_[nb.edge]) continue;
    s.time = std::max(s.time, time_[nb.edge] + nb.alpha);
    if (last_[nb.vertex] == nb.edge) (nb.vertex == ed.u ? s.rot_u : s.rot_v) += nb.alpha;
  }
  return s;
}

double SequenceCost::peek(int e, Objective obj) const {
  Step s = step(e);
  const Edge& ed = inst_->edge(e);
  switch (obj) {
    case Objective::kMakespan:
      return std::max(ms_, s.time);
    case Objective::kTotalEnergy:
      return te_ + (s.rot_u - rot_[ed.u]) + (s.rot_v - rot_[ed.v]);
    case Objective::kBottleneckEnergy:
      return std::max({be_, s.rot_u, s.rot_v});
  }
  return 0.0;
}

void SequenceCost::push(int e) {
  Step s = step(e);
  const Edge& ed = inst_->edge(e);
  te_ += (s.rot_u - rot_[ed.u]) + (s.rot_v - rot_[ed.v]);
  rot_[ed.u] = s.rot_u;
  rot_[ed.v] = s.rot_v;
  be_ = std::max({be_, s.rot_u, s.rot_v});
  ms_ = std::max(ms_, s.time);
  time_[e] = s.time;
  placed_[e] = true;
  last_[ed.u] = last_[ed.v] = e;
}

double SequenceCost::value(std::span<const int> sequence, Objective obj) {
  reset();
  for (int e : sequence) push(e);
  switch (obj) {
    case Objective::kMakespan:
      return ms_;
    case Objective::kTotalEnergy:
      return te_;
    case Objective::kBottleneckEnergy:
      return be_;
  }
  return 0.0;
}

ScanCover decode_and_time(const Instance& inst, std::span<const int> sequence) {
  check_permutation(inst, sequence);
  AngleTable table(inst);
  ScanCover sc;
  sc.times.assign(inst.num_edges(), 0.0);
  std::vector<bool> placed(inst.num_edges(), false);
  for (int e : sequence) {
    double t = 0.0;
    for (const auto& nb : table.neighbors(e)) {
      if (placed[nb.edge]) t = std::max(t, sc.times[nb.edge] + nb.alpha);
    }
    sc.times[e] = t;
    placed[e] = true;
  }
  return sc;
}

std::vector<int> sequence_of(const ScanCover& sc) {
  std::vector<int> seq = identity(static_cast<int>(sc.times.size()));
  std::stable_sort(seq.begin(), seq.end(),
                   [&](int a, int b) { return sc.times[a] < sc.times[b]; });
  return seq;
}

Result greedy(const Instance& inst, Objective obj, std::span<const int> initial_order) {
  check_permutation(inst, initial_order);
  std::vector<int> pool(initial_order.begin(), initial_order.end());
  SequenceCost cost(inst);
  std::vector<int> seq;
  seq.reserve(pool.size());
  while (!pool.empty()) {
    size_t pick = 0;
    double best = cost.peek(pool[0], obj);
    for (size_t i = 1; i < pool.size(); ++i) {
      double v = cost.peek(pool[i], obj);
      if (v < best) best = v, pick = i;
    }
    cost.push(pool[pick]);
    seq.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  return finish(inst, obj, std::move(seq));
}

Result greedy(const Instance& inst, Objective obj, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> order = identity(inst.num_edges());
  shuffle(order, rng);
  return greedy(inst, obj, order);
}

Result ils(const Instance& inst, Objective obj, const ScanCover& start, const IlsOptions& opt) {
  auto t0 = Clock::now();
  const double start_value = evaluate(inst, start).value(obj);
  std::vector<int> seq = sequence_of(start);
  SequenceCost cost(inst);
  double cur = cost.value(seq, obj);
  Result r;
  r.trace.push_back({0, cur, cur, 0.0});
  const size_t m = seq.size();
  bool out_of_time = false;
  while (r.iterations < opt.max_iterations && !out_of_time) {
    double best = cur;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i + 1 < m && !out_of_time; ++i) {
      for (size_t j = i + 1; j < m; ++j) {
        std::swap(seq[i], seq[j]);
        double v = cost.value(seq, obj);
        std::swap(seq[i], seq[j]);
        if (v < best - 1e-12) best = v, bi = i, bj = j;
      }
      out_of_time = seconds_since(t0) > opt.max_seconds;
    }
    if (bi == bj) break;
    std::swap(seq[bi], seq[bj]);
    cur = best;
    ++r.iterations;
    r.trace.push_back({r.iterations, cur, cur, 0.0});
  }
  Result out = finish(inst, obj, std::move(seq));
  if (out.value > start_value + 1e-9) {
    out.schedule = start;
    out.sequence = sequence_of(start);
    out.value = start_value;
  }
  out.iterations = r.iterations;
  out.trace = std::move(r.trace);
  return out;
}

Result ils(const Instance& inst, Objective obj, const IlsOptions& opt) {
  return ils(inst, obj, greedy(inst, obj, identity(inst.num_edges())).schedule, opt);
}

double boltzmann_acceptance(double delta, double temperature) {
  if (delta <= 0.0) return 1.0;
  if (temperature <= 0.0) return 0.0;
  return std::exp(-delta / temperature);
}

namespace {

Result sa_chain(const Instance& inst, Objective obj, const SaParams& p, std::uint64_t seed,
                const std::vector<int>& start) {
  auto t0 = Clock::now();
  Rng rng(seed);
  SequenceCost cost(inst);
  std::vector<int> seq = start, best_seq = start;
  double cur = cost.value(seq, obj), best = cur;
  double temp = p.initial_temperature > 0.0 ? p.initial_temperature
                                            : AngleTable(inst).mean_positive_alpha();
  const std::uint64_t m = seq.size();
  Result r;
  std::uint64_t stall = 0;
  for (std::uint64_t step = 0; step < p.max_steps && m >= 2; ++step) {
    if ((step & 255) == 0 && seconds_since(t0) > p.max_seconds) break;
    std::uint64_t i = rng.below(m), j = rng.below(m - 1);
    if (j >= i) ++j;
    std::swap(seq[i], seq[j]);
    double v = cost.value(seq, obj);
    double delta = v - cur;
    bool accept = delta <= 0.0 || rng.uniform01() < boltzmann_acceptance(delta, temp);
    if (accept) {
      cur = v;
    } else {
      std::swap(seq[i], seq[j]);
    }
    if (accept && v < best - 1e-12) {
      best = v;
      best_seq = seq;
      stall = 0;
    } else {
      ++stall;
    }
    temp *= p.cooling;
    if (stall >= p.reheat_after) {
      temp *= p.reheat_factor;
      stall = 0;
    }
    ++r.iterations;
    if (p.trace_every && r.iterations % p.trace_every == 0) {
      r.trace.push_back({r.iterations, best, cur, temp});
    }
  }
  Result out = finish(inst, obj, std::move(best_seq));
  out.iterations = r.iterations;
  out.trace = std::move(r.trace);
  return out;
}

}  // namespace

Result sa(const Instance& inst, Objective obj, const SaParams& params) {
  if (params.cooling <= 0.0 || params.cooling >= 1.0 || params.reheat_factor < 1.0 ||
      params.chains < 1) {
    throw Error(ErrorKind::kInvalidArgument, "invalid SA parameters");
  }
  std::vector<int> start = greedy(inst, obj, identity(inst.num_edges())).sequence;
  std::vector<Result> results(params.chains);
  if (params.chains == 1) {
    results[0] = sa_chain(inst, obj, params, derive_seed(params.seed, 0), start);
  } else {
    std::vector<std::thread> threads;
    for (int c = 0; c < params.chains; ++c) {
      threads.emplace_back([&, c] {
        results[c] = sa_chain(inst, obj, params, derive_seed(params.seed, c), start);
      });
    }
    for (auto& t : threads) t.join();
  }
  size_t win = 0;
  std::uint64_t total = 0;
  for (size_t c = 0; c < results.size(); ++c) {
    total += results[c].iterations;
    if (results[c].value < results[win].value) win = c;
  }
  Result out = std::move(results[win]);
  out.iterations = total;
  return out;
}

std::vector<int> RandomKeyGenome::decode() const {
  std::vector<int> seq = identity(static_cast<int>(key.size()));
  std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) { return key[a] < key[b]; });
  return seq;
}

RandomKeyGenome uniform_crossover(const RandomKeyGenome& a, const RandomKeyGenome& b, Rng& rng) {
  RandomKeyGenome c;
  c.key.resize(a.key.size());
  for (size_t i = 0; i < a.key.size(); ++i) c.key[i] = rng.bernoulli(0.5) ? a.key[i] : b.key[i];
  return c;
}

void repair_duplicates(RandomKeyGenome& g, Rng& rng) {
  std::vector<int> order = g.decode();
  const size_t m = order.size();
  for (size_t i = 0; i < m;) {
    size_t j = i + 1;
    while (j < m && g.key[order[j]] == g.key[order[i]]) ++j;
    if (j - i > 1) {
      double lo = g.key[order[i]];
      double hi = j < m ? g.key[order[j]] : 1.0;
      std::vector<double> fresh(j - i - 1);
      for (double& f : fresh) f = lo + (hi - lo) * rng.uniform01();
      std::sort(fresh.begin(), fresh.end());
      for (size_t k = 0; k < fresh.size(); ++k) g.key[order[i + 1 + k]] = fresh[k];
    }
    i = j;
  }
  bool strict = true;
  for (size_t k = 1; k < m; ++k) strict = strict && g.key[order[k - 1]] < g.key[order[k]];
  if (!strict) {
    for (size_t k = 0; k < m; ++k) g.key[order[k]] = (k + 0.5) / static_cast<double>(m);
  }
}

namespace {

// Keys for `seq`, reusing the sorted values of `pool`.
RandomKeyGenome rekey(const std::vector<int>& seq, std::vector<double> pool) {
  std::sort(pool.begin(), pool.end());
  RandomKeyGenome g;
  g.key.resize(seq.size());
  for (size_t k = 0; k < seq.size(); ++k) g.key[seq[k]] = pool[k];
  return g;
}

int pick_weighted(const std::vector<double>& cumulative, Rng& rng) {
  double x = rng.uniform01() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  return std::min<int>(it - cumulative.begin(), cumulative.size() - 1);
}

}  // namespace

Result ga(const Instance& inst, Objective obj, const GaParams& p) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (p.population < 1 || !in_unit(p.elite_fraction) || !in_unit(p.mutation_fraction) ||
      !in_unit(p.greedy_mutation_prob) || !in_unit(p.per_edge_mutation_prob)) {
    throw Error(ErrorKind::kInvalidArgument, "invalid GA parameters");
  }
  auto t0 = Clock::now();
  const int m = inst.num_edges();
  const int P = p.population;
  Rng rng(p.seed);
  SequenceCost cost(inst);

  std::vector<RandomKeyGenome> pop(P);
  std::vector<double> val(P);
  for (int i = 0; i < P; ++i) {
    std::vector<int> order = identity(m);
    shuffle(order, rng);
    std::vector<double> keys(m);
    for (double& k : keys) k = rng.uniform01();
    pop[i] = rekey(greedy(inst, obj, order).sequence, keys);
    repair_duplicates(pop[i], rng);
    val[i] = cost.value(pop[i].decode(), obj);
  }

  Result r;
  int best_i = static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin());
  std::vector<int> best_seq = pop[best_i].decode();
  double best = val[best_i];
  const int elites = std::clamp(static_cast<int>(std::lround(p.elite_fraction * P)), 1, P);
  int stall = 0;
  for (int gen = 1; gen <= p.max_generations && stall < p.stall_generations; ++gen) {
    if (seconds_since(t0) > p.time_limit) break;
    std::vector<int> rank = identity(P);
    std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) { return val[a] < val[b]; });
    std::vector<double> cumulative(P);
    double acc = 0.0;
    for (int i = 0; i < P; ++i) cumulative[i] = acc += 1.0 / (1.0 + val[i]);

    std::vector<RandomKeyGenome> next;
    next.reserve(P);
    for (int i = 0; i < elites; ++i) next.push_back(pop[rank[i]]);
    while (static_cast<int>(next.size()) < P) {
      int a = pick_weighted(cumulative, rng), b = pick_weighted(cumulative, rng);
      next.push_back(uniform_crossover(pop[a], pop[b], rng));
    }
    std::vector<int> children(P - elites);
    std::iota(children.begin(), children.end(), elites);
    shuffle(children, rng);
    int mutants = std::min(static_cast<int>(std::lround(p.mutation_fraction * P)),
                           static_cast<int>(children.size()));
    for (int k = 0; k < mutants; ++k) {
      RandomKeyGenome& g = next[children[k]];
      if (rng.bernoulli(p.greedy_mutation_prob)) {
        g = rekey(greedy(inst, obj, g.decode()).sequence, g.key);
      } else {
        for (double& key : g.key) {
          if (rng.bernoulli(p.per_edge_mutation_prob)) key = rng.uniform01();
        }
      }
    }
    for (int i = elites; i < P; ++i) repair_duplicates(next[i], rng);
    pop = std::move(next);

    double sum = 0.0;
    bool improved = false;
    for (int i = 0; i < P; ++i) {
      std::vector<int> seq = pop[i].decode();
      val[i] = cost.value(seq, obj);
      sum += val[i];
      if (val[i] < best - 1e-12) {
        best = val[i];
        best_seq = std::move(seq);
        improved = true;
      }
    }
    stall = improved ? 0 : stall + 1;
    r.iterations = gen;
    r.trace.push_back({static_cast<std::uint64_t>(gen), best, sum / P, 0.0});
  }
  Result out = finish(inst, obj, std::move(best_seq));
  out.iterations = r.iterations;
  out.trace = std::move(r.trace);
  return out;
}

}  // namespace msc::heuristics
