#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "msc/exact.hpp"

namespace msc::exact {
namespace {

constexpr double kSameDirection = 1e-12;

// One way to sweep a vertex: an ordered list of direction groups.
struct Sweep {
  int cone = 0;
  Rotation rot = Rotation::kCCW;
  std::vector<std::vector<int>> groups;  // all edges, sweep order
  std::vector<double> steps;             // angular distance between groups
};

struct Arc {
  int from, to;
};

struct VertexModel {
  int vertex = -1;
  std::vector<Sweep> sweeps;
  // Distinct real-edge chains; each class lists member sweep indices.
  std::vector<std::vector<int>> classes;
  std::vector<std::vector<Arc>> class_arcs;
};

VertexModel model_vertex(const Instance& inst, int v, const std::vector<bool>& real) {
  VertexModel vm;
  vm.vertex = v;
  auto cones = lambda_cones(inst, v);
  std::vector<int> order = sorted_by_direction(inst, v);
  std::vector<double> dirs;
  for (int e : order) dirs.push_back(direction(inst, v, e));
  for (int c = 0; c < static_cast<int>(cones.size()); ++c) {
    int first = cones[c].bounding_pair->first;
    size_t s = std::find(order.begin(), order.end(), first) - order.begin();
    // CCW sweep from `first`.
    std::vector<int> seq;
    std::vector<double> d;
    for (size_t i = 0; i < order.size(); ++i) {
      seq.push_back(order[(s + i) % order.size()]);
      d.push_back(dirs[(s + i) % order.size()]);
    }
    for (Rotation rot : {Rotation::kCCW, Rotation::kCW}) {
      Sweep sw;
      sw.cone = c;
      sw.rot = rot;
      std::vector<int> es = seq;
      std::vector<double> ds = d;
      if (rot == Rotation::kCW) {
        std::reverse(es.begin(), es.end());
        std::reverse(ds.begin(), ds.end());
      }
      for (size_t i = 0; i < es.size(); ++i) {
        double step = i == 0 ? 0.0
                              : (rot == Rotation::kCCW ? ccw_delta(ds[i - 1], ds[i])
                                                       : ccw_delta(ds[i], ds[i - 1]));
        if (i > 0 && step <= kSameDirection) {
          sw.groups.back().push_back(es[i]);
        } else {
          if (i > 0) sw.steps.push_back(step);
          sw.groups.push_back({es[i]});
        }
      }
      vm.sweeps.push_back(std::move(sw));
    }
  }
  // Chains restricted to real edges decide the cross-vertex arcs.
  std::map<std::vector<std::vector<int>>, int> seen;
  for (int i = 0; i < static_cast<int>(vm.sweeps.size()); ++i) {
    std::vector<std::vector<int>> chain;
    for (const auto& g : vm.sweeps[i].groups) {
      std::vector<int> r;
      for (int e : g) {
        if (real[e]) r.push_back(e);
      }
      std::sort(r.begin(), r.end());
      if (!r.empty()) chain.push_back(std::move(r));
    }
    auto [it, fresh] = seen.emplace(chain, static_cast<int>(vm.classes.size()));
    if (fresh) {
      vm.classes.push_back({});
      std::vector<Arc> arcs;
      for (size_t g = 1; g < chain.size(); ++g) {
        for (int a : chain[g - 1]) {
          for (int b : chain[g]) arcs.push_back({a, b});
        }
      }
      vm.class_arcs.push_back(std::move(arcs));
    }
    vm.classes[it->second].push_back(i);
  }
  return vm;
}

// Incremental cycle detection over a DAG with a maintained topological order
// (Pearce and Kelly). Arcs are removed in LIFO order.
class DynamicDag {
 public:
  explicit DynamicDag(int n) : ord_(n), out_(n), in_(n), mark_(n, 0), parent_(n) {
    std::iota(ord_.begin(), ord_.end(), 0);
  }

  // Adds the arc, or returns false and fills `cycle` with the ids of the
  // arcs on a cycle closed by it (the new arc included).
  bool add(int a, int b, int id, std::vector<int>& cycle) {
    const int lb = ord_[b], ub = ord_[a];
    if (ub < lb) {
      push(a, b, id);
      return true;
    }
    ++stamp_;
    fwd_.clear();
    if (a == b || forward(b, a, ub)) {
      cycle.clear();
      cycle.push_back(id);
      for (int x = a; x != b; x = parent_[x].first) cycle.push_back(parent_[x].second);
      return false;
    }
    ++stamp_;
    bwd_.clear();
    backward(a, lb);
    reorder();
    push(a, b, id);
    return true;
  }

  void pop(int a, int b) {
    out_[a].pop_back();
    in_[b].pop_back();
  }

 private:
  void push(int a, int b, int id) {
    out_[a].push_back({b, id});
    in_[b].push_back({a, id});
  }

  bool forward(int start, int target, int ub) {
    std::vector<int> stack{start};
    mark_[start] = stamp_;
    fwd_.push_back(start);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [y, id] : out_[x]) {
        if (mark_[y] == stamp_) continue;
        if (y == target) {
          parent_[y] = {x, id};
          return true;
        }
        if (ord_[y] < ub) {
          mark_[y] = stamp_;
          parent_[y] = {x, id};
          fwd_.push_back(y);
          stack.push_back(y);
        }
      }
    }
    return false;
  }

  void backward(int start, int lb) {
    std::vector<int> stack{start};
    mark_[start] = stamp_;
    bwd_.push_back(start);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [y, id] : in_[x]) {
        if (mark_[y] != stamp_ && ord_[y] > lb) {
          mark_[y] = stamp_;
          bwd_.push_back(y);
          stack.push_back(y);
        }
      }
    }
  }

  void reorder() {
    auto by_ord = [&](int x, int y) { return ord_[x] < ord_[y]; };
    std::sort(fwd_.begin(), fwd_.end(), by_ord);
    std::sort(bwd_.begin(), bwd_.end(), by_ord);
    std::vector<int> slots;
    for (int x : bwd_) slots.push_back(ord_[x]);
    for (int x : fwd_) slots.push_back(ord_[x]);
    std::sort(slots.begin(), slots.end());
    size_t i = 0;
    for (int x : bwd_) ord_[x] = slots[i++];
    for (int x : fwd_) ord_[x] = slots[i++];
  }

  std::vector<int> ord_;
  std::vector<std::vector<std::pair<int, int>>> out_, in_;
  std::vector<unsigned> mark_;
  unsigned stamp_ = 0;
  std::vector<int> fwd_, bwd_;
  std::vector<std::pair<int, int>> parent_;
};

// Literals: 2*var for "var true", 2*var+1 for "var false".
inline int neg(int lit) { return lit ^ 1; }
inline int var_of(int lit) { return lit >> 1; }

class Solver {
 public:
  Solver(int num_edges, const std::vector<VertexModel>& models,
         const std::vector<int>& choice, std::uint64_t max_conflicts)
      : models_(models), dag_(num_edges), max_conflicts_(max_conflicts) {
    for (int mi : choice) {
      int first = static_cast<int>(owner_.size());
      for (int c = 0; c < static_cast<int>(models_[mi].classes.size()); ++c) {
        owner_.push_back({mi, c});
      }
      var_range_.push_back({first, static_cast<int>(owner_.size())});
    }
    const int nv = static_cast<int>(owner_.size());
    value_.assign(nv, kUnset);
    level_.assign(nv, 0);
    reason_.assign(nv, -1);
    activity_.assign(nv, 0.0);
    seen_.assign(nv, 0);
    watches_.assign(2 * nv, {});
    allowed_.assign(nv, true);
  }

  void disallow(int var) { allowed_[var] = false; }
  std::pair<int, int> range(int i) const { return var_range_[i]; }
  std::pair<int, int> owner(int var) const { return owner_[var]; }

  // Arcs fixed regardless of choices; false if already cyclic.
  bool add_fixed(const std::vector<Arc>& arcs) {
    std::vector<int> cycle;
    for (const Arc& a : arcs) {
      if (!dag_.add(a.from, a.to, -1, cycle)) return false;
      fixed_.push_back(a);
    }
    return true;
  }

  bool solve() {
    for (auto [lo, hi] : var_range_) {
      std::vector<int> c;
      for (int x = lo; x < hi; ++x) {
        if (allowed_[x]) c.push_back(2 * x);
      }
      if (c.empty()) return false;
      if (!add_clause(c)) return false;
      for (int x = lo; x < hi; ++x) {
        if (!allowed_[x]) {
          if (!add_clause({2 * x + 1})) return false;
          continue;
        }
        for (int y = x + 1; y < hi; ++y) {
          if (allowed_[y] && !add_clause({2 * x + 1, 2 * y + 1})) return false;
        }
      }
    }
    std::uint64_t restart_at = 100;
    std::uint64_t since_restart = 0;
    while (true) {
      int confl = propagate();
      if (confl >= 0) {
        ++conflicts_;
        ++since_restart;
        if (decision_level() == 0) return false;
        if (conflicts_ > max_conflicts_) {
          throw Error(ErrorKind::kBudgetExhausted, "lambda-cover search exceeded its conflict budget");
        }
        std::vector<int> learnt;
        int back = analyze(confl, learnt);
        backtrack(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = static_cast<int>(clauses_.size());
          clauses_.push_back(learnt);
          watch(ci);
          enqueue(learnt[0], ci);
        }
        decay();
      } else {
        if (since_restart >= restart_at) {
          since_restart = 0;
          restart_at = restart_at * 3 / 2;
          backtrack(0);
          continue;
        }
        int next = pick();
        if (next < 0) return true;
        ++decisions_;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(2 * next, -1);
      }
    }
  }

  bool is_true(int var) const { return value_[var] == kTrue; }
  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }

 private:
  static constexpr signed char kUnset = 0, kTrue = 1, kFalse = -1;

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  signed char lit_value(int lit) const {
    signed char v = value_[var_of(lit)];
    if (v == kUnset) return kUnset;
    return (lit & 1) ? static_cast<signed char>(-v) : v;
  }

  bool add_clause(std::vector<int> c) {
    if (c.size() == 1) {
      if (lit_value(c[0]) == kFalse) return false;
      if (lit_value(c[0]) == kUnset) enqueue(c[0], -1);
      return true;
    }
    int ci = static_cast<int>(clauses_.size());
    clauses_.push_back(std::move(c));
    watch(ci);
    return true;
  }

  void watch(int ci) {
    watches_[neg(clauses_[ci][0])].push_back(ci);
    watches_[neg(clauses_[ci][1])].push_back(ci);
  }

  void enqueue(int lit, int reason) {
    int v = var_of(lit);
    value_[v] = (lit & 1) ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  // Returns a conflicting clause index or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      if (!(lit & 1)) {
        int confl = theory(var_of(lit));
        if (confl >= 0) return confl;
      }
      // Clauses watching ¬lit may have lost their watch.
      auto& ws = watches_[lit];
      size_t keep = 0;
      for (size_t i = 0; i < ws.size(); ++i) {
        int ci = ws[i];
        auto& c = clauses_[ci];
        if (c[0] == neg(lit)) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == kTrue) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[neg(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (lit_value(c[0]) == kFalse) {
          for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
          ws.resize(keep);
          qhead_ = trail_.size();
          return ci;
        }
        enqueue(c[0], ci);
      }
      ws.resize(keep);
    }
    return -1;
  }

  // Adds the arcs of a chosen class; on a cycle, learns the clause forbidding
  // the combination of choices that closed it.
  int theory(int var) {
    auto [mi, cls] = owner_[var];
    std::vector<int> cycle;
    for (const Arc& a : models_[mi].class_arcs[cls]) {
      int id = static_cast<int>(arcs_.size());
      if (!dag_.add(a.from, a.to, id, cycle)) {
        std::vector<int> lits;
        lits.push_back(2 * var + 1);
        for (int arc_id : cycle) {
          if (arc_id < 0 || arc_id == id) continue;
          int ov = arc_owner_[arc_id];
          if (ov != var) lits.push_back(2 * ov + 1);
        }
        std::sort(lits.begin() + 1, lits.end());
        lits.erase(std::unique(lits.begin() + 1, lits.end()), lits.end());
        // Put the highest-level literals first so the watches are sound.
        std::stable_sort(lits.begin(), lits.end(), [&](int x, int y) {
          return level_[var_of(x)] > level_[var_of(y)];
        });
        int ci = static_cast<int>(clauses_.size());
        clauses_.push_back(lits);
        if (lits.size() >= 2) watch(ci);
        return ci;
      }
      arcs_.push_back(a);
      arc_owner_.push_back(var);
    }
    return -1;
  }

  int analyze(int confl, std::vector<int>& learnt) {
    learnt.assign(1, -1);
    int counter = 0;
    int p = -1;
    size_t index = trail_.size();
    std::vector<int> touched;
    do {
      const auto& c = clauses_[confl];
      for (int q : c) {
        if (p >= 0 && q == p) continue;
        int v = var_of(q);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        touched.push_back(v);
        bump(v);
        if (level_[v] == decision_level()) {
          ++counter;
        } else {
          learnt.push_back(q);
        }
      }
      do {
        --index;
      } while (!seen_[var_of(trail_[index])]);
      p = trail_[index];
      confl = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --counter;
    } while (counter > 0);
    learnt[0] = neg(p);
    for (int v : touched) seen_[v] = 0;
    int back = 0;
    if (learnt.size() > 1) {
      size_t best = 1;
      for (size_t i = 2; i < learnt.size(); ++i) {
        if (level_[var_of(learnt[i])] > level_[var_of(learnt[best])]) best = i;
      }
      std::swap(learnt[1], learnt[best]);
      back = level_[var_of(learnt[1])];
    }
    return back;
  }

  void backtrack(int level) {
    if (decision_level() <= level) return;
    size_t lim = trail_lim_[level];
    for (size_t i = trail_.size(); i-- > lim;) {
      int v = var_of(trail_[i]);
      value_[v] = kUnset;
      reason_[v] = -1;
    }
    trail_.resize(lim);
    trail_lim_.resize(level);
    qhead_ = std::min(qhead_, lim);
    while (!arc_owner_.empty() && value_[arc_owner_.back()] == kUnset) {
      dag_.pop(arcs_.back().from, arcs_.back().to);
      arcs_.pop_back();
      arc_owner_.pop_back();
    }
  }

  int pick() const {
    int best = -1;
    for (int v = 0; v < static_cast<int>(value_.size()); ++v) {
      if (value_[v] == kUnset && (best < 0 || activity_[v] > activity_[best])) best = v;
    }
    return best;
  }

  void bump(int v) {
    activity_[v] += inc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      inc_ *= 1e-100;
    }
  }
  void decay() { inc_ /= 0.95; }

  const std::vector<VertexModel>& models_;
  DynamicDag dag_;
  std::uint64_t max_conflicts_;
  std::vector<std::pair<int, int>> owner_;      // var -> (model, class)
  std::vector<std::pair<int, int>> var_range_;  // choice vertex -> vars
  std::vector<signed char> value_;
  std::vector<int> level_, reason_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<bool> allowed_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> trail_, trail_lim_;
  size_t qhead_ = 0;
  std::vector<Arc> arcs_, fixed_;
  std::vector<int> arc_owner_;
  double inc_ = 1.0;
  std::uint64_t conflicts_ = 0, decisions_ = 0;
};

ScanCover longest_path_times(const Instance& inst, const std::vector<VertexModel>& models,
                             const std::vector<int>& chosen_sweep) {
  const int m = inst.num_edges();
  std::vector<std::vector<std::pair<int, double>>> out(m);
  std::vector<int> indeg(m, 0);
  for (size_t mi = 0; mi < models.size(); ++mi) {
    const Sweep& sw = models[mi].sweeps[chosen_sweep[mi]];
    for (size_t g = 1; g < sw.groups.size(); ++g) {
      for (int a : sw.groups[g - 1]) {
        for (int b : sw.groups[g]) {
          out[a].push_back({b, sw.steps[g - 1]});
          ++indeg[b];
        }
      }
    }
  }
  ScanCover sc;
  sc.times.assign(m, 0.0);
  std::queue<int> q;
  for (int e = 0; e < m; ++e) {
    if (indeg[e] == 0) q.push(e);
  }
  int done = 0;
  while (!q.empty()) {
    int e = q.front();
    q.pop();
    ++done;
    for (auto [f, w] : out[e]) {
      sc.times[f] = std::max(sc.times[f], sc.times[e] + w);
      if (--indeg[f] == 0) q.push(f);
    }
  }
  if (done != m) {
    throw Error(ErrorKind::kValidation, "internal: chosen sweeps are cyclic");
  }
  return sc;
}

}  // namespace

LambdaCoverResult lambda_cover_exists(const Instance& inst, const LambdaCoverOptions& opt) {
  const int n = inst.num_vertices();
  const int m = inst.num_edges();
  std::vector<bool> real(m, false);
  for (int e = 0; e < m; ++e) {
    real[e] = inst.degree(inst.edge(e).u) >= 2 && inst.degree(inst.edge(e).v) >= 2;
  }
  std::map<int, Rotation> forced;
  for (auto [v, r] : opt.forced) {
    if (v < 0 || v >= n) throw Error(ErrorKind::kInvalidArgument, "forced vertex out of range");
    auto [it, fresh] = forced.emplace(v, r);
    if (!fresh && it->second != r) {
      LambdaCoverResult none;
      return none;
    }
  }

  std::vector<VertexModel> models;
  std::vector<int> model_of(n, -1);
  for (int v = 0; v < n; ++v) {
    if (inst.degree(v) < 2) continue;
    model_of[v] = static_cast<int>(models.size());
    models.push_back(model_vertex(inst, v, real));
  }

  // A class is usable if some member sweep respects the forced direction.
  auto usable = [&](const VertexModel& vm, int cls) {
    auto it = forced.find(vm.vertex);
    if (it == forced.end()) return true;
    for (int s : vm.classes[cls]) {
      if (vm.sweeps[s].rot == it->second) return true;
    }
    return false;
  };

  std::vector<int> choice;
  std::vector<Arc> fixed;
  std::vector<int> fixed_class(models.size(), -1);
  for (int mi = 0; mi < static_cast<int>(models.size()); ++mi) {
    const VertexModel& vm = models[mi];
    std::vector<int> ok;
    for (int c = 0; c < static_cast<int>(vm.classes.size()); ++c) {
      if (usable(vm, c)) ok.push_back(c);
    }
    if (ok.empty()) return {};
    if (ok.size() == 1) {
      fixed_class[mi] = ok[0];
      fixed.insert(fixed.end(), vm.class_arcs[ok[0]].begin(), vm.class_arcs[ok[0]].end());
    } else {
      choice.push_back(mi);
    }
  }

  Solver solver(m, models, choice, opt.max_conflicts);
  for (size_t i = 0; i < choice.size(); ++i) {
    const VertexModel& vm = models[choice[i]];
    auto [lo, hi] = solver.range(static_cast<int>(i));
    bool cw_only = opt.break_symmetry && forced.empty() && i == 0;
    for (int x = lo; x < hi; ++x) {
      int cls = solver.owner(x).second;
      bool ok = usable(vm, cls);
      if (cw_only) {
        bool has_cw = false;
        for (int s : vm.classes[cls]) has_cw |= vm.sweeps[s].rot == Rotation::kCW;
        ok = ok && has_cw;
      }
      if (!ok) solver.disallow(x);
    }
  }

  LambdaCoverResult res;
  res.choice_vertices = static_cast<int>(choice.size());
  if (!solver.add_fixed(fixed)) return res;
  bool sat = solver.solve();
  res.conflicts = solver.conflicts();
  res.decisions = solver.decisions();
  if (!sat) return res;

  // Pick a concrete sweep per vertex, honoring forced directions.
  std::vector<int> chosen_class = fixed_class;
  for (size_t i = 0; i < choice.size(); ++i) {
    auto [lo, hi] = solver.range(static_cast<int>(i));
    for (int x = lo; x < hi; ++x) {
      if (solver.is_true(x)) chosen_class[choice[i]] = solver.owner(x).second;
    }
  }
  std::vector<int> chosen_sweep(models.size(), 0);
  for (size_t mi = 0; mi < models.size(); ++mi) {
    const VertexModel& vm = models[mi];
    const auto& members = vm.classes[chosen_class[mi]];
    int pick = members[0];
    auto it = forced.find(vm.vertex);
    for (int s : members) {
      if (it == forced.end() || vm.sweeps[s].rot == it->second) {
        pick = s;
        break;
      }
    }
    chosen_sweep[mi] = pick;
    res.assignment[vm.vertex] = vm.sweeps[pick].rot;
  }
  res.exists = true;
  res.schedule = longest_path_times(inst, models, chosen_sweep);
  return res;
}

}  // namespace msc::exact
