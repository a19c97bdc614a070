#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "msc/exact.hpp"

namespace msc::exact {
namespace {

// The search runs in extended precision, like evaluate, so that near-equal
// optima are told apart the same way brute force tells them apart.
using Real = long double;

Real ccw_ext(Real from, Real to) {
  Real d = std::fmod(to - from, 360.0L);
  if (d < 0.0L) d += 360.0L;
  return d >= 360.0L ? 0.0L : d;
}

Real direction_ext(const Instance& inst, int v, int e) {
  const Point& a = inst.point(v);
  const Point& b = inst.point(inst.other(e, v));
  Real d = std::atan2(static_cast<Real>(b.y - a.y), static_cast<Real>(b.x - a.x)) *
           (180.0L / std::numbers::pi_v<Real>);
  return ccw_ext(0.0L, d);
}

// 360 minus the widest gap between consecutive incident directions.
Real lambda_ext(const Instance& inst, int v) {
  if (inst.degree(v) < 2) return 0.0L;
  std::vector<Real> d;
  for (int e : inst.incident(v)) d.push_back(direction_ext(inst, v, e));
  std::sort(d.begin(), d.end());
  Real gap = d.front() + 360.0L - d.back();
  for (size_t i = 1; i < d.size(); ++i) gap = std::max(gap, d[i] - d[i - 1]);
  return 360.0L - gap;
}

// Minimum rotation that starts facing `from` and visits every direction in
// `dirs` (sorted ascending, all in [0,360)).
Real cover_from(Real from, std::vector<Real>& pts) {
  pts.push_back(from);
  std::sort(pts.begin(), pts.end());
  const size_t k = pts.size();
  Real best = std::numeric_limits<Real>::infinity();
  size_t p = std::find(pts.begin(), pts.end(), from) - pts.begin();
  // Exclude the gap after position i; the covered arc runs CCW from
  // pts[i+1] to pts[i].
  for (size_t i = 0; i < k; ++i) {
    Real a = pts[(i + 1) % k];
    Real b = pts[i];
    Real arc = ccw_ext(a, b);
    Real to_a = ccw_ext(a, pts[p]);
    Real to_b = ccw_ext(pts[p], b);
    best = std::min(best, arc + std::min(to_a, to_b));
  }
  return best;
}

class Search {
 public:
  Search(const Instance& inst, Objective obj, const BnbOptions& opt)
      : inst_(inst), obj_(obj), opt_(opt), table_(inst) {
    const int m = inst.num_edges();
    const int n = inst.num_vertices();
    t_.assign(m, 0.0L);
    placed_.assign(m, false);
    last_.assign(n, -1);
    rot_.assign(n, 0.0L);
    lambda_.assign(n, 0.0L);
    vlb_.assign(n, 0.0L);
    dir_.assign(m, {0.0L, 0.0L});
    alpha_.assign(static_cast<size_t>(m) * m, 0.0L);
    for (int e = 0; e < m; ++e) {
      for (const auto& nb : table_.neighbors(e)) alpha_[e * m + nb.edge] = angle_between_ext(inst, e, nb.edge);
    }
    for (int v = 0; v < n; ++v) {
      lambda_[v] = lambda_ext(inst, v);
      vlb_[v] = lambda_[v];
      te_lb_ += vlb_[v];
    }
    for (int e = 0; e < m; ++e) {
      dir_[e] = {direction_ext(inst, inst.edge(e).u, e), direction_ext(inst, inst.edge(e).v, e)};
    }
    adjacent_.assign(static_cast<size_t>(m) * m, false);
    for (int e = 0; e < m; ++e) {
      for (const auto& nb : table_.neighbors(e)) adjacent_[e * m + nb.edge] = true;
    }
    start_ = std::chrono::steady_clock::now();
  }

  SolveResult run() {
    SolveResult res;
    res.objective = obj_;
    const int m = inst_.num_edges();
    if (opt_.shared_incumbent) best_ = opt_.shared_incumbent->load();
    nodes_ = 0;
    std::vector<int> seq;
    dfs(seq);
    res.nodes_explored = nodes_;
    res.proven_optimal = !aborted_;
    if (best_seq_.size() != static_cast<size_t>(m)) {
      // Budget hit before any leaf, or a shared incumbent already dominated.
      best_seq_.clear();
      for (int e = 0; e < m; ++e) best_seq_.push_back(e);
      if (!aborted_ && opt_.shared_incumbent) res.proven_optimal = false;
    }
    res.sequence = best_seq_;
    res.schedule = sequence_schedule(inst_, best_seq_);
    res.value = evaluate(inst_, res.schedule).value(obj_);
    res.elapsed = elapsed();
    return res;
  }

 private:
  struct Undo {
    Real t_old;
    int last_u, last_v;
    Real rot_u, rot_v, vlb_u, vlb_v, ms, te_lb;
  };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  Real incumbent() const {
    Real b = best_;
    if (opt_.shared_incumbent) b = std::min(b, static_cast<Real>(opt_.shared_incumbent->load()));
    return b;
  }

  // Covers the rounding of Real sums over at most m+1 terms.
  Real prune_slack(Real inc) const {
    return 8.0L * (inst_.num_edges() + 1) * std::numeric_limits<Real>::epsilon() * std::max(1.0L, inc);
  }

  Real vertex_bound(int v) {
    std::vector<Real>& pts = scratch_;
    pts.clear();
    for (int f : inst_.incident(v)) {
      if (!placed_[f]) pts.push_back(inst_.edge(f).u == v ? dir_[f].first : dir_[f].second);
    }
    if (last_[v] < 0) return lambda_[v];
    if (pts.empty()) return rot_[v];
    int l = last_[v];
    Real from = inst_.edge(l).u == v ? dir_[l].first : dir_[l].second;
    return std::max(lambda_[v], rot_[v] + cover_from(from, pts));
  }

  Undo place(int e) {
    const int u = inst_.edge(e).u, v = inst_.edge(e).v;
    Undo un{t_[e], last_[u], last_[v], rot_[u], rot_[v], vlb_[u], vlb_[v], ms_, te_lb_};
    const int m = inst_.num_edges();
    Real te = 0.0L;
    for (const auto& nb : table_.neighbors(e)) {
      if (placed_[nb.edge]) te = std::max(te, t_[nb.edge] + alpha_[e * m + nb.edge]);
    }
    t_[e] = te;
    placed_[e] = true;
    ms_ = std::max(ms_, te);
    for (int w : {u, v}) {
      if (last_[w] >= 0) rot_[w] += angle_at(last_[w], e);
      last_[w] = e;
    }
    for (int w : {u, v}) {
      Real nb = vertex_bound(w);
      te_lb_ += nb - vlb_[w];
      vlb_[w] = nb;
    }
    return un;
  }

  void unplace(int e, const Undo& un) {
    const int u = inst_.edge(e).u, v = inst_.edge(e).v;
    placed_[e] = false;
    t_[e] = un.t_old;
    last_[u] = un.last_u;
    last_[v] = un.last_v;
    rot_[u] = un.rot_u;
    rot_[v] = un.rot_v;
    vlb_[u] = un.vlb_u;
    vlb_[v] = un.vlb_v;
    ms_ = un.ms;
    te_lb_ = un.te_lb;
  }

  Real angle_at(int e, int f) const { return alpha_[e * inst_.num_edges() + f]; }

  Real bound() const {
    const int m = inst_.num_edges();
    switch (obj_) {
      case Objective::kMakespan: {
        Real lb = ms_;
        for (int f = 0; f < m; ++f) {
          if (placed_[f]) continue;
          for (const auto& nb : table_.neighbors(f)) {
            if (placed_[nb.edge]) lb = std::max(lb, t_[nb.edge] + alpha_[f * m + nb.edge]);
          }
        }
        return lb;
      }
      case Objective::kTotalEnergy:
        return te_lb_;
      case Objective::kBottleneckEnergy: {
        Real lb = 0.0L;
        for (Real x : vlb_) lb = std::max(lb, x);
        return lb;
      }
    }
    return 0.0L;
  }

  Real leaf_value() const {
    switch (obj_) {
      case Objective::kMakespan: return ms_;
      case Objective::kTotalEnergy: {
        Real s = 0.0L;
        for (Real r : rot_) s += r;
        return s;
      }
      case Objective::kBottleneckEnergy: {
        Real s = 0.0L;
        for (Real r : rot_) s = std::max(s, r);
        return s;
      }
    }
    return 0.0L;
  }

  bool out_of_budget() {
    if (aborted_) return true;
    if (nodes_ >= opt_.max_nodes) aborted_ = true;
    if ((nodes_ & 4095) == 0 && elapsed() > opt_.max_seconds) aborted_ = true;
    return aborted_;
  }

  void record(const std::vector<int>& seq, Real value) {
    if (value < best_) {
      best_ = value;
      best_seq_ = seq;
      if (opt_.shared_incumbent) {
        double cur = opt_.shared_incumbent->load();
        const double v = static_cast<double>(value);
        while (v < cur && !opt_.shared_incumbent->compare_exchange_weak(cur, v)) {
        }
      }
    }
  }

  void dfs(std::vector<int>& seq) {
    ++nodes_;
    const int m = inst_.num_edges();
    if (static_cast<int>(seq.size()) == m) {
      record(seq, leaf_value());
      return;
    }
    if (out_of_budget()) return;
    const int prev = seq.empty() ? -1 : seq.back();
    std::vector<std::pair<Real, int>> children;
    for (int e = 0; e < m; ++e) {
      if (placed_[e]) continue;
      // Neighbouring independent edges commute; keep only increasing ids.
      if (prev >= 0 && !adjacent_[prev * m + e] && e < prev) continue;
      Undo un = place(e);
      children.emplace_back(bound(), e);
      unplace(e, un);
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto [lb, e] : children) {
      const Real inc = incumbent();
      if (lb >= inc - prune_slack(inc)) break;
      Undo un = place(e);
      seq.push_back(e);
      dfs(seq);
      seq.pop_back();
      unplace(e, un);
      if (aborted_) return;
    }
  }

  const Instance& inst_;
  Objective obj_;
  BnbOptions opt_;
  AngleTable table_;
  std::vector<Real> t_;
  std::vector<bool> placed_;
  std::vector<int> last_;
  std::vector<Real> rot_, lambda_, vlb_, alpha_;
  std::vector<std::pair<Real, Real>> dir_;
  std::vector<bool> adjacent_;
  std::vector<Real> scratch_;
  Real ms_ = 0.0L;
  Real te_lb_ = 0.0L;
  Real best_ = std::numeric_limits<Real>::infinity();
  std::vector<int> best_seq_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveResult branch_and_bound(const Instance& inst, Objective obj, const BnbOptions& opt) {
  Search search(inst, obj, opt);
  return search.run();
}

}  // namespace msc::exact
