#include "msc/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace msc {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct Vec {
  double x, y;
};

Vec ray(const Instance& inst, int v, int e) {
  const Point& a = inst.point(v);
  const Point& b = inst.point(inst.other(e, v));
  return {b.x - a.x, b.y - a.y};
}

}  // namespace

const char* to_string(Objective obj) {
  switch (obj) {
    case Objective::kMakespan: return "ms";
    case Objective::kTotalEnergy: return "te";
    case Objective::kBottleneckEnergy: return "be";
  }
  return "?";
}

Objective parse_objective(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "ms" || t == "makespan") return Objective::kMakespan;
  if (t == "te" || t == "total" || t == "total_energy") return Objective::kTotalEnergy;
  if (t == "be" || t == "bottleneck" || t == "bottleneck_energy") {
    return Objective::kBottleneckEnergy;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown objective '" + text + "'");
}

double normalize_degrees(double a) {
  double r = std::fmod(a, 360.0);
  if (r < 0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

double ccw_delta(double from, double to) { return normalize_degrees(to - from); }

double direction(const Instance& inst, int v, int e) {
  if (!inst.has_endpoint(e, v)) {
    throw Error(ErrorKind::kNotIncident, "edge " + std::to_string(e) +
                                             " is not incident to vertex " +
                                             std::to_string(v));
  }
  Vec r = ray(inst, v, e);
  if (r.x == 0.0 && r.y == 0.0) {
    throw Error(ErrorKind::kDegenerateEdge, "zero-length edge " + std::to_string(e));
  }
  return normalize_degrees(std::atan2(r.y, r.x) * kRadToDeg);
}

double angle_between(const Instance& inst, int e, int f) {
  return static_cast<double>(angle_between_ext(inst, e, f));
}

long double angle_between_ext(const Instance& inst, int e, int f) {
  int v = inst.shared_vertex(e, f);
  if (v < 0) {
    throw Error(ErrorKind::kNotAdjacent, "edges " + std::to_string(e) + " and " +
                                             std::to_string(f) +
                                             " do not share exactly one vertex");
  }
  Vec a = ray(inst, v, e);
  Vec b = ray(inst, v, f);
  if ((a.x == 0.0 && a.y == 0.0) || (b.x == 0.0 && b.y == 0.0)) {
    throw Error(ErrorKind::kDegenerateEdge, "zero-length edge at vertex " +
                                                std::to_string(v));
  }
  long double cross = static_cast<long double>(a.x) * b.y - static_cast<long double>(a.y) * b.x;
  long double dot = static_cast<long double>(a.x) * b.x + static_cast<long double>(a.y) * b.y;
  return std::atan2(std::abs(cross), dot) * (180.0L / std::numbers::pi_v<long double>);
}

std::vector<int> sorted_by_direction(const Instance& inst, int v) {
  std::vector<std::pair<double, int>> keyed;
  for (int e : inst.incident(v)) keyed.emplace_back(direction(inst, v, e), e);
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  out.reserve(keyed.size());
  for (auto& [d, e] : keyed) out.push_back(e);
  return out;
}

namespace {

ConeInfo make_cone(const std::vector<int>& order, const std::vector<double>& dirs,
                   size_t gap_index, double gap) {
  // The gap runs CCW from order[gap_index] to order[gap_index + 1].
  size_t k = order.size();
  ConeInfo c;
  c.outer_gap = gap;
  c.lambda = 360.0 - gap;
  int last = order[gap_index];
  int first = order[(gap_index + 1) % k];
  c.bounding_pair = std::make_pair(first, last);
  c.outer_bisector = normalize_degrees(dirs[gap_index] + gap / 2.0);
  c.bisector = normalize_degrees(c.outer_bisector + 180.0);
  return c;
}

}  // namespace

std::vector<ConeInfo> lambda_cones(const Instance& inst, int v, double tol) {
  std::vector<ConeInfo> out;
  if (inst.degree(v) <= 1) return out;
  std::vector<int> order = sorted_by_direction(inst, v);
  std::vector<double> dirs;
  for (int e : order) dirs.push_back(direction(inst, v, e));
  size_t k = order.size();
  std::vector<double> gaps(k);
  double best = -1.0;
  for (size_t i = 0; i < k; ++i) {
    gaps[i] = i + 1 < k ? dirs[i + 1] - dirs[i] : dirs[0] + 360.0 - dirs[i];
    best = std::max(best, gaps[i]);
  }
  for (size_t i = 0; i < k; ++i) {
    if (gaps[i] >= best - tol) out.push_back(make_cone(order, dirs, i, gaps[i]));
  }
  return out;
}

ConeInfo lambda_of(const Instance& inst, int v) {
  if (inst.degree(v) == 0) return ConeInfo{};
  if (inst.degree(v) == 1) {
    ConeInfo c;
    double d = direction(inst, v, inst.incident(v)[0]);
    c.bisector = d;
    c.outer_bisector = normalize_degrees(d + 180.0);
    return c;
  }
  auto cones = lambda_cones(inst, v, 0.0);
  // Exact maxima only; the first in CCW order wins.
  ConeInfo best = cones.front();
  for (const auto& c : cones) {
    if (c.outer_gap > best.outer_gap) best = c;
  }
  return best;
}

std::vector<Violation> validate(const Instance& inst, const ScanCover& sc,
                                double tol) {
  const int m = inst.num_edges();
  if (static_cast<int>(sc.times.size()) != m) {
    throw Error(ErrorKind::kMissingEdgeTime,
                "schedule has " + std::to_string(sc.times.size()) +
                    " times for " + std::to_string(m) + " edges");
  }
  for (int e = 0; e < m; ++e) {
    double t = sc.times[e];
    if (std::isnan(t)) {
      throw Error(ErrorKind::kMissingEdgeTime, "edge " + std::to_string(e) + " has no time");
    }
    if (!std::isfinite(t) || t < 0.0) {
      throw Error(ErrorKind::kValidation,
                  "edge " + std::to_string(e) + " has an invalid time");
    }
  }
  std::vector<Violation> out;
  for (int v = 0; v < inst.num_vertices(); ++v) {
    const auto& inc = inst.incident(v);
    for (size_t i = 0; i < inc.size(); ++i) {
      for (size_t j = i + 1; j < inc.size(); ++j) {
        int e = std::min(inc[i], inc[j]);
        int f = std::max(inc[i], inc[j]);
        double a = angle_between(inst, e, f);
        double gap = std::abs(sc.times[e] - sc.times[f]);
        if (a - gap > tol) out.push_back({e, f, a - gap});
      }
    }
  }
  return out;
}

InducedOrder induce_order(const Instance& inst, const ScanCover& sc) {
  auto violations = validate(inst, sc);
  if (!violations.empty()) {
    throw Error(ErrorKind::kInfeasibleSchedule,
                "schedule violates " + std::to_string(violations.size()) +
                    " adjacency constraint(s)");
  }
  InducedOrder out;
  out.sequence.resize(inst.num_vertices());
  for (int v = 0; v < inst.num_vertices(); ++v) {
    auto& seq = out.sequence[v];
    seq = inst.incident(v);
    std::sort(seq.begin(), seq.end(), [&](int a, int b) {
      if (sc.times[a] != sc.times[b]) return sc.times[a] < sc.times[b];
      return a < b;
    });
  }
  return out;
}

double Evaluation::value(Objective obj) const {
  switch (obj) {
    case Objective::kMakespan: return makespan;
    case Objective::kTotalEnergy: return total_energy;
    case Objective::kBottleneckEnergy: return bottleneck_energy;
  }
  return 0.0;
}

Evaluation evaluate(const Instance& inst, const ScanCover& sc) {
  InducedOrder order = induce_order(inst, sc);
  Evaluation ev;
  for (double t : sc.times) ev.makespan = std::max(ev.makespan, t);
  ev.per_vertex_rotation.assign(inst.num_vertices(), 0.0);
  long double total = 0.0L;
  for (int v = 0; v < inst.num_vertices(); ++v) {
    long double r = rotation_of_sweep_ext(inst, v, order.sequence[v]);
    ev.per_vertex_rotation[v] = static_cast<double>(r);
    total += r;
    ev.bottleneck_energy = std::max(ev.bottleneck_energy, ev.per_vertex_rotation[v]);
  }
  ev.total_energy = static_cast<double>(total);
  return ev;
}

double rotation_of_sweep(const Instance& inst, int v, std::span<const int> order) {
  return static_cast<double>(rotation_of_sweep_ext(inst, v, order));
}

long double rotation_of_sweep_ext(const Instance& inst, int v, std::span<const int> order) {
  for (int e : order) {
    if (e < 0 || e >= inst.num_edges() || !inst.has_endpoint(e, v)) {
      throw Error(ErrorKind::kNotIncident, "edge " + std::to_string(e) +
                                               " is not incident to vertex " +
                                               std::to_string(v));
    }
  }
  long double total = 0.0L;
  for (size_t i = 1; i < order.size(); ++i) total += angle_between_ext(inst, order[i - 1], order[i]);
  return total;
}

AngleTable::AngleTable(const Instance& inst) {
  const int m = inst.num_edges();
  start_.assign(m + 1, 0);
  std::vector<std::vector<Neighbor>> lists(m);
  for (int v = 0; v < inst.num_vertices(); ++v) {
    const auto& inc = inst.incident(v);
    for (size_t i = 0; i < inc.size(); ++i) {
      for (size_t j = i + 1; j < inc.size(); ++j) {
        double a = angle_between(inst, inc[i], inc[j]);
        lists[inc[i]].push_back({inc[j], v, a});
        lists[inc[j]].push_back({inc[i], v, a});
      }
    }
  }
  for (int e = 0; e < m; ++e) {
    start_[e + 1] = start_[e] + static_cast<int>(lists[e].size());
    adj_.insert(adj_.end(), lists[e].begin(), lists[e].end());
  }
}

double AngleTable::mean_positive_alpha() const {
  double sum = 0.0;
  int count = 0;
  for (const auto& nb : adj_) {
    if (nb.alpha > 0.0) {
      sum += nb.alpha;
      ++count;
    }
  }
  return count ? sum / count : 1.0;
}

}  // namespace msc
