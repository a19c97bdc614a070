#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>

#include "msc/exact.hpp"
#include "msc/hardness.hpp"

namespace msc::hardness {

namespace {

constexpr double kEps = 1e-9;
constexpr double kFill = 0.8;          // pendant spacing, as a fraction of kThetaOut
constexpr double kPendantLength = 0.5;  // relative to the shortest real edge at the vertex
constexpr double kConeMargin = 15.0;    // minimum angle between the two stretched fragments
constexpr double kAim = 7.5;            // first stretched fragment points this far above +x

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

double dir_of(Point a, Point b) {
  return normalize_degrees(std::atan2(b.y - a.y, b.x - a.x) * 180.0 / std::numbers::pi);
}

double normalize180(double a) {
  a = normalize_degrees(a);
  return a > 180.0 ? a - 360.0 : a;
}

Point rotate(Point p, double deg) {
  double c = std::cos(rad(deg)), s = std::sin(rad(deg));
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Point transform(const Placement& pl, Point p) {
  Point r = rotate(p, pl.rotation);
  return {pl.origin.x + pl.scale * r.x, pl.origin.y + pl.scale * r.y};
}

struct Interval {
  double lo;
  double width;
};

struct Gap {
  double start;
  double width;
};

// Gaps between consecutive directions that lie inside every interval.
std::vector<Gap> designated_gaps(std::vector<double> dirs, const std::vector<Interval>& ivs) {
  std::sort(dirs.begin(), dirs.end());
  std::vector<Gap> out;
  const size_t n = dirs.size();
  for (size_t i = 0; i < n; ++i) {
    double a = dirs[i];
    double g = n == 1 ? 360.0 : ccw_delta(a, dirs[(i + 1) % n]);
    if (g <= kEps) continue;
    bool inside = true;
    for (const auto& iv : ivs) {
      double off = ccw_delta(iv.lo, a);
      if (off > 360.0 - kEps) off = 0.0;
      if (off + g > iv.width + kEps) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back({a, g});
  }
  return out;
}

// ---------------------------------------------------------------- fragment

struct FragmentLocal {
  std::array<Point, 8> pts;
  std::vector<std::pair<int, int>> edges;  // witness order
  std::array<std::vector<int>, 8> incident;
  std::array<int, 8> from{}, to{};  // designated gap runs CCW from edge `from` to `to`
  std::array<Interval, 8> gap{};
  std::array<double, 8> gamma{};  // outer bisector
};

int name_index(const std::string& name) {
  for (int i = 0; i < 8; ++i) {
    if (name == kFragmentNames[i]) return i;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown fragment vertex " + name);
}

const FragmentLocal& fragment_local() {
  static const FragmentLocal local = [] {
    FragmentLocal f;
    auto pts = fragment_coordinates();
    std::copy(pts.begin(), pts.end(), f.pts.begin());
    for (const auto& [a, b] : fragment_witness()) {
      int e = static_cast<int>(f.edges.size());
      int ia = name_index(a), ib = name_index(b);
      f.edges.push_back({ia, ib});
      f.incident[ia].push_back(e);
      f.incident[ib].push_back(e);
    }
    for (int v = 0; v < 8; ++v) {
      auto d = [&](int e) {
        int o = f.edges[e].first == v ? f.edges[e].second : f.edges[e].first;
        return dir_of(f.pts[v], f.pts[o]);
      };
      int first = f.incident[v].front(), last = f.incident[v].back();
      double w = ccw_delta(d(first), d(last));
      bool empty = true;
      for (int e : f.incident[v]) {
        if (e != first && e != last && ccw_delta(d(first), d(e)) < w) empty = false;
      }
      f.from[v] = empty ? first : last;
      f.to[v] = empty ? last : first;
      f.gap[v] = {d(f.from[v]), ccw_delta(d(f.from[v]), d(f.to[v]))};
      f.gamma[v] = normalize_degrees(f.gap[v].lo + f.gap[v].width / 2);
    }
    return f;
  }();
  return local;
}

constexpr int kS = 0, kU = 1, kT = 2;

// ---------------------------------------------------------------- builder

struct Bundle {
  int from;
  int to;
};

class Builder {
 public:
  int add_vertex(Point p) {
    pts_.push_back(p);
    bundles_.emplace_back();
    return static_cast<int>(pts_.size()) - 1;
  }
  int add_edge(int a, int b) {
    edges_.push_back({std::min(a, b), std::max(a, b)});
    return static_cast<int>(edges_.size()) - 1;
  }
  void add_bundle(int v, int from, int to) { bundles_[v].push_back({from, to}); }
  Point point(int v) const { return pts_[v]; }
  int num_vertices() const { return static_cast<int>(pts_.size()); }
  double dir(int v, int e) const {
    int o = edges_[e].u == v ? edges_[e].v : edges_[e].u;
    return dir_of(pts_[v], pts_[o]);
  }

  std::map<std::string, int> connectors;
  int fragments = 0;

  GadgetGraph finalize(const std::string& name) const {
    const int n = static_cast<int>(pts_.size());
    std::vector<std::vector<int>> inc(n);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
      inc[edges_[e].u].push_back(e);
      inc[edges_[e].v].push_back(e);
    }
    std::vector<Point> pts = pts_;
    std::vector<Edge> edges = edges_;
    auto pendant = [&](int v, double angle, double len) {
      Point p = pts_[v];
      pts.push_back({p.x + len * std::cos(rad(angle)), p.y + len * std::sin(rad(angle))});
      edges.push_back({v, static_cast<int>(pts.size()) - 1});
    };
    const double step = kFill * kThetaOut;
    for (int v = 0; v < n; ++v) {
      if (bundles_[v].empty()) continue;
      std::vector<double> dirs;
      double shortest = INFINITY;
      for (int e : inc[v]) {
        dirs.push_back(dir(v, e));
        int o = edges_[e].u == v ? edges_[e].v : edges_[e].u;
        shortest = std::min(shortest, std::hypot(pts_[o].x - pts_[v].x, pts_[o].y - pts_[v].y));
      }
      std::vector<Interval> ivs;
      for (const auto& b : bundles_[v]) {
        double lo = dir(v, b.from);
        ivs.push_back({lo, ccw_delta(lo, dir(v, b.to))});
      }
      auto open = designated_gaps(dirs, ivs);
      if (open.empty()) {
        throw Error(ErrorKind::kPlacementError,
                    "vertex " + std::to_string(v) + " has no gap shared by all its bundles");
      }
      const double len = kPendantLength * shortest;
      auto fill = [&](double start, double width) {
        int k = static_cast<int>(std::ceil(width / step - kEps)) - 1;
        for (int i = 1; i <= k; ++i) pendant(v, start + width * i / (k + 1), len);
      };
      std::sort(dirs.begin(), dirs.end());
      for (size_t i = 0; i < dirs.size(); ++i) {
        double a = dirs[i];
        double g = dirs.size() == 1 ? 360.0 : ccw_delta(a, dirs[(i + 1) % dirs.size()]);
        bool is_open = std::any_of(open.begin(), open.end(),
                                   [&](const Gap& o) { return o.start == a && o.width == g; });
        if (!is_open) {
          fill(a, g);
          continue;
        }
        if (g < kThetaOut + 1e-6) {
          throw Error(ErrorKind::kPlacementError,
                      "open gap at vertex " + std::to_string(v) + " is narrower than the outer cone");
        }
        double side = (g - kThetaOut) / 2;
        fill(a, side);
        pendant(v, a + side, len);
        pendant(v, a + side + kThetaOut, len);
        fill(a + side + kThetaOut, side);
      }
    }
    GadgetGraph g;
    g.instance = Instance(2, std::move(pts), std::move(edges), name);
    g.connectors = connectors;
    g.fragments = fragments;
    g.auxiliary.assign(g.instance.num_vertices(), false);
    for (int v = n; v < g.instance.num_vertices(); ++v) g.auxiliary[v] = true;
    const int real = static_cast<int>(edges_.size());
    g.theta_min = 360.0;
    for (int v = 0; v < n; ++v) {
      if (bundles_[v].empty()) continue;
      g.theta_max = std::max(g.theta_max, 360.0 - lambda_of(g.instance, v).lambda);
      const auto& es = g.instance.incident(v);
      for (size_t i = 0; i < es.size(); ++i) {
        for (size_t j = i + 1; j < es.size(); ++j) {
          if (es[i] < real && es[j] < real) {
            g.theta_min = std::min(g.theta_min, angle_between(g.instance, es[i], es[j]));
          }
        }
      }
    }
    return g;
  }

 private:
  std::vector<Point> pts_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Bundle>> bundles_;
};

// Places one fragment. `glue` maps a local vertex to an existing vertex id
// whose position the transformed local vertex must hit.
std::array<int, 8> add_fragment(Builder& b, const Placement& pl,
                                const std::vector<std::pair<int, int>>& glue = {}) {
  const auto& f = fragment_local();
  std::array<int, 8> id{};
  for (int v = 0; v < 8; ++v) {
    id[v] = -1;
    for (auto [local, existing] : glue) {
      if (local == v) id[v] = existing;
    }
    if (id[v] < 0) id[v] = b.add_vertex(transform(pl, f.pts[v]));
  }
  std::vector<int> eid;
  for (auto [a, c] : f.edges) eid.push_back(b.add_edge(id[a], id[c]));
  for (int v = 0; v < 8; ++v) b.add_bundle(id[v], eid[f.from[v]], eid[f.to[v]]);
  ++b.fragments;
  return id;
}

// Placement of a fragment rotated by `rotation` whose local vertex `v` lands on `at`.
Placement anchored(int v, Point at, double rotation, double scale = 1.0) {
  Point r = rotate(fragment_local().pts[v], rotation);
  return {{at.x - scale * r.x, at.y - scale * r.y}, rotation, scale};
}

// 2k fragments glued alternately at s and u; returns the connectors t_2, t_4, ...
std::vector<int> add_variable(Builder& b, int k, const Placement& pl) {
  std::vector<int> conn;
  std::array<int, 8> prev{};
  for (int i = 1; i <= 2 * k; ++i) {
    double rot = pl.rotation + (i % 2 == 0 ? 180.0 : 0.0);
    std::array<int, 8> id{};
    if (i == 1) {
      id = add_fragment(b, {pl.origin, rot, pl.scale});
    } else {
      int glue = i % 2 == 0 ? kS : kU;
      id = add_fragment(b, anchored(glue, b.point(prev[glue]), rot, pl.scale), {{glue, prev[glue]}});
    }
    if (i % 2 == 0) conn.push_back(id[kT]);
    prev = id;
  }
  return conn;
}

// ---------------------------------------------------------------- clause

constexpr double kSqrt3 = 1.7320508;

struct ClauseLocal {
  std::array<Point, 6> pts;  // c1 c2 c3 s1 s2 s3
  // Designated gap per vertex as (from, to) neighbour indices.
  std::array<std::pair<int, int>, 6> gap;
};

const ClauseLocal& clause_local() {
  static const ClauseLocal c = [] {
    ClauseLocal l;
    Point c1{0, 0}, c2{2, 0}, c3{1, kSqrt3};
    auto mid = [](Point a, Point b) { return Point{(a.x + b.x) / 2, (a.y + b.y) / 2}; };
    l.pts = {c1, c2, c3, mid(c2, c3), mid(c1, c3), mid(c1, c2)};
    // Corners keep their wide gap; each side point keeps the gap facing away
    // from its opposite corner.
    l.gap = {{{4, 5}, {5, 3}, {3, 4}, {0, 1}, {1, 2}, {2, 0}}};
    return l;
  }();
  return c;
}

std::array<int, 3> add_clause(Builder& b, const Placement& pl) {
  const auto& c = clause_local();
  std::array<int, 6> id{};
  for (int i = 0; i < 6; ++i) id[i] = b.add_vertex(transform(pl, c.pts[i]));
  std::array<std::array<int, 3>, 3> e{};  // e[corner][side]
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) e[i][j] = b.add_edge(id[i], id[3 + j]);
  }
  auto edge_to = [&](int v, int nb) { return v < 3 ? e[v][nb - 3] : e[nb][v - 3]; };
  for (int v = 0; v < 6; ++v) {
    b.add_bundle(id[v], edge_to(v, c.gap[v].first), edge_to(v, c.gap[v].second));
  }
  return {id[0], id[1], id[2]};
}

// Outer bisector of a clause corner in the local frame.
double clause_corner_gamma(int corner) {
  const auto& c = clause_local();
  double lo = dir_of(c.pts[corner], c.pts[c.gap[corner].first]);
  double hi = dir_of(c.pts[corner], c.pts[c.gap[corner].second]);
  return normalize_degrees(lo + ccw_delta(lo, hi) / 2);
}

// ---------------------------------------------------------------- wire

constexpr int kWireFragments = 18;

// Junction j (1-based) glues exit vertex `a` of fragment j to entry `b` of j+1.
std::pair<int, int> junction_type(int j) {
  switch ((j - 1) % 4) {
    case 0: return {kS, kU};
    case 1: return {kS, kS};
    case 2: return {kU, kS};
    default: return {kU, kU};
  }
}

bool deviated(int j) { return (j - 1) % 4 == 0; }

double delta_su() {
  const auto& f = fragment_local();
  return normalize_degrees(f.gamma[kS] - f.gamma[kU]);
}

// Angle from the first to the second fragment's translation vector.
double stretch_cone(double rho) { return normalize180(delta_su() + 180.0 + rho); }

// The five equal deviations must sum to theta - 180 - 2*delta (mod 360); among
// the representatives, take the smallest that keeps the first two fragments
// far from parallel.
double choose_rho(double theta) {
  double base = normalize180(theta - 180.0 - 2.0 * delta_su()) / 5.0;
  double best = NAN;
  for (int m : {0, -1, 1, -2, 2}) {
    double rho = base + 72.0 * m;
    double c = stretch_cone(rho);
    if (c <= -kConeMargin && c >= -(180.0 - kConeMargin) &&
        (std::isnan(best) || std::abs(rho) < std::abs(best))) {
      best = rho;
    }
  }
  if (std::isnan(best)) throw Error(ErrorKind::kThetaOutOfRange, "no usable deviation for this theta");
  return best;
}

struct WirePlan {
  std::array<double, kWireFragments + 1> phi{};  // 1-based fragment rotations
  std::array<int, kWireFragments + 1> entry{}, exit{};
  double rho = 0.0;
};

WirePlan plan_wire(double phi1, double rho, double min_angle) {
  const auto& f = fragment_local();
  WirePlan p;
  p.rho = rho;
  p.phi[1] = phi1;
  p.entry[1] = kU;
  for (int j = 1; j < kWireFragments; ++j) {
    auto [a, b] = junction_type(j);
    p.exit[j] = a;
    p.entry[j + 1] = b;
    p.phi[j + 1] = normalize_degrees(p.phi[j] + f.gamma[a] - f.gamma[b] + 180.0 + (deviated(j) ? rho : 0.0));
    // Both bundles meet at one vertex; the widest surviving gap must leave
    // room for the outer cone.
    std::vector<double> dirs;
    std::vector<Interval> ivs;
    for (auto [v, phi] : {std::pair{a, p.phi[j]}, std::pair{b, p.phi[j + 1]}}) {
      for (int e : f.incident[v]) {
        int o = f.edges[e].first == v ? f.edges[e].second : f.edges[e].first;
        dirs.push_back(normalize_degrees(dir_of(f.pts[v], f.pts[o]) + phi));
      }
      ivs.push_back({normalize_degrees(f.gap[v].lo + phi), f.gap[v].width});
    }
    auto open = designated_gaps(dirs, ivs);
    for (const auto& g : open) {
      if (g.width < kThetaOut + min_angle) {
        throw Error(ErrorKind::kThetaOutOfRange,
                    "junction " + std::to_string(j) + " leaves a gap of " + std::to_string(g.width) +
                        " degrees, below the outer cone plus min_angle");
      }
    }
    if (open.empty()) throw Error(ErrorKind::kThetaOutOfRange, "junction " + std::to_string(j) + " is closed");
  }
  p.exit[kWireFragments] = kS;
  return p;
}

Point sub(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }

Point step_of(const WirePlan& p, int j) {
  const auto& f = fragment_local();
  return rotate(sub(f.pts[p.exit[j]], f.pts[p.entry[j]]), p.phi[j]);
}

struct WireEnds {
  int u1;
  int s18;
};

// Lays the wire out from vertex `start`. With a target, fragments 1 and 2 are
// stretched so that s18 lands on it and is merged into it.
WireEnds add_wire(Builder& b, const WirePlan& p, int start, std::optional<int> target) {
  std::array<double, kWireFragments + 1> scale;
  scale.fill(1.0);
  if (target) {
    Point r = sub(b.point(*target), b.point(start));
    for (int j = 1; j <= kWireFragments; ++j) r = sub(r, step_of(p, j));
    Point a1 = step_of(p, 1), a2 = step_of(p, 2);
    double det = a1.x * a2.y - a1.y * a2.x;
    if (std::abs(det) < 1e-12) throw Error(ErrorKind::kPlacementError, "stretch directions are parallel");
    double l1 = (r.x * a2.y - r.y * a2.x) / det;
    double l2 = (a1.x * r.y - a1.y * r.x) / det;
    if (l1 < 0 || l2 < 0) {
      throw Error(ErrorKind::kPlacementError, "wire end is outside the stretchable cone");
    }
    scale[1] += l1;
    scale[2] += l2;
  }
  int at = start;
  for (int j = 1; j <= kWireFragments; ++j) {
    Placement pl = anchored(p.entry[j], b.point(at), p.phi[j], scale[j]);
    std::vector<std::pair<int, int>> glue{{p.entry[j], at}};
    if (j == kWireFragments && target) glue.push_back({kS, *target});
    auto id = add_fragment(b, pl, glue);
    at = id[p.exit[j]];
  }
  return {start, at};
}

// ---------------------------------------------------------------- certification

bool feasible(const Instance& inst, std::vector<std::pair<int, Rotation>> forced) {
  exact::LambdaCoverOptions opt;
  opt.forced = std::move(forced);
  opt.break_symmetry = false;
  return exact::lambda_cover_exists(inst, opt).exists;
}

Rotation flip(Rotation r) { return r == Rotation::kCW ? Rotation::kCCW : Rotation::kCW; }

void fail(const std::string& what) { throw Error(ErrorKind::kCertificationFailed, what); }

void certify_fragment(const GadgetGraph& g) {
  int s = g.connectors.at("s"), u = g.connectors.at("u"), t = g.connectors.at("t");
  bool any = false;
  for (int mask = 0; mask < 8; ++mask) {
    Rotation rs = mask & 1 ? Rotation::kCW : Rotation::kCCW;
    Rotation ru = mask & 2 ? Rotation::kCW : Rotation::kCCW;
    Rotation rt = mask & 4 ? Rotation::kCW : Rotation::kCCW;
    bool ok = feasible(g.instance, {{s, rs}, {u, ru}, {t, rt}});
    if (ok && !(ru == rt && rs != ru)) fail("fragment admits a cover with s, u, t not in the required pattern");
    any = any || ok;
  }
  if (!any) fail("fragment has no Lambda-cover");
}

void certify_variable(const GadgetGraph& g, int k) {
  int first = g.connectors.at("t1");
  if (!feasible(g.instance, {{first, Rotation::kCW}})) fail("variable gadget has no Lambda-cover");
  for (int i = 2; i <= k; ++i) {
    int t = g.connectors.at("t" + std::to_string(i));
    if (feasible(g.instance, {{first, Rotation::kCW}, {t, Rotation::kCCW}})) {
      fail("variable connectors are not forced to co-rotate");
    }
  }
}

void certify_clause(const GadgetGraph& g) {
  std::array<int, 3> c{g.connectors.at("c1"), g.connectors.at("c2"), g.connectors.at("c3")};
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<std::pair<int, Rotation>> forced;
    for (int i = 0; i < 3; ++i) forced.push_back({c[i], (mask >> i) & 1 ? Rotation::kCW : Rotation::kCCW});
    bool equal = mask == 0 || mask == 7;
    if (feasible(g.instance, forced) == equal) fail("clause gadget does not behave as not-all-equal");
  }
}

void certify_wire(const GadgetGraph& g) {
  int u1 = g.connectors.at("u1"), s18 = g.connectors.at("s18");
  for (Rotation r : {Rotation::kCW, Rotation::kCCW}) {
    if (!feasible(g.instance, {{u1, r}, {s18, r}})) fail("wire has no Lambda-cover");
    if (feasible(g.instance, {{u1, r}, {s18, flip(r)}})) fail("wire ends are not forced to co-rotate");
  }
}

std::mutex cache_mutex;

template <typename Key, typename Fn>
void certify_once(std::set<Key>& done, const Key& key, Fn fn) {
  {
    std::lock_guard lock(cache_mutex);
    if (done.count(key)) return;
  }
  fn();
  std::lock_guard lock(cache_mutex);
  done.insert(key);
}

std::set<int> fragment_done, clause_done, variable_done;
std::set<long long> wire_done;

GadgetGraph standalone_wire(double phi1, double rho, double min_angle) {
  WirePlan p = plan_wire(phi1, rho, min_angle);
  Builder b;
  int start = b.add_vertex({0, 0});
  auto ends = add_wire(b, p, start, std::nullopt);
  b.connectors = {{"u1", ends.u1}, {"s18", ends.s18}};
  return b.finalize("wire");
}

void ensure_wire_certified(double rho, double min_angle) {
  certify_once(wire_done, std::llround(rho * 1e6), [&] { certify_wire(standalone_wire(0.0, rho, min_angle)); });
}

GadgetGraph standalone_variable(int var, int k, const Placement& pl) {
  Builder b;
  auto conn = add_variable(b, k, pl);
  for (int i = 0; i < k; ++i) b.connectors["t" + std::to_string(i + 1)] = conn[i];
  return b.finalize("x" + std::to_string(var));
}

void ensure_variable_certified(int k) {
  certify_once(variable_done, k, [&] { certify_variable(standalone_variable(0, k, {}), k); });
}

void ensure_clause_certified() {
  certify_once(clause_done, 0, [] { certify_clause(build_clause_gadget()); });
}

}  // namespace

std::vector<Point> fragment_coordinates() {
  return {{-6.0601, 1.0646}, {4.8141, 6.6331}, {-0.1496, -0.8573}, {0.0, 0.0},
          {-1.3151, 1.0561}, {-1.5266, 1.4834}, {0.2364, 0.3914}, {0.0278, -0.4874}};
}

std::vector<std::pair<std::string, std::string>> fragment_witness() {
  return {{"u", "s"},   {"s", "v3"},  {"v2", "v3"}, {"v1", "v2"}, {"s", "v1"},
          {"v1", "v5"}, {"u", "v4"},  {"u", "v5"},  {"t", "v5"},  {"v3", "v5"},
          {"v3", "v4"}, {"v1", "v4"}, {"t", "v4"},  {"t", "v2"}};
}

GadgetGraph build_wire_fragment(const Placement& placement) {
  Builder b;
  auto id = add_fragment(b, placement);
  for (int v = 0; v < 8; ++v) b.connectors[kFragmentNames[v]] = id[v];
  GadgetGraph g = b.finalize("fragment");
  certify_once(fragment_done, 0, [&] { certify_fragment(g); });
  return g;
}

GadgetGraph build_variable_gadget(int var, int occurrences, const Placement& placement) {
  if (occurrences < 1) throw Error(ErrorKind::kInvalidArgument, "a variable gadget needs at least one connector");
  ensure_variable_certified(occurrences);
  return standalone_variable(var, occurrences, placement);
}

GadgetGraph build_clause_gadget(const Placement& placement) {
  Builder b;
  auto c = add_clause(b, placement);
  for (int i = 0; i < 3; ++i) b.connectors["c" + std::to_string(i + 1)] = c[i];
  GadgetGraph g = b.finalize("clause");
  if (placement.rotation == 0.0 && placement.scale == 1.0 && placement.origin == Point{0, 0}) {
    certify_once(clause_done, 0, [&] { certify_clause(g); });
  } else {
    ensure_clause_certified();
  }
  return g;
}

GadgetGraph build_wire(double theta, const WireOptions& opt) {
  double rho = choose_rho(theta);
  GadgetGraph g = standalone_wire(0.0, rho, opt.min_angle);
  certify_once(wire_done, std::llround(rho * 1e6), [&] { certify_wire(g); });
  return g;
}

GadgetGraph reduce(const Mnae3SatInstance& sat, const ReduceOptions& opt) {
  const auto& f = fragment_local();
  std::vector<std::array<int, 3>> clauses;
  std::vector<int> uses(sat.num_vars, 0);
  for (const auto& c : sat.clauses) {
    if (c.empty() || c.size() > 3) throw Error(ErrorKind::kInvalidArgument, "clauses need 1 to 3 literals");
    std::array<int, 3> padded{};
    for (int i = 0; i < 3; ++i) {
      padded[i] = c[std::min<size_t>(i, c.size() - 1)];
      if (padded[i] < 0 || padded[i] >= sat.num_vars) throw Error(ErrorKind::kInvalidArgument, "variable out of range");
      ++uses[padded[i]];
    }
    clauses.push_back(padded);
  }

  // The first stretched fragment of every wire points kAim above +x.
  const Point w = sub(f.pts[kS], f.pts[kU]);
  const double psi = normalize_degrees(kAim - f.gamma[kT] + f.gamma[kU] - dir_of({0, 0}, w));

  // Stack variable gadgets downwards.
  std::vector<Point> origin(sat.num_vars);
  double y = 0.0, top = 0.0;
  for (int v = 0; v < sat.num_vars; ++v) {
    if (uses[v] == 0) continue;
    ensure_variable_certified(uses[v]);
    Builder probe;
    add_variable(probe, uses[v], {{0, 0}, psi, 1.0});
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < probe.num_vertices(); ++i) {
      lo = std::min(lo, probe.point(i).y);
      hi = std::max(hi, probe.point(i).y);
    }
    if (y == 0.0 && top == 0.0) top = hi;
    origin[v] = {0.0, y - hi};
    y = y - hi + lo - 20.0;
  }
  if (!clauses.empty()) ensure_clause_certified();
  const double extent = top - y + 6.0 * static_cast<double>(clauses.size());

  for (double far = 10.0 * (extent + 250.0);; far *= 2.0) {
    Builder b;
    std::vector<std::vector<int>> conn(sat.num_vars);
    for (int v = 0; v < sat.num_vars; ++v) {
      if (uses[v] == 0) continue;
      conn[v] = add_variable(b, uses[v], {origin[v], psi, 1.0});
      b.connectors["x" + std::to_string(v)] = conn[v][0];
    }
    std::vector<int> next(sat.num_vars, 0);
    const double clause_top = (top + y) / 2 + 3.0 * static_cast<double>(clauses.size());
    try {
      for (size_t j = 0; j < clauses.size(); ++j) {
        auto corner = add_clause(b, {{far, clause_top - 6.0 * static_cast<double>(j)}, 0.0, 1.0});
        for (int i = 0; i < 3; ++i) {
          b.connectors["C" + std::to_string(j) + ".c" + std::to_string(i + 1)] = corner[i];
          int var = clauses[j][i];
          int t = conn[var][next[var]++];
          double b1 = psi + f.gamma[kT];
          double b2 = clause_corner_gamma(i) + 180.0;
          double rho = choose_rho(b2 - b1);
          ensure_wire_certified(rho, opt.min_angle);
          double phi1 = normalize_degrees(b1 - f.gamma[kU]);
          add_wire(b, plan_wire(phi1, rho, opt.min_angle), t, corner[i]);
        }
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kPlacementError || far > 1e7) throw;
      continue;
    }
    return b.finalize("reduction");
  }
}

std::vector<bool> read_assignment(const GadgetGraph& g, const DirectionAssignment& dirs, int num_vars) {
  std::vector<bool> value(num_vars, false);
  for (int v = 0; v < num_vars; ++v) {
    auto it = g.connectors.find("x" + std::to_string(v));
    if (it == g.connectors.end()) continue;
    auto d = dirs.find(it->second);
    if (d != dirs.end()) value[v] = d->second == Rotation::kCW;
  }
  return value;
}

}  // namespace msc::hardness
