#include "msc/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include "msc/random.hpp"

namespace msc {

Instance gen_random(const RandomParams& params) {
  if (params.n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "p must lie in [0,1]");
  }
  Rng points(derive_seed(params.seed, kPointStream));
  Rng edges(derive_seed(params.seed, kEdgeStream));
  std::vector<Point> pts(params.n);
  for (auto& p : pts) {
    p.x = points.uniform01();
    p.y = points.uniform01();
  }
  std::vector<Edge> es;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      if (edges.bernoulli(params.p)) es.push_back({i, j});
    }
  }
  return Instance(2, std::move(pts), std::move(es),
                  "random-" + std::to_string(params.n) + "-" + std::to_string(params.seed));
}

Instance gen_random_1d(const RandomParams& params) {
  if (params.n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "p must lie in [0,1]");
  }
  Rng points(derive_seed(params.seed, kPointStream));
  Rng edges(derive_seed(params.seed, kEdgeStream));
  std::vector<Point> pts(params.n);
  for (auto& p : pts) p.x = points.uniform01();
  std::vector<Edge> es;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      bool take = edges.bernoulli(params.p);
      if (take && pts[i].x != pts[j].x) es.push_back({i, j});
    }
  }
  return Instance(1, std::move(pts), std::move(es),
                  "line-" + std::to_string(params.n) + "-" + std::to_string(params.seed));
}

double point_segment_distance(Point c, Point a, Point b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((c.x - a.x) * dx + (c.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double px = a.x + t * dx - c.x, py = a.y + t * dy - c.y;
  return std::hypot(px, py);
}

Instance gen_celestial(const CelestialParams& params) {
  if (params.n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  if (!(params.obstacle_radius > 0.0 && params.obstacle_radius < params.orbit_radius)) {
    throw Error(ErrorKind::kInvalidArgument,
                "need 0 < obstacle_radius < orbit_radius");
  }
  Rng rng(derive_seed(params.seed, kPointStream));
  std::vector<double> angles;
  while (static_cast<int>(angles.size()) < params.n) {
    double a = rng.uniform01() * 360.0;
    bool clash = false;
    for (double b : angles) {
      double d = std::abs(a - b);
      if (std::min(d, 360.0 - d) < 1e-12) clash = true;
    }
    if (!clash) angles.push_back(a);
  }
  std::vector<Point> pts;
  for (double a : angles) {
    double r = a * std::numbers::pi / 180.0;
    pts.push_back({params.orbit_radius * std::cos(r), params.orbit_radius * std::sin(r)});
  }
  std::vector<Edge> es;
  const Point center{0.0, 0.0};
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      if (point_segment_distance(center, pts[i], pts[j]) >= params.obstacle_radius) {
        es.push_back({i, j});
      }
    }
  }
  return Instance(2, std::move(pts), std::move(es),
                  "celestial-" + std::to_string(params.n) + "-" +
                      std::to_string(params.seed));
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& token) {
  double x = 0.0;
  const char* first = token.data();
  if (!token.empty() && token[0] == '+') ++first;
  auto res = std::from_chars(first, token.data() + token.size(), x);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || token.empty()) {
    throw Error(ErrorKind::kParse, "bad number '" + token + "'");
  }
  return x;
}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

// Splits into non-empty logical lines, dropping comments. A `# name: X`
// comment sets `name`.
std::vector<Line> tokenize(const std::string& text, std::string* name) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    size_t hash = raw.find('#');
    if (hash != std::string::npos) {
      std::string comment = raw.substr(hash + 1);
      size_t p = comment.find_first_not_of(" \t");
      if (name && p != std::string::npos && comment.compare(p, 5, "name:") == 0) {
        std::string v = comment.substr(p + 5);
        size_t a = v.find_first_not_of(" \t");
        size_t b = v.find_last_not_of(" \t");
        *name = a == std::string::npos ? "" : v.substr(a, b - a + 1);
      }
      raw.resize(hash);
    }
    Line line{number, {}};
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      if (i >= raw.size()) break;
      size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

double number_at(const Line& line, size_t i) {
  try {
    return parse_number(line.tokens[i].text);
  } catch (const Error&) {
    throw ParseError(line.number, line.tokens[i].column,
                     "expected a number, got '" + line.tokens[i].text + "'");
  }
}

long long integer_at(const Line& line, size_t i) {
  const std::string& t = line.tokens[i].text;
  long long x = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), x);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ParseError(line.number, line.tokens[i].column,
                     "expected an integer, got '" + t + "'");
  }
  return x;
}

void expect_arity(const Line& line, size_t n, const char* what) {
  if (line.tokens.size() != n) {
    int col = line.tokens.size() > n ? line.tokens[n].column : line.tokens.back().column;
    throw ParseError(line.number, col,
                     std::string("expected ") + std::to_string(n) + " fields for " + what);
  }
}

}  // namespace

std::string write_instance(const Instance& inst) {
  std::string out;
  if (!inst.name().empty()) out += "# name: " + inst.name() + "\n";
  out += "msc " + std::to_string(inst.dimension()) + " " +
         std::to_string(inst.num_vertices()) + " " + std::to_string(inst.num_edges()) + "\n";
  for (const Point& p : inst.points()) {
    out += format_number(p.x);
    if (inst.dimension() == 2) out += " " + format_number(p.y);
    out += "\n";
  }
  for (const Edge& e : inst.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  }
  return out;
}

Instance read_instance(const std::string& text) {
  std::string name;
  auto lines = tokenize(text, &name);
  if (lines.empty()) throw ParseError(1, 1, "missing header");
  const Line& head = lines[0];
  if (head.tokens[0].text != "msc") {
    throw ParseError(head.number, head.tokens[0].column, "header must start with 'msc'");
  }
  expect_arity(head, 4, "header");
  long long dim = integer_at(head, 1);
  long long n = integer_at(head, 2);
  long long m = integer_at(head, 3);
  if (dim != 1 && dim != 2) {
    throw ParseError(head.number, head.tokens[1].column, "dimension must be 1 or 2");
  }
  if (n < 0 || m < 0) {
    throw ParseError(head.number, head.tokens[2].column, "negative count");
  }
  if (static_cast<long long>(lines.size()) != 1 + n + m) {
    const Line& last = lines.back();
    throw ParseError(last.number, 1,
                     "expected " + std::to_string(n) + " vertex and " +
                         std::to_string(m) + " edge lines, found " +
                         std::to_string(lines.size() - 1));
  }
  std::vector<Point> pts(n);
  for (long long i = 0; i < n; ++i) {
    const Line& line = lines[1 + i];
    expect_arity(line, static_cast<size_t>(dim), "a vertex");
    pts[i].x = number_at(line, 0);
    if (dim == 2) pts[i].y = number_at(line, 1);
  }
  std::vector<Edge> es(m);
  for (long long i = 0; i < m; ++i) {
    const Line& line = lines[1 + n + i];
    expect_arity(line, 2, "an edge");
    long long u = integer_at(line, 0), v = integer_at(line, 1);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorKind::kValidation,
                  "line " + std::to_string(line.number) + ": vertex id out of range");
    }
    es[i] = {static_cast<int>(u), static_cast<int>(v)};
  }
  return Instance(static_cast<int>(dim), std::move(pts), std::move(es), name);
}

std::string write_schedule(const Instance& inst, const ScanCover& sc) {
  if (static_cast<int>(sc.times.size()) != inst.num_edges()) {
    throw Error(ErrorKind::kMissingEdgeTime, "schedule does not cover every edge");
  }
  std::string out;
  for (int e = 0; e < inst.num_edges(); ++e) {
    out += std::to_string(inst.edge(e).u) + " " + std::to_string(inst.edge(e).v) + " " +
           format_number(sc.times[e]) + "\n";
  }
  return out;
}

ScanCover read_schedule(const std::string& text, const Instance& inst) {
  auto lines = tokenize(text, nullptr);
  ScanCover sc;
  sc.times.assign(inst.num_edges(), std::nan(""));
  for (const Line& line : lines) {
    expect_arity(line, 3, "a schedule entry");
    long long u = integer_at(line, 0), v = integer_at(line, 1);
    double t = number_at(line, 2);
    std::optional<int> e;
    if (u >= 0 && v >= 0 && u < inst.num_vertices() && v < inst.num_vertices()) {
      e = inst.find_edge(static_cast<int>(u), static_cast<int>(v));
    }
    if (!e) {
      throw Error(ErrorKind::kValidation, "line " + std::to_string(line.number) +
                                              ": unknown edge " + std::to_string(u) +
                                              " " + std::to_string(v));
    }
    if (!std::isnan(sc.times[*e])) {
      throw Error(ErrorKind::kValidation, "line " + std::to_string(line.number) +
                                              ": edge scheduled twice");
    }
    if (!std::isfinite(t) || t < 0) {
      throw ParseError(line.number, line.tokens[2].column, "time must be finite and >= 0");
    }
    sc.times[*e] = t;
  }
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (std::isnan(sc.times[e])) {
      throw Error(ErrorKind::kMissingEdgeTime,
                  "no time for edge " + std::to_string(inst.edge(e).u) + " " +
                      std::to_string(inst.edge(e).v));
    }
  }
  return sc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << content;
}

}  // namespace msc
