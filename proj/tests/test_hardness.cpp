#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "msc/approx.hpp"
#include "msc/exact.hpp"
#include "msc/hardness.hpp"

using namespace msc;
using namespace msc::hardness;

namespace {

constexpr Rotation kCW = Rotation::kCW;
constexpr Rotation kCCW = Rotation::kCCW;

bool feasible(const GadgetGraph& g, std::vector<std::pair<std::string, Rotation>> pattern) {
  exact::LambdaCoverOptions opt;
  for (auto& [name, r] : pattern) opt.forced.push_back({g.connectors.at(name), r});
  opt.break_symmetry = false;
  return exact::lambda_cover_exists(g.instance, opt).exists;
}

int core_edges(const GadgetGraph& g) {
  int n = 0;
  for (const Edge& e : g.instance.edges()) n += !g.auxiliary[e.u] && !g.auxiliary[e.v];
  return n;
}

void check_uniform_lambda(const GadgetGraph& g) {
  const double want = 360.0 - std::atan(0.5) * 180.0 / M_PI;
  for (int v = 0; v < g.instance.num_vertices(); ++v) {
    if (g.auxiliary[v]) continue;
    CHECK(lambda_of(g.instance, v).lambda == doctest::Approx(want).epsilon(1e-12));
  }
}

void check_bipartite(const GadgetGraph& g) {
  auto part = approx::bipartition(g.instance);
  for (const Edge& e : g.instance.edges()) CHECK(part.side[e.u] != part.side[e.v]);
}

// Extends a global order of core edges with the padding edges: each vertex
// sweeps its Lambda-cone once, in the direction its first two core edges set.
std::vector<int> with_padding(const GadgetGraph& g, const std::vector<int>& core_order) {
  const Instance& inst = g.instance;
  const int m = inst.num_edges();
  std::vector<int> rank(m, -1);
  for (size_t i = 0; i < core_order.size(); ++i) rank[core_order[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> before(m), after(m);
  for (int v = 0; v < inst.num_vertices(); ++v) {
    if (g.auxiliary[v]) continue;
    auto cones = lambda_cones(inst, v);
    REQUIRE(cones.size() == 1);
    int first = cones[0].bounding_pair->first;
    double lo = direction(inst, v, first);
    std::vector<int> sweep = inst.incident(v);
    std::sort(sweep.begin(), sweep.end(), [&](int a, int b) {
      return ccw_delta(lo, direction(inst, v, a)) < ccw_delta(lo, direction(inst, v, b));
    });
    std::vector<int> core;
    for (int e : inst.incident(v)) {
      if (rank[e] >= 0) core.push_back(e);
    }
    std::sort(core.begin(), core.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    auto pos = [&](int e) { return std::find(sweep.begin(), sweep.end(), e) - sweep.begin(); };
    if (pos(core[0]) > pos(core[1])) std::reverse(sweep.begin(), sweep.end());
    int last_core = -1;
    std::vector<int> pending;
    for (int e : sweep) {
      if (rank[e] >= 0) {
        if (last_core < 0) before[e].insert(before[e].end(), pending.begin(), pending.end());
        last_core = e;
      } else if (last_core < 0) {
        pending.push_back(e);
      } else {
        after[last_core].push_back(e);
      }
    }
  }
  std::vector<int> seq;
  for (int e : core_order) {
    seq.insert(seq.end(), before[e].begin(), before[e].end());
    seq.push_back(e);
    seq.insert(seq.end(), after[e].begin(), after[e].end());
  }
  return seq;
}

}  // namespace

TEST_CASE("mnae3sat text round trip and errors") {
  auto sat = parse_mnae3sat("c demo\np mnae3sat 4 3\n1 2 4 0\n1 2 3\n1 3 4 0\n");
  CHECK(sat.num_vars == 4);
  REQUIRE(sat.clauses.size() == 3);
  CHECK(sat.clauses[1] == std::vector<int>{0, 1, 2});
  CHECK(parse_mnae3sat(write_mnae3sat(sat)).clauses == sat.clauses);

  auto line_of = [](const std::string& text) {
    try {
      parse_mnae3sat(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("p mnae3sat 2 1\n1 -2\n") == 2);
  CHECK(line_of("p mnae3sat 2 1\n1 3\n") == 2);
  CHECK(line_of("p mnae3sat 2 1\n1 2 1 2\n") == 2);
  CHECK(line_of("1 2\n") == 1);
  CHECK(line_of("p mnae3sat 2 2\n1 2\n") == 2);
  CHECK(line_of("p cnf 2 1\n1 2\n") == 1);
}

TEST_CASE("nae satisfiability examples") {
  CHECK_FALSE(nae_brute_force({1, {{0, 0, 0}}}).has_value());
  auto v = nae_brute_force({2, {{0, 1, 1}}});
  REQUIRE(v.has_value());
  CHECK((*v)[0] != (*v)[1]);
  Mnae3SatInstance f{4, {{0, 1, 3}, {0, 1, 2}, {0, 2, 3}}};
  CHECK(nae_satisfies(f, {true, false, true, false}));
  CHECK_FALSE(nae_satisfies(f, {true, true, true, true}));
  CHECK_FALSE(nae_brute_force({1, {{0}}}).has_value());
}

TEST_CASE("gap constant") {
  const double deg = 180.0 / M_PI;
  CHECK(gap_constant(std::atan(0.5) * deg, std::atan(0.25) * deg) == doctest::Approx(1.0421).epsilon(5e-4));
  CHECK(gap_constant(26.0, 0.0) == 1.0);
  CHECK(gap_constant(90.0, 90.0) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(gap_constant(10.0, 20.0), Error);
  CHECK_THROWS_AS(gap_constant(360.0, 1.0), Error);
  CHECK_THROWS_AS(gap_constant(10.0, -1.0), Error);
}

TEST_CASE("wire fragment") {
  GadgetGraph g = build_wire_fragment();
  CHECK(core_edges(g) == 14);
  CHECK(std::count(g.auxiliary.begin(), g.auxiliary.end(), false) == 8);
  CHECK(g.fragments == 1);
  CHECK(g.theta_max == doctest::Approx(std::atan(0.5) * 180.0 / M_PI).epsilon(1e-12));
  CHECK(g.theta_min > 0.0);
  check_uniform_lambda(g);
  check_bipartite(g);

  int feasible_patterns = 0;
  for (int mask = 0; mask < 8; ++mask) {
    Rotation rs = mask & 1 ? kCW : kCCW, ru = mask & 2 ? kCW : kCCW, rt = mask & 4 ? kCW : kCCW;
    if (feasible(g, {{"s", rs}, {"u", ru}, {"t", rt}})) {
      ++feasible_patterns;
      CHECK(ru == rt);
      CHECK(rs != ru);
    }
  }
  CHECK(feasible_patterns == 2);
}

TEST_CASE("wire fragment witness order sweeps every Lambda-cone once") {
  GadgetGraph g = build_wire_fragment();
  const std::vector<std::pair<std::string, std::string>> order = {
      {"u", "s"},   {"s", "v3"}, {"v2", "v3"}, {"v1", "v2"}, {"s", "v1"},  {"v1", "v5"}, {"u", "v4"},
      {"u", "v5"},  {"t", "v5"}, {"v3", "v5"}, {"v3", "v4"}, {"v1", "v4"}, {"t", "v4"},  {"t", "v2"}};
  std::vector<int> core;
  for (auto& [a, b] : order) {
    auto e = g.instance.find_edge(g.connectors.at(a), g.connectors.at(b));
    REQUIRE(e.has_value());
    core.push_back(*e);
  }
  auto seq = with_padding(g, core);
  REQUIRE(seq.size() == static_cast<size_t>(g.instance.num_edges()));
  ScanCover sc = exact::sequence_schedule(g.instance, seq);
  CHECK(validate(g.instance, sc).empty());
  Evaluation ev = evaluate(g.instance, sc);
  for (int v = 0; v < g.instance.num_vertices(); ++v) {
    if (g.auxiliary[v]) continue;
    CHECK(ev.per_vertex_rotation[v] == doctest::Approx(lambda_of(g.instance, v).lambda).epsilon(1e-9));
  }
}

TEST_CASE("wire fragment placement") {
  GadgetGraph base = build_wire_fragment();
  GadgetGraph g = build_wire_fragment({{3.0, -2.0}, 117.0, 2.5});
  int v1 = g.connectors.at("v1");
  CHECK(g.instance.point(v1).x == doctest::Approx(3.0));
  CHECK(g.instance.point(v1).y == doctest::Approx(-2.0));
  int u = g.connectors.at("u");
  CHECK(direction(g.instance, v1, *g.instance.find_edge(v1, g.connectors.at("s"))) ==
        doctest::Approx(normalize_degrees(
            direction(base.instance, base.connectors.at("v1"),
                      *base.instance.find_edge(base.connectors.at("v1"), base.connectors.at("s"))) +
            117.0)));
  CHECK(u != v1);
  check_uniform_lambda(g);
}

TEST_CASE("variable gadget") {
  GadgetGraph one = build_variable_gadget(0, 1);
  CHECK(one.fragments == 2);
  CHECK(one.connectors.count("t1") == 1);
  CHECK(one.connectors.count("t2") == 0);

  GadgetGraph two = build_variable_gadget(0, 2);
  CHECK(two.fragments == 4);
  CHECK(feasible(two, {{"t1", kCW}, {"t2", kCW}}));
  CHECK_FALSE(feasible(two, {{"t1", kCW}, {"t2", kCCW}}));
  CHECK_FALSE(feasible(two, {{"t1", kCCW}, {"t2", kCW}}));

  for (int k = 1; k <= 4; ++k) {
    GadgetGraph g = build_variable_gadget(1, k);
    check_bipartite(g);
    check_uniform_lambda(g);
  }
  CHECK_THROWS_AS(build_variable_gadget(0, 0), Error);
}

TEST_CASE("clause gadget") {
  GadgetGraph g = build_clause_gadget();
  CHECK(core_edges(g) == 9);
  CHECK_FALSE(feasible(g, {{"c1", kCW}, {"c2", kCW}, {"c3", kCW}}));
  CHECK_FALSE(feasible(g, {{"c1", kCCW}, {"c2", kCCW}, {"c3", kCCW}}));
  CHECK(feasible(g, {{"c1", kCW}, {"c2", kCCW}, {"c3", kCCW}}));
  CHECK(feasible(g, {{"c1", kCCW}, {"c2", kCW}, {"c3", kCCW}}));
  check_bipartite(g);
  check_uniform_lambda(g);
  CHECK(g.theta_min == doctest::Approx(30.0).epsilon(1e-6));
}

TEST_CASE("wire gadget") {
  for (double theta : {0.0, 37.0, 120.0, 200.0, 333.0}) {
    CAPTURE(theta);
    GadgetGraph g = build_wire(theta);
    CHECK(g.fragments == 18);
    int u1 = g.connectors.at("u1"), s18 = g.connectors.at("s18");
    double turn = ccw_delta(lambda_of(g.instance, u1).outer_bisector, lambda_of(g.instance, s18).outer_bisector);
    double off = ccw_delta(normalize_degrees(theta), turn);
    CHECK(std::min(off, 360.0 - off) < 1e-6);
    CHECK_FALSE(feasible(g, {{"u1", kCW}, {"s18", kCCW}}));
    CHECK(feasible(g, {{"u1", kCW}, {"s18", kCW}}));
    check_uniform_lambda(g);
  }
  check_bipartite(build_wire(90.0));
  CHECK_THROWS_AS(build_wire(0.0, {.min_angle = 150.0}), Error);
  try {
    build_wire(0.0, {.min_angle = 150.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kThetaOutOfRange);
  }
}

TEST_CASE("reduce examples") {
  auto exists = [](const GadgetGraph& g) { return exact::lambda_cover_exists(g.instance).exists; };
  CHECK_FALSE(exists(reduce({1, {{0, 0, 0}}})));
  GadgetGraph two = reduce({2, {{0, 1, 1}}});
  CHECK(exists(two));
  check_bipartite(two);
  check_uniform_lambda(two);
  // one clause with three slots: two variable gadgets, three wires, one clause
  CHECK(two.fragments == 2 * 1 + 2 * 2 + 3 * 18);

  Mnae3SatInstance f{4, {{0, 1, 3}, {0, 1, 2}, {0, 2, 3}}};
  GadgetGraph g = reduce(f);
  auto r = exact::lambda_cover_exists(g.instance);
  REQUIRE(r.exists);
  auto value = read_assignment(g, r.assignment, 4);
  CHECK(nae_satisfies(f, value));
  CHECK(validate(g.instance, r.schedule).empty());
}

TEST_CASE("reduce matches nae satisfiability on a sample of small formulas") {
  Rng rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    Mnae3SatInstance sat{3, {}};
    int clauses = 1 + static_cast<int>(rng.below(2));
    for (int c = 0; c < clauses; ++c) {
      std::vector<int> clause;
      int len = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < len; ++i) clause.push_back(static_cast<int>(rng.below(3)));
      sat.clauses.push_back(clause);
    }
    CAPTURE(write_mnae3sat(sat));
    GadgetGraph g = reduce(sat);
    CHECK(exact::lambda_cover_exists(g.instance).exists == nae_brute_force(sat).has_value());
  }
}
