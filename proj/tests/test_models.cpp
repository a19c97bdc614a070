#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "msc/exact.hpp"
#include "msc/models.hpp"

using namespace msc;
using namespace msc::testing;
namespace md = msc::models;

namespace {

Instance eight_vertices_path() {
  std::vector<Point> pts;
  std::vector<Edge> es;
  for (int i = 0; i < 8; ++i) pts.push_back(polar(40.0 * i, 1.0 + i));
  for (int i = 0; i + 1 < 8; ++i) es.push_back({i, i + 1});
  return Instance(2, pts, es);
}

void check_round_trip(const md::MipModel& m) {
  std::string text = md::emit(m);
  md::Counts a = md::summarize(m), b = md::parse_counts(text);
  CHECK(a.variables == b.variables);
  CHECK(a.binaries == b.binaries);
  CHECK(a.generals == b.generals);
  CHECK(a.constraints == b.constraints);
  CHECK(a.lazy == b.lazy);
  CHECK(a.conditional == b.conditional);
  CHECK(a.objective_terms == b.objective_terms);
  CHECK(md::emit(m) == text);
}

}  // namespace

TEST_CASE("big M values") {
  CHECK(md::big_m1(8) == 1080);
  CHECK(md::big_m1(9) == 1440);
  CHECK(md::big_m2(5) == 900);
  CHECK(md::build_mip1(eight_vertices_path(), Objective::kMakespan).big_m == 1080);
  Instance five = truncate(gen_random({6, 1.0, 3}), 5);
  CHECK(md::build_mip1(five, Objective::kTotalEnergy).big_m == 900);
  CHECK(md::build_mip1(five, Objective::kBottleneckEnergy).big_m == 900);
}

TEST_CASE("mip1 on the triangle") {
  auto m = md::build_mip1(triangle(), Objective::kTotalEnergy);
  CHECK(m.count(md::VarRole::kOrder) == 6);
  CHECK(m.count(md::VarRole::kTime) == 3);
  CHECK(m.count("time_link") == 6);
  CHECK(m.count("one_succ") == 6);
  CHECK(m.count("one_pred") == 6);
  CHECK(m.count("chain_count") == 3);
  CHECK(m.count("subset_cut") == 3);
  CHECK(m.goal.size() == 6);
  REQUIRE(m.lazy_families.size() == 1);
  CHECK(m.lazy_families[0].vertices.empty());
  auto ms = md::build_mip1(triangle(), Objective::kMakespan);
  CHECK(ms.count(md::VarRole::kAuxMax) == 1);
  CHECK(ms.count("minmax") == 3);
  check_round_trip(ms);
}

TEST_CASE("subset cuts are listed only for small degree") {
  Instance s5 = star({0, 70, 140, 210, 280});
  auto m = md::build_mip1(s5, Objective::kTotalEnergy);
  CHECK(m.count("subset_cut") == 0);
  CHECK(m.lazy_families[0].vertices == std::vector<int>{0});
  Instance s4 = star({0, 90, 180, 270});
  CHECK(md::build_mip3(s4, Objective::kTotalEnergy).count("subset_cut") == 7);
}

TEST_CASE("mip2 examples") {
  auto m = md::build_mip2(triangle());
  CHECK(m.count(md::VarRole::kTime) == 3);
  CHECK(m.count(md::VarRole::kDisjunction) == 3);
  CHECK(m.count("disjunction") == 6);
  Instance one(2, {{0, 0}, {1, 1}}, {{0, 1}});
  auto single = md::build_mip2(one);
  CHECK(single.count("disjunction") == 0);
  std::vector<double> zero(single.variables.size(), 0.0);
  CHECK(md::violations(single, zero).empty());
  CHECK(md::goal_value(single, zero) == 0);
  try {
    md::build("mip2", triangle(), Objective::kTotalEnergy);
    FAIL("expected unsupported objective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnsupportedObjective);
  }
}

TEST_CASE("mip3 examples") {
  auto m = md::build_mip3(triangle(), Objective::kTotalEnergy);
  CHECK(m.count(md::VarRole::kOrder) == 6);
  CHECK(m.count(md::VarRole::kTime) == 0);
  CHECK(m.lazy_families.size() == 2);
  auto p = md::build_mip3(path_1d(3), Objective::kTotalEnergy);
  CHECK(p.goal.size() == 2);  // both orders of the single pair at the middle vertex
  CHECK_THROWS_AS(md::build_mip3(triangle(), Objective::kMakespan), Error);
  check_round_trip(m);
}

TEST_CASE("cp1 scaling") {
  Instance right(2, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {0, 2}});
  auto m = md::build_cp1(right);
  REQUIRE(m.abs_constraints.size() == 1);
  CHECK(m.abs_constraints[0].rhs == 9000000000.0);
  CHECK(m.integerized);
  Instance straight(2, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {0, 2}});
  CHECK(md::build_cp1(straight).abs_constraints[0].rhs == 0);
  Instance odd(2, {{0, 0}, {1, 0}, {1, 1}}, {{0, 1}, {0, 2}});
  CHECK(md::build_cp1(odd, 0).abs_constraints[0].rhs == 45);
  Instance tilt(2, {{0, 0}, {1, 0}, polar(33.4)}, {{0, 1}, {0, 2}});
  CHECK(md::build_cp1(tilt, 0).abs_constraints[0].rhs == 33);
  check_round_trip(m);
  CHECK(md::emit(m).find("abs(t_1 - t_0) >= 9000000000") != std::string::npos);
}

TEST_CASE("cp2 examples") {
  auto m = md::build_cp2(triangle(), Objective::kTotalEnergy);
  CHECK(m.conditionals.size() == 6);
  CHECK(m.lazy_families.empty());
  CHECK(m.count("subset_cut") == 0);
  Instance one(2, {{0, 0}, {1, 1}}, {{0, 1}});
  auto single = md::build_cp2(one, Objective::kBottleneckEnergy);
  CHECK(single.count(md::VarRole::kPosition) == 1);
  CHECK(single.conditionals.empty());
  CHECK_THROWS_AS(md::build_cp2(triangle(), Objective::kMakespan), Error);
  check_round_trip(m);
}

TEST_CASE("emit examples") {
  Instance empty(2, {}, {});
  std::string text = md::emit(md::build_mip1(empty, Objective::kTotalEnergy));
  CHECK(text.find("Subject To\nEnd\n") != std::string::npos);
  CHECK(md::parse_counts(text).variables == 0);
  auto ms = md::build_mip1(triangle(), Objective::kMakespan);
  CHECK(md::emit(ms, md::Format::kPureLp).find("\\LAZY") == std::string::npos);
  try {
    md::emit(md::build_cp2(triangle(), Objective::kTotalEnergy), md::Format::kPureLp);
    FAIL("expected Unrepresentable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnrepresentable);
  }
}

TEST_CASE("property: exact optima satisfy the emitted models") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Instance g = small_random(6, 0.6, seed, 8);
    for (Objective o : {Objective::kMakespan, Objective::kTotalEnergy,
                        Objective::kBottleneckEnergy}) {
      auto opt = exact::brute_force(g, o);
      auto m1 = md::build_mip1(g, o);
      auto v1 = md::assignment_from_schedule(m1, g, opt.schedule);
      CHECK(md::violations(m1, v1).empty());
      CHECK(md::goal_value(m1, v1) == doctest::Approx(opt.value));
      check_round_trip(m1);
      if (o == Objective::kMakespan) {
        auto m2 = md::build_mip2(g);
        auto v2 = md::assignment_from_schedule(m2, g, opt.schedule);
        CHECK(md::violations(m2, v2).empty());
        CHECK(md::goal_value(m2, v2) == doctest::Approx(opt.value));
        auto c1 = md::build_cp1(g);
        auto w1 = md::assignment_from_schedule(c1, g, opt.schedule);
        CHECK(md::violations(c1, w1, 2.0).empty());  // one unit of rounding per time
        check_round_trip(m2);
        continue;
      }
      auto m3 = md::build_mip3(g, o);
      auto v3 = md::assignment_from_schedule(m3, g, opt.schedule);
      CHECK(md::violations(m3, v3).empty());
      CHECK(md::goal_value(m3, v3) == doctest::Approx(opt.value));
      auto c2 = md::build_cp2(g, o);
      auto w2 = md::assignment_from_schedule(c2, g, opt.schedule);
      CHECK(md::violations(c2, w2).empty());
      CHECK(md::goal_value(c2, w2) / 1e8 == doctest::Approx(opt.value).epsilon(1e-8));
    }
  }
}
