#include "msc/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "msc/instances.hpp"

namespace msc::models {

int MipModel::count(VarRole role) const {
  return static_cast<int>(std::count_if(variables.begin(), variables.end(),
                                        [&](const Variable& v) { return v.role == role; }));
}

int MipModel::count(const std::string& family) const {
  return static_cast<int>(std::count_if(constraints.begin(), constraints.end(),
                                        [&](const Constraint& c) { return c.family == family; }));
}

int MipModel::find(const std::string& name) const {
  for (size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

double big_m1(int n) { return n <= 1 ? 0.0 : std::ceil(std::log2(n)) * 360.0; }
double big_m2(int edges) { return edges * 180.0; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Builder {
 public:
  Builder(const Instance& inst, std::string formulation, Objective obj, int scale)
      : inst_(inst) {
    m_.formulation = std::move(formulation);
    m_.objective = obj;
    m_.integerized = scale >= 0;
    m_.scale = std::max(scale, 0);
    factor_ = m_.integerized ? std::pow(10.0, m_.scale) : 1.0;
  }

  // Angles in model units.
  double q(double degrees) const {
    return m_.integerized ? std::round(degrees * factor_) : degrees;
  }

  int var(std::string name, VarKind kind, VarRole role, double lb = 0.0, double ub = kInf) {
    if (kind == VarKind::kBinary) ub = 1.0;
    m_.variables.push_back({std::move(name), kind, role, lb, ub});
    return static_cast<int>(m_.variables.size()) - 1;
  }

  void row(const std::string& family, std::vector<Term> terms, Sense sense, double rhs) {
    int k = family_count_[family]++;
    m_.constraints.push_back({family + "_" + std::to_string(k), family, std::move(terms), sense, rhs});
  }

  void times(VarKind kind, double ub) {
    for (int e = 0; e < inst_.num_edges(); ++e) {
      t_.push_back(var("t_" + std::to_string(e), kind, VarRole::kTime, 0.0, ub));
    }
  }

  void order_vars() {
    for (int v = 0; v < inst_.num_vertices(); ++v) {
      for (int e : inst_.incident(v)) {
        for (int f : inst_.incident(v)) {
          if (e == f) continue;
          x_[{e, f}] = var("x_" + std::to_string(e) + "_" + std::to_string(f), VarKind::kBinary,
                           VarRole::kOrder);
        }
      }
    }
  }

  // At most one successor and predecessor per edge at each vertex, deg-1
  // consecutive pairs, and optionally the subset cuts.
  void order_structure(bool subset_cuts) {
    LazyFamily lazy{"subset_cut",
                    "for each listed vertex v and nonempty proper subset S of E(v): "
                    "sum over e in S, f in E(v)\\S of x_e_f + x_f_e >= 1",
                    {}};
    for (int v = 0; v < inst_.num_vertices(); ++v) {
      const auto& inc = inst_.incident(v);
      const int d = static_cast<int>(inc.size());
      if (d < 2) continue;
      std::vector<Term> all;
      for (int e : inc) {
        std::vector<Term> out, in;
        for (int f : inc) {
          if (e == f) continue;
          out.push_back({x_.at({e, f}), 1.0});
          in.push_back({x_.at({f, e}), 1.0});
          all.push_back({x_.at({e, f}), 1.0});
        }
        row("one_succ", out, Sense::kLe, 1.0);
        row("one_pred", in, Sense::kLe, 1.0);
      }
      row("chain_count", all, Sense::kEq, d - 1.0);
      if (!subset_cuts) continue;
      if (d > kMaterializeSubsetsUpTo) {
        lazy.vertices.push_back(v);
        continue;
      }
      // One cut per complementary pair: S always holds the first edge.
      for (int mask = 1; mask < (1 << d) - 1; mask += 2) {
        std::vector<Term> cut;
        for (int i = 0; i < d; ++i) {
          if (!((mask >> i) & 1)) continue;
          for (int j = 0; j < d; ++j) {
            if ((mask >> j) & 1) continue;
            cut.push_back({x_.at({inc[i], inc[j]}), 1.0});
            cut.push_back({x_.at({inc[j], inc[i]}), 1.0});
          }
        }
        row("subset_cut", cut, Sense::kGe, 1.0);
      }
    }
    if (subset_cuts) m_.lazy_families.push_back(std::move(lazy));
  }

  void time_links(double big_m) {
    for (const auto& [pair, x] : x_) {
      auto [e, f] = pair;
      double a = q(angle_between(inst_, e, f));
      row("time_link", {{t_[f], 1.0}, {t_[e], -1.0}, {x, -big_m}}, Sense::kGe, a - big_m);
    }
  }

  // Ordered by (e, f) with e < f.
  std::vector<std::pair<int, int>> unordered_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [pair, x] : x_) {
      if (pair.first < pair.second) out.push_back(pair);
    }
    return out;
  }

  void goal(Objective obj) {
    VarKind aux_kind = m_.integerized ? VarKind::kInteger : VarKind::kContinuous;
    if (obj == Objective::kMakespan) {
      if (t_.empty()) return;
      int z = var("z", aux_kind, VarRole::kAuxMax);
      for (int t : t_) row("minmax", {{z, 1.0}, {t, -1.0}}, Sense::kGe, 0.0);
      m_.goal = {{z, 1.0}};
      return;
    }
    if (obj == Objective::kTotalEnergy) {
      for (const auto& [pair, x] : x_) {
        double a = q(angle_between(inst_, pair.first, pair.second));
        if (a != 0.0) m_.goal.push_back({x, a});
      }
      return;
    }
    if (x_.empty()) return;
    int z = var("z", aux_kind, VarRole::kAuxMax);
    for (int v = 0; v < inst_.num_vertices(); ++v) {
      std::vector<Term> terms{{z, 1.0}};
      for (int e : inst_.incident(v)) {
        for (int f : inst_.incident(v)) {
          if (e == f) continue;
          double a = q(angle_between(inst_, e, f));
          if (a != 0.0) terms.push_back({x_.at({e, f}), -a});
        }
      }
      if (terms.size() > 1) row("minmax", terms, Sense::kGe, 0.0);
    }
    m_.goal = {{z, 1.0}};
  }

  MipModel& model() { return m_; }
  std::map<std::pair<int, int>, int>& x() { return x_; }
  const std::vector<int>& t() const { return t_; }
  double factor() const { return factor_; }

 private:
  const Instance& inst_;
  MipModel m_;
  double factor_ = 1.0;
  std::vector<int> t_;
  std::map<std::pair<int, int>, int> x_;
  std::map<std::string, int> family_count_;
};

void require(bool ok, const std::string& formulation, Objective obj) {
  if (!ok) {
    throw Error(ErrorKind::kUnsupportedObjective,
                formulation + " does not support objective " + to_string(obj));
  }
}

}  // namespace

MipModel build_mip1(const Instance& inst, Objective obj) {
  Builder b(inst, "mip1", obj, -1);
  b.model().big_m = obj == Objective::kMakespan ? big_m1(inst.num_vertices())
                                                : big_m2(inst.num_edges());
  b.times(VarKind::kContinuous, kInf);
  b.order_vars();
  b.time_links(b.model().big_m);
  b.order_structure(true);
  b.goal(obj);
  return std::move(b.model());
}

MipModel build_mip2(const Instance& inst) {
  Builder b(inst, "mip2", Objective::kMakespan, -1);
  const double big_m = big_m1(inst.num_vertices());
  b.model().big_m = big_m;
  b.times(VarKind::kContinuous, kInf);
  b.order_vars();
  std::vector<std::pair<int, int>> pairs = b.unordered_pairs();
  // Only the pairs are needed; the ordered variables were a scratch index.
  b.model().variables.resize(b.t().size());
  for (auto [e, f] : pairs) {
    int y = b.var("y_" + std::to_string(e) + "_" + std::to_string(f), VarKind::kBinary,
                  VarRole::kDisjunction);
    double a = angle_between(inst, e, f);
    // y = 0: f after e; y = 1: e after f.
    b.row("disjunction", {{b.t()[f], 1.0}, {b.t()[e], -1.0}, {y, big_m}}, Sense::kGe, a);
    b.row("disjunction", {{b.t()[e], 1.0}, {b.t()[f], -1.0}, {y, -big_m}}, Sense::kGe,
          a - big_m);
  }
  b.x().clear();
  b.goal(Objective::kMakespan);
  return std::move(b.model());
}

MipModel build_mip3(const Instance& inst, Objective obj) {
  require(obj != Objective::kMakespan, "mip3", obj);
  Builder b(inst, "mip3", obj, -1);
  b.model().big_m = big_m2(inst.num_edges());
  b.order_vars();
  b.order_structure(true);
  b.model().lazy_families.push_back(
      {"directed_cycle",
       "for every cycle e_0 .. e_{k-1} of edges: x_{e_{k-1},e_0} + sum x_{e_i,e_{i+1}} <= k-1",
       {}});
  b.goal(obj);
  return std::move(b.model());
}

MipModel build_cp1(const Instance& inst, int scale) {
  if (scale < 0 || scale > 12) throw Error(ErrorKind::kInvalidArgument, "scale must be in [0, 12]");
  Builder b(inst, "cp1", Objective::kMakespan, scale);
  b.model().big_m = b.q(big_m1(inst.num_vertices()));
  b.times(VarKind::kInteger, b.model().big_m);
  b.order_vars();
  std::vector<std::pair<int, int>> pairs = b.unordered_pairs();
  b.model().variables.resize(b.t().size());
  b.x().clear();
  int k = 0;
  for (auto [e, f] : pairs) {
    b.model().abs_constraints.push_back(
        {"abs_" + std::to_string(k++), b.t()[f], b.t()[e], b.q(angle_between(inst, e, f))});
  }
  b.goal(Objective::kMakespan);
  return std::move(b.model());
}

MipModel build_cp2(const Instance& inst, Objective obj, int scale) {
  require(obj != Objective::kMakespan, "cp2", obj);
  if (scale < 0 || scale > 12) throw Error(ErrorKind::kInvalidArgument, "scale must be in [0, 12]");
  Builder b(inst, "cp2", obj, scale);
  const int m = inst.num_edges();
  b.order_vars();
  std::vector<int> o;
  for (int e = 0; e < m; ++e) {
    o.push_back(b.var("o_" + std::to_string(e), VarKind::kInteger, VarRole::kPosition, 0.0,
                      m - 1.0));
  }
  b.order_structure(false);
  int k = 0;
  for (const auto& [pair, x] : b.x()) {
    Constraint body{"", "order_gap", {{o[pair.second], 1.0}, {o[pair.first], -1.0}}, Sense::kGe,
                    1.0};
    b.model().conditionals.push_back({"cond_" + std::to_string(k++), x, body});
  }
  b.goal(obj);
  return std::move(b.model());
}

MipModel build(const std::string& formulation, const Instance& inst, Objective obj) {
  if (formulation == "mip1") return build_mip1(inst, obj);
  if (formulation == "mip3") return build_mip3(inst, obj);
  if (formulation == "cp2") return build_cp2(inst, obj);
  if (formulation == "mip2" || formulation == "cp1") {
    require(obj == Objective::kMakespan, formulation, obj);
    return formulation == "mip2" ? build_mip2(inst) : build_cp1(inst);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown formulation '" + formulation + "'");
}

namespace {

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == std::round(x) && std::fabs(x) < 1e15) {
    return std::to_string(static_cast<long long>(x));
  }
  return format_number(x);
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::kLe:
      return "<=";
    case Sense::kGe:
      return ">=";
    case Sense::kEq:
      return "=";
  }
  return "";
}

void write_terms(std::ostream& out, const MipModel& m, const std::vector<Term>& terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % 8 == 0) out << "\n  ";
    double c = terms[i].coef;
    const char* sign = c < 0 ? "-" : "+";
    if (i == 0) {
      out << (c < 0 ? " -" : "");
    } else {
      out << " " << sign;
    }
    double mag = std::fabs(c);
    out << " ";
    if (mag != 1.0) out << num(mag) << " ";
    out << m.variables[terms[i].var].name;
  }
}

}  // namespace

std::string emit(const MipModel& m, Format format) {
  if (format == Format::kPureLp && (!m.conditionals.empty() || !m.abs_constraints.empty())) {
    throw Error(ErrorKind::kUnrepresentable,
                m.formulation + " has native conditional constraints that plain LP cannot hold");
  }
  std::ostringstream out;
  out << "\\ msc model " << m.formulation << "\n";
  out << "\\ objective " << to_string(m.objective) << "\n";
  out << "\\ big_M " << num(m.big_m) << "\n";
  if (m.integerized) out << "\\ scale " << m.scale << "\n";
  out << "Minimize\n obj:";
  write_terms(out, m, m.goal);
  out << "\nSubject To\n";
  for (const Constraint& c : m.constraints) {
    out << " " << c.name << ":";
    write_terms(out, m, c.terms);
    out << " " << sense_text(c.sense) << " " << num(c.rhs) << "\n";
  }
  bool any_bounds = false, any_bin = false, any_int = false;
  for (const Variable& v : m.variables) {
    any_bounds |= v.kind != VarKind::kBinary;
    any_bin |= v.kind == VarKind::kBinary;
    any_int |= v.kind == VarKind::kInteger;
  }
  if (any_bounds) {
    out << "Bounds\n";
    for (const Variable& v : m.variables) {
      if (v.kind == VarKind::kBinary) continue;
      if (std::isinf(v.ub)) {
        out << " " << v.name << " >= " << num(v.lb) << "\n";
      } else {
        out << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
      }
    }
  }
  if (any_bin) {
    out << "Binaries\n";
    for (const Variable& v : m.variables) {
      if (v.kind == VarKind::kBinary) out << " " << v.name << "\n";
    }
  }
  if (any_int) {
    out << "Generals\n";
    for (const Variable& v : m.variables) {
      if (v.kind == VarKind::kInteger) out << " " << v.name << "\n";
    }
  }
  out << "End\n";
  if (format == Format::kLp) {
    for (const LazyFamily& f : m.lazy_families) {
      out << "\\LAZY " << f.tag << " vertices:";
      if (f.vertices.empty()) out << " all";
      for (int v : f.vertices) out << " " << v;
      out << " | " << f.rule << "\n";
    }
    for (const Conditional& c : m.conditionals) {
      out << "\\CONDITIONAL " << c.name << ": " << m.variables[c.indicator].name << " = 1 ->";
      write_terms(out, m, c.body.terms);
      out << " " << sense_text(c.body.sense) << " " << num(c.body.rhs) << "\n";
    }
    for (const AbsConstraint& a : m.abs_constraints) {
      out << "\\CONDITIONAL " << a.name << ": abs(" << m.variables[a.a].name << " - "
          << m.variables[a.b].name << ") >= " << num(a.rhs) << "\n";
    }
  }
  return out.str();
}

Counts summarize(const MipModel& m) {
  Counts c;
  c.variables = static_cast<int>(m.variables.size());
  for (const Variable& v : m.variables) {
    c.binaries += v.kind == VarKind::kBinary;
    c.generals += v.kind == VarKind::kInteger;
  }
  c.constraints = static_cast<int>(m.constraints.size());
  c.lazy = static_cast<int>(m.lazy_families.size());
  c.conditional = static_cast<int>(m.conditionals.size() + m.abs_constraints.size());
  c.objective_terms = static_cast<int>(m.goal.size());
  return c;
}

namespace {

bool is_name(const std::string& tok) {
  return !tok.empty() && (std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_') &&
         tok != "inf";
}

}  // namespace

Counts parse_counts(const std::string& text) {
  Counts c;
  std::istringstream in(text);
  std::string line;
  enum { kNone, kObj, kRows, kBounds, kBin, kGen, kEnd } section = kNone;
  std::set<std::string> names;
  while (std::getline(in, line)) {
    if (line.rfind("\\LAZY", 0) == 0) {
      ++c.lazy;
      continue;
    }
    if (line.rfind("\\CONDITIONAL", 0) == 0) {
      ++c.conditional;
      continue;
    }
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize") { section = kObj; continue; }
    if (line == "Subject To") { section = kRows; continue; }
    if (line == "Bounds") { section = kBounds; continue; }
    if (line == "Binaries") { section = kBin; continue; }
    if (line == "Generals") { section = kGen; continue; }
    if (line == "End") { section = kEnd; continue; }
    std::istringstream tokens(line);
    std::string tok;
    bool first = true;
    while (tokens >> tok) {
      bool label = tok.back() == ':';
      if (section == kRows && first && label && line[0] == ' ' && line[1] != ' ') ++c.constraints;
      first = false;
      if (label || !is_name(tok)) continue;
      if (section == kObj) ++c.objective_terms;
      if (section == kBounds || section == kBin || section == kGen) names.insert(tok);
      if (section == kBin) ++c.binaries;
      if (section == kGen) ++c.generals;
    }
  }
  c.variables = static_cast<int>(names.size());
  return c;
}

std::vector<double> assignment_from_schedule(const MipModel& m, const Instance& inst,
                                             const ScanCover& sc) {
  const double factor = m.integerized ? std::pow(10.0, m.scale) : 1.0;
  std::map<std::string, double> value;
  for (int e = 0; e < inst.num_edges(); ++e) {
    value["t_" + std::to_string(e)] =
        m.integerized ? std::round(sc.times[e] * factor) : sc.times[e];
  }
  InducedOrder ord = induce_order(inst, sc);
  for (const auto& seq : ord.sequence) {
    for (size_t i = 1; i < seq.size(); ++i) {
      value["x_" + std::to_string(seq[i - 1]) + "_" + std::to_string(seq[i])] = 1.0;
    }
  }
  std::vector<int> rank(inst.num_edges());
  {
    std::vector<int> seq(inst.num_edges());
    for (int e = 0; e < inst.num_edges(); ++e) seq[e] = e;
    std::stable_sort(seq.begin(), seq.end(),
                     [&](int a, int b) { return sc.times[a] < sc.times[b]; });
    for (int k = 0; k < inst.num_edges(); ++k) rank[seq[k]] = k;
  }
  for (int e = 0; e < inst.num_edges(); ++e) value["o_" + std::to_string(e)] = rank[e];
  for (int e = 0; e < inst.num_edges(); ++e) {
    for (int f = e + 1; f < inst.num_edges(); ++f) {
      value["y_" + std::to_string(e) + "_" + std::to_string(f)] =
          sc.times[e] > sc.times[f] ? 1.0 : 0.0;
    }
  }
  std::vector<double> out(m.variables.size(), 0.0);
  int aux = -1;
  for (size_t i = 0; i < m.variables.size(); ++i) {
    if (m.variables[i].role == VarRole::kAuxMax) {
      aux = static_cast<int>(i);
      continue;
    }
    auto it = value.find(m.variables[i].name);
    if (it != value.end()) out[i] = it->second;
  }
  if (aux >= 0) {
    double z = 0.0;
    for (const Constraint& c : m.constraints) {
      if (c.family != "minmax") continue;
      double rest = 0.0, zc = 0.0;
      for (const Term& t : c.terms) {
        if (t.var == aux) {
          zc += t.coef;
        } else {
          rest += t.coef * out[t.var];
        }
      }
      z = std::max(z, (c.rhs - rest) / zc);
    }
    out[aux] = z;
  }
  return out;
}

std::vector<std::string> violations(const MipModel& m, const std::vector<double>& values,
                                    double tol) {
  auto lhs = [&](const std::vector<Term>& terms) {
    double s = 0.0;
    for (const Term& t : terms) s += t.coef * values[t.var];
    return s;
  };
  auto holds = [&](const Constraint& c) {
    double l = lhs(c.terms);
    switch (c.sense) {
      case Sense::kLe:
        return l <= c.rhs + tol;
      case Sense::kGe:
        return l >= c.rhs - tol;
      case Sense::kEq:
        return std::fabs(l - c.rhs) <= tol;
    }
    return false;
  };
  std::vector<std::string> bad;
  for (size_t i = 0; i < m.variables.size(); ++i) {
    if (values[i] < m.variables[i].lb - tol || values[i] > m.variables[i].ub + tol) {
      bad.push_back(m.variables[i].name);
    }
  }
  for (const Constraint& c : m.constraints) {
    if (!holds(c)) bad.push_back(c.name);
  }
  for (const Conditional& c : m.conditionals) {
    if (values[c.indicator] > 0.5 && !holds(c.body)) bad.push_back(c.name);
  }
  for (const AbsConstraint& a : m.abs_constraints) {
    if (std::fabs(values[a.a] - values[a.b]) < a.rhs - tol) bad.push_back(a.name);
  }
  return bad;
}

double goal_value(const MipModel& m, const std::vector<double>& values) {
  double s = 0.0;
  for (const Term& t : m.goal) s += t.coef * values[t.var];
  return s;
}

}  // namespace msc::models
