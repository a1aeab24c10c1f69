#pragma once

// Dantzig-Wolfe columns, restricted master and pricing problem.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsts/construct.hpp"
#include "dsts/core.hpp"
#include "dsts/io.hpp"
#include "dsts/milp/arctime.hpp"
#include "dsts/milp/model.hpp"
#include "dsts/rational.hpp"

namespace dsts::dw {

using milp::Arc;
using milp::Assignment;
using milp::LinearConstraint;
using milp::Model;
using milp::Sense;
namespace names = milp::names;

/// A column: arc incidence plus served indicators, with its primal cost.
struct PseudoSchedule {
  std::vector<Arc> arcs;  // sorted
  std::vector<char> h;    // h[j-1] = 1 when trailer j is served
  Cost cost = 0;

  [[nodiscard]] bool served(int j) const { return h[static_cast<std::size_t>(j - 1)] != 0; }
  friend bool operator==(const PseudoSchedule&, const PseudoSchedule&) = default;
};

/// Waiting on real-successor arcs plus non-service penalties of unserved trailers.
inline Cost column_cost(const Instance& inst, const std::vector<Arc>& arcs, const std::vector<char>& h) {
  Cost c = 0;
  for (const Arc& a : arcs)
    if (a.j != 0) c += inst.real(a.j).f * static_cast<Cost>(a.t - inst.real(a.j).r);
  for (const Trailer& t : inst.trailers)
    if (!h[static_cast<std::size_t>(t.id - 1)]) c += t.g;
  return c;
}

inline PseudoSchedule column_from_schedule(const Instance& inst, const Schedule& s) {
  if (auto v = check_schedule(inst, s); !v.empty()) throw InfeasibleSchedule(std::move(v));
  PseudoSchedule col;
  col.arcs = milp::schedule_arcs(inst, s);
  col.h.assign(static_cast<std::size_t>(inst.size()), 0);
  for (const DockRun& run : s.runs)
    for (const Entry& e : run.entries) col.h[static_cast<std::size_t>(e.trailer - 1)] = 1;
  col.cost = column_cost(inst, col.arcs, col.h);
  return col;
}

inline PseudoSchedule warm_start_column(const Instance& inst) {
  return column_from_schedule(inst, construct(ConstructMethod::MinArrivalVertical, inst));
}

/// The column as a point of the pricing model (x and h variables).
inline Assignment column_assignment(const PseudoSchedule& col) {
  Assignment a;
  for (const Arc& arc : col.arcs) a[arc.name()] = 1;
  for (std::size_t k = 0; k < col.h.size(); ++k)
    if (col.h[k]) a[names::h(static_cast<int>(k) + 1)] = 1;
  return a;
}

inline Rational entering(const PseudoSchedule& col, int j) {
  std::int64_t n = 0;
  for (const Arc& a : col.arcs) n += a.j == j;
  return n;
}

inline Rational leaving(const PseudoSchedule& col, int j) {
  std::int64_t n = 0;
  for (const Arc& a : col.arcs) n += a.i == j;
  return n;
}

// ---------------------------------------------------------------------------
// Column text

inline std::string write_columns(const std::vector<PseudoSchedule>& cols) {
  std::string out;
  for (const PseudoSchedule& c : cols) {
    out += "column\n";
    for (const Arc& a : c.arcs)
      out += "arc " + std::to_string(a.i) + ' ' + std::to_string(a.j) + ' ' + std::to_string(a.d) + ' ' +
             std::to_string(a.t) + '\n';
    out += "h";
    for (std::size_t k = 0; k < c.h.size(); ++k)
      if (c.h[k]) out += ' ' + std::to_string(k + 1);
    out += "\nend\n";
  }
  return out;
}

/// Costs are recomputed from the instance.
inline std::vector<PseudoSchedule> read_columns(const Instance& inst, std::string_view text) {
  std::vector<PseudoSchedule> out;
  std::optional<PseudoSchedule> cur;
  const auto lines = ::dsts::detail::split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const int lineno = static_cast<int>(k) + 1;
    const auto f = ::dsts::detail::split_ws(lines[k]);
    if (f.empty()) continue;
    if (f[0] == "column") {
      if (cur) throw ParseError(lineno, "nested 'column'");
      cur.emplace();
      cur->h.assign(static_cast<std::size_t>(inst.size()), 0);
    } else if (!cur) {
      throw ParseError(lineno, "expected 'column'");
    } else if (f[0] == "arc") {
      Arc a;
      if (f.size() != 5 || !::dsts::detail::parse_int(f[1], a.i) || !::dsts::detail::parse_int(f[2], a.j) ||
          !::dsts::detail::parse_int(f[3], a.d) || !::dsts::detail::parse_int(f[4], a.t))
        throw ParseError(lineno, "expected 'arc <i> <j> <d> <t>'");
      if (a.i < 0 || a.j < 0 || a.i > inst.size() || a.j > inst.size() || a.d < 0 || a.d >= inst.docks)
        throw ParseError(lineno, "arc index out of range");
      cur->arcs.push_back(a);
    } else if (f[0] == "h") {
      for (std::size_t q = 1; q < f.size(); ++q) {
        int j = 0;
        if (!::dsts::detail::parse_int(f[q], j) || !inst.has_trailer(j)) throw ParseError(lineno, "bad trailer id in h");
        cur->h[static_cast<std::size_t>(j - 1)] = 1;
      }
    } else if (f[0] == "end") {
      std::sort(cur->arcs.begin(), cur->arcs.end());
      cur->cost = column_cost(inst, cur->arcs, cur->h);
      out.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw ParseError(lineno, "unexpected '" + std::string(f[0]) + "'");
    }
  }
  if (cur) throw ParseError(static_cast<int>(lines.size()) + 1, "missing section 'end'");
  return out;
}

// ---------------------------------------------------------------------------
// Duals

/// Absent entries are zero.
struct DualValues {
  std::map<int, Rational> u1;  // entering rows, per real trailer
  std::map<int, Rational> u2;  // leaving rows, per real trailer
  Rational alpha = 0;          // convexity row
  std::map<Arc, Rational> v;   // linking rows

  [[nodiscard]] Rational u1_of(int j) const { return lookup(u1, j); }
  [[nodiscard]] Rational u2_of(int j) const { return lookup(u2, j); }
  [[nodiscard]] Rational v_of(const Arc& a) const { return lookup(v, a); }

 private:
  template <typename M, typename K>
  static Rational lookup(const M& m, const K& k) {
    auto it = m.find(k);
    return it == m.end() ? Rational(0) : it->second;
  }
};

inline DualValues read_duals(std::string_view text) {
  DualValues out;
  const auto lines = ::dsts::detail::split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const int lineno = static_cast<int>(k) + 1;
    const auto f = ::dsts::detail::split_ws(lines[k]);
    if (f.empty() || f[0].front() == '#') continue;
    auto value = [&](std::string_view s) {
      try {
        return Rational::parse(s);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    };
    auto id = [&](std::string_view s) {
      int v = 0;
      if (!::dsts::detail::parse_int(s, v)) throw ParseError(lineno, "bad index '" + std::string(s) + "'");
      return v;
    };
    if ((f[0] == "u1" || f[0] == "u2") && f.size() == 3) {
      (f[0] == "u1" ? out.u1 : out.u2)[id(f[1])] = value(f[2]);
    } else if (f[0] == "alpha" && f.size() == 2) {
      out.alpha = value(f[1]);
    } else if (f[0] == "v" && f.size() == 6) {
      out.v[Arc{id(f[1]), id(f[2]), id(f[3]), id(f[4])}] = value(f[5]);
    } else {
      throw ParseError(lineno, "expected 'u1 j val', 'u2 j val', 'alpha val' or 'v i j d t val'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restricted master

inline Model build_rmp(const Instance& inst, const std::vector<PseudoSchedule>& columns) {
  if (columns.empty()) throw std::invalid_argument("restricted master needs at least one column");
  Model m;
  m.name = "rmp";
  std::vector<Arc> space = milp::arc_space(inst, true);
  for (const PseudoSchedule& c : columns) space.insert(space.end(), c.arcs.begin(), c.arcs.end());
  const milp::ArcSet arcs(std::move(space));

  const int K = static_cast<int>(columns.size());
  for (int k = 1; k <= K; ++k) m.add_continuous(names::l(k));
  for (const Arc& a : arcs.arcs()) m.add_binary(a.name());
  for (int k = 1; k <= K; ++k) m.add_objective(names::l(k), columns[static_cast<std::size_t>(k - 1)].cost);

  for (int j = 1; j <= inst.size(); ++j) {
    LinearConstraint enter{"rmp_enter_" + std::to_string(j), {}, Sense::Le, 1, "rmp_enter"};
    LinearConstraint leave{"rmp_leave_" + std::to_string(j), {}, Sense::Le, 1, "rmp_leave"};
    for (int k = 1; k <= K; ++k) {
      const PseudoSchedule& c = columns[static_cast<std::size_t>(k - 1)];
      enter.terms.push_back({names::l(k), entering(c, j)});
      leave.terms.push_back({names::l(k), leaving(c, j)});
    }
    m.add_constraint(enter);
    m.add_constraint(leave);
  }
  LinearConstraint convexity{"convexity", {}, Sense::Eq, 1, "convexity"};
  for (int k = 1; k <= K; ++k) convexity.terms.push_back({names::l(k), 1});
  m.add_constraint(convexity);

  std::map<Arc, std::vector<int>> users;
  for (int k = 1; k <= K; ++k)
    for (const Arc& a : columns[static_cast<std::size_t>(k - 1)].arcs) users[a].push_back(k);
  for (const Arc& a : arcs.arcs()) {
    LinearConstraint link{"rmp_link_" + std::to_string(a.i) + '_' + std::to_string(a.j) + '_' + std::to_string(a.d) +
                              '_' + std::to_string(a.t),
                          {{a.name(), 1}},
                          Sense::Eq,
                          0,
                          "rmp_link"};
    if (auto it = users.find(a); it != users.end())
      for (int k : it->second) link.terms.push_back({names::l(k), -1});
    m.add_constraint(link);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pricing

struct PricingOptions {
  bool tight_dummy_degree = false;  // per-dock dummy degree <= 1 instead of <= |D|
  bool symmetry = true;
  std::vector<milp::CutFamily> cuts;
};

/// Pricing objective coefficient of one arc.
inline Rational arc_price(const Instance& inst, const DualValues& duals, const Arc& a) {
  Rational c = 0;
  if (a.j != 0) {
    const Trailer& tj = inst.real(a.j);
    c += Rational(tj.f * static_cast<Cost>(a.t - tj.r)) - duals.u1_of(a.j);
  }
  if (a.i != 0) c -= duals.u2_of(a.i);
  c -= duals.v_of(a);
  return c;
}

inline Model build_pricing(const Instance& inst, const DualValues& duals, const PricingOptions& opts = {}) {
  Model m;
  m.name = "pricing";
  const milp::ArcSet arcs(milp::arc_space(inst, true));
  const int n = inst.size();
  const int D = inst.docks;

  for (const Arc& a : arcs.arcs()) m.add_binary(a.name());
  for (int j = 1; j <= n; ++j) m.add_binary(names::h(j));

  Rational offset = -duals.alpha;
  for (const Arc& a : arcs.arcs()) m.add_objective(a.name(), arc_price(inst, duals, a));
  for (const Trailer& t : inst.trailers) {
    m.add_objective(names::h(t.id), -t.g);
    offset += t.g;
  }
  m.objective_offset = offset;

  const Rational degree_cap = opts.tight_dummy_degree ? 1 : D;
  for (int d = 0; d < D; ++d) {
    LinearConstraint out{"pp1_" + std::to_string(d), {}, Sense::Le, degree_cap, "pp1"};
    LinearConstraint in{"pp2_" + std::to_string(d), {}, Sense::Le, degree_cap, "pp2"};
    for (int j = 1; j <= n; ++j) {
      milp::detail::add_sum(out, arcs, 0, j, d);
      milp::detail::add_sum(in, arcs, j, 0, d);
    }
    m.add_constraint(out);
    m.add_constraint(in);
  }
  for (int d = 0; d < D; ++d)
    for (int j = 1; j <= n; ++j) {
      LinearConstraint flow{"pp3_" + std::to_string(d) + '_' + std::to_string(j), {}, Sense::Eq, 0, "pp3"};
      for (int i = 0; i <= n; ++i) {
        if (i == j) continue;
        milp::detail::add_sum(flow, arcs, i, j, d, 1);
        milp::detail::add_sum(flow, arcs, j, i, d, -1);
      }
      m.add_constraint(flow);
    }
  {
    LinearConstraint eq4{"pp4", {}, Sense::Eq, D, "pp4"};
    for (const Arc& a : arcs.arcs())
      if (a.i != 0 && a.j != 0) eq4.terms.push_back({a.name(), -1});
    for (int j = 1; j <= n; ++j) eq4.terms.push_back({names::h(j), 1});
    m.add_constraint(eq4);
  }
  // pp5: arcs into j at a given (i, t), summed over docks, need h_j
  {
    std::map<std::tuple<int, int, Time>, LinearConstraint> rows;
    for (const Arc& a : arcs.arcs()) {
      if (a.j == 0) continue;
      auto [it, fresh] = rows.try_emplace({a.i, a.j, a.t});
      if (fresh)
        it->second = {"pp5_" + std::to_string(a.i) + '_' + std::to_string(a.j) + '_' + std::to_string(a.t),
                      {{names::h(a.j), -1}},
                      Sense::Le,
                      0,
                      "pp5"};
      it->second.terms.push_back({a.name(), 1});
    }
    for (auto& [key, row] : rows) m.add_constraint(row);
  }
  for (int i = 1; i <= n; ++i) {
    LinearConstraint eq6{"pp6_" + std::to_string(i), {{names::h(i), -1}}, Sense::Ge, 0, "pp6"};
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      for (int d = 0; d < D; ++d) milp::detail::add_sum(eq6, arcs, i, j, d);
    }
    m.add_constraint(eq6);
  }
  for (const LinearConstraint& c : milp::link_constraints(inst, arcs)) m.add_constraint(c);
  if (opts.symmetry)
    for (const LinearConstraint& c : milp::symmetry_constraints(inst, arcs)) m.add_constraint(c);
  for (milp::CutFamily f : opts.cuts)
    for (const LinearConstraint& c : milp::valid_inequalities(inst, f, arcs, milp::ServedVar::H)) m.add_constraint(c);
  return m;
}

/// Pricing objective at the column; negative means the column is attractive.
inline Rational reduced_cost(const Instance& /*inst*/, const DualValues& duals, const PseudoSchedule& col) {
  Rational rc = Rational(col.cost) - duals.alpha;
  for (const Arc& a : col.arcs) {
    if (a.j != 0) rc -= duals.u1_of(a.j);
    if (a.i != 0) rc -= duals.u2_of(a.i);
    rc -= duals.v_of(a);
  }
  return rc;
}

inline std::optional<Arc> parse_arc_name(std::string_view name) {
  if (name.substr(0, 2) != "x_") return std::nullopt;
  int parts[4];
  std::size_t pos = 2;
  for (int k = 0; k < 4; ++k) {
    const std::size_t end = k < 3 ? name.find('_', pos) : name.size();
    if (end == std::string_view::npos) return std::nullopt;
    if (!::dsts::detail::parse_int(name.substr(pos, end - pos), parts[k])) return std::nullopt;
    pos = end + 1;
  }
  if (pos != name.size() + 1) return std::nullopt;
  return Arc{parts[0], parts[1], parts[2], parts[3]};
}

/// Violated members of the three pricing cut families at `point` (x and h values).
inline std::vector<milp::Separated> separate_pricing_cuts(const Instance& inst, const Assignment& point,
                                                          const Rational& tol = Rational(1, 1000000)) {
  std::vector<Arc> space = milp::arc_space(inst, true);
  for (const auto& [var, value] : point)
    if (auto a = parse_arc_name(var); a && !(value == Rational(0))) space.push_back(*a);
  const milp::ArcSet arcs(std::move(space));
  std::vector<LinearConstraint> all;
  for (milp::CutFamily f : {milp::CutFamily::PpCut1, milp::CutFamily::PpCut2, milp::CutFamily::PpCutDegree}) {
    auto fam = milp::valid_inequalities(inst, f, arcs, milp::ServedVar::H);
    all.insert(all.end(), std::make_move_iterator(fam.begin()), std::make_move_iterator(fam.end()));
  }
  return milp::separate(all, point, tol);
}

}  // namespace dsts::dw
