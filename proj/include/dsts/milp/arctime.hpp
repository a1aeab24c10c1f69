#pragma once

// Arc-time-dock-indexed model: x_i_j_d_t = 1 when dock d moves from trailer i
// to trailer j at period t (the start of j, or the completion of i when j = 0).

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dsts/core.hpp"
#include "dsts/milp/model.hpp"

namespace dsts::milp {

struct Arc {
  int i = 0;
  int j = 0;
  int d = 0;
  Time t = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
  [[nodiscard]] std::string name() const { return names::x(i, j, d, t); }
};

/// Surviving start periods [lo, hi] of arc (i, j) after preprocessing, if any.
inline std::optional<std::pair<Time, Time>> arc_window(const Instance& inst, int i, int j) {
  const Time T = inst.horizon;
  const Trailer tj = inst.trailer(j);
  Time lo = 0;
  Time hi = T - 1;
  if (i == 0) {
    // First trailer on a dock starts on arrival and must finish within the horizon.
    if (tj.r + tj.delta + tj.p > std::min(tj.due, T - 1)) return std::nullopt;
    lo = hi = tj.r;
  } else {
    const Trailer& ti = inst.real(i);
    lo = std::max({lo, tj.r, ti.r + ti.delta + ti.p});
    hi = std::min({hi, tj.due, tj.due - tj.delta - tj.p});
  }
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

/// Every (i, j, d, t) index of the unreduced model, in lexicographic order.
inline std::vector<Arc> full_arc_space(const Instance& inst) {
  std::vector<Arc> out;
  for (int i = 0; i <= inst.size(); ++i)
    for (int j = 0; j <= inst.size(); ++j) {
      if (i == j) continue;
      for (int d = 0; d < inst.docks; ++d)
        for (Time t = 0; t < inst.horizon; ++t) out.push_back({i, j, d, t});
    }
  return out;
}

inline std::vector<Arc> arc_space(const Instance& inst, bool preprocess = true) {
  if (!preprocess) return full_arc_space(inst);
  std::vector<Arc> out;
  for (int i = 0; i <= inst.size(); ++i)
    for (int j = 0; j <= inst.size(); ++j) {
      if (i == j) continue;
      const auto w = arc_window(inst, i, j);
      if (!w) continue;
      for (int d = 0; d < inst.docks; ++d)
        for (Time t = w->first; t <= w->second; ++t) out.push_back({i, j, d, t});
    }
  return out;
}

/// Indices removed by preprocessing.
inline std::set<Arc> eliminated_vars(const Instance& inst) {
  const auto kept = arc_space(inst, true);
  std::set<Arc> out;
  std::size_t k = 0;
  for (const Arc& a : full_arc_space(inst)) {
    if (k < kept.size() && kept[k] == a)
      ++k;
    else
      out.insert(a);
  }
  return out;
}

/// A sorted arc set with per-(i, j, d) time lookups.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& a = arcs_[k];
      auto [it, fresh] = ranges_.try_emplace(std::tuple{a.i, a.j, a.d}, k, k);
      it->second.second = k + 1;
    }
  }

  [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
  [[nodiscard]] std::size_t size() const { return arcs_.size(); }
  [[nodiscard]] bool contains(const Arc& a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

  /// Arcs with the given (i, j, d), ascending in t.
  [[nodiscard]] std::pair<const Arc*, const Arc*> range(int i, int j, int d) const {
    auto it = ranges_.find(std::tuple{i, j, d});
    if (it == ranges_.end()) return {nullptr, nullptr};
    return {arcs_.data() + it->second.first, arcs_.data() + it->second.second};
  }

  template <typename Fn>
  void for_each(int i, int j, int d, Fn&& fn) const {
    auto [b, e] = range(i, j, d);
    for (; b != e; ++b) fn(*b);
  }

 private:
  std::vector<Arc> arcs_;
  std::map<std::tuple<int, int, int>, std::pair<std::size_t, std::size_t>> ranges_;
};

// ---------------------------------------------------------------------------
// Constraint families

enum class CutFamily { ThreeCycle, OnePerDockTime, OppositeArcs, PpCut1, PpCut2, PpCutDegree };

inline const char* family_name(CutFamily f) {
  switch (f) {
    case CutFamily::ThreeCycle: return "three_cycle";
    case CutFamily::OnePerDockTime: return "one_per_dock_time";
    case CutFamily::OppositeArcs: return "opposite_arcs";
    case CutFamily::PpCut1: return "pp_cut_1";
    case CutFamily::PpCut2: return "pp_cut_2";
    case CutFamily::PpCutDegree: return "pp_cut_degree";
  }
  return "?";
}

inline constexpr std::array<CutFamily, 6> kAllFamilies{CutFamily::ThreeCycle, CutFamily::OnePerDockTime,
                                                       CutFamily::OppositeArcs, CutFamily::PpCut1,
                                                       CutFamily::PpCut2, CutFamily::PpCutDegree};

inline CutFamily parse_family(std::string_view name) {
  for (CutFamily f : kAllFamilies)
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown cut family '" + std::string(name) + "'");
}

/// How the served indicator of trailer j appears in a row: h_j, or 1 - z_j.
enum class ServedVar { H, OneMinusZ };

namespace detail {

inline void add_sum(LinearConstraint& c, const ArcSet& arcs, int i, int j, int d, const Rational& coef = 1) {
  arcs.for_each(i, j, d, [&](const Arc& a) { c.terms.push_back({a.name(), coef}); });
}

inline std::string key(std::initializer_list<int> parts) {
  std::string s;
  for (int p : parts) s += '_' + std::to_string(p);
  return s;
}

// Adds +coef * served_j to the left-hand side of a >= row.
inline void add_served(LinearConstraint& c, int j, const Rational& coef, ServedVar form) {
  if (form == ServedVar::H) {
    c.terms.push_back({names::h(j), -coef});
  } else {
    // coef * (1 - z_j) on the right-hand side
    c.terms.push_back({names::z(j), coef});
    c.rhs += coef;
  }
}

}  // namespace detail

/// x_i_0_d_t may be one only if some arc enters i at t - p_i - delta_i.
inline std::vector<LinearConstraint> symmetry_constraints(const Instance& inst, const ArcSet& arcs) {
  std::vector<LinearConstraint> out;
  for (int d = 0; d < inst.docks; ++d)
    for (int i = 1; i <= inst.size(); ++i) {
      const Trailer& ti = inst.real(i);
      arcs.for_each(i, 0, d, [&](const Arc& ret) {
        const Time pred = ret.t - ti.p - ti.delta;
        if (pred < 0) return;
        LinearConstraint c{"sym" + detail::key({i, d, ret.t}), {{ret.name(), 1}}, Sense::Le, 0, "symmetry"};
        for (int l = 0; l <= inst.size(); ++l) {
          if (l == i) continue;
          const Arc a{l, i, d, pred};
          if (arcs.contains(a)) c.terms.push_back({a.name(), -1});
        }
        out.push_back(std::move(c));
      });
    }
  return out;
}

inline std::vector<LinearConstraint> symmetry_constraints(const Instance& inst) {
  return symmetry_constraints(inst, ArcSet(arc_space(inst, true)));
}

inline std::vector<LinearConstraint> valid_inequalities(const Instance& inst, CutFamily family, const ArcSet& arcs,
                                                        ServedVar served = ServedVar::OneMinusZ) {
  std::vector<LinearConstraint> out;
  const int n = inst.size();
  const std::string fam = family_name(family);
  auto emit = [&](LinearConstraint c) {
    if (!c.terms.empty()) out.push_back(std::move(c));
  };

  switch (family) {
    case CutFamily::ThreeCycle:
      for (int d = 0; d < inst.docks; ++d)
        for (int i = 1; i <= n; ++i)
          for (int j = i + 1; j <= n; ++j)
            for (int l = i + 1; l <= n; ++l) {
              if (l == j) continue;
              LinearConstraint c{fam + detail::key({i, j, l, d}), {}, Sense::Le, 2, fam};
              detail::add_sum(c, arcs, i, j, d);
              detail::add_sum(c, arcs, j, l, d);
              detail::add_sum(c, arcs, l, i, d);
              emit(std::move(c));
            }
      break;
    case CutFamily::OnePerDockTime: {
      // Bucket arcs by (d, t): leaving a real trailer, entering a real trailer.
      std::map<std::pair<int, Time>, std::pair<LinearConstraint, LinearConstraint>> rows;
      for (const Arc& a : arcs.arcs()) {
        auto [it, fresh] = rows.try_emplace({a.d, a.t});
        auto& [leave, enter] = it->second;
        if (fresh) {
          leave = {fam + "_out" + detail::key({a.d, a.t}), {}, Sense::Le, 1, fam};
          enter = {fam + "_in" + detail::key({a.d, a.t}), {}, Sense::Le, 1, fam};
        }
        if (a.i != 0) leave.terms.push_back({a.name(), 1});
        if (a.j != 0) enter.terms.push_back({a.name(), 1});
      }
      for (auto& [k, pair] : rows) {
        emit(std::move(pair.first));
        emit(std::move(pair.second));
      }
      break;
    }
    case CutFamily::OppositeArcs:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          LinearConstraint c{fam + detail::key({i, j}), {}, Sense::Le, 1, fam};
          for (int d = 0; d < inst.docks; ++d) {
            detail::add_sum(c, arcs, i, j, d);
            detail::add_sum(c, arcs, j, i, d);
          }
          emit(std::move(c));
        }
      break;
    case CutFamily::PpCut1:
    case CutFamily::PpCut2:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          for (int d = 0; d < inst.docks; ++d) {
            LinearConstraint c{fam + detail::key({i, j, d}), {}, Sense::Le, 2, fam};
            detail::add_sum(c, arcs, i, j, d);
            if (family == CutFamily::PpCut1) {
              detail::add_sum(c, arcs, i, 0, d);
              detail::add_sum(c, arcs, j, 0, d);
            } else {
              detail::add_sum(c, arcs, 0, i, d);
              detail::add_sum(c, arcs, 0, j, d);
            }
            emit(std::move(c));
          }
        }
      break;
    case CutFamily::PpCutDegree:
      // arcs entering i plus arcs leaving j cover the served indicators of i and j
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          LinearConstraint c{fam + detail::key({i, j}), {}, Sense::Ge, 0, fam};
          for (int d = 0; d < inst.docks; ++d)
            for (int m = 0; m <= n; ++m) {
              if (m != i) detail::add_sum(c, arcs, m, i, d);
              if (m != j) detail::add_sum(c, arcs, j, m, d);
            }
          detail::add_served(c, i, 1, served);
          detail::add_served(c, j, 1, served);
          out.push_back(std::move(c));
        }
      break;
  }
  return out;
}

inline std::vector<LinearConstraint> valid_inequalities(const Instance& inst, CutFamily family) {
  return valid_inequalities(inst, family, ArcSet(arc_space(inst, true)));
}

/// x_i_j_d_t (i real) requires an arc into i no later than t - p_i - delta_i.
inline std::vector<LinearConstraint> link_constraints(const Instance& inst, const ArcSet& arcs) {
  std::vector<LinearConstraint> out;
  for (const Arc& a : arcs.arcs()) {
    if (a.i == 0) continue;
    const Trailer& ti = inst.real(a.i);
    const Time latest = a.t - ti.p - ti.delta;
    LinearConstraint c{"link" + detail::key({a.i, a.j, a.d, a.t}), {{a.name(), 1}}, Sense::Le, 0, "link"};
    for (int l = 0; l <= inst.size(); ++l) {
      if (l == a.i) continue;
      arcs.for_each(l, a.i, a.d, [&](const Arc& in) {
        if (in.t <= latest) c.terms.push_back({in.name(), -1});
      });
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model

struct ArcTimeOptions {
  bool preprocess = true;
  bool symmetry = true;
  std::vector<CutFamily> valid_ineqs;
};

inline Model build_arc_time(const Instance& inst, const ArcTimeOptions& opts = {}) {
  Model m;
  m.name = "arctime-reconstructed";
  const ArcSet arcs(arc_space(inst, opts.preprocess));
  const int n = inst.size();

  for (const Arc& a : arcs.arcs()) m.add_binary(a.name());
  for (int j = 1; j <= n; ++j) m.add_binary(names::z(j));

  for (const Arc& a : arcs.arcs()) {
    if (a.j == 0) continue;
    const Trailer& tj = inst.real(a.j);
    m.add_objective(a.name(), tj.f * static_cast<Cost>(a.t - tj.r));
  }
  for (const Trailer& t : inst.trailers) m.add_objective(names::z(t.id), t.g);

  for (int j = 1; j <= n; ++j) {
    LinearConstraint enter{"enter" + detail::key({j}), {}, Sense::Eq, 1, "enter"};
    LinearConstraint leave{"exit" + detail::key({j}), {}, Sense::Eq, 1, "exit"};
    for (int i = 0; i <= n; ++i) {
      if (i == j) continue;
      for (int d = 0; d < inst.docks; ++d) {
        detail::add_sum(enter, arcs, i, j, d);
        detail::add_sum(leave, arcs, j, i, d);
      }
    }
    enter.terms.push_back({names::z(j), 1});
    leave.terms.push_back({names::z(j), 1});
    m.add_constraint(enter);
    m.add_constraint(leave);
  }
  for (int d = 0; d < inst.docks; ++d)
    for (int j = 1; j <= n; ++j) {
      LinearConstraint flow{"flow" + detail::key({d, j}), {}, Sense::Eq, 0, "flow"};
      for (int i = 0; i <= n; ++i) {
        if (i == j) continue;
        detail::add_sum(flow, arcs, i, j, d, 1);
        detail::add_sum(flow, arcs, j, i, d, -1);
      }
      m.add_constraint(flow);
    }
  for (int d = 0; d < inst.docks; ++d) {
    LinearConstraint out{"dummy_out" + detail::key({d}), {}, Sense::Le, 1, "dummy_degree"};
    LinearConstraint in{"dummy_in" + detail::key({d}), {}, Sense::Le, 1, "dummy_degree"};
    for (int j = 1; j <= n; ++j) {
      detail::add_sum(out, arcs, 0, j, d);
      detail::add_sum(in, arcs, j, 0, d);
    }
    m.add_constraint(out);
    m.add_constraint(in);
  }
  if (!opts.preprocess) {
    for (int j = 1; j <= n; ++j) {
      const Trailer& tj = inst.real(j);
      LinearConstraint tw{"tw" + detail::key({j}), {}, Sense::Le, 0, "time_window"};
      for (int i = 0; i <= n; ++i) {
        if (i == j) continue;
        for (int d = 0; d < inst.docks; ++d)
          arcs.for_each(i, j, d, [&](const Arc& a) {
            if (a.t < tj.r || completion(a.t, tj) > inst.latest_completion(tj)) tw.terms.push_back({a.name(), 1});
          });
      }
      if (!tw.terms.empty()) m.add_constraint(tw);
    }
  }
  for (const LinearConstraint& c : link_constraints(inst, arcs)) m.add_constraint(c);
  if (opts.symmetry)
    for (const LinearConstraint& c : symmetry_constraints(inst, arcs)) m.add_constraint(c);
  for (CutFamily f : opts.valid_ineqs)
    for (const LinearConstraint& c : valid_inequalities(inst, f, arcs)) m.add_constraint(c);
  return m;
}

// ---------------------------------------------------------------------------
// Schedules as model points

enum class Formulation { BigM, ArcTime };

/// Arcs of a schedule: head arc at the first start, successor arcs at the
/// successor's start, return arc at the last completion.
inline std::vector<Arc> schedule_arcs(const Instance& inst, const Schedule& s) {
  std::vector<Arc> out;
  for (const DockRun& run : s.runs) {
    int prev = 0;
    for (const Entry& e : run.entries) {
      out.push_back({prev, e.trailer, run.dock, e.start});
      prev = e.trailer;
    }
    if (!run.entries.empty()) {
      const Entry& last = run.entries.back();
      out.push_back({last.trailer, 0, run.dock, completion(last.start, inst.real(last.trailer))});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Assignment schedule_to_assignment(const Instance& inst, const Schedule& s, Formulation form) {
  if (auto v = check_schedule(inst, s); !v.empty()) throw InfeasibleSchedule(std::move(v));
  Assignment a;
  for (int j : s.unserved) a[names::z(j)] = 1;
  if (form == Formulation::ArcTime) {
    for (const Arc& arc : schedule_arcs(inst, s)) a[arc.name()] = 1;
    return a;
  }
  for (int j : s.unserved) {
    a[names::C(j)] = 0;
    a[names::S(j)] = 0;
  }
  for (const DockRun& run : s.runs) {
    if (run.entries.empty()) {
      a[names::x(0, 0, run.dock)] = 1;
      continue;
    }
    int prev = 0;
    for (const Entry& e : run.entries) {
      const Trailer& t = inst.real(e.trailer);
      a[names::x(prev, e.trailer, run.dock)] = 1;
      a[names::y(e.trailer, run.dock)] = 1;
      a[names::z(e.trailer)] = 0;
      a[names::C(e.trailer)] = completion(e.start, t);
      a[names::S(e.trailer)] = waiting(e.start, t);
      prev = e.trailer;
    }
    a[names::x(prev, 0, run.dock)] = 1;
  }
  return a;
}

}  // namespace dsts::milp
