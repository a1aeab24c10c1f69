#pragma once

// Big-M sequencing model over immediate-successor variables x_i_j_d.

#include <algorithm>

#include "dsts/core.hpp"
#include "dsts/milp/model.hpp"

namespace dsts::milp {

inline Cost bigm_constant(const Instance& inst) {
  Time longest = 0;
  for (const Trailer& t : inst.trailers) longest = std::max(longest, t.p + t.delta);
  return static_cast<Cost>(inst.horizon) + longest;
}

/// With `literal` off, each served trailer must also complete by its due date.
inline Model build_bigm(const Instance& inst, bool literal = false) {
  Model m;
  m.name = literal ? "bigm-literal" : "bigm";
  const int n = inst.size();
  const int D = inst.docks;
  const Time T = inst.horizon;

  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int d = 0; d < D; ++d)
        if (i != j || i == 0) m.add_binary(names::x(i, j, d));
  for (int i = 1; i <= n; ++i)
    for (int d = 0; d < D; ++d) m.add_binary(names::y(i, d));
  for (int j = 1; j <= n; ++j) m.add_binary(names::z(j));
  for (int j = 1; j <= n; ++j) m.add_continuous(names::C(j), 0, Rational(T - 1));
  for (int j = 1; j <= n; ++j) m.add_continuous(names::S(j));

  for (const Trailer& t : inst.trailers) m.add_objective(names::S(t.id), t.f);
  for (const Trailer& t : inst.trailers) m.add_objective(names::z(t.id), t.g);

  const std::string id = "_";
  for (int j = 1; j <= n; ++j) {
    LinearConstraint c{"eq1_" + std::to_string(j), {}, Sense::Eq, 1, "eq1"};
    for (int d = 0; d < D; ++d) c.terms.push_back({names::y(j, d), 1});
    c.terms.push_back({names::z(j), 1});
    m.add_constraint(c);
  }
  for (int i = 1; i <= n; ++i)
    for (int d = 0; d < D; ++d) {
      LinearConstraint c{"eq2_" + std::to_string(i) + id + std::to_string(d), {}, Sense::Eq, 0, "eq2"};
      for (int j = 0; j <= n; ++j)
        if (j != i) c.terms.push_back({names::x(j, i, d), 1});
      c.terms.push_back({names::y(i, d), -1});
      m.add_constraint(c);
    }
  for (int i = 1; i <= n; ++i)
    for (int d = 0; d < D; ++d) {
      LinearConstraint c{"eq3_" + std::to_string(i) + id + std::to_string(d), {}, Sense::Eq, 0, "eq3"};
      for (int j = 0; j <= n; ++j)
        if (j != i) c.terms.push_back({names::x(i, j, d), 1});
      c.terms.push_back({names::y(i, d), -1});
      m.add_constraint(c);
    }
  const Cost M = bigm_constant(inst);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const Trailer& tj = inst.real(j);
      for (int d = 0; d < D; ++d) {
        // C_i + p_j + delta_j - C_j <= M (1 - x_ijd)
        m.add_constraint({"eq4_" + std::to_string(i) + id + std::to_string(j) + id + std::to_string(d),
                          {{names::C(i), 1}, {names::C(j), -1}, {names::x(i, j, d), M}},
                          Sense::Le,
                          M - tj.p - tj.delta,
                          "eq4"});
      }
    }
  for (const Trailer& t : inst.trailers) {
    const Cost ready = t.r + t.p + t.delta;
    m.add_constraint({"eq5_" + std::to_string(t.id), {{names::C(t.id), 1}, {names::z(t.id), ready}}, Sense::Ge, ready,
                      "eq5"});
  }
  {
    LinearConstraint out{"eq6", {}, Sense::Eq, D, "eq6"};
    LinearConstraint in{"eq7", {}, Sense::Eq, D, "eq7"};
    for (int j = 0; j <= n; ++j)
      for (int d = 0; d < D; ++d) {
        out.terms.push_back({names::x(0, j, d), 1});
        in.terms.push_back({names::x(j, 0, d), 1});
      }
    m.add_constraint(out);
    m.add_constraint(in);
  }
  for (const Trailer& t : inst.trailers) {
    const Cost ready = t.r + t.p + t.delta;
    m.add_constraint({"eq9_" + std::to_string(t.id), {{names::S(t.id), 1}, {names::C(t.id), -1}}, Sense::Ge, -ready,
                      "eq9"});
  }
  if (!literal) {
    for (const Trailer& t : inst.trailers) {
      m.add_constraint({"due_" + std::to_string(t.id),
                        {{names::C(t.id), 1}, {names::z(t.id), static_cast<Cost>(t.due) - T}},
                        Sense::Le,
                        t.due,
                        "due"});
    }
  }
  return m;
}

}  // namespace dsts::milp
