#pragma once

// Solver-agnostic MILP representation, LP-format export and point checking.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsts/rational.hpp"

namespace dsts::milp {

enum class VarKind { Binary, Continuous };
enum class Sense { Le, Ge, Eq };

inline const char* sense_text(Sense s) {
  switch (s) {
    case Sense::Le: return "<=";
    case Sense::Ge: return ">=";
    case Sense::Eq: return "=";
  }
  return "?";
}

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  Rational lower = 0;
  std::optional<Rational> upper;  // nullopt = +inf
};

struct LinearTerm {
  std::string var;
  Rational coef;
};

/// A constraint over variable names, independent of any Model.
struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Le;
  Rational rhs = 0;
  std::string family;
};

/// Variable values by name; absent variables read as zero.
using Assignment = std::unordered_map<std::string, Rational>;

inline Rational value_of(const Assignment& a, const std::string& var) {
  auto it = a.find(var);
  return it == a.end() ? Rational(0) : it->second;
}

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

inline Rational lhs_value(const LinearConstraint& c, const Assignment& a) {
  Rational acc = 0;
  for (const LinearTerm& t : c.terms) acc += t.coef * value_of(a, t.var);
  return acc;
}

/// Amount by which the constraint is violated at `a` (zero when satisfied).
inline Rational violation_amount(const LinearConstraint& c, const Assignment& a) {
  const Rational lhs = lhs_value(c, a);
  switch (c.sense) {
    case Sense::Le: return lhs > c.rhs ? lhs - c.rhs : Rational(0);
    case Sense::Ge: return lhs < c.rhs ? c.rhs - lhs : Rational(0);
    case Sense::Eq: return abs(lhs - c.rhs);
  }
  return 0;
}

struct Model {
  struct Row {
    std::string name;
    std::vector<std::pair<std::size_t, Rational>> terms;  // (variable index, coefficient)
    Sense sense = Sense::Le;
    Rational rhs = 0;
    std::string family;
  };

  std::string name;
  std::vector<Variable> variables;
  std::vector<std::pair<std::size_t, Rational>> objective;
  Rational objective_offset = 0;
  std::vector<Row> rows;

  std::size_t add_variable(Variable v) {
    if (index_.count(v.name)) throw std::invalid_argument("duplicate variable '" + v.name + "'");
    index_.emplace(v.name, variables.size());
    variables.push_back(std::move(v));
    return variables.size() - 1;
  }
  std::size_t add_binary(const std::string& var) { return add_variable({var, VarKind::Binary, 0, Rational(1)}); }
  std::size_t add_continuous(const std::string& var, Rational lo = 0, std::optional<Rational> hi = std::nullopt) {
    return add_variable({var, VarKind::Continuous, lo, hi});
  }

  [[nodiscard]] bool has_variable(const std::string& var) const { return index_.count(var) != 0; }
  [[nodiscard]] std::size_t index_of(const std::string& var) const {
    auto it = index_.find(var);
    if (it == index_.end()) throw std::invalid_argument("unknown variable '" + var + "'");
    return it->second;
  }

  void add_objective(const std::string& var, const Rational& coef) {
    if (coef == Rational(0)) return;
    objective.emplace_back(index_of(var), coef);
  }

  /// Terms on the same variable are merged; zero coefficients are dropped.
  void add_constraint(const LinearConstraint& c) {
    if (row_names_.count(c.name)) throw std::invalid_argument("duplicate constraint '" + c.name + "'");
    Row row{c.name, {}, c.sense, c.rhs, c.family};
    for (const LinearTerm& t : c.terms) {
      const std::size_t idx = index_of(t.var);
      auto it = std::find_if(row.terms.begin(), row.terms.end(), [&](const auto& p) { return p.first == idx; });
      if (it == row.terms.end())
        row.terms.emplace_back(idx, t.coef);
      else
        it->second += t.coef;
    }
    std::erase_if(row.terms, [](const auto& p) { return p.second == Rational(0); });
    row_names_.emplace(c.name, rows.size());
    rows.push_back(std::move(row));
  }

  [[nodiscard]] const Row* find_row(const std::string& row_name) const {
    auto it = row_names_.find(row_name);
    return it == row_names_.end() ? nullptr : &rows[it->second];
  }

  [[nodiscard]] LinearConstraint constraint(const Row& row) const {
    LinearConstraint c{row.name, {}, row.sense, row.rhs, row.family};
    for (const auto& [idx, coef] : row.terms) c.terms.push_back({variables[idx].name, coef});
    return c;
  }

  [[nodiscard]] std::vector<const Row*> family(const std::string& fam) const {
    std::vector<const Row*> out;
    for (const Row& r : rows)
      if (r.family == fam) out.push_back(&r);
    return out;
  }

  [[nodiscard]] Rational objective_value(const Assignment& a) const {
    Rational acc = objective_offset;
    for (const auto& [idx, coef] : objective) acc += coef * value_of(a, variables[idx].name);
    return acc;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> row_names_;
};

// ---------------------------------------------------------------------------
// Variable names

namespace names {

inline std::string x(int i, int j, int d, int t) {
  return "x_" + std::to_string(i) + '_' + std::to_string(j) + '_' + std::to_string(d) + '_' + std::to_string(t);
}
inline std::string x(int i, int j, int d) {
  return "x_" + std::to_string(i) + '_' + std::to_string(j) + '_' + std::to_string(d);
}
inline std::string y(int i, int d) { return "y_" + std::to_string(i) + '_' + std::to_string(d); }
inline std::string z(int j) { return "z_" + std::to_string(j); }
inline std::string C(int j) { return "C_" + std::to_string(j); }
inline std::string S(int j) { return "S_" + std::to_string(j); }
inline std::string h(int j) { return "h_" + std::to_string(j); }
inline std::string l(int k) { return "l_" + std::to_string(k); }

}  // namespace names

// ---------------------------------------------------------------------------
// LP text

namespace detail {

inline void append_terms(std::string& out, const Model& m, const std::vector<std::pair<std::size_t, Rational>>& terms,
                         std::size_t indent) {
  constexpr std::size_t kPerLine = 8;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kPerLine == 0) out += '\n' + std::string(indent, ' ');
    const auto& [idx, coef] = terms[k];
    const bool neg = coef < Rational(0);
    const Rational mag = neg ? -coef : coef;
    if (k == 0) {
      if (neg) out += "- ";
    } else {
      out += neg ? " - " : " + ";
    }
    if (!(mag == Rational(1))) out += to_decimal(mag) + ' ';
    out += m.variables[idx].name;
  }
}

inline std::string signed_constant(const Rational& c, bool leading) {
  const bool neg = c < Rational(0);
  const std::string mag = to_decimal(neg ? -c : c);
  if (leading) return (neg ? "- " : "") + mag;
  return (neg ? " - " : " + ") + mag;
}

}  // namespace detail

inline std::string write_lp(const Model& m) {
  std::string out = "\\ Model: " + m.name + "\nMinimize\n obj: ";
  if (m.objective.empty()) {
    out += to_decimal(m.objective_offset);
  } else {
    detail::append_terms(out, m, m.objective, 6);
    if (!(m.objective_offset == Rational(0))) out += detail::signed_constant(m.objective_offset, false);
  }
  out += '\n';

  if (!m.rows.empty()) {
    out += "Subject To\n";
    for (const Model::Row& r : m.rows) {
      out += ' ' + r.name + ": ";
      if (r.terms.empty())
        out += "0 " + m.variables.front().name;
      else
        detail::append_terms(out, m, r.terms, r.name.size() + 3);
      out += ' ';
      out += sense_text(r.sense);
      out += ' ' + to_decimal(r.rhs) + '\n';
    }
  }

  std::string bounds;
  for (const Variable& v : m.variables) {
    if (v.kind != VarKind::Continuous) continue;
    const bool default_lower = v.lower == Rational(0);
    if (default_lower && !v.upper) continue;
    if (v.upper)
      bounds += ' ' + to_decimal(v.lower) + " <= " + v.name + " <= " + to_decimal(*v.upper) + '\n';
    else
      bounds += ' ' + v.name + " >= " + to_decimal(v.lower) + '\n';
  }
  if (!bounds.empty()) out += "Bounds\n" + bounds;

  std::string binaries;
  for (const Variable& v : m.variables)
    if (v.kind == VarKind::Binary) binaries += ' ' + v.name + '\n';
  if (!binaries.empty()) out += "Binaries\n" + binaries;
  out += "End\n";
  return out;
}

// ---------------------------------------------------------------------------
// Checking

struct SolutionViolation {
  enum class Kind { Bound, Integrality, Constraint, UnknownVariable };
  Kind kind;
  std::string name;  // variable or constraint
  Rational residual;
};

inline const char* kind_name(SolutionViolation::Kind k) {
  switch (k) {
    case SolutionViolation::Kind::Bound: return "bound";
    case SolutionViolation::Kind::Integrality: return "integrality";
    case SolutionViolation::Kind::Constraint: return "constraint";
    case SolutionViolation::Kind::UnknownVariable: return "unknown-variable";
  }
  return "?";
}

inline std::vector<SolutionViolation> check_solution(const Model& m, const Assignment& a,
                                                     const Rational& tol = Rational(1, 1000000)) {
  using Kind = SolutionViolation::Kind;
  std::vector<SolutionViolation> out;
  std::vector<std::string> unknown;
  for (const auto& [var, value] : a)
    if (!m.has_variable(var)) unknown.push_back(var);
  std::sort(unknown.begin(), unknown.end());
  for (const std::string& var : unknown) out.push_back({Kind::UnknownVariable, var, value_of(a, var)});

  for (const Variable& v : m.variables) {
    const Rational val = value_of(a, v.name);
    if (val < v.lower - tol) out.push_back({Kind::Bound, v.name, v.lower - val});
    if (v.upper && val > *v.upper + tol) out.push_back({Kind::Bound, v.name, val - *v.upper});
    if (v.kind == VarKind::Binary) {
      const Rational frac = val - Rational(static_cast<std::int64_t>(std::llround(val.to_double())));
      if (abs(frac) > tol) out.push_back({Kind::Integrality, v.name, abs(frac)});
    }
  }
  for (const Model::Row& r : m.rows) {
    const Rational viol = violation_amount(m.constraint(r), a);
    if (viol > tol) out.push_back({Kind::Constraint, r.name, viol});
  }
  return out;
}

struct Separated {
  LinearConstraint constraint;
  Rational violation;
};

/// Members of `family` violated by more than `tol` at `point`, most violated first.
inline std::vector<Separated> separate(const std::vector<LinearConstraint>& family, const Assignment& point,
                                       const Rational& tol = Rational(1, 1000000)) {
  std::vector<Separated> out;
  for (const LinearConstraint& c : family) {
    const Rational v = violation_amount(c, point);
    if (v > tol) out.push_back({c, v});
  }
  std::stable_sort(out.begin(), out.end(), [](const Separated& a, const Separated& b) { return a.violation > b.violation; });
  return out;
}

}  // namespace dsts::milp
