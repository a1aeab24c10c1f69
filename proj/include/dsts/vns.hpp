#pragma once

// Adaptive destroy/repair/local-search metaheuristic driven by an
// operator-to-operator transition matrix.

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsts/core.hpp"
#include "dsts/rng.hpp"

namespace dsts {

enum class OperatorId : int {
  InterDockRandomRemoval,
  DoublyRandomRemoval,
  IntraDockRandomRemoval,
  WipeDock,
  InsertFromUnserveds,
  InsertFromUnservedsWithLookAhead,
  ReplaceWithUnserved,
  SwapTrailers,
};
inline constexpr int kOperatorCount = 8;

enum class OperatorClass { Destruction, Repair, LocalSearch };

inline constexpr std::array<OperatorId, 4> kDestruction{OperatorId::InterDockRandomRemoval,
                                                        OperatorId::DoublyRandomRemoval,
                                                        OperatorId::IntraDockRandomRemoval, OperatorId::WipeDock};
inline constexpr std::array<OperatorId, 2> kRepair{OperatorId::InsertFromUnserveds,
                                                   OperatorId::InsertFromUnservedsWithLookAhead};
inline constexpr std::array<OperatorId, 2> kLocalSearch{OperatorId::ReplaceWithUnserved, OperatorId::SwapTrailers};

inline OperatorClass class_of(OperatorId op) {
  const int k = static_cast<int>(op);
  if (k < 4) return OperatorClass::Destruction;
  if (k < 6) return OperatorClass::Repair;
  return OperatorClass::LocalSearch;
}

inline std::span<const OperatorId> operators_in(OperatorClass cls) {
  switch (cls) {
    case OperatorClass::Destruction: return kDestruction;
    case OperatorClass::Repair: return kRepair;
    case OperatorClass::LocalSearch: return kLocalSearch;
  }
  return {};
}

inline const char* operator_name(OperatorId op) {
  static constexpr std::array<const char*, kOperatorCount> names{
      "InterDockRandomRemoval", "DoublyRandomRemoval", "IntraDockRandomRemoval",
      "WipeDock",               "InsertFromUnserveds", "InsertFromUnservedsWithLookAhead",
      "ReplaceWithUnserved",    "SwapTrailers"};
  return names[static_cast<std::size_t>(op)];
}

// ---------------------------------------------------------------------------
// Weight matrices

/// Dense row-major real matrix.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  WeightMatrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& at(OperatorId from, OperatorId to) {
    return (*this)(static_cast<std::size_t>(from), static_cast<std::size_t>(to));
  }
  [[nodiscard]] double at(OperatorId from, OperatorId to) const {
    return (*this)(static_cast<std::size_t>(from), static_cast<std::size_t>(to));
  }
  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Row = previously applied operator, column = candidate next operator.
using TransitionMatrix = WeightMatrix;

enum class Metric { d1, d2, dinf, dn };

inline Metric parse_metric(std::string_view name) {
  if (name == "d1") return Metric::d1;
  if (name == "d2") return Metric::d2;
  if (name == "dinf") return Metric::dinf;
  if (name == "dn") return Metric::dn;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

namespace detail {

// Largest singular value by power iteration on M^T M.
inline double spectral_norm(const WeightMatrix& m) {
  const std::size_t n = m.cols();
  if (n == 0 || m.rows() == 0) return 0.0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i);
  std::vector<double> mv(m.rows());
  std::vector<double> w(n);
  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (double& x : v) x /= norm;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n; ++c) acc += m(r, c) * v[c];
      mv[r] = acc;
    }
    for (std::size_t c = 0; c < n; ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) acc += m(r, c) * mv[r];
      w[c] = acc;
    }
    double next = 0.0;
    for (double x : w) next += x * x;
    next = std::sqrt(next);
    v = w;
    if (std::abs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

}  // namespace detail

inline double matrix_distance(const WeightMatrix& a, const WeightMatrix& b, Metric metric) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
  WeightMatrix diff(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) diff(r, c) = a(r, c) - b(r, c);
  double acc = 0.0;
  switch (metric) {
    case Metric::d1:
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) acc += std::abs(diff(r, c));
      return acc;
    case Metric::d2:
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) acc += diff(r, c) * diff(r, c);
      return std::sqrt(acc);
    case Metric::dinf:
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) acc = std::max(acc, std::abs(diff(r, c)));
      return acc;
    case Metric::dn:
      return detail::spectral_norm(diff);
  }
  return acc;
}

/// tau[from][to] -= (f_out - f_in) / f_in; skipped when f_in == 0.
inline TransitionMatrix update_transition(TransitionMatrix t, OperatorId from, OperatorId to, Cost f_in, Cost f_out) {
  if (f_in == 0) return t;
  t.at(from, to) -= static_cast<double>(f_out - f_in) / static_cast<double>(f_in);
  return t;
}

/// Argmax of tau[last][.] over the candidates, ties uniform; with probability
/// `exploration` a uniform candidate instead. Always consumes one uniform01 draw.
inline OperatorId select_operator(const TransitionMatrix& t, OperatorId last, std::span<const OperatorId> candidates,
                                  Rng& rng, double exploration = 0.1) {
  if (candidates.empty()) throw std::invalid_argument("empty operator class");
  if (rng.uniform01() < exploration) return candidates[rng.index(candidates.size())];
  double best = -std::numeric_limits<double>::infinity();
  std::vector<OperatorId> ties;
  for (OperatorId op : candidates) {
    const double w = t.at(last, op);
    if (w > best) {
      best = w;
      ties.assign(1, op);
    } else if (w == best) {
      ties.push_back(op);
    }
  }
  if (ties.size() == 1) return ties.front();
  return ties[rng.index(ties.size())];
}

inline OperatorId select_operator(const TransitionMatrix& t, OperatorId last, OperatorClass cls, Rng& rng,
                                  double exploration = 0.1) {
  return select_operator(t, last, operators_in(cls), rng, exploration);
}

// ---------------------------------------------------------------------------
// Configuration and statistics

struct VnsConfig {
  double alpha = 0.2;
  double beta = 0.3;
  double gamma = 0.3;
  double epsilon = 0.05;
  std::optional<long> n_max_noimp;  // default |J|*|D| + 1
  Metric metric = Metric::d1;
  std::uint64_t seed = 0;
  long max_iters = 1'000'000;
  double exploration = 0.1;

  void validate() const {
    for (double frac : {alpha, beta, gamma})
      if (!(frac > 0.0 && frac <= 1.0)) throw std::invalid_argument("destruction fractions must lie in (0, 1]");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
    if (n_max_noimp && *n_max_noimp < 1) throw std::invalid_argument("n_max_noimp must be positive");
  }
};

struct IterationRecord {
  long iteration = 0;
  Cost best_cost = 0;
  Cost current_cost = 0;  // working solution after the acceptance test
  bool accepted = false;
  std::array<OperatorId, 3> ops{};
  double matrix_distance = 0.0;
};

struct VnsStats {
  long iterations = 0;
  std::vector<Cost> best_cost_trace;
  std::array<long, kOperatorCount> op_counts{};
  TransitionMatrix final_matrix;
  double wall_ms = 0.0;
  std::vector<IterationRecord> records;
};

struct VnsResult {
  Schedule best;
  VnsStats stats;
};

// ---------------------------------------------------------------------------
// Destruction

namespace detail {

inline std::size_t fraction_count(double fraction, std::size_t n) {
  if (n == 0) return 0;
  auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

inline Schedule remove_trailers(const Instance& inst, const Schedule& s, const std::vector<int>& removed) {
  Schedule out = s;
  std::vector<char> drop(static_cast<std::size_t>(inst.size()) + 1, 0);
  for (int id : removed) drop[static_cast<std::size_t>(id)] = 1;
  for (DockRun& run : out.runs) {
    const auto before = run.entries.size();
    std::erase_if(run.entries, [&](const Entry& e) { return drop[static_cast<std::size_t>(e.trailer)] != 0; });
    if (run.entries.size() != before) retime_from(inst, run, 0);
  }
  for (int id : removed) insert_sorted(out.unserved, id);
  out.cost = schedule_cost(inst, out);
  return out;
}

inline std::vector<int> nonempty_docks(const Schedule& s) {
  std::vector<int> docks;
  for (const DockRun& run : s.runs)
    if (!run.entries.empty()) docks.push_back(run.dock);
  return docks;
}

inline std::vector<int> run_ids(const DockRun& run) {
  std::vector<int> ids;
  for (const Entry& e : run.entries) ids.push_back(e.trailer);
  return ids;
}

}  // namespace detail

inline Schedule apply_destruction(OperatorId op, const Instance& inst, const Schedule& s, const VnsConfig& cfg,
                                  Rng& rng) {
  if (class_of(op) != OperatorClass::Destruction) throw std::invalid_argument("not a destruction operator");
  if (s.served_count() == 0) return s;
  std::vector<int> removed;
  if (op == OperatorId::InterDockRandomRemoval) {
    std::vector<int> served;
    for (const DockRun& run : s.runs)
      for (const Entry& e : run.entries) served.push_back(e.trailer);
    removed = rng.sample(served, detail::fraction_count(cfg.alpha, served.size()));
  } else {
    const auto docks = detail::nonempty_docks(s);
    const DockRun& run = s.runs[static_cast<std::size_t>(docks[rng.index(docks.size())])];
    auto ids = detail::run_ids(run);
    switch (op) {
      case OperatorId::DoublyRandomRemoval:
        removed = rng.sample(ids, detail::fraction_count(cfg.beta, ids.size()));
        break;
      case OperatorId::IntraDockRandomRemoval:
        removed = rng.sample(ids, detail::fraction_count(cfg.gamma, ids.size()));
        break;
      default:
        removed = std::move(ids);
        break;
    }
  }
  return detail::remove_trailers(inst, s, removed);
}

// ---------------------------------------------------------------------------
// Repair

namespace detail {

/// Waiting cost of [first, rest[from..]) timed after `prev`; nullopt if infeasible.
inline std::optional<Cost> simulate_tail(const Instance& inst, Time prev, int first, const std::vector<Entry>& rest,
                                         std::size_t from) {
  Cost cost = 0;
  auto place = [&](int id) {
    const Trailer& t = inst.real(id);
    const Time start = earliest_start(prev, t);
    prev = completion(start, t);
    cost += t.f * static_cast<Cost>(start - t.r);
    return prev <= inst.latest_completion(t);
  };
  if (!place(first)) return std::nullopt;
  for (std::size_t k = from; k < rest.size(); ++k)
    if (!place(rest[k].trailer)) return std::nullopt;
  return cost;
}

inline Time completion_before(const Instance& inst, const DockRun& run, std::size_t pos) {
  if (pos == 0) return 0;
  const Entry& e = run.entries[pos - 1];
  return completion(e.start, inst.real(e.trailer));
}

inline Cost tail_cost(const Instance& inst, const DockRun& run, std::size_t from) {
  Cost c = 0;
  for (std::size_t k = from; k < run.entries.size(); ++k) {
    const Trailer& t = inst.real(run.entries[k].trailer);
    c += t.f * static_cast<Cost>(run.entries[k].start - t.r);
  }
  return c;
}

inline Schedule insert_from_unserveds(const Instance& inst, const Schedule& s) {
  Schedule cur = s;
  std::vector<int> order = s.unserved;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.real(a).r < inst.real(b).r; });
  for (int u : order) {
    bool placed = false;
    for (std::size_t d = 0; d < cur.runs.size() && !placed; ++d) {
      DockRun& run = cur.runs[d];
      for (std::size_t pos = 0; pos <= run.entries.size(); ++pos) {
        const auto new_tail = simulate_tail(inst, completion_before(inst, run, pos), u, run.entries, pos);
        if (!new_tail) continue;
        cur.cost += *new_tail - tail_cost(inst, run, pos) - inst.real(u).g;
        run.entries.insert(run.entries.begin() + static_cast<std::ptrdiff_t>(pos), Entry{u, 0});
        retime_from(inst, run, pos);
        erase_sorted(cur.unserved, u);
        placed = true;
        break;
      }
    }
  }
  return cur;
}

inline Schedule insert_with_lookahead(const Instance& inst, const Schedule& s) {
  Schedule cur = s;
  std::vector<int> pool = s.unserved;
  std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
    const Trailer& ta = inst.real(a);
    const Trailer& tb = inst.real(b);
    return ta.delta + ta.p < tb.delta + tb.p;
  });

  for (DockRun& run : cur.runs) {
    std::size_t pos = 0;
    while (pos <= run.entries.size() && !pool.empty()) {
      const Time gap_start = completion_before(inst, run, pos);
      const Time gap_end = pos < run.entries.size() ? run.entries[pos].start : std::numeric_limits<Time>::max();
      // Best choice in this gap: most filled time, then smaller (first, second) ids.
      Time best_fill = 0;
      int best_a = 0;
      int best_b = 0;
      for (int a : pool) {
        const Trailer& ta = inst.real(a);
        const Time ca = completion(earliest_start(gap_start, ta), ta);
        if (ca > inst.latest_completion(ta) || ca > gap_end) continue;
        auto consider = [&](Time fill, int first, int second) {
          if (fill > best_fill || (fill == best_fill && std::pair(first, second) < std::pair(best_a, best_b))) {
            best_fill = fill;
            best_a = first;
            best_b = second;
          }
        };
        consider(ta.delta + ta.p, a, 0);
        for (int b : pool) {
          if (b == a) continue;
          const Trailer& tb = inst.real(b);
          const Time cb = completion(earliest_start(ca, tb), tb);
          if (cb > inst.latest_completion(tb) || cb > gap_end) continue;
          consider(ta.delta + ta.p + tb.delta + tb.p, a, b);
        }
      }
      if (best_a == 0) {
        ++pos;
        continue;
      }
      std::vector<int> placed{best_a};
      if (best_b != 0) placed.push_back(best_b);
      Time prev = gap_start;
      for (int id : placed) {
        const Trailer& t = inst.real(id);
        const Time start = earliest_start(prev, t);
        run.entries.insert(run.entries.begin() + static_cast<std::ptrdiff_t>(pos), Entry{id, start});
        prev = completion(start, t);
        cur.cost += t.f * static_cast<Cost>(start - t.r) - t.g;
        erase_sorted(cur.unserved, id);
        std::erase(pool, id);
        ++pos;
      }
    }
  }
  return cur;
}

}  // namespace detail

inline Schedule apply_repair(OperatorId op, const Instance& inst, const Schedule& s) {
  switch (op) {
    case OperatorId::InsertFromUnserveds: return detail::insert_from_unserveds(inst, s);
    case OperatorId::InsertFromUnservedsWithLookAhead: return detail::insert_with_lookahead(inst, s);
    default: throw std::invalid_argument("not a repair operator");
  }
}

// ---------------------------------------------------------------------------
// Local search

namespace detail {

inline Schedule replace_with_unserved(const Instance& inst, const Schedule& s) {
  Cost best = s.cost;
  std::size_t best_dock = 0;
  std::size_t best_pos = 0;
  int best_u = 0;
  for (std::size_t d = 0; d < s.runs.size(); ++d) {
    const DockRun& run = s.runs[d];
    for (std::size_t k = 0; k < run.entries.size(); ++k) {
      const Time prev = completion_before(inst, run, k);
      const Cost old_tail = tail_cost(inst, run, k);
      const Cost g_out = inst.real(run.entries[k].trailer).g;
      for (int u : s.unserved) {
        const auto new_tail = simulate_tail(inst, prev, u, run.entries, k + 1);
        if (!new_tail) continue;
        const Cost c = s.cost - old_tail + *new_tail - inst.real(u).g + g_out;
        if (c < best) {
          best = c;
          best_dock = d;
          best_pos = k;
          best_u = u;
        }
      }
    }
  }
  if (best_u == 0) return s;
  Schedule out = s;
  DockRun& run = out.runs[best_dock];
  const int v = run.entries[best_pos].trailer;
  run.entries[best_pos].trailer = best_u;
  retime_from(inst, run, best_pos);
  erase_sorted(out.unserved, best_u);
  insert_sorted(out.unserved, v);
  out.cost = best;
  return out;
}

inline Schedule swap_trailers(const Instance& inst, const Schedule& s) {
  Cost best = s.cost;
  std::optional<std::array<std::size_t, 4>> move;
  for (std::size_t d1 = 0; d1 < s.runs.size(); ++d1) {
    const DockRun& r1 = s.runs[d1];
    for (std::size_t k1 = 0; k1 < r1.entries.size(); ++k1) {
      const Time prev1 = completion_before(inst, r1, k1);
      const Cost old1 = tail_cost(inst, r1, k1);
      for (std::size_t d2 = d1 + 1; d2 < s.runs.size(); ++d2) {
        const DockRun& r2 = s.runs[d2];
        for (std::size_t k2 = 0; k2 < r2.entries.size(); ++k2) {
          const auto new1 = simulate_tail(inst, prev1, r2.entries[k2].trailer, r1.entries, k1 + 1);
          if (!new1) continue;
          const auto new2 =
              simulate_tail(inst, completion_before(inst, r2, k2), r1.entries[k1].trailer, r2.entries, k2 + 1);
          if (!new2) continue;
          const Cost c = s.cost - old1 - tail_cost(inst, r2, k2) + *new1 + *new2;
          if (c < best) {
            best = c;
            move = {d1, k1, d2, k2};
          }
        }
      }
    }
  }
  if (!move) return s;
  Schedule out = s;
  auto [d1, k1, d2, k2] = *move;
  std::swap(out.runs[d1].entries[k1].trailer, out.runs[d2].entries[k2].trailer);
  retime_from(inst, out.runs[d1], k1);
  retime_from(inst, out.runs[d2], k2);
  out.cost = best;
  return out;
}

}  // namespace detail

inline Schedule apply_local_search(OperatorId op, const Instance& inst, const Schedule& s) {
  switch (op) {
    case OperatorId::ReplaceWithUnserved: return detail::replace_with_unserved(inst, s);
    case OperatorId::SwapTrailers: return detail::swap_trailers(inst, s);
    default: throw std::invalid_argument("not a local-search operator");
  }
}

// ---------------------------------------------------------------------------
// Driver

inline TransitionMatrix random_transition_matrix(Rng& rng) {
  TransitionMatrix t(kOperatorCount, kOperatorCount);
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) = rng.uniform01();
  return t;
}

inline double relative_distance(const TransitionMatrix& prev, const TransitionMatrix& cur, Metric metric) {
  double norm = matrix_distance(cur, TransitionMatrix(cur.rows(), cur.cols()), metric);
  if (norm < 1e-12) norm = 1.0;
  return matrix_distance(prev, cur, metric) / norm;
}

inline VnsResult vns_solve(const Instance& inst, const Schedule& initial, const VnsConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  if (auto v = check_schedule(inst, initial); !v.empty()) throw InfeasibleSchedule(std::move(v));
  const long n_max = cfg.n_max_noimp.value_or(static_cast<long>(inst.size()) * inst.docks + 1);

  Rng rng(cfg.seed);
  TransitionMatrix tau = random_transition_matrix(rng);
  OperatorId last = kLocalSearch[rng.index(kLocalSearch.size())];

  Schedule s = initial;
  refresh(inst, s);
  Schedule best = s;
  VnsStats stats;
  long no_improvement = 0;

  for (;;) {
    const TransitionMatrix before = tau;
    Schedule s0 = s;
    IterationRecord rec;

    const OperatorId destroy = select_operator(tau, last, OperatorClass::Destruction, rng, cfg.exploration);
    Cost f_in = s0.cost;
    s0 = apply_destruction(destroy, inst, s0, cfg, rng);
    tau = update_transition(std::move(tau), last, destroy, f_in, s0.cost);
    last = destroy;

    const OperatorId repair = select_operator(tau, last, OperatorClass::Repair, rng, cfg.exploration);
    f_in = s0.cost;
    s0 = apply_repair(repair, inst, s0);
    tau = update_transition(std::move(tau), last, repair, f_in, s0.cost);
    last = repair;

    const OperatorId local = select_operator(tau, last, OperatorClass::LocalSearch, rng, cfg.exploration);
    f_in = s0.cost;
    s0 = apply_local_search(local, inst, s0);
    tau = update_transition(std::move(tau), last, local, f_in, s0.cost);
    last = local;

    for (OperatorId op : {destroy, repair, local}) ++stats.op_counts[static_cast<std::size_t>(op)];

    if (s0.cost < best.cost) {
      best = s0;
      no_improvement = 0;
    } else {
      ++no_improvement;
    }
    rec.accepted = s0.cost < s.cost;
    if (rec.accepted) s = std::move(s0);

    ++stats.iterations;
    rec.iteration = stats.iterations;
    rec.best_cost = best.cost;
    rec.current_cost = s.cost;
    rec.ops = {destroy, repair, local};
    rec.matrix_distance = relative_distance(before, tau, cfg.metric);
    stats.best_cost_trace.push_back(best.cost);
    stats.records.push_back(rec);

    if (no_improvement >= n_max && rec.matrix_distance < cfg.epsilon) break;
    if (stats.iterations >= cfg.max_iters) break;
  }

  stats.final_matrix = tau;
  stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(best), std::move(stats)};
}

/// CSV trace: iteration,best_cost,accepted,op_triple,matrix_distance
inline std::string stats_csv(const VnsStats& stats) {
  std::string out = "iteration,best_cost,accepted,op_triple,matrix_distance\n";
  char buf[64];
  for (const IterationRecord& r : stats.records) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r.matrix_distance, std::chars_format::fixed, 9);
    out += std::to_string(r.iteration) + ',' + std::to_string(r.best_cost) + ',' + (r.accepted ? "1" : "0") + ',' +
           operator_name(r.ops[0]) + '/' + operator_name(r.ops[1]) + '/' + operator_name(r.ops[2]) + ',' +
           std::string(buf, ec == std::errc{} ? end : buf) + '\n';
  }
  return out;
}

}  // namespace dsts
