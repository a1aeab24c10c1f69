#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsts {

using Time = std::int32_t;
using Cost = std::int64_t;

/// One truck/trailer. Times are period indices, costs are integral.
struct Trailer {
  int id = 0;
  Time r = 0;      // arrival
  Time due = 0;    // latest departure
  Time p = 1;      // processing
  Time delta = 0;  // docking / setup
  Cost f = 0;      // waiting penalty per period
  Cost g = 0;      // non-service penalty

  friend bool operator==(const Trailer&, const Trailer&) = default;
};

struct Instance {
  std::string name;
  int docks = 1;
  Time horizon = 2;  // valid periods are 0..horizon-1
  std::vector<Trailer> trailers;

  [[nodiscard]] int size() const { return static_cast<int>(trailers.size()); }

  /// Trailer by id; id 0 is the dummy trailer heading and tailing every dock.
  [[nodiscard]] Trailer trailer(int id) const {
    if (id == 0) return dummy();
    return trailers.at(static_cast<std::size_t>(id - 1));
  }
  [[nodiscard]] const Trailer& real(int id) const { return trailers[static_cast<std::size_t>(id - 1)]; }
  [[nodiscard]] Trailer dummy() const { return {0, 0, horizon, 0, 0, 0, 0}; }
  [[nodiscard]] bool has_trailer(int id) const { return id >= 1 && id <= size(); }

  /// Latest admissible completion for a served trailer: min(d_j, T-1).
  [[nodiscard]] Time latest_completion(const Trailer& t) const { return std::min(t.due, horizon - 1); }

  friend bool operator==(const Instance&, const Instance&) = default;

  /// Throws std::invalid_argument when the structural invariants do not hold.
  void validate() const {
    if (docks < 1) throw std::invalid_argument("instance needs at least one dock");
    if (horizon < 2) throw std::invalid_argument("instance horizon must be >= 2");
    for (std::size_t k = 0; k < trailers.size(); ++k) {
      const Trailer& t = trailers[k];
      if (t.id != static_cast<int>(k) + 1)
        throw std::invalid_argument("trailer ids must be contiguous 1..N, found " + std::to_string(t.id));
      if (t.r < 0 || t.due < 0 || t.p < 1 || t.delta < 0 || t.f < 0 || t.g < 0)
        throw std::invalid_argument("trailer " + std::to_string(t.id) + " has out-of-range fields");
    }
  }
};

struct Entry {
  int trailer = 0;
  Time start = 0;
  friend bool operator==(const Entry&, const Entry&) = default;
};

struct DockRun {
  int dock = 0;
  std::vector<Entry> entries;
  friend bool operator==(const DockRun&, const DockRun&) = default;
};

struct Schedule {
  std::vector<DockRun> runs;
  std::vector<int> unserved;  // kept sorted ascending by the library
  Cost cost = 0;              // cached evaluate()

  [[nodiscard]] int served_count() const {
    int n = 0;
    for (const auto& run : runs) n += static_cast<int>(run.entries.size());
    return n;
  }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// ---------------------------------------------------------------------------
// Timing

inline Time completion(Time start, const Trailer& t) { return start + t.delta + t.p; }

inline Time waiting(Time start, const Trailer& t) {
  if (start < t.r)
    throw std::invalid_argument("trailer " + std::to_string(t.id) + " cannot start before its arrival");
  return start - t.r;
}

inline Time earliest_start(Time prev_completion, const Trailer& t) { return std::max(t.r, prev_completion); }

// ---------------------------------------------------------------------------
// Feasibility

struct Violation {
  enum class Rule {
    UnknownTrailer,   // id outside 1..N
    Partition,        // trailer missing or present more than once
    DockLayout,       // wrong number of runs or mismatched dock index
    BeforeArrival,    // start < r_j
    Overlap,          // start before predecessor completion
    DueDate,          // completion > d_j
    Horizon,          // completion > T-1
  };
  Rule rule;
  int trailer = 0;
  int dock = -1;
  std::string detail;
};

inline const char* rule_name(Violation::Rule rule) {
  switch (rule) {
    case Violation::Rule::UnknownTrailer: return "unknown-trailer";
    case Violation::Rule::Partition: return "partition";
    case Violation::Rule::DockLayout: return "dock-layout";
    case Violation::Rule::BeforeArrival: return "before-arrival";
    case Violation::Rule::Overlap: return "overlap";
    case Violation::Rule::DueDate: return "due-date";
    case Violation::Rule::Horizon: return "horizon";
  }
  return "?";
}

inline std::vector<Violation> check_schedule(const Instance& inst, const Schedule& s) {
  using Rule = Violation::Rule;
  std::vector<Violation> out;
  std::vector<int> seen(static_cast<std::size_t>(inst.size()) + 1, 0);
  auto note = [&](int id) {
    if (inst.has_trailer(id)) ++seen[static_cast<std::size_t>(id)];
  };

  if (static_cast<int>(s.runs.size()) != inst.docks)
    out.push_back({Rule::DockLayout, 0, -1,
                   "expected " + std::to_string(inst.docks) + " dock runs, got " + std::to_string(s.runs.size())});

  for (std::size_t d = 0; d < s.runs.size(); ++d) {
    const DockRun& run = s.runs[d];
    const int dock = static_cast<int>(d);
    if (run.dock != dock)
      out.push_back({Rule::DockLayout, 0, dock, "run at position " + std::to_string(d) + " names dock " +
                                                    std::to_string(run.dock)});
    std::optional<Time> prev_completion;
    for (const Entry& e : run.entries) {
      if (!inst.has_trailer(e.trailer)) {
        out.push_back({Rule::UnknownTrailer, e.trailer, dock, "unknown trailer id"});
        prev_completion.reset();
        continue;
      }
      note(e.trailer);
      const Trailer& t = inst.real(e.trailer);
      if (e.start < t.r)
        out.push_back({Rule::BeforeArrival, t.id, dock,
                       "start " + std::to_string(e.start) + " < arrival " + std::to_string(t.r)});
      if (prev_completion && e.start < *prev_completion)
        out.push_back({Rule::Overlap, t.id, dock,
                       "start " + std::to_string(e.start) + " < predecessor completion " +
                           std::to_string(*prev_completion)});
      const Time c = completion(e.start, t);
      if (c > t.due)
        out.push_back({Rule::DueDate, t.id, dock,
                       "completion " + std::to_string(c) + " > due " + std::to_string(t.due)});
      if (c > inst.horizon - 1)
        out.push_back({Rule::Horizon, t.id, dock,
                       "completion " + std::to_string(c) + " > T-1 = " + std::to_string(inst.horizon - 1)});
      prev_completion = c;
    }
  }
  for (int id : s.unserved) {
    if (!inst.has_trailer(id))
      out.push_back({Rule::UnknownTrailer, id, -1, "unknown trailer id in unserved set"});
    else
      note(id);
  }
  for (int id = 1; id <= inst.size(); ++id) {
    const int n = seen[static_cast<std::size_t>(id)];
    if (n != 1)
      out.push_back({Rule::Partition, id, -1,
                     n == 0 ? "trailer neither served nor unserved" : "trailer appears " + std::to_string(n) + " times"});
  }
  return out;
}

class InfeasibleSchedule : public std::runtime_error {
 public:
  explicit InfeasibleSchedule(std::vector<Violation> violations)
      : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& v) {
    std::string msg = "infeasible schedule (" + std::to_string(v.size()) + " violations)";
    if (!v.empty()) msg += ": " + std::string(rule_name(v.front().rule)) + " " + v.front().detail;
    return msg;
  }
  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// Objective

/// Waiting cost of one run; assumes every start is at or after arrival.
inline Cost run_cost(const Instance& inst, const DockRun& run) {
  Cost c = 0;
  for (const Entry& e : run.entries) {
    const Trailer& t = inst.real(e.trailer);
    c += t.f * static_cast<Cost>(e.start - t.r);
  }
  return c;
}

/// Objective without the feasibility gate. Callers guarantee feasibility.
inline Cost schedule_cost(const Instance& inst, const Schedule& s) {
  Cost c = 0;
  for (const auto& run : s.runs) c += run_cost(inst, run);
  for (int id : s.unserved) c += inst.real(id).g;
  return c;
}

inline Cost evaluate(const Instance& inst, const Schedule& s) {
  auto violations = check_schedule(inst, s);
  if (!violations.empty()) throw InfeasibleSchedule(std::move(violations));
  return schedule_cost(inst, s);
}

/// Builds a schedule with one empty run per dock and every trailer unserved.
inline Schedule empty_schedule(const Instance& inst) {
  Schedule s;
  s.runs.resize(static_cast<std::size_t>(inst.docks));
  for (int d = 0; d < inst.docks; ++d) s.runs[static_cast<std::size_t>(d)].dock = d;
  for (const Trailer& t : inst.trailers) {
    s.unserved.push_back(t.id);
    s.cost += t.g;
  }
  return s;
}

/// Recomputes the cached cost and normalizes the unserved order.
inline void refresh(const Instance& inst, Schedule& s) {
  std::sort(s.unserved.begin(), s.unserved.end());
  s.cost = schedule_cost(inst, s);
}

/// Re-times entries [from, end) of a run to their earliest starts.
/// Returns false when some re-timed entry misses its due date or the horizon.
inline bool retime_from(const Instance& inst, DockRun& run, std::size_t from) {
  Time prev = 0;
  if (from > 0) {
    const Entry& e = run.entries[from - 1];
    prev = completion(e.start, inst.real(e.trailer));
  }
  for (std::size_t k = from; k < run.entries.size(); ++k) {
    Entry& e = run.entries[k];
    const Trailer& t = inst.real(e.trailer);
    e.start = earliest_start(prev, t);
    prev = completion(e.start, t);
    if (prev > inst.latest_completion(t)) return false;
  }
  return true;
}

inline void insert_sorted(std::vector<int>& ids, int id) {
  ids.insert(std::lower_bound(ids.begin(), ids.end(), id), id);
}

inline void erase_sorted(std::vector<int>& ids, int id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it != ids.end() && *it == id) ids.erase(it);
}

/// Places unserved trailer j at `position` of `dock`; later entries are re-timed.
/// Returns nullopt when the re-timed run is infeasible. The input is untouched.
inline std::optional<Schedule> try_insert(const Instance& inst, const Schedule& s, int dock, std::size_t position,
                                          int j) {
  if (dock < 0 || dock >= static_cast<int>(s.runs.size())) throw std::out_of_range("dock index out of range");
  const DockRun& old_run = s.runs[static_cast<std::size_t>(dock)];
  if (position > old_run.entries.size()) throw std::out_of_range("insert position past end of run");
  if (!std::binary_search(s.unserved.begin(), s.unserved.end(), j))
    throw std::invalid_argument("trailer " + std::to_string(j) + " is not unserved");

  DockRun run = old_run;
  run.entries.insert(run.entries.begin() + static_cast<std::ptrdiff_t>(position), Entry{j, 0});
  if (!retime_from(inst, run, position)) return std::nullopt;

  Schedule out = s;
  out.cost += run_cost(inst, run) - run_cost(inst, old_run) - inst.real(j).g;
  out.runs[static_cast<std::size_t>(dock)] = std::move(run);
  erase_sorted(out.unserved, j);
  return out;
}

}  // namespace dsts
