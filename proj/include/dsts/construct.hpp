#pragma once

// Initial-solution heuristics.

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsts/core.hpp"

namespace dsts {

enum class ConstructMethod { ArrivalVertical, ArrivalHorizontal, MinArrivalVertical };

inline const char* method_name(ConstructMethod m) {
  switch (m) {
    case ConstructMethod::ArrivalVertical: return "ArrivalVertical";
    case ConstructMethod::ArrivalHorizontal: return "ArrivalHorizontal";
    case ConstructMethod::MinArrivalVertical: return "MinArrivalVertical";
  }
  return "?";
}

inline ConstructMethod parse_method(std::string_view name) {
  for (auto m : {ConstructMethod::ArrivalVertical, ConstructMethod::ArrivalHorizontal,
                 ConstructMethod::MinArrivalVertical})
    if (name == method_name(m)) return m;
  throw std::invalid_argument("unknown construction method '" + std::string(name) + "'");
}

namespace detail {

inline Time tail_completion(const Instance& inst, const DockRun& run) {
  if (run.entries.empty()) return 0;
  const Entry& e = run.entries.back();
  return completion(e.start, inst.real(e.trailer));
}

/// Appends at the tail with earliest start if that is feasible.
inline bool append_if_feasible(const Instance& inst, DockRun& run, const Trailer& t) {
  const Time start = earliest_start(tail_completion(inst, run), t);
  if (completion(start, t) > inst.latest_completion(t)) return false;
  run.entries.push_back({t.id, start});
  return true;
}

// Circular allocation; the cursor moves on only when a trailer is placed.
inline Schedule round_robin(const Instance& inst, const std::vector<int>& order) {
  Schedule s = empty_schedule(inst);
  s.unserved.clear();
  std::size_t cursor = 0;
  for (int id : order) {
    DockRun& run = s.runs[cursor];
    if (append_if_feasible(inst, run, inst.real(id)))
      cursor = (cursor + 1) % s.runs.size();
    else
      s.unserved.push_back(id);
  }
  refresh(inst, s);
  return s;
}

inline Schedule horizontal(const Instance& inst) {
  Schedule s = empty_schedule(inst);
  s.unserved.clear();
  std::vector<int> pool;  // unassigned, sorted by (r, id)
  for (const Trailer& t : inst.trailers) pool.push_back(t.id);
  std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) { return inst.real(a).r < inst.real(b).r; });

  for (DockRun& run : s.runs) {
    // Seed: earliest-arriving trailer that can be served at all.
    while (!pool.empty() && run.entries.empty()) {
      const int id = pool.front();
      pool.erase(pool.begin());
      if (!append_if_feasible(inst, run, inst.real(id))) s.unserved.push_back(id);
    }
    for (;;) {
      const Time end = tail_completion(inst, run);
      auto best = pool.end();
      Time best_gap = std::numeric_limits<Time>::max();
      for (auto it = pool.begin(); it != pool.end(); ++it) {
        const Trailer& t = inst.real(*it);
        if (completion(earliest_start(end, t), t) > inst.latest_completion(t)) continue;
        const Time gap = std::abs(t.r - end);
        if (best == pool.end() || gap < best_gap || (gap == best_gap && *it < *best)) {
          best_gap = gap;
          best = it;
        }
      }
      if (best == pool.end()) break;
      append_if_feasible(inst, run, inst.real(*best));
      pool.erase(best);
    }
  }
  s.unserved.insert(s.unserved.end(), pool.begin(), pool.end());
  refresh(inst, s);
  return s;
}

}  // namespace detail

inline Schedule construct(ConstructMethod method, const Instance& inst) {
  switch (method) {
    case ConstructMethod::ArrivalVertical: {
      std::vector<int> order;
      for (const Trailer& t : inst.trailers) order.push_back(t.id);
      return detail::round_robin(inst, order);
    }
    case ConstructMethod::MinArrivalVertical: {
      std::vector<int> order;
      for (const Trailer& t : inst.trailers) order.push_back(t.id);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.real(a).r < inst.real(b).r; });
      return detail::round_robin(inst, order);
    }
    case ConstructMethod::ArrivalHorizontal:
      return detail::horizontal(inst);
  }
  throw std::invalid_argument("unknown construction method");
}

}  // namespace dsts
