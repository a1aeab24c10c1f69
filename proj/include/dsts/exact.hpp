#pragma once

// Exhaustive branch-and-bound over dock sequences for desk-scale instances.

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsts/core.hpp"
#include "dsts/io.hpp"

namespace dsts {

struct ExactLimits {
  int max_trailers = 7;
  int max_docks = 3;
  double timeout_s = 60.0;
};

struct ExactResult {
  Schedule schedule;
  Cost cost = 0;
  std::int64_t nodes = 0;
};

class ExactTimeout : public std::runtime_error {
 public:
  ExactTimeout() : std::runtime_error("exact search timed out") {}
};

namespace detail {

class ExactSearch {
 public:
  ExactSearch(const Instance& inst, const ExactLimits& lim)
      : inst_(inst),
        deadline_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                          std::chrono::duration<double>(lim.timeout_s))),
        used_(static_cast<std::size_t>(inst.size()) + 1, 0),
        cur_(empty_schedule(inst)) {
    cur_.unserved.clear();
  }

  ExactResult run() {
    dfs(0, 0, 0);
    ExactResult r;
    r.schedule = best_;
    r.cost = best_.cost;
    r.nodes = nodes_;
    return r;
  }

 private:
  void dfs(std::size_t dock, Time free_at, Cost waiting) {
    if ((++nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) throw ExactTimeout();
    if (have_best_ && waiting > best_.cost) return;
    if (dock == cur_.runs.size()) {
      leaf(waiting);
      return;
    }
    DockRun& run = cur_.runs[dock];
    for (int id = 1; id <= inst_.size(); ++id) {
      if (used_[static_cast<std::size_t>(id)]) continue;
      const Trailer& t = inst_.real(id);
      const Time start = earliest_start(free_at, t);
      if (completion(start, t) > inst_.latest_completion(t)) continue;
      used_[static_cast<std::size_t>(id)] = 1;
      run.entries.push_back({id, start});
      dfs(dock, completion(start, t), waiting + t.f * static_cast<Cost>(start - t.r));
      run.entries.pop_back();
      used_[static_cast<std::size_t>(id)] = 0;
    }
    dfs(dock + 1, 0, waiting);
  }

  void leaf(Cost waiting) {
    Cost cost = waiting;
    for (int id = 1; id <= inst_.size(); ++id)
      if (!used_[static_cast<std::size_t>(id)]) cost += inst_.real(id).g;
    if (have_best_ && cost > best_.cost) return;
    Schedule s = cur_;
    for (int id = 1; id <= inst_.size(); ++id)
      if (!used_[static_cast<std::size_t>(id)]) s.unserved.push_back(id);
    s.cost = cost;
    std::string text = write_schedule(s);
    if (have_best_ && cost == best_.cost && text >= best_text_) return;
    best_ = std::move(s);
    best_text_ = std::move(text);
    have_best_ = true;
  }

  const Instance& inst_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<char> used_;
  Schedule cur_;
  Schedule best_;
  std::string best_text_;
  bool have_best_ = false;
  std::int64_t nodes_ = 0;
};

}  // namespace detail

/// Minimum-cost schedule; among ties, the one with the smallest write_schedule text.
inline ExactResult brute_force_optimum(const Instance& inst, const ExactLimits& lim = {}) {
  if (inst.size() > lim.max_trailers)
    throw std::invalid_argument("exact search limited to " + std::to_string(lim.max_trailers) + " trailers");
  if (inst.docks > lim.max_docks)
    throw std::invalid_argument("exact search limited to " + std::to_string(lim.max_docks) + " docks");
  return detail::ExactSearch(inst, lim).run();
}

}  // namespace dsts
