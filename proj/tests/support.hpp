#pragma once

#include <string>
#include <vector>

#include "dsts/dsts.hpp"

namespace dsts::testing {

inline std::string data_path(const std::string& file) { return std::string(DSTS_TEST_DATA) + "/" + file; }

/// Ten trailers on three docks, f = g = 100.
inline Instance illustrative(Time horizon) {
  Instance inst;
  inst.name = "illustrative_t" + std::to_string(horizon);
  inst.docks = 3;
  inst.horizon = horizon;
  const int table[10][3] = {{5, 15, 0},  {5, 20, 0},  {5, 25, 0},  {10, 35, 0}, {10, 40, 0},
                            {15, 45, 0}, {20, 45, 0}, {15, 50, 0}, {25, 45, 0}, {30, 50, 0}};
  for (int k = 0; k < 10; ++k) inst.trailers.push_back({k + 1, table[k][0], table[k][1], 5, 1, 100, 100});
  return inst;
}

inline Instance small_instance(std::uint64_t seed, int docks, int trailers, Time tf = 12) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.docks = docks;
  cfg.trailers = trailers;
  cfg.tf = tf;
  cfg.strict = false;
  return generate(cfg);
}

/// A varied feasible schedule: a construction, possibly destroyed, repaired and improved.
inline Schedule random_heuristic_schedule(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  const ConstructMethod methods[] = {ConstructMethod::ArrivalVertical, ConstructMethod::ArrivalHorizontal,
                                     ConstructMethod::MinArrivalVertical};
  Schedule s = construct(methods[rng.index(3)], inst);
  VnsConfig cfg;
  const int steps = static_cast<int>(rng.index(4));
  for (int k = 0; k < steps; ++k) {
    s = apply_destruction(kDestruction[rng.index(kDestruction.size())], inst, s, cfg, rng);
    if (rng.index(2) == 0) s = apply_repair(kRepair[rng.index(kRepair.size())], inst, s);
    if (rng.index(2) == 0) s = apply_local_search(kLocalSearch[rng.index(kLocalSearch.size())], inst, s);
  }
  return s;
}

inline Schedule make_schedule(const Instance& inst, std::vector<std::vector<Entry>> runs) {
  Schedule s = empty_schedule(inst);
  s.unserved.clear();
  std::vector<char> seen(static_cast<std::size_t>(inst.size()) + 1, 0);
  for (std::size_t d = 0; d < runs.size(); ++d) {
    s.runs[d].entries = runs[d];
    for (const Entry& e : runs[d]) seen[static_cast<std::size_t>(e.trailer)] = 1;
  }
  for (int id = 1; id <= inst.size(); ++id)
    if (!seen[static_cast<std::size_t>(id)]) s.unserved.push_back(id);
  refresh(inst, s);
  return s;
}

}  // namespace dsts::testing
