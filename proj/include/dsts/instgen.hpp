#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dsts/core.hpp"
#include "dsts/rng.hpp"

namespace dsts {

struct GenConfig {
  std::uint64_t seed = 0;
  int docks = 20;
  int trailers = 60;
  Time tf = 16;  // shift length in periods; also the horizon
  bool strict = true;
};

inline std::string instance_name(const GenConfig& cfg) {
  return "tf_" + std::to_string(cfg.docks) + "_tr_" + std::to_string(cfg.trailers);
}

/// Sampling bounds derived from the shift length.
struct GenBounds {
  Time r_max;
  Time p_min;
  Time p_max;
};

inline GenBounds gen_bounds(Time tf) {
  // floor(0.75 tf), ceil(tf/8), floor(tf/4) in integer arithmetic
  return {static_cast<Time>((3 * tf) / 4), static_cast<Time>((tf + 7) / 8), static_cast<Time>(tf / 4)};
}

inline void validate(const GenConfig& cfg) {
  if (cfg.tf < 2) throw std::invalid_argument("tf must be >= 2");
  if (cfg.docks < 1 || cfg.trailers < 1) throw std::invalid_argument("docks and trailers must be >= 1");
  const GenBounds b = gen_bounds(cfg.tf);
  if (b.p_min > b.p_max || b.p_min < 1)
    throw std::invalid_argument("tf=" + std::to_string(cfg.tf) + " leaves no admissible processing time");
  if (cfg.strict) {
    if (cfg.docks < 20 || cfg.docks > 60)
      throw std::invalid_argument("strict mode requires 20 <= docks <= 60");
    if (cfg.trailers < 3 * cfg.docks || cfg.trailers > std::min(4 * cfg.docks, 200))
      throw std::invalid_argument("strict mode requires 3*docks <= trailers <= min(4*docks, 200)");
  }
}

/// Draw order per trailer is r, p, delta, grace, f; trailers in id order.
inline Instance generate(const GenConfig& cfg) {
  validate(cfg);
  const GenBounds b = gen_bounds(cfg.tf);
  Rng rng(cfg.seed);
  Instance inst;
  inst.name = instance_name(cfg);
  inst.docks = cfg.docks;
  inst.horizon = cfg.tf;
  inst.trailers.reserve(static_cast<std::size_t>(cfg.trailers));
  for (int id = 1; id <= cfg.trailers; ++id) {
    Trailer t;
    t.id = id;
    t.r = static_cast<Time>(rng.uniform_int(0, b.r_max));
    t.p = static_cast<Time>(rng.uniform_int(b.p_min, b.p_max));
    t.delta = static_cast<Time>(rng.uniform_int(1, 3));
    const auto grace = static_cast<Time>(rng.uniform_int(3, 5));
    t.due = t.r + t.delta + t.p + grace;
    t.f = rng.uniform_int(5, 10);
    t.g = 100 * t.f;
    inst.trailers.push_back(t);
  }
  return inst;
}

}  // namespace dsts
