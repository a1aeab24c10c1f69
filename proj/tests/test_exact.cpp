#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"

using namespace dsts;
using dsts::testing::illustrative;

namespace {

// Cheapest cost over every unserved set and per-dock order, by plain enumeration.
Cost enumerate_optimum(const Instance& inst) {
  const int n = inst.size();
  Cost best = std::numeric_limits<Cost>::max();
  std::vector<int> dock_of(static_cast<std::size_t>(n), -1);
  std::function<void(int)> assign = [&](int k) {
    if (k == n) {
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(inst.docks));
      for (int j = 0; j < n; ++j)
        if (dock_of[static_cast<std::size_t>(j)] >= 0) groups[static_cast<std::size_t>(dock_of[static_cast<std::size_t>(j)])].push_back(j + 1);
      Cost total = 0;
      for (int j = 0; j < n; ++j)
        if (dock_of[static_cast<std::size_t>(j)] < 0) total += inst.trailers[static_cast<std::size_t>(j)].g;
      for (auto& g : groups) {
        Cost dock_best = std::numeric_limits<Cost>::max();
        std::sort(g.begin(), g.end());
        do {
          Time free_at = 0;
          Cost w = 0;
          bool ok = true;
          for (int id : g) {
            const Trailer& t = inst.real(id);
            const Time start = std::max(free_at, t.r);
            free_at = start + t.delta + t.p;
            if (free_at > std::min(t.due, inst.horizon - 1)) ok = false;
            w += t.f * (start - t.r);
          }
          if (ok) dock_best = std::min(dock_best, w);
        } while (std::next_permutation(g.begin(), g.end()));
        if (dock_best == std::numeric_limits<Cost>::max()) return;
        total += dock_best;
      }
      best = std::min(best, total);
      return;
    }
    for (int d = -1; d < inst.docks; ++d) {
      dock_of[static_cast<std::size_t>(k)] = d;
      assign(k + 1);
    }
  };
  assign(0);
  return best;
}

}  // namespace

TEST(Exact, SingleTrailer) {
  Instance inst;
  inst.name = "one";
  inst.docks = 1;
  inst.horizon = 5;
  inst.trailers = {{1, 0, 4, 1, 1, 1, 10}};
  const ExactResult r = brute_force_optimum(inst);
  EXPECT_EQ(r.cost, 0);
  EXPECT_EQ(r.schedule.runs[0].entries, (std::vector<Entry>{{1, 0}}));
}

TEST(Exact, TwoIdenticalOnlyOneFits) {
  Instance inst;
  inst.name = "two";
  inst.docks = 1;
  inst.horizon = 10;
  inst.trailers = {{1, 0, 3, 2, 1, 1, 10}, {2, 0, 3, 2, 1, 1, 10}};
  const ExactResult r = brute_force_optimum(inst);
  EXPECT_EQ(r.cost, 10);
  EXPECT_EQ(r.schedule.served_count(), 1);
  // canonical tie-break keeps trailer 1
  EXPECT_EQ(r.schedule.runs[0].entries, (std::vector<Entry>{{1, 0}}));
  EXPECT_EQ(r.schedule.unserved, (std::vector<int>{2}));
}

TEST(Exact, IllustrativeFirstSix) {
  Instance inst = illustrative(30);
  inst.trailers.resize(6);
  const ExactResult r = brute_force_optimum(inst);
  EXPECT_EQ(r.cost, enumerate_optimum(inst));
  EXPECT_TRUE(check_schedule(inst, r.schedule).empty());
  // docks busy until 11, so trailers 4 and 5 (arriving at 10) each wait one unit
  const Schedule witness = dsts::testing::make_schedule(inst, {{{1, 5}, {4, 11}}, {{2, 5}, {5, 11}}, {{3, 5}, {6, 15}}});
  EXPECT_TRUE(check_schedule(inst, witness).empty());
  EXPECT_EQ(witness.cost, 200);
  EXPECT_EQ(r.cost, 200);
}

TEST(Exact, MatchesEnumerationAndBoundsHeuristics) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = dsts::testing::small_instance(seed, 1 + static_cast<int>(seed % 3), 3 + static_cast<int>(seed % 4), 12);
    const ExactResult r = brute_force_optimum(inst);
    EXPECT_TRUE(check_schedule(inst, r.schedule).empty());
    EXPECT_EQ(r.cost, evaluate(inst, r.schedule));
    EXPECT_EQ(r.cost, enumerate_optimum(inst)) << "seed " << seed;
    for (ConstructMethod m :
         {ConstructMethod::ArrivalVertical, ConstructMethod::ArrivalHorizontal, ConstructMethod::MinArrivalVertical})
      EXPECT_LE(r.cost, construct(m, inst).cost);
    EXPECT_LE(r.cost, dsts::testing::random_heuristic_schedule(inst, seed).cost);
  }
}

TEST(Exact, Deterministic) {
  const Instance inst = dsts::testing::small_instance(5, 2, 6, 12);
  const ExactResult a = brute_force_optimum(inst);
  const ExactResult b = brute_force_optimum(inst);
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(write_schedule(a.schedule), write_schedule(b.schedule));
}

TEST(Exact, Limits) {
  const Instance big = dsts::testing::small_instance(1, 2, 8, 12);
  EXPECT_THROW(brute_force_optimum(big), std::invalid_argument);
  ExactLimits lim;
  lim.max_docks = 1;
  EXPECT_THROW(brute_force_optimum(dsts::testing::small_instance(1, 2, 4, 12), lim), std::invalid_argument);
  lim = {};
  lim.max_trailers = 12;
  lim.timeout_s = 0.0;
  EXPECT_THROW(brute_force_optimum(dsts::testing::small_instance(2, 3, 12, 16), lim), ExactTimeout);
}

TEST(Exact, IllustrativeShortHorizonOptimum) {
  // Optimal cost at T=30 drops a third trailer; see README.
  Instance inst = illustrative(30);
  ExactLimits lim;
  lim.max_trailers = 10;
  lim.timeout_s = 120;
  const ExactResult r = brute_force_optimum(inst, lim);
  EXPECT_EQ(r.cost, 400);
  EXPECT_EQ(r.schedule.unserved.size(), 3U);
}
