#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "support.hpp"

using namespace dsts;
using dsts::testing::illustrative;
using dsts::testing::make_schedule;

namespace {

// Hand evaluation straight from the objective definition.
Cost oracle_cost(const Instance& inst, const Schedule& s) {
  Cost c = 0;
  for (const auto& run : s.runs)
    for (const auto& e : run.entries) c += inst.trailers[e.trailer - 1].f * (e.start - inst.trailers[e.trailer - 1].r);
  for (int id : s.unserved) c += inst.trailers[id - 1].g;
  return c;
}

bool has_rule(const std::vector<Violation>& v, Violation::Rule rule, int trailer) {
  for (const auto& x : v)
    if (x.rule == rule && x.trailer == trailer) return true;
  return false;
}

}  // namespace

TEST(Timing, Completion) {
  const Instance inst = illustrative(30);
  EXPECT_EQ(completion(5, inst.trailer(2)), 11);
  EXPECT_EQ(completion(11, inst.trailer(5)), 17);
  EXPECT_EQ(completion(0, inst.trailer(0)), 0);
}

TEST(Timing, Waiting) {
  const Instance inst = illustrative(30);
  EXPECT_EQ(waiting(5, inst.trailer(2)), 0);
  EXPECT_EQ(waiting(11, inst.trailer(5)), 1);
  for (const Trailer& t : inst.trailers) EXPECT_EQ(waiting(t.r, t), 0);
  EXPECT_THROW(waiting(4, inst.trailer(2)), std::invalid_argument);
}

TEST(Timing, EarliestStart) {
  const Instance inst = illustrative(30);
  EXPECT_EQ(earliest_start(0, inst.trailer(2)), 5);
  EXPECT_EQ(earliest_start(11, inst.trailer(5)), 11);
  Trailer t{1, 3, 20, 2, 1, 1, 1};
  EXPECT_EQ(earliest_start(3, t), 3);
}

TEST(Instance, DummyTrailer) {
  const Instance inst = illustrative(30);
  const Trailer d = inst.trailer(0);
  EXPECT_EQ(d.r, 0);
  EXPECT_EQ(d.p, 0);
  EXPECT_EQ(d.delta, 0);
  EXPECT_EQ(d.due, 30);
  EXPECT_EQ(d.f, 0);
  EXPECT_EQ(d.g, 0);
  EXPECT_NO_THROW(inst.validate());
  Instance bad = inst;
  bad.trailers[3].id = 9;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(CheckSchedule, Trailer9MissesShortHorizon) {
  const Instance inst = illustrative(30);
  // Trailer 9 arrives at 25 and needs 6 periods, so it cannot finish by 29 anywhere.
  for (Time start = 25; start < 30; ++start) {
    for (int dock = 0; dock < 3; ++dock) {
      std::vector<std::vector<Entry>> runs(3);
      runs[static_cast<std::size_t>(dock)] = {{9, start}};
      const auto v = check_schedule(inst, make_schedule(inst, runs));
      EXPECT_TRUE(has_rule(v, Violation::Rule::Horizon, 9)) << "start " << start;
    }
  }
}

TEST(CheckSchedule, NarratedRunIsFeasible) {
  const Instance inst = illustrative(30);
  const Schedule s = make_schedule(inst, {{{2, 5}, {5, 11}}, {}, {}});
  EXPECT_TRUE(check_schedule(inst, s).empty());
}

TEST(CheckSchedule, DuplicateIsPartitionViolation) {
  const Instance inst = illustrative(30);
  Schedule s = make_schedule(inst, {{{2, 5}}, {}, {}});
  insert_sorted(s.unserved, 2);
  EXPECT_TRUE(has_rule(check_schedule(inst, s), Violation::Rule::Partition, 2));
}

TEST(CheckSchedule, StructuralViolations) {
  const Instance inst = illustrative(30);
  Schedule s = make_schedule(inst, {{{2, 5}, {5, 10}}, {{1, 4}}, {{3, 20}}});
  const auto v = check_schedule(inst, s);
  EXPECT_TRUE(has_rule(v, Violation::Rule::Overlap, 5));
  EXPECT_TRUE(has_rule(v, Violation::Rule::BeforeArrival, 1));
  EXPECT_TRUE(has_rule(v, Violation::Rule::DueDate, 3));
}

TEST(CheckSchedule, DueDateAndUnknownIds) {
  const Instance inst = illustrative(30);
  Schedule s = make_schedule(inst, {{{1, 10}}, {}, {}});  // completes at 16 > due 15
  EXPECT_TRUE(has_rule(check_schedule(inst, s), Violation::Rule::DueDate, 1));
  s.runs[1].entries.push_back({42, 0});
  EXPECT_TRUE(has_rule(check_schedule(inst, s), Violation::Rule::UnknownTrailer, 42));
  Schedule short_layout = s;
  short_layout.runs.pop_back();
  bool layout = false;
  for (const auto& x : check_schedule(inst, short_layout)) layout |= x.rule == Violation::Rule::DockLayout;
  EXPECT_TRUE(layout);
}

TEST(Evaluate, Examples) {
  const Instance inst = illustrative(30);
  EXPECT_EQ(evaluate(inst, empty_schedule(inst)), 1000);
  const Schedule s = make_schedule(inst, {{{2, 5}, {5, 11}}, {}, {}});
  EXPECT_EQ(evaluate(inst, s), oracle_cost(inst, s));
  EXPECT_EQ(evaluate(inst, s), 900);
  const Instance wide = illustrative(70);
  const Schedule full =
      make_schedule(wide, {{{1, 5}, {4, 11}, {7, 20}, {10, 30}}, {{2, 5}, {6, 15}, {9, 25}}, {{3, 5}, {5, 11}, {8, 17}}});
  ASSERT_TRUE(check_schedule(wide, full).empty());
  EXPECT_GT(evaluate(wide, full), 0);  // trailers 4, 5, 8 wait one or two periods
  EXPECT_EQ(evaluate(wide, full), oracle_cost(wide, full));
}

TEST(Evaluate, InfeasibleThrowsWithViolations) {
  const Instance inst = illustrative(30);
  const Schedule s = make_schedule(inst, {{{9, 25}}, {}, {}});
  try {
    evaluate(inst, s);
    FAIL() << "expected InfeasibleSchedule";
  } catch (const InfeasibleSchedule& e) {
    EXPECT_FALSE(e.violations().empty());
  }
}

TEST(Evaluate, ZeroCostIffNoWaitAndAllServed) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = dsts::testing::small_instance(seed, 2, 5);
    const Schedule s = dsts::testing::random_heuristic_schedule(inst, seed);
    const Cost c = evaluate(inst, s);
    EXPECT_GE(c, 0);
    bool no_wait = s.unserved.empty();
    for (const auto& run : s.runs)
      for (const auto& e : run.entries) no_wait &= e.start == inst.real(e.trailer).r;
    bool positive_weights = true;
    for (const auto& t : inst.trailers) positive_weights &= t.f > 0 && t.g > 0;
    if (positive_weights) {
      EXPECT_EQ(c == 0, no_wait);
    }
  }
}

TEST(TryInsert, Examples) {
  const Instance inst = illustrative(30);
  const Schedule empty = empty_schedule(inst);
  auto one = try_insert(inst, empty, 0, 0, 1);
  ASSERT_TRUE(one);
  EXPECT_EQ(one->runs[0].entries, (std::vector<Entry>{{1, 5}}));
  EXPECT_EQ(one->cost, evaluate(inst, *one));

  const Schedule narrated = make_schedule(inst, {{{2, 5}, {5, 11}}, {}, {}});
  EXPECT_FALSE(try_insert(inst, narrated, 0, 2, 9));

  auto two = try_insert(inst, *one, 0, 1, 4);
  ASSERT_TRUE(two);
  EXPECT_EQ(two->runs[0].entries, (std::vector<Entry>{{1, 5}, {4, 11}}));
}

TEST(TryInsert, Preconditions) {
  const Instance inst = illustrative(30);
  const Schedule s = make_schedule(inst, {{{2, 5}}, {}, {}});
  EXPECT_THROW(try_insert(inst, s, 0, 0, 2), std::invalid_argument);
  EXPECT_THROW(try_insert(inst, s, 0, 5, 3), std::out_of_range);
  EXPECT_THROW(try_insert(inst, s, 7, 0, 3), std::out_of_range);
}

TEST(TryInsert, NeverMutatesAndStaysFeasible) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = dsts::testing::small_instance(seed, 3, 8, 16);
    const Schedule s = dsts::testing::random_heuristic_schedule(inst, seed);
    const Schedule copy = s;
    for (int j : copy.unserved)
      for (int d = 0; d < inst.docks; ++d)
        for (std::size_t pos = 0; pos <= s.runs[static_cast<std::size_t>(d)].entries.size(); ++pos) {
          auto r = try_insert(inst, s, d, pos, j);
          EXPECT_EQ(s, copy);
          if (r) {
            EXPECT_TRUE(check_schedule(inst, *r).empty());
            EXPECT_EQ(r->cost, oracle_cost(inst, *r));
            for (std::size_t k = 0; k < pos; ++k)
              EXPECT_EQ(r->runs[static_cast<std::size_t>(d)].entries[k], s.runs[static_cast<std::size_t>(d)].entries[k]);
          }
        }
  }
}

// For a fixed sequence, earliest-start timing is feasible whenever some timing
// is, and no feasible timing is cheaper.
TEST(Timing, EarliestStartDominanceByEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = dsts::testing::small_instance(seed, 1, 3, 10);
    std::vector<int> order{1, 2, 3};
    do {
      for (std::size_t len = 1; len <= 3; ++len) {
        const std::vector<int> seq(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
        std::optional<Cost> best;
        std::vector<Time> starts(len, 0);
        std::function<void(std::size_t, Time)> rec = [&](std::size_t k, Time prev) {
          if (k == len) {
            Cost c = 0;
            for (std::size_t q = 0; q < len; ++q) c += inst.real(seq[q]).f * (starts[q] - inst.real(seq[q]).r);
            if (!best || c < *best) best = c;
            return;
          }
          const Trailer& t = inst.real(seq[k]);
          for (Time s = std::max(prev, t.r); s < inst.horizon; ++s) {
            if (completion(s, t) > inst.latest_completion(t)) break;
            starts[k] = s;
            rec(k + 1, completion(s, t));
          }
        };
        rec(0, 0);
        DockRun run{0, {}};
        for (int id : seq) run.entries.push_back({id, 0});
        const bool ok = retime_from(inst, run, 0);
        EXPECT_EQ(ok, best.has_value());
        if (ok) {
          EXPECT_EQ(run_cost(inst, run), *best);
        }
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3/4"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("1.25"), Rational(5, 4));
  EXPECT_EQ(Rational::parse("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(to_decimal(Rational(5, 4)), "1.25");
  EXPECT_EQ(to_decimal(Rational(-7)), "-7");
  EXPECT_EQ(to_decimal(Rational(1, 400)), "0.0025");
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(42), b(42), c(43);
  bool differ = false;
  for (int k = 0; k < 100; ++k) {
    const auto x = a.uniform_int(-3, 9);
    EXPECT_EQ(x, b.uniform_int(-3, 9));
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 9);
    differ |= x != c.uniform_int(-3, 9);
  }
  EXPECT_TRUE(differ);
  Rng r(7);
  auto picked = r.sample(std::vector<int>{1, 2, 3, 4, 5}, 3);
  EXPECT_EQ(picked.size(), 3U);
  EXPECT_EQ(std::set<int>(picked.begin(), picked.end()).size(), 3U);
}

TEST(Io, IllustrativeInstanceRoundTrip) {
  const std::string text = detail::read_file(dsts::testing::data_path("illustrative_t30.dsts"));
  const Instance inst = read_instance(text);
  EXPECT_EQ(inst, illustrative(30));
  EXPECT_EQ(write_instance(inst), text);
}

TEST(Io, ParseErrors) {
  const std::string text = write_instance(illustrative(30));
  EXPECT_THROW(read_instance("DSTS 1\nname x\ndocks 1\nhorizon 5\ntrailers 0\n"), ParseError);
  const std::string truncated = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  try {
    read_instance(truncated);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("missing section 'trailer 10'"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 15);
  }
  try {
    read_instance("DSTS 1\nname x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("missing section 'docks'"), std::string::npos);
  }
  EXPECT_THROW(read_instance(text + "junk\n"), ParseError);
}

TEST(Io, ScheduleRoundTrip) {
  const Instance inst = illustrative(30);
  const Schedule s = make_schedule(inst, {{{2, 5}, {5, 11}}, {}, {{1, 5}}});
  const std::string text = write_schedule(s);
  EXPECT_EQ(text, "dock 0: (2,5) (5,11)\ndock 1:\ndock 2: (1,5)\nunserved: 3 4 6 7 8 9 10\n");
  Schedule back = read_schedule(text);
  refresh(inst, back);
  EXPECT_EQ(back, s);
  EXPECT_THROW(read_schedule("dock 0: (1,5)\n"), ParseError);
}
