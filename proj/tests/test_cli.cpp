#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "dsts/cli.hpp"
#include "support.hpp"

using namespace dsts;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dsts");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dsts_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run({"gen", "--seed", "42", "--docks", "20", "--trailers", "60", "-o", path("a.dsts")}).code, 0);
  ASSERT_EQ(run({"gen", "--seed", "42", "--docks", "20", "--trailers", "60", "-o", path("b.dsts")}).code, 0);
  EXPECT_EQ(::dsts::detail::read_file(path("a.dsts")), ::dsts::detail::read_file(path("b.dsts")));
  EXPECT_EQ(::dsts::detail::read_file(path("a.dsts")),
            ::dsts::detail::read_file(dsts::testing::data_path("tf_20_tr_60_seed42.dsts")));
  const Result r = run({"gen", "--seed", "3", "--docks", "2", "--trailers", "4", "--relaxed"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(read_instance(r.out).size(), 4);
}

TEST_F(Cli, SolveIllustrativeShortHorizon) {
  const Result r = run({"solve", "-i", dsts::testing::data_path("illustrative_t30.dsts"), "--seed", "1", "-o",
                        path("s.txt"), "--stats", path("stats.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("cost 400\nserved 7/10 ratio 0.7000\n", 0), 0U) << r.out;
  const Schedule s = read_schedule(::dsts::detail::read_file(path("s.txt")));
  EXPECT_EQ(s.unserved.size(), 3U);
  EXPECT_EQ(s.unserved.back(), 10);
  const std::string stats = ::dsts::detail::read_file(path("stats.csv"));
  EXPECT_EQ(stats.rfind("iteration,best_cost,accepted,op_triple,matrix_distance\n", 0), 0U);
}

TEST_F(Cli, CheckAgainstFormulations) {
  const std::string inst = dsts::testing::data_path("illustrative_t30.dsts");
  ASSERT_EQ(run({"solve", "-i", inst, "--seed", "2", "-o", path("s.txt")}).code, 0);
  Result r = run({"check", "-i", inst, "--schedule", path("s.txt"), "--against", "arctime", "--preprocess",
                  "--symmetry", "--cuts", "three_cycle,one_per_dock_time,opposite_arcs,pp_cut_1,pp_cut_2,pp_cut_degree"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("model arctime-reconstructed satisfied"), std::string::npos);
  for (const char* f : {"bigm", "bigm-literal"}) EXPECT_EQ(run({"check", "-i", inst, "--schedule", path("s.txt"), "--against", f}).code, 0);

  ::dsts::detail::write_file(path("bad.txt"), "dock 0: (9,25)\ndock 1:\ndock 2:\nunserved: 1 2 3 4 5 6 7 8 10\n");
  r = run({"check", "-i", inst, "--schedule", path("bad.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("horizon"), std::string::npos) << r.out;
}

TEST_F(Cli, ConstructAndExact) {
  const std::string inst = dsts::testing::data_path("illustrative_t30.dsts");
  Result r = run({"construct", "-i", inst, "--method", "MinArrivalVertical"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cost 600\n"), std::string::npos) << r.out;

  ASSERT_EQ(run({"gen", "--seed", "7", "--docks", "2", "--trailers", "5", "--tf", "12", "--relaxed", "-o", path("g.dsts")}).code, 0);
  r = run({"exact", "-i", path("g.dsts")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cost " + std::to_string(brute_force_optimum(load_instance(path("g.dsts"))).cost)), std::string::npos);
  EXPECT_EQ(run({"exact", "-i", inst}).code, 2);
}

TEST_F(Cli, ExportModels) {
  const std::string inst = dsts::testing::data_path("illustrative_t30.dsts");
  Result r = run({"export-model", "-i", inst, "--formulation", "bigm"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, ::dsts::detail::read_file(dsts::testing::data_path("bigm_illustrative_t30.lp")));
  r = run({"export-model", "-i", inst, "--formulation", "arctime", "--preprocess", "--symmetry", "--cuts", "pp_cut_1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\\ Model: arctime-reconstructed\n"), std::string::npos);
  EXPECT_NE(r.out.find(" sym_5_0_17: "), std::string::npos);
  EXPECT_NE(r.out.find(" pp_cut_1_1_2_0: "), std::string::npos);

  ::dsts::detail::write_file(path("duals.txt"), "alpha 5\nu1 1 2\n");
  r = run({"export-model", "-i", inst, "--formulation", "pricing", "--duals", path("duals.txt"), "--tight-dummy-degree",
           "-o", path("pp.lp")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string pp = ::dsts::detail::read_file(path("pp.lp"));
  EXPECT_NE(pp.find("+ 995\n"), std::string::npos);
  EXPECT_NE(pp.find(" pp1_0: "), std::string::npos);

  ::dsts::detail::write_file(path("cols.txt"), dw::write_columns({dw::warm_start_column(load_instance(inst))}));
  r = run({"export-model", "-i", inst, "--formulation", "rmp", "--columns", path("cols.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(" convexity: l_1 = 1\n"), std::string::npos);

  EXPECT_EQ(run({"export-model", "-i", inst, "--formulation", "arctime", "--cuts", "nope"}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "-i", "x", "--bogus"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve", "-i", path("missing.dsts")}).code, 2);
  EXPECT_EQ(run({"solve", "-i", dsts::testing::data_path("illustrative_t30.dsts"), "--metric", "d7"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, BenchIsByteStable) {
  ::dsts::detail::write_file(path("cfg.json"), R"({
  "instances": ["inst.dsts"],
  "generate": [{"seed": 4, "docks": 2, "trailers": 6, "tf": 12, "relaxed": true}],
  "methods": ["vns", "ArrivalVertical"],
  "seed": 10,
  "repetitions": 3,
  "workers": 2
})");
  fs::copy_file(dsts::testing::data_path("illustrative_t30.dsts"), path("inst.dsts"));
  const Result a = run({"bench", "--config", path("cfg.json"), "--no-timing", "-o", path("a.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(run({"bench", "--config", path("cfg.json"), "--no-timing", "-o", path("b.csv")}).code, 0);
  const std::string csv = ::dsts::detail::read_file(path("a.csv"));
  EXPECT_EQ(csv, ::dsts::detail::read_file(path("b.csv")));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "instance,method,seed,rep,cost,served,total,ratio,iters,ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 2 * 3);
  EXPECT_NE(csv.find("illustrative_t30,vns,10,0,"), std::string::npos);
  EXPECT_NE(csv.find("illustrative_t30,vns,12,2,"), std::string::npos);
  EXPECT_NE(csv.find(",400,7,10,0.7000,"), std::string::npos);

  ::dsts::detail::write_file(path("bad.json"), "{\"instances\": []}");
  EXPECT_EQ(run({"bench", "--config", path("bad.json")}).code, 2);
}

TEST(CliRecord, CsvRow) {
  cli::RunRecord r{"x", "vns", 3, 1, 250, 3, 4, 17, 1.5};
  EXPECT_EQ(cli::csv_row(r), "x,vns,3,1,250,3,4,0.7500,17,1.500\n");
  cli::RunRecord empty{"e", "vns", 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(empty.ratio(), 0.0);
}

TEST(CliBench, OrderIndependentOfWorkers) {
  cli::BenchConfig cfg;
  for (std::uint64_t s : {1, 2, 3}) {
    cli::BenchInstance bi;
    bi.gen.seed = s;
    bi.gen.docks = 2;
    bi.gen.trailers = 6;
    bi.gen.tf = 12;
    bi.gen.strict = false;
    cfg.instances.push_back(bi);
  }
  cfg.repetitions = 2;
  cfg.workers = 1;
  const std::string one = cli::run_bench(cfg, false);
  cfg.workers = 4;
  EXPECT_EQ(cli::run_bench(cfg, false), one);
}
