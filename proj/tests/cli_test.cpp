#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "hypotest/cli.hpp"

using namespace hypotest;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypotest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json last_json(const std::string& out) {
  const auto end = out.find_last_not_of('\n');
  const auto start = out.rfind('\n', end);
  return nlohmann::json::parse(out.substr(start == std::string::npos ? 0 : start + 1));
}

}  // namespace

TEST(Cli, PhaseConverse) {
  const auto r = run({"bound", "--pair", "gaussian:2,0.05", "--bound", "phase_converse", "--n", "200", "--c", "0.025"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = last_json(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 0.95096, 1e-4);
  EXPECT_NEAR(j["optimizer"].get<double>(), 4.472136, 1e-3);
  EXPECT_EQ(j["kind"], "lower_bound_on_beta");
  EXPECT_NE(r.out.find("value     0.9509"), std::string::npos);
}

TEST(Cli, SampleSize) {
  const auto r = run({"samplesize", "--pair", "gaussian:2,0.05", "--eps", "0.01", "--delta", "0.01", "--lambda", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = last_json(r.out);
  EXPECT_NEAR(j["renyi"]["ceil"].get<double>(), 1834, 1);
  EXPECT_NE(r.out.find("renyi  n >= 1835"), std::string::npos);
}

TEST(Cli, NpExactJson) {
  const auto r = run({"bound", "--pair", "bernoulli:0.5,0.51", "--bound", "np_exact", "--n", "1", "--eps", "0.5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(last_json(r.out)["value"].get<double>(), 0.49, 1e-15);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run({"bound", "--pair", "gaussian:2,0.05", "--bound", "fano", "--n", "10"}).code, kExitConfig);
  EXPECT_EQ(run({"bound", "--pair", "bernoulli:0.5,0.6", "--bound", "smoothing_out", "--n", "10", "--eps", "0.1"})
                .code,
            kExitConfig);
  EXPECT_EQ(run({"bound", "--pair", "bernoulli:0.5", "--bound", "fano", "--n", "10", "--eps", "0.1"}).code,
            kExitConfig);
  EXPECT_EQ(run({"bound", "--pair", "gaussian:2,0.05", "--bound", "nope", "--n", "10", "--eps", "0.1"}).code,
            kExitConfig);
  const auto unknown = run({"sweep", "--frobnicate"});
  EXPECT_EQ(unknown.code, kExitConfig);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"reproduce", "fig7", "--out", "/tmp"}).code, kExitConfig);
}

TEST(Cli, IoError) {
  const auto r = run({"sweep", "--pair", "gaussian:2,0.05", "--n", "10,20", "--bounds", "fano", "--csv",
                      "/nonexistent-dir/out.csv"});
  EXPECT_EQ(r.code, kExitIo);
}

TEST(Cli, SweepWritesCsvAndSvg) {
  const auto dir = std::filesystem::temp_directory_path() / "hypotest_cli_sweep";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "s.csv").string(), svg = (dir / "s.svg").string();
  const auto r = run({"sweep", "--pair", "bernoulli:0.5,0.6", "--regime", "linear", "--n", "10:50:10", "--bounds",
                      "renyi_converse,np_exact", "--csv", csv, "--svg", svg, "--log-y"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(csv));
  EXPECT_TRUE(std::filesystem::exists(svg));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReproduceFig2WritesThreePairs) {
  const auto dir = std::filesystem::temp_directory_path() / "hypotest_cli_fig2";
  std::filesystem::remove_all(dir);
  const auto r = run({"reproduce", "fig2", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* stem : {"fig2_constant", "fig2_linear", "fig2_exponential"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(stem) + ".csv")));
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(stem) + ".svg")));
  }
  std::filesystem::remove_all(dir);
}
