#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sq3/cli/run.hpp"

namespace {

namespace fs = std::filesystem;
using sq3::cli::kExitAssertion;
using sq3::cli::kExitOk;
using sq3::cli::kExitUsage;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sq3::cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("sq3_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path path(const std::string& name) const { return dir_ / name; }
  fs::path dir_;
};

TEST(Cli, ConstantsJson) {
  const auto r = run({"constants", "--format", "json", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["c3"].get<double>(), 30.8706, 1e-4);
  EXPECT_EQ(doc["b1_direct_at_Q"]["Q"], 4096);
  EXPECT_EQ(doc["b1_euler_at_Q"]["Q"], 1000000);
  EXPECT_NEAR(doc["muller_b"].get<double>(), doc["c3"].get<double>(), 1e-10);
  EXPECT_EQ(doc["w_values"].size(), 5u);
  EXPECT_EQ(doc["assembly_components"]["width_1"], 4);
  EXPECT_EQ(doc["assembly_components"]["a0_sq_formula_1"], 8.0);
}

TEST(Cli, ConstantsExtendedJsonCarriesDigits) {
  const auto r = run({"constants", "--format", "json", "--precision", "extended", "--q-euler", "1000",
                      "--q-max", "64", "--w-n", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const std::string c3 = doc["c3"];
  EXPECT_EQ(c3.substr(0, 32), "30.87060609050358738439687120636");
}

TEST(Cli, ConstantsTextIsAligned) {
  const auto r = run({"constants", "--format", "text", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk);
  const auto ls = lines(r.out);
  ASSERT_GT(ls.size(), 5u);
  const std::size_t end = ls[0].rfind("value") + 5;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    ASSERT_GT(ls[i].size(), end) << ls[i];
    EXPECT_NE(ls[i][end - 1], ' ') << ls[i];
    EXPECT_EQ(ls[i][end], ' ') << ls[i];
  }
}

TEST(Cli, VerifyMeanExample) {
  const auto r = run({"verify-mean", "--limit", "10000", "--checkpoints", "100,1000,10000", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "x,partial_sum,main_term,abs_err,rel_err");
  auto rel = [&](int i) { return std::stod(ls[i].substr(ls[i].rfind(',') + 1)); };
  EXPECT_LT(rel(3), rel(1));
  EXPECT_LT(rel(2), rel(1));
}

TEST(Cli, TimestampOnlyWithoutReproducible) {
  const auto a = run({"verify-mean", "--limit", "1000"});
  const auto b = run({"verify-mean", "--limit", "1000", "--reproducible"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out.rfind("# ", 0), 0u);
  EXPECT_EQ(a.out.substr(a.out.find('\n') + 1), b.out);
  EXPECT_EQ(b.out.rfind("x,", 0), 0u);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  for (const char* sub : {"verify-mean", "verify-meansquare"}) {
    const auto one = run({sub, "--limit", "100000", "--threads", "1", "--reproducible", "--format", "json"});
    const auto many = run({sub, "--limit", "100000", "--threads", "6", "--reproducible", "--format", "json"});
    ASSERT_EQ(one.code, kExitOk);
    EXPECT_EQ(one.out, many.out);
    const auto conv = run({sub, "--limit", "100000", "--builder", "convolution", "--reproducible", "--format", "json"});
    EXPECT_EQ(one.out, conv.out);
  }
}

TEST(Cli, VerifyJsonShape) {
  const auto r = run({"verify-meansquare", "--limit", "30000", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["series"], "mean_square");
  EXPECT_EQ(doc["checkpoints"].size(), 6u);
  EXPECT_TRUE(doc["fit"].contains("slope"));
  EXPECT_TRUE(doc["fit"].contains("r_squared"));
}

TEST(Cli, VerifyGeneral) {
  const auto r = run({"verify-general", "--n", "4", "--limit", "2", "--checkpoints", "1,2", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[1].substr(0, 5), "1,64,");
  EXPECT_EQ(ls[2].substr(0, 6), "2,640,");
  EXPECT_EQ(run({"verify-general", "--n", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"verify-general"}).code, kExitUsage);
}

TEST(Cli, VerifyGeneralCapsLimit) {
  const auto r = run({"verify-general", "--n", "10", "--limit", "100000", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("capping --limit"), std::string::npos);
}

TEST(Cli, Assertions) {
  const auto tight = run({"verify-mean", "--limit", "10000", "--max-rel-err", "1e-9"});
  EXPECT_EQ(tight.code, kExitAssertion);
  EXPECT_NE(tight.err.find("assertion failed"), std::string::npos);
  EXPECT_EQ(run({"verify-meansquare", "--limit", "100000", "--max-rel-err", "0.02", "--expect-decay"}).code, kExitOk);
}

TEST(Cli, GaussExample) {
  const auto r = run({"gauss", "--q", "6", "--a", "1", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_LT(doc["sums"][0]["abs"].get<double>(), 1e-12);
  EXPECT_EQ(doc["sums"][0]["closed_abs"], 0.0);
  const auto all = run({"gauss", "--q", "12", "--reproducible"});
  ASSERT_EQ(all.code, kExitOk);
  EXPECT_EQ(lines(all.out).size(), 13u);
}

TEST(Cli, SingularSweep) {
  const auto r = run({"singular", "--n", "2", "--q-grid", "1,10,100", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0], "Q,series_value,approximation,exact,abs_err,rel_err");
  const auto t = run({"singular", "--n", "1", "--q-grid", "4", "--terms", "--reproducible"});
  const auto tl = lines(t.out);
  ASSERT_EQ(tl.size(), 6u);
  EXPECT_EQ(tl[0], "q,A_q_n");
  EXPECT_EQ(tl[5].rfind("total,", 0), 0u);
  EXPECT_EQ(run({"singular", "--q-grid", "1"}).code, kExitUsage);
}

TEST(Cli, WeylSweep) {
  const auto r = run({"weyl-sweep", "--n-terms", "200", "--grid", "0.01", "--reproducible"});
  ASSERT_EQ(r.code, kExitOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 101u);
  EXPECT_EQ(ls[0], "alpha,abs,normalized,a,q,weyl_ratio");
  EXPECT_EQ(ls[1].substr(0, 6), "0,200,");
}

TEST(Cli, UsageErrors) {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"nonsense"},
      {"verify-mean", "--threads", "0"},
      {"verify-mean", "--limit", "200000000"},
      {"verify-mean", "--limit", "1000", "--checkpoints", "300,100"},
      {"verify-mean", "--limit", "1000", "--checkpoints", "100,2000"},
      {"verify-mean", "--format", "xml"},
      {"verify-mean", "--format", "binary"},
      {"verify-mean", "--bogus"},
      {"tables", "--order", "4", "--builder", "fold"},
      {"gauss", "--q", "0"},
      {"fit"},
  };
  for (const auto& args : bad) {
    const auto r = run(args);
    EXPECT_EQ(r.code, kExitUsage) << (args.empty() ? "" : args[0]);
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_NE(run({"verify-mean", "--threads", "0"}).err.find("--threads"), std::string::npos);
}

TEST(Cli, OverwriteLiftsLimitCap) {
  sq3::cli::RunConfig cfg;
  cfg.subcommand = sq3::cli::Subcommand::verify_mean;
  cfg.limit = 200'000'000;
  EXPECT_THROW(sq3::cli::validate(cfg), sq3::cli::UsageError);
  cfg.overwrite = true;
  EXPECT_NO_THROW(sq3::cli::validate(cfg));
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verify-meansquare"), std::string::npos);
}

TEST_F(CliFiles, OutputFileIsNotClobbered) {
  const auto p = path("out.csv");
  { std::ofstream(p) << "keep"; }
  const auto r = run({"verify-mean", "--limit", "1000", "-o", p.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(slurp(p), "keep");
  const auto w = run({"verify-mean", "--limit", "1000", "-o", p.string(), "--overwrite", "--reproducible"});
  EXPECT_EQ(w.code, kExitOk);
  EXPECT_TRUE(w.out.empty());
  EXPECT_EQ(slurp(p), run({"verify-mean", "--limit", "1000", "--reproducible"}).out);
}

TEST_F(CliFiles, TablesRoundTripThroughVerify) {
  const auto direct = run({"verify-meansquare", "--limit", "20000", "--reproducible"}).out;
  for (const char* fmt : {"csv", "binary"}) {
    const auto p = path(std::string("r3.") + fmt);
    ASSERT_EQ(run({"tables", "--limit", "20000", "--format", fmt, "-o", p.string(), "--reproducible"}).code, kExitOk);
    const auto again = run({"verify-meansquare", "--table", p.string(), "--limit", "20000", "--reproducible"});
    ASSERT_EQ(again.code, kExitOk) << again.err;
    EXPECT_EQ(again.out, direct) << fmt;
  }
}

TEST_F(CliFiles, TableTooShortIsAComputationError) {
  const auto p = path("short.bin");
  ASSERT_EQ(run({"tables", "--limit", "500", "--format", "binary", "-o", p.string()}).code, kExitOk);
  const auto r = run({"verify-mean", "--table", p.string(), "--checkpoints", "100,1000"});
  EXPECT_EQ(r.code, kExitAssertion);
  EXPECT_NE(r.err.find("checkpoint exceeds table"), std::string::npos);
  const auto wrong = run({"verify-general", "--n", "4", "--table", p.string()});
  EXPECT_NE(wrong.code, kExitOk);
}

TEST_F(CliFiles, FitReproducesVerifyFit) {
  const auto p = path("series.csv");
  ASSERT_EQ(run({"verify-meansquare", "--limit", "100000", "-o", p.string()}).code, kExitOk);
  const auto fit = run({"fit", "--input", p.string(), "--format", "json"});
  ASSERT_EQ(fit.code, kExitOk) << fit.err;
  const auto verify = nlohmann::json::parse(run({"verify-meansquare", "--limit", "100000", "--format", "json"}).out);
  const auto refit = nlohmann::json::parse(fit.out);
  EXPECT_EQ(refit["fit"], verify["fit"]);
  EXPECT_LT(refit["fit"]["slope"].get<double>(), 2.0);
}

TEST_F(CliFiles, FitNeedsThreePoints) {
  const auto p = path("two.csv");
  ASSERT_EQ(run({"verify-mean", "--limit", "1000", "--checkpoints", "100,1000", "-o", p.string()}).code, kExitOk);
  const auto r = run({"fit", "--input", p.string()});
  EXPECT_EQ(r.code, kExitAssertion);
  EXPECT_NE(r.err.find("insufficient points"), std::string::npos);
}

}  // namespace
