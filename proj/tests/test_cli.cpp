#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mellin/black_scholes.hpp"

using mellin::cli::run_cli;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "mellin_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.push_back("--format");
  args.push_back("json");
  const CliRun r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return json::parse(r.out);
}

const std::vector<std::string> kReferencePrice = {"price",   "--spot",  "3700", "--strike", "4000", "--tau",
                                              "1",       "--sigma", "0.25", "--rate",   "0.01"};

}  // namespace

TEST(Cli, PriceReferenceContract) {
  const json j = run_json(kReferencePrice);
  EXPECT_EQ(j["command"], "price");
  EXPECT_NEAR(j["results"]["closed_form"].get<double>(), 264.82, 0.01);
  EXPECT_TRUE(j["results"]["converged"].get<bool>());
  EXPECT_LT(j["results"]["rel_gap"].get<double>(), 1e-8);
  EXPECT_FALSE(j["results"]["terms"].empty());
  EXPECT_EQ(j["results"]["terms"][0]["n"], 0);
  EXPECT_TRUE(j.contains("params") && j.contains("diagnostics"));
}

TEST(Cli, JsonCarriesTheLibraryNumbers) {
  const json j = run_json(kReferencePrice);
  const mellin::OptionContract c{3700, 4000, 1, 0.01, 0.25};
  EXPECT_EQ(j["results"]["closed_form"].get<double>(), mellin::bs_closed_form(c));
  EXPECT_EQ(j["results"]["forward_term"].get<double>(), mellin::bs_forward_term(c));
}

TEST(Cli, HumanOutputShowsPrice) {
  const CliRun r = run(kReferencePrice);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("264.8"), std::string::npos);
}

TEST(Cli, ValidationExitsTwo) {
  auto args = kReferencePrice;
  args[8] = "0";  // --sigma 0
  const CliRun r = run(args);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("sigma"), std::string::npos);
}

TEST(Cli, FarFromMoneyExitsThreeWithClosedForm) {
  const json j = run_json({"price", "--spot", "100", "--strike", "40", "--tau", "0.01", "--sigma", "0.1"}, 3);
  EXPECT_FALSE(j["results"]["converged"].get<bool>());
  EXPECT_GT(j["results"]["closed_form"].get<double>(), 59.0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"american", "kernel", "--n", "1", "--m", "1"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"price", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"green", "--alpha", "2", "--mu", "0.5", "--x-grid", "1:0:0.1"}).code, 2);
  EXPECT_EQ(run({"price", "--help"}).code, 0);
}

TEST(Cli, GreenGaussianWithDomainRow) {
  const json j = run_json({"green", "--alpha", "2", "--gamma-t", "1", "--theta", "0", "--mu", "0.5", "--x-grid", "-3:3:0.1"});
  const auto& rows = j["results"]["density"];
  ASSERT_EQ(rows.size(), 61u);
  int domain = 0;
  for (const auto& row : rows) {
    const double x = row["x"].get<double>();
    if (row["flag"] == "domain") {
      ++domain;
      EXPECT_EQ(x, 0.0);
      EXPECT_TRUE(row["g"].is_null());
      continue;
    }
    EXPECT_NEAR(row["g"].get<double>(), mellin::heat_kernel(x, 1.0, 1.0), 1e-8) << x;
  }
  EXPECT_EQ(domain, 1);
  EXPECT_NEAR(j["results"]["normalization"].get<double>(), 0.9973, 1e-3);
}

TEST(Cli, GreenCauchy) {
  const json j = run_json({"green", "--alpha", "1", "--mu", "1", "--x-grid", "0.25:5:0.5"});
  for (const auto& row : j["results"]["density"]) {
    const double x = row["x"].get<double>();
    EXPECT_NEAR(row["g"].get<double>(), 1.0 / (M_PI * (1.0 + x * x)), 1e-6) << x;
  }
}

TEST(Cli, GreenUnconvergedPointGivesPartialTable) {
  // alpha = gamma_t and x equal to the scale: neither half-plane sum converges.
  const json j = run_json({"green", "--alpha", "1", "--mu", "1", "--x-grid", "0.5:1.5:0.5"}, 3);
  const auto& rows = j["results"]["density"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["flag"], "ok");
  EXPECT_EQ(rows[1]["flag"], "unconverged");
  EXPECT_EQ(rows[2]["flag"], "ok");
}

TEST(Cli, AmericanBoundary) {
  const json j = run_json({"american", "boundary", "--rate", "0.1", "--sigma", "0.3", "--tau-grid", "0.05:1:0.05"});
  EXPECT_EQ(j["command"], "american boundary");
  EXPECT_EQ(j["results"]["boundary"].size(), 20u);
  EXPECT_TRUE(j["diagnostics"]["monotone"].get<bool>());
  EXPECT_LE(j["diagnostics"]["max_agreement"].get<double>(), 1e-5);
}

TEST(Cli, AmericanKernel) {
  const json j = run_json({"american", "kernel", "--n", "1", "--m", "1", "--tau", "1"});
  EXPECT_LE(j["results"]["kernel"][0]["gap"].get<double>(), 1e-4);
  EXPECT_EQ(j["params"]["rate"].get<double>(), 0.1);
}

TEST(Cli, Demos) {
  json j = run_json({"demo", "exp", "--x", "1"});
  EXPECT_NEAR(j["results"]["value"].get<double>(), 0.36787944117144233, 1e-12);
  EXPECT_FALSE(j["results"]["terms"].empty());
  j = run_json({"demo", "beta", "--x", "4", "--side", "right"});
  EXPECT_NEAR(j["results"]["value"].get<double>(), 0.2, 1e-10);
  j = run_json({"demo", "beta", "--x", "0.25"});
  EXPECT_EQ(j["params"]["side"], "left");
  EXPECT_NEAR(j["results"]["value"].get<double>(), 0.8, 1e-10);
  j = run_json({"demo", "exp2d", "--x", "1", "1"});
  EXPECT_NEAR(j["results"]["value"].get<double>(), std::exp(-2.0), 1e-10);
  EXPECT_EQ(run({"demo", "exp2d", "--x", "1"}).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* fmt : {"json", "csv"}) {
    auto args = kReferencePrice;
    args.insert(args.end(), {"--format", fmt});
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> b = {"american", "boundary", "--tau-grid", "0.1:0.5:0.1", "--format", fmt};
    auto b3 = b;
    b3.insert(b3.end(), {"--threads", "3"});
    EXPECT_EQ(run(b).out, run(b3).out);
  }
}

TEST(Cli, CsvHasHeaderAndSeventeenDigits) {
  const CliRun r = run({"demo", "exp", "--x", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("key,value\n", 0), 0u);
  EXPECT_NE(r.out.find("\nindex,pole,term,partial_sum\n"), std::string::npos);
  EXPECT_NE(r.out.find("exact,0.36787944117144233\n"), std::string::npos);
}

TEST(Cli, ConfigFilePrecedence) {
  const std::string path = testing::TempDir() + "mellin_cli_config.txt";
  {
    std::ofstream cfg(path);
    cfg << "# contract\nspot = 3700\nstrike=4000\ntau=1\nsigma=0.25\nrate=0.01\n";
  }
  json j = run_json({"price", "--config", path});
  EXPECT_NEAR(j["results"]["closed_form"].get<double>(), 264.82, 0.01);
  j = run_json({"price", "--config", path, "--spot", "4000"});
  EXPECT_EQ(j["params"]["spot"].get<double>(), 4000.0);
  EXPECT_EQ(j["params"]["strike"].get<double>(), 4000.0);
  std::remove(path.c_str());
  EXPECT_EQ(run({"price", "--config", "/nonexistent/cfg"}).code, 2);
}

TEST(Cli, OutFile) {
  const std::string path = testing::TempDir() + "mellin_cli_out.json";
  const CliRun r = run({"demo", "exp", "--x", "2", "--format", "json", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_NEAR(j["results"]["value"].get<double>(), std::exp(-2.0), 1e-12);
  std::remove(path.c_str());
}
