#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using imcf::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "imcf");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "imcf_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ParamsAndExitCodes) {
  const Result ok = invoke({"params", "--n", "2", "--k", "1", "--m1", "1", "--m2", "1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("b = 0.894427191"), std::string::npos);
  EXPECT_EQ(invoke({"params", "--n", "4", "--k", "3", "--m1", "1", "--m2", "2"}).code, 2);
  EXPECT_EQ(invoke({"params", "--k", "5"}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"trace", "--r0", "1.5"}).code, 2);
}

TEST(Cli, ClassifyBandIsTypeII) {
  const Result r = invoke({"classify", "--r0", "0.947213595499958", "--psi0", "1.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["type"], "II");
  EXPECT_EQ(j["right_limit"], "+inf");
  EXPECT_EQ(j["table1"]["psi_prime"], "mixed");
}

TEST(Cli, SeparatrixTraceRoundTripsToTypeIV) {
  const fs::path csv = scratch("sep.csv");
  const Result s = invoke({"separatrix", "--side", "1", "--trace-out", csv.string()});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto j = nlohmann::json::parse(s.out);
  EXPECT_NEAR(j["psi0"].get<double>(), 0.16810469442364484, 1e-8);
  EXPECT_EQ(j["trace_path"], csv.string());
  const Result c = invoke({"classify", "--from-trace", csv.string()});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(nlohmann::json::parse(c.out)["type"], "IV");
}

TEST(Cli, TraceIsByteDeterministic) {
  const std::vector<std::string> args{"trace", "--r0", "0.3", "--psi0", "-0.5"};
  const Result a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("BlowUpMinus,0.5603831"), std::string::npos);
}

TEST(Cli, BackDirectionDecreasesR) {
  const Result r = invoke({"trace", "--r0", "0.2", "--psi0", "0.1", "--direction", "back"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double prev = 2.0;
  while (std::getline(in, line) && line[0] != '#') {
    const double x = std::stod(line.substr(0, line.find(',')));
    EXPECT_LT(x, prev);
    prev = x;
  }
  EXPECT_NE(r.out.find("#events direction=backward"), std::string::npos);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"r0": 0.947213595499958, "psi0": 1.2})";
  const Result from_file = invoke({"classify", "--config", cfg.string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(nlohmann::json::parse(from_file.out)["type"], "II");
  const Result overridden = invoke({"classify", "--config", cfg.string(), "--r0", "0", "--psi0", "0"});
  ASSERT_EQ(overridden.code, 0);
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["type"], "I");
  std::ofstream(cfg) << R"({"no_such_key": 1})";
  EXPECT_EQ(invoke({"classify", "--config", cfg.string()}).code, 2);
}

TEST(Cli, SeedsCoverAllTypes) {
  const Result r = invoke({"sweep", "--seeds"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto counts = nlohmann::json::parse(r.out)["counts"];
  for (const char* t : {"I", "II", "III", "IV", "V"}) EXPECT_EQ(counts[t], 1) << t;
}

TEST(Cli, PortraitWritesFile) {
  const fs::path svg = scratch("p.svg");
  const Result r = invoke({"portrait", "--ic", "0,0", "--out", svg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(svg);
  EXPECT_NE(text.find("</svg>"), std::string::npos);
  EXPECT_EQ(invoke({"portrait", "--pane", "nope"}).code, 2);
  EXPECT_EQ(invoke({"portrait", "--ic", "zero"}).code, 2);
}

TEST(Cli, VerifyVerdicts) {
  EXPECT_EQ(invoke({"verify"}).code, 0);
  const Result bad = invoke({"verify", "--perturb", "0.01"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("FAIL reduction_residual"), std::string::npos);
  const Result k2 = invoke({"verify", "--n", "3", "--k", "2"});
  EXPECT_EQ(k2.code, 0);
  EXPECT_NE(k2.out.find("SKIPPED pde_residual_k1"), std::string::npos);
}
