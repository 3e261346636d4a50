#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + BESSELQUAD_CLI + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(BESSELQUAD_TEST_DATA) + "/" + name; }

json run_json(const std::string& args, int expected_code = 0) {
  const CliRun r = run(args + " --format json");
  EXPECT_EQ(r.code, expected_code) << args << "\n" << r.out;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, SingleExample) {
  const json j = run_json("single --n 0 --l 0 --alpha 1 --a 0 --b 3.14159265358979");
  EXPECT_NEAR(j["value"].get<double>(), 1.8519370520, 1e-9);
  for (const char* key : {"value", "abs_error_est", "strategy", "nodes", "seconds"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, SquaredInfiniteIntegral) {
  const json j = run_json("squared --n 0 --l 1 --alpha 1 --a 0 --b 10000");
  EXPECT_NEAR(j["value"].get<double>(), std::numbers::pi / 6, 2e-4);
}

TEST(Cli, ProductFamilies) {
  const json same = run_json("product-same --n 0 --l 1 --alpha 1 --beta 2 --a 0 --b 10000");
  EXPECT_NEAR(same["value"].get<double>(), std::numbers::pi / 24, 2e-4);
  const json diff = run_json("product-diff --n 0 --k 0 --l 2 --alpha 1 --beta 1 --a 0 --b 1000");
  EXPECT_LT(std::abs(diff["value"].get<double>()), 5e-3);
}

TEST(Cli, CsvColumnOrder) {
  const CliRun r = run("single --n 1 --l 2 --alpha 1 --a 1 --b 30 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "value,abs_error_est,strategy,nodes,seconds");
  const json j = run_json("single --n 1 --l 2 --alpha 1 --a 1 --b 30");
  const std::string row = r.out.substr(r.out.find('\n') + 1);
  EXPECT_EQ(std::stod(row.substr(0, row.find(','))), j["value"].get<double>());
}

TEST(Cli, JsonRoundTrips) {
  const CliRun r = run("product-diff --n 1 --k 1 --l 4 --alpha 0.7 --beta 1.9 --a 2 --b 45 --format json");
  ASSERT_EQ(r.code, 0);
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j, nlohmann::ordered_json::parse(j.dump()));
  EXPECT_EQ(j.dump() + "\n", r.out);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"value", "abs_error_est", "strategy", "nodes", "seconds"}));
}

TEST(Cli, StrategiesAgreeAboveThreshold) {
  const std::string cases[] = {
      "single --n 2 --l 3 --alpha 1.5 --a 6 --b 60",
      "squared --n -1 --l 4 --alpha 1 --a 9 --b 70",
      "product-same --n 0 --l 2 --alpha 1 --beta 2.5 --a 7 --b 50",
      "product-diff --n 1 --k 2 --l 5 --alpha 1.2 --beta 0.8 --a 14 --b 60",
  };
  for (const std::string& c : cases) {
    const json rec = run_json(c + " --strategy recursion");
    const json quad = run_json(c + " --strategy quadrature --tol 1e-13");
    const double q = quad["value"].get<double>();
    EXPECT_NEAR(rec["value"].get<double>(), q, 1e-8 * std::max(1.0, std::abs(q))) << c;
    EXPECT_EQ(quad["strategy"], "quadrature");
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("single --n 0 --l 0 --alpha 1 --a 2 --b 1").code, 2);
  EXPECT_EQ(run("single --n 0 --l 0 --alpha 1 --a 0").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("single --n 0 --l 0 --alpha 1 --a 0 --b 1 --format xml").code, 2);
  EXPECT_EQ(run("single --n 0 --l 0 --alpha 1 --a 0 --b 1 --strategy fast").code, 2);
  EXPECT_EQ(run("single --n 0 --l 0 --alpha 0 --a 1 --b 2").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ZeroLowerLimitNamesCondition) {
  const json bad = run_json("single --n -1 --l 0 --alpha 1 --a 0 --b 2", 2);
  EXPECT_NE(bad["message"].get<std::string>().find("l + n > -1"), std::string::npos);
  const json sq = run_json("squared --n -3 --l 1 --alpha 1 --a 0 --b 2", 2);
  EXPECT_NE(sq["message"].get<std::string>().find("2l + n > -1"), std::string::npos);
  const json mixed = run_json("product-diff --n -4 --k 1 --l 2 --alpha 1 --beta 2 --a 0 --b 2", 2);
  EXPECT_NE(mixed["message"].get<std::string>().find("k + l + n > -1"), std::string::npos);
  EXPECT_EQ(run("single --n -1 --l 1 --alpha 1 --a 0 --b 2").code, 0);
}

TEST(Cli, NearDegenerateExitCode) {
  const std::string c = "product-same --n 0 --l 1 --alpha 1 --beta 1.0000000001 --a 10 --b 40";
  const json j = run_json(c + " --strategy recursion", 3);
  EXPECT_EQ(j["error"], "NearDegenerate");
  EXPECT_EQ(run(c).code, 0);
}

TEST(Cli, NotConvergedExitCode) {
  const json j = run_json("single --n 0 --l 0 --alpha 1 --a 0 --b 2000 --strategy quadrature --tol 1e-300", 4);
  EXPECT_EQ(j["error"], "NotConverged");
  EXPECT_TRUE(j.contains("value"));
  EXPECT_EQ(run("single --n 0 --l 0 --alpha 1 --a 0 --b 2000 --strategy quadrature --tol 1e-300").code, 4);
}

TEST(Cli, ToleranceFromEnvironment) {
  const std::string c = "single --n 0 --l 0 --alpha 1 --a 0 --b 2000 --strategy quadrature --format json";
  EXPECT_EQ(run(c, "BESSELQUAD_TOL=1e-300").code, 4);
  EXPECT_EQ(run(c, "BESSELQUAD_TOL=1e-8").code, 0);
  // An explicit flag wins over the environment.
  EXPECT_EQ(run(c + " --tol 1e-8", "BESSELQUAD_TOL=1e-300").code, 0);
  EXPECT_EQ(run(c, "BESSELQUAD_TOL=abc").code, 2);
}

TEST(Cli, WeightedCsvHeaderOptional) {
  const std::string tail = " --l 1 --alpha 1 --a 0 --b 20";
  const json with = run_json("weighted --samples " + data("ramp_header.csv") + tail);
  const json without = run_json("weighted --samples " + data("ramp.csv") + tail + " --degree 1");
  EXPECT_NEAR(with["value"].get<double>(), without["value"].get<double>(), 1e-12);
  EXPECT_NEAR(with["value"].get<double>(), 0.635296450315812, 1e-8);
  EXPECT_EQ(run("weighted --samples " + data("missing.csv") + tail).code, 2);
}

TEST(Cli, WeightedProduct) {
  const json j = run_json("weighted --samples " + data("ramp.csv") +
                          " --k 1 --l 1 --alpha 1 --beta 2 --a 1 --b 20");
  EXPECT_TRUE(j.contains("value"));
  EXPECT_EQ(run("weighted --samples " + data("ramp.csv") + " --l 1 --alpha 1 --a 0 --b 25").code, 2);
}

TEST(Cli, TableIsDeterministic) {
  const CliRun first = run("table --config " + data("grid.json") + " --format csv");
  ASSERT_EQ(first.code, 0) << first.out;
  std::size_t lines = 0;
  for (char c : first.out) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 3u * 4u * 2u);
  auto strip_seconds = [](const std::string& s) {
    std::string out, line;
    for (char c : s) {
      if (c != '\n') { line += c; continue; }
      // Drop the timing column, the only nondeterministic field.
      const std::size_t last = line.rfind(',');
      const std::size_t secs = line.rfind(',', last - 1);
      out += line.substr(0, secs) + "\n";
      line.clear();
    }
    return out;
  };
  for (int i = 0; i < 3; ++i) {
    const CliRun again = run("table --config " + data("grid.json") + " --format csv");
    EXPECT_EQ(strip_seconds(again.out), strip_seconds(first.out));
  }
  const json j = run_json("table --config " + data("grid.json"));
  ASSERT_EQ(j.size(), 24u);
  EXPECT_EQ(j[0]["n"], 0);
  EXPECT_EQ(j[0]["l"], 0);
  EXPECT_EQ(j[23]["n"], 2);
  EXPECT_EQ(j[23]["l"], 8);
  EXPECT_EQ(j[23]["alpha"], 2.0);
}

TEST(Cli, VerifyAppendix) {
  const json j = run_json("verify --suite appendix");
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["cases"].size(), 63u);
  for (const json& c : j["cases"]) EXPECT_LT(c["residual"].get<double>(), 1e-8) << c.dump();
  EXPECT_EQ(run("verify --suite appendix").code, 0);
  EXPECT_EQ(run("verify --suite other").code, 2);
}
