#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli_app.hpp"

using namespace dpt;

namespace {

const std::string kSpec = std::string(DPT_TEST_DATA) + "/spec_n4.json";
const std::string kGrid = std::string(DPT_TEST_DATA) + "/grid_n4.csv";

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"modes", "--spec", "{not json"}).code, 2);
  EXPECT_EQ(run({"modes", "--spec", "/nonexistent/spec.json"}).code, 2);
  EXPECT_EQ(run({"modes"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);

  json j = parse_json(slurp(kSpec));
  j["delta"] = 0;
  auto r = run({"modes", "--spec", j.dump()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("delta"), std::string::npos);
  j = parse_json(slurp(kSpec));
  j["F"]["c"] = 0.9;
  EXPECT_EQ(run({"modes", "--spec", j.dump()}).code, 3);
  j = parse_json(slurp(kSpec));
  j["extra"] = 1;
  EXPECT_EQ(run({"modes", "--spec", j.dump()}).code, 3);
  j = parse_json(slurp(kSpec));
  j.erase("a_ho");
  EXPECT_EQ(run({"modes", "--spec", j.dump()}).code, 3);

  EXPECT_EQ(run({"verify", "--spec", kSpec}).code, 0);
  EXPECT_EQ(run({"verify", "--spec", kSpec, "--rel-tol", "1e-300"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ModesAgainstDenseOracle) {
  const auto r = run({"modes", "--spec", kSpec, "--tilde", "--vectors"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["P"], 10);
  EXPECT_EQ(j["M"], 6);
  EXPECT_TRUE(j["stable"].get<bool>());
  ASSERT_EQ(j["modes"].size(), 10u);
  std::vector<double> lam;
  for (const auto& m : j["modes"]) lam.push_back(m["lambda"].get<double>());
  std::sort(lam.begin(), lam.end());
  const VectorXd dense = dense_modes(parse_spec(slurp(kSpec))).values;
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(lam[k], dense(k), 1e-10 * std::max(1.0, std::abs(dense(k))));
  std::map<std::string, int> count;
  for (const auto& m : j["modes"]) ++count[m["mu"].get<std::string>()];
  EXPECT_EQ(count["0+"], 1);
  EXPECT_EQ(count["1-"], 3);
  EXPECT_EQ(count["2"], 2);
  EXPECT_EQ(j["species"]["[N-2,2]"]["branches"].size(), 1u);
  EXPECT_EQ(j["species"]["[N-1,1]"]["branches"].size(), 2u);
  EXPECT_EQ(j["coefficients_internal"].size(), 10u);
  // tilde a = (F.a - F.b) G.a
  EXPECT_NEAR(j["tilde"]["a"].get<double>(), 1.7, 1e-15);
}

TEST(Cli, VerifyDeterministic) {
  const auto a = run({"verify", "--seed", "7"});
  const auto b = run({"verify", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["spec"]["N"], 8);
  EXPECT_FALSE(j["checks"][0].contains("seconds"));
  EXPECT_TRUE(json::parse(run({"verify", "--seed", "7", "--N", "5", "--timings"}).out)["checks"][0].contains("seconds"));
}

TEST(Cli, MotionCsv) {
  auto r = run({"motion", "--spec", kSpec, "--mode", "1+", "--xi", "2", "--q", "0.5", "--scaled"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "kind,label,displacement");
  EXPECT_EQ(lines[4].rfind("r,4,0", 0), 0u);
  EXPECT_EQ(lines[5].rfind("gamma,\"(1,2)\"", 0), 0u);

  r = run({"motion", "--spec", kSpec, "--symmetry", "[N-1,1]", "--sector", "r", "--xi", "1", "--S", "1", "--scaled"});
  ASSERT_EQ(r.code, 0) << r.err;
  lines = data_lines(r.out);
  const double s = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::stod(lines[1].substr(4)), s, 1e-15);
  EXPECT_NEAR(std::stod(lines[2].substr(4)), -s, 1e-15);

  r = run({"motion", "--spec", kSpec, "--mode", "0+", "--xi", "1", "--q", "0", "--absolute"});
  ASSERT_EQ(r.code, 0);
  lines = data_lines(r.out);
  EXPECT_NEAR(std::stod(lines[1].substr(4)), 16.0, 1e-12);  // D^2 a_ho r_inf with D = 4

  EXPECT_EQ(run({"motion", "--spec", kSpec, "--mode", "3", "--xi", "1"}).code, 4);
  EXPECT_EQ(run({"motion", "--spec", kSpec, "--mode", "2", "--xi", "3"}).code, 4);
  EXPECT_EQ(run({"motion", "--spec", kSpec, "--symmetry", "[N-2,2]", "--sector", "gamma", "--xi", "1", "--S", "1",
                 "--scaled", "--absolute"})
                .code,
            3);
}

TEST(Cli, Energy) {
  const SystemSpec spec = parse_spec(slurp(kSpec));
  const auto sol = solve_spectrum(spec);
  auto r = run({"energy", "--spec", kSpec});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_NEAR(j["energy"].get<double>(), ground_state_energy(spec, sol), 1e-13);
  r = run({"energy", "--spec", kSpec, "--occupancy", R"([{"mu":"2","n":1,"count":1}])"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_NEAR(j["energy"].get<double>() - j["ground_energy"].get<double>(), spec.delta * std::sqrt(sol.lambda("2")),
              1e-13);
  EXPECT_EQ(run({"energy", "--spec", kSpec, "--occupancy", R"([{"mu":"2","n":1,"count":5}])"}).code, 4);
  EXPECT_EQ(run({"energy", "--spec", kSpec, "--occupancy", R"([{"mu":"2","n":-1,"count":1}])"}).code, 3);
  EXPECT_EQ(run({"energy", "--spec", kSpec, "--occupancy", R"([{"mu":"2")"}).code, 2);
}

TEST(Cli, Phi0) {
  const SystemSpec spec = parse_spec(slurp(kSpec));
  const auto sol = solve_spectrum(spec);
  double expect = 1;
  for (const auto& m : sol.modes) expect *= std::pow(std::sqrt(sol.lambda(m)) / std::numbers::pi, 0.25);
  auto r = run({"phi0", "--spec", kSpec});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["phi0"].get<double>(), expect, 1e-13 * expect);

  r = run({"phi0", "--spec", kSpec, "--grid", kGrid});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "point,phi0,density");
  const double at0 = std::stod(lines[1].substr(2));
  EXPECT_NEAR(at0, expect, 1e-13 * expect);
  EXPECT_LT(std::stod(lines[2].substr(2)), at0);

  EXPECT_EQ(run({"phi0", "--spec", kSpec, "--q", "0,0"}).code, 3);
  EXPECT_EQ(run({"phi0", "--spec", kSpec, "--quanta", "1,0,0,0,0,0,0,0,0,0"}).code, 0);
  EXPECT_EQ(run({"phi0", "--spec", kSpec, "--quanta", "1.5,0,0,0,0,0,0,0,0,0"}).code, 3);
}

TEST(Cli, BenchSmoke) {
  auto r = run({"bench", "--N", "6,10", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "N,P,t_analytic,t_dense,speedup");
  EXPECT_EQ(lines[1].rfind("6,21,", 0), 0u);
  r = run({"bench", "--N", "6", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["rows"][0]["P"], 21);
  EXPECT_EQ(run({"bench", "--N", "1"}).code, 3);
}

TEST(Cli, OutputFile) {
  const auto path = (std::filesystem::temp_directory_path() / "dpt_cli_modes.json").string();
  std::filesystem::remove(path);
  ASSERT_EQ(run({"modes", "--spec", kSpec, "-o", path}).code, 0);
  EXPECT_EQ(json::parse(slurp(path))["P"], 10);
  std::filesystem::remove(path);
}
