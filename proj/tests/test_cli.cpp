#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tadic/cli/commands.hpp"

using namespace tadic;
using namespace tadic::cli;

namespace {

int run_args(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("coefficient parsing") {
  auto c = parse_coeffs("2:1, 1:7");
  CHECK(c.at(2) == 1);
  CHECK(c.at(1) == 7);
  CHECK_THROWS_AS(parse_coeffs("2=1"), DomainError);
  CHECK_THROWS_AS(parse_coeffs("2:1,2:3"), DomainError);
  CHECK_THROWS_AS(parse_coeffs(""), DomainError);
  CHECK_THROWS_AS(parse_format("svg"), DomainError);
}

TEST_CASE("config overlay") {
  RunConfig c;
  apply_json(c, nlohmann::json::parse(R"({"p": 13, "m-max": 3, "N": 4, "coeffs": "2:2,1:1", "kernel": "serial"})"));
  CHECK(c.p == 13);
  CHECK(*c.m_max == 3);
  CHECK(*c.N == 4);
  CHECK(c.coeffs->at(2) == 2);
  CHECK(c.kernel == Kernel::Serial);
  CHECK_THROWS_AS(apply_json(c, nlohmann::json::parse(R"({"primes": 13})")), DomainError);
  c.q = 12;
  CHECK_THROWS_AS(c.b(), DomainError);
}

TEST_CASE("polygons report") {
  auto out = dispatch(config("polygons"));
  CHECK(out.exit_code == kOk);
  CHECK(out.report["schema"] == "tadic-newton/1");
  CHECK(out.report["closed_forms_agree"] == true);
  CHECK(out.report["p_dk_ge_p_delta"]["holds"] == true);
  CHECK(out.report["verdict"] == "pass");

  auto small = config("polygons");
  small.p = 3;
  auto o3 = dispatch(small);
  CHECK(o3.report["hypotheses"]["p_gt_d(2d+1)"] == false);
  CHECK(o3.report.contains("polygons"));
}

TEST_CASE("polygon sweep") {
  auto c = config("polygons");
  c.sweep = true;
  c.p_min = 13;
  c.p_max = 61;
  c.d_max = 4;
  auto out = dispatch(c);
  CHECK(out.exit_code == kOk);
  CHECK(out.report["violations"].empty());
  CHECK(out.csv.rfind("kind,p,d,k,m,lhs,rhs", 0) == 0);
}

TEST_CASE("cfunction report") {
  auto c = config("cfunction");
  c.m_max = 3;
  c.N = 4;
  auto out = dispatch(c);
  CHECK(out.exit_code == kOk);
  CHECK(out.report["l_dual_path"] == true);
  for (const auto& row : out.report["dk_bound"]) CHECK(row["verdict"] == "pass");
  for (const auto& row : out.report["sanity_T0"]) CHECK(row["ok"] == true);
}

TEST_CASE("dwork report") {
  auto c = config("dwork");
  c.m_max = 3;
  c.N = 3;
  c.P = 20;
  auto out = dispatch(c);
  CHECK(out.exit_code == kOk);
  CHECK(out.report["dual_path_agrees"] == true);
  CHECK(out.report["doubling_stable"] == true);
  CHECK(out.report["minor_oracle_agrees"] == true);
  CHECK(out.report["gamma_audit"]["violations"] == "0");
}

TEST_CASE("explore") {
  auto c = config("explore");
  c.p = 13;
  c.trials = 0;
  auto empty = dispatch(c);
  CHECK(empty.report["equality_table"].empty());

  c.trials = 4;
  c.m_max = 2;
  c.seed = 42;
  auto a = render(dispatch(c), Format::Json);
  auto b = render(dispatch(c), Format::Json);
  CHECK(a == b);
  c.seed = 43;
  CHECK_FALSE(render(dispatch(c), Format::Json) == a);
}

TEST_CASE("specialize") {
  auto c = config("specialize");
  c.N = 2;
  auto out = dispatch(c);
  CHECK(out.exit_code == kOk);
  c.m = 2;
  CHECK_THROWS_AS(dispatch(c), UnsupportedError);
}

TEST_CASE("front end and exit codes") {
  const auto path = temp("tadic_cli_test.json");
  std::filesystem::remove(path);
  CHECK(run_args({"tadic", "polygons", "--p", "11", "--d", "2", "--k", "1", "--out", path.string()}) == kOk);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["schema"] == "tadic-newton/1");
  CHECK(j["config"]["p"] == "11");

  CHECK(run_args({"tadic", "polygons", "--p", "12"}) == kUsage);
  CHECK(run_args({"tadic", "polygons", "--k", "2", "--d", "2"}) == kUsage);
  CHECK(run_args({"tadic", "bogus"}) == kUsage);
  CHECK(run_args({"tadic", "cfunction", "--mmax", "3", "--N", "3", "--budget", "20", "--out", path.string()}) ==
        kResource);
  CHECK(run_args({"tadic", "specialize", "--m", "2", "--out", path.string()}) == kUsage);

  const auto csv = temp("tadic_cli_test.csv");
  CHECK(run_args({"tadic", "cfunction", "--mmax", "2", "--N", "3", "--M", "12", "--format", "csv", "--out",
                  csv.string()}) == kOk);
  CHECK_FALSE(slurp(csv).empty());

  const auto cfg = temp("tadic_cli_cfg.json");
  {
    std::ofstream o(cfg);
    o << R"({"p": 13, "d": 2, "k": 1, "N": 3, "mmax": 2})";
  }
  CHECK(run_args({"tadic", "cfunction", "--config", cfg.string(), "--p", "11", "--out", path.string()}) == kOk);
  j = nlohmann::json::parse(slurp(path));
  CHECK(j["config"]["p"] == "11");
  CHECK(j["config"]["N"] == "3");
  std::filesystem::remove(path);
  std::filesystem::remove(csv);
  std::filesystem::remove(cfg);
}
