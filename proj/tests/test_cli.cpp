#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "walters/cli.hpp"
#include "walters/errors.hpp"
#include "walters/spec_io.hpp"

using namespace walters;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "walters-thermo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("walters_cli_" + name);
}

template <class T>
void check_round_trip(const std::string& text) {
  const json j = json::parse(text);
  const T back = j.get<T>();
  CHECK(json(back) == j);
}

}  // namespace

TEST_CASE("pressure of the zero potential") {
  const Result r = invoke({"pressure", "--builtin", "zero", "--t", "1"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "t,pressure,epsilon,log_epsilon,iterations,residual");
  CHECK(ls[1].rfind("1,0.693147180559945", 0) == 0);
}

TEST_CASE("select on a thm2 spec file") {
  const auto path = temp_file("thm2.json");
  {
    std::ofstream f(path);
    f << potential_to_json(thm2_potential()).dump(2);
  }
  const Result r = invoke({"select", "--spec", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict,Delta1") != std::string::npos);
  const Result j = invoke({"select", "--spec", path.string(), "--format", "json"});
  REQUIRE(j.code == 0);
  const json v = json::parse(j.out);
  CHECK(v.at("verdict") == "Delta1");
  CHECK(v.at("sum_a").get<double>() == doctest::Approx(-11.0).epsilon(1e-14));
  CHECK(v.at("delta1_threshold").get<double>() == doctest::Approx(-4.0).epsilon(1e-14));
  check_round_trip<SelectionVerdict>(j.out);
  std::filesystem::remove(path);
}

TEST_CASE("example1 checklist passes") {
  for (const char* b : {"example1", "example1:-0.2"}) {
    const Result r = invoke({"example1", "--builtin", b});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(lines(r.out).size() > 10);
  }
  const Result j = invoke({"example1", "--format", "json"});
  CHECK(j.code == 0);
  check_round_trip<Checklist>(j.out);
}

TEST_CASE("exit codes") {
  // validation: unknown command, bad spec, bad grid, a != c
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"pressure", "--builtin", "nope", "--t", "1"}).code == 2);
  CHECK(invoke({"pressure", "--builtin", "zero", "--t", "-1"}).code == 2);
  CHECK(invoke({"pressure", "--builtin", "zero", "--t-grid", "3:1:4"}).code == 2);
  CHECK(invoke({"pressure", "--builtin", "zero", "--t", "1", "--t-grid", "1:2:3"}).code == 2);
  CHECK(invoke({"gibbs", "--builtin", "zero", "--t", "1", "--word", "012"}).code == 2);
  CHECK(invoke({"pressure", "--spec", "/nonexistent/spec.json", "--t", "1"}).code == 2);
  const auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << "{\"a\": {\"prefix\": [], \"tail\": {\"kind\": \"geometric\", \"limit\": 0, \"coeff\": 1, \"ratio\": 1.5}}}";
  }
  const Result r = invoke({"validate", "--spec", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("error [") == 0);
  std::filesystem::remove(bad);
  // numerical: eps_t below the solver's reach
  const Result n = invoke({"pressure", "--builtin", "thm2", "--t", "400"});
  CHECK(n.code == 3);
  CHECK(n.err.find("pressure") != std::string::npos);
  // help is not an error
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("validate") {
  const Result ok = invoke({"validate", "--builtin", "example1"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("hypothesis_pass,true") != std::string::npos);
  const Result zero = invoke({"validate", "--builtin", "zero"});
  CHECK(zero.code == 2);
  const Result j = invoke({"validate", "--builtin", "thm2", "--format", "json"});
  CHECK(j.code == 0);
  check_round_trip<ValidateReport>(j.out);
}

TEST_CASE("deterministic output") {
  const std::vector<std::vector<std::string>> cmds{
      {"pressure", "--builtin", "symmetric", "--t-grid", "1:20:5:log"},
      {"eigen", "--builtin", "example1", "--t", "2", "--q-max", "8"},
      {"gibbs", "--builtin", "thm2", "--t-grid", "1:4:3", "--word", "0110", "--word", "1"},
      {"zero-temp", "--builtin", "thm2-mirror", "--format", "json"},
      {"rates", "--builtin", "example1", "--t-grid", "20:80:4", "--word", "01"},
      {"oracle", "--builtin", "example1", "--t", "1", "--depth", "8", "--word", "0"},
  };
  for (const auto& c : cmds) {
    const Result a = invoke(c);
    const Result b = invoke(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("thread cap does not change the output") {
  const std::vector<std::string> cmd{"gibbs", "--builtin", "symmetric", "--t-grid", "1:10:6"};
  setenv("WALTERS_THERMO_THREADS", "1", 1);
  CHECK(thread_cap() == 1);
  const Result one = invoke(cmd);
  setenv("WALTERS_THERMO_THREADS", "4", 1);
  const Result four = invoke(cmd);
  unsetenv("WALTERS_THERMO_THREADS");
  CHECK(one.out == four.out);
}

TEST_CASE("JSON reports parse back") {
  Result r = invoke({"pressure", "--builtin", "example1", "--t-grid", "1:5:3", "--format", "json"});
  REQUIRE(r.code == 0);
  check_round_trip<std::vector<PressureSolution>>(r.out);

  r = invoke({"eigen", "--builtin", "thm2", "--t", "3", "--q-max", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  check_round_trip<std::vector<EigenReport>>(r.out);

  r = invoke({"gibbs", "--builtin", "example1", "--t", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  check_round_trip<std::vector<GibbsReport>>(r.out);

  r = invoke({"zero-temp", "--builtin", "example1", "--t-grid", "20:60:3", "--word", "01", "--format", "json"});
  REQUIRE(r.code == 0);
  check_round_trip<LimitReport>(r.out);
  CHECK(json::parse(r.out).at("A") == -3.5);

  r = invoke({"rates", "--builtin", "thm2", "--t-grid", "5:40:4", "--format", "json"});
  REQUIRE(r.code == 0);
  check_round_trip<std::map<std::string, RateEstimate>>(r.out);
  CHECK(json::parse(r.out).at("log(mu[0]/mu[1])").at("fit").at("slope").get<double>() < 0);

  r = invoke({"oracle", "--builtin", "thm2", "--t", "2", "--depth", "6", "--word", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  check_round_trip<std::vector<OracleReport>>(r.out);
}

TEST_CASE("report to a file") {
  const auto path = temp_file("out.csv");
  const Result r = invoke({"pressure", "--builtin", "constant:-0.3", "--t", "10", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto ls = lines(ss.str());
  REQUIRE(ls.size() == 2);
  const double p = std::stod(ls[1].substr(ls[1].find(',') + 1));
  CHECK(p == doctest::Approx(std::log(2.0) - 3.0).epsilon(1e-12));
  std::filesystem::remove(path);
}

TEST_CASE("t grids") {
  const TGrid g = parse_t_grid("1:100:3:log");
  const auto v = g.values();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(v[2] == 100.0);
  CHECK(parse_t_grid("20:80:4").values() == std::vector<double>{20.0, 40.0, 60.0, 80.0});
  CHECK_THROWS_AS(parse_t_grid("1:2"), SpecError);
  CHECK_THROWS_AS(parse_t_grid("1:x:3"), SpecError);
  CHECK_THROWS_AS(parse_t_grid("0:2:3"), SpecError);
  CHECK_THROWS_AS(parse_t_grid("1:2:3:cubic"), SpecError);
}
