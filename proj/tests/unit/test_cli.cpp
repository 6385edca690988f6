#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "commands.hpp"
#include "quatcalc/error.hpp"

using namespace quatcalc::cli;

namespace {

struct TempDir {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "quatcalc_cli_test";
  TempDir() { std::filesystem::create_directories(path); }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

constexpr const char* kDiagJ3 = R"({"rows":2,"cols":2,"data":[[[0,0,1,0],[0,0,0,0]],[[0,0,0,0],[3,0,0,0]]]})";
constexpr const char* kDiagI3 = R"({"rows":2,"cols":2,"data":[[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[3,0,0,0]]]})";

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("spectrum command") {
  TempDir tmp;
  RunConfig c = config("spectrum");
  c.inputs = {tmp.write("dj3.json", kDiagJ3)};
  const CommandResult r = run(c);
  CHECK(r.exit_code == kExitOk);
  const auto& s = r.report["spheres"];
  REQUIRE(s.size() == 2);
  CHECK(s[0]["re"].get<double>() == doctest::Approx(0.0));
  CHECK(s[0]["rad"].get<double>() == doctest::Approx(1.0));
  CHECK(s[0]["mult"] == 1);
  CHECK(s[1]["re"].get<double>() == doctest::Approx(3.0));
  CHECK(s[1]["mult"] == 1);
  CHECK(r.report["tolerances"]["cluster"].get<double>() > 0.0);

  c.inputs = {tmp.write("ns.json", R"({"rows":1,"cols":2,"data":[[[0,0,0,0],[1,0,0,0]]]})")};
  const CommandResult bad = run(c);
  CHECK(bad.exit_code == kExitInput);
  CHECK(bad.report["message"] == "operator must be square");
}

TEST_CASE("riesz command") {
  TempDir tmp;
  RunConfig c = config("riesz");
  c.inputs = {tmp.write("di3.json", kDiagI3)};
  c.partition = "0,1";
  const CommandResult r = run(c);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["certified"] == true);
  CHECK(r.report["p_sigma"]["data"][0][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(r.report["residuals"]["step_II"]["sum"].get<double>() <= 1e-10);

  c.partition = "0,1;3,0";
  const CommandResult all = run(c);
  CHECK(all.exit_code == kExitPartition);
  CHECK(all.report["message"].get<std::string>().find("tau is empty") != std::string::npos);

  c.partition = "7,0";
  CHECK(run(c).exit_code == kExitPartition);

  c.partition = "0,1";
  c.tol["separation"] = 10.0;
  const CommandResult sep = run(c);
  CHECK(sep.exit_code == kExitSeparation);
  CHECK(sep.report["separation"].get<double>() == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("examples command") {
  RunConfig c = config("examples");
  c.which = "both";
  c.n = 30;
  c.sweep = std::pair<std::size_t, std::size_t>{8, 32};
  const CommandResult r = run(c);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["examples"].size() == 2);
  CHECK(r.csv.rfind("example,n,norm,reference,error\n", 0) == 0);
  c.n = 100;
  CHECK(run(c).exit_code == kExitInput);
}

TEST_CASE("configuration validation") {
  RunConfig c = config("spectrum");
  c.tol["cluster"] = 0.0;
  CHECK(run(c).exit_code == kExitInput);
  CHECK(run(config("frobnicate")).exit_code == kExitInput);
  CHECK(parse_range("64:1024") == std::pair<std::size_t, std::size_t>{64, 1024});
  CHECK_THROWS_AS(parse_range("64"), quatcalc::ValidationError);
  CHECK_THROWS_AS(parse_range("a:b"), quatcalc::ValidationError);
}

TEST_CASE("reports are deterministic") {
  TempDir tmp;
  RunConfig c = config("irreducibility");
  c.inputs = {tmp.write("j2.json", R"({"rows":2,"cols":2,"data":[[[1,1,0,0],[1,0,0,0]],[[0,0,0,0],[1,1,0,0]]]})")};
  const CommandResult a = run(c), b = run(c);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.report["strongly_irreducible"] == true);
  CHECK(a.report["oracle_checked"] == true);
  CHECK(a.report["oracle_agrees"] == true);
}
