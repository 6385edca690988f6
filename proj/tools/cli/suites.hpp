#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace quatcalc::cli {

/// One measured invariant: pass iff `measured` compares to `tolerance` as
/// stated by `relation` ("<=", "<", ">", "==").
struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string relation = "<=";
  std::string detail;
};

Check check_le(std::string name, double measured, double tolerance, std::string detail = {});
Check check_lt(std::string name, double measured, double tolerance, std::string detail = {});
Check check_gt(std::string name, double measured, double tolerance, std::string detail = {});
Check check_eq(std::string name, double measured, double expected, std::string detail = {});

nlohmann::ordered_json to_json(const Check& c);

/// Tolerances used by the suites. Defaults are the module contracts.
struct SuiteTolerances {
  double quaternion = 1e-14;
  double chi = 1e-13;
  double norm_oracle = 1e-8;
  double modulus = 1e-10;
  double polar = 1e-10;
  double cartesian = 1e-9;
  double j_invariants = 1e-10;
  double extension = 1e-12;
  double resolvent = 1e-12;
  double s_resolvent_equation = 1e-10;
  double spectrum = 1e-8;
  double riesz_oracle = 1e-8;
  double riesz_step = 1e-10;
  double riesz_restricted = 1e-8;
  double calculus = 1e-10;
  double slice = 1e-8;
  double adjoint = 1e-8;
  double factorization = 1e-12;
  double normal = 1e-10;
  double nonnormal = 1e-3;
  double witness = 1e-8;
  double volterra = 5e-3;

  /// Sets every tolerance to v (used to demonstrate the failure path).
  void set_all(double v);
};

struct SuiteOptions {
  std::uint64_t seed = 20261016;
  std::vector<std::size_t> sizes{3, 5, 6};
  std::size_t nodes = 128;
  std::size_t trials = 20;
  SuiteTolerances tol;
};

std::vector<Check> quaternion_suite(const SuiteOptions& o);
std::vector<Check> qmatrix_suite(const SuiteOptions& o);
std::vector<Check> polar_suite(const SuiteOptions& o);
std::vector<Check> cartesian_suite(const SuiteOptions& o);
std::vector<Check> extension_suite(const SuiteOptions& o);
std::vector<Check> resolvent_suite(const SuiteOptions& o);
std::vector<Check> spectrum_suite(const SuiteOptions& o);
std::vector<Check> riesz_suite(const SuiteOptions& o);
std::vector<Check> slice_suite(const SuiteOptions& o);
std::vector<Check> calculus_suite(const SuiteOptions& o);
/// Structural vs brute-force decisions on the n <= min(3, max size) suite.
std::vector<Check> irreducibility_oracle_suite(const SuiteOptions& o);
std::vector<Check> similarity_suite(const SuiteOptions& o, std::size_t trials = 50);
std::vector<Check> extension_irreducibility_suite(const SuiteOptions& o);
std::vector<Check> factorization_suite(const SuiteOptions& o, std::size_t n = 96);
/// Normality defects of the two factorization examples.
std::vector<Check> normality_suite(const SuiteOptions& o, std::size_t n = 96);
std::vector<Check> volterra_suite(const SuiteOptions& o, std::size_t n_max = 1024);
std::vector<Check> rank_one_suite(const SuiteOptions& o, std::size_t n_max = 256);

struct NamedSuite {
  std::string name;
  std::vector<Check> checks;
};

/// Every suite, in a fixed order. `full_discretization` runs the Volterra
/// sweep to n = 1024 instead of 256.
std::vector<NamedSuite> run_all_suites(const SuiteOptions& o, bool full_discretization = false);

}  // namespace quatcalc::cli
