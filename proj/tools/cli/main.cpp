#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/json_io.hpp"

namespace {

using quatcalc::cli::RunConfig;

struct Flags {
  std::string sweep;
  double tol_all = 0.0;
};

void add_common(CLI::App* sub, RunConfig& cfg, Flags& flags) {
  sub->add_option("-o,--output", cfg.output, "Write the JSON report here (atomically) instead of stdout");
  for (auto& [name, value] : cfg.tol)
    sub->add_option("--tol-" + name, value, "Tolerance '" + name + "'")->capture_default_str();
  sub->add_option("--tol-all", flags.tol_all, "Override every invariant tolerance used by verify");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  Flags flags;
  CLI::App app{"Quaternionic operator spectra, S-functional calculus and strong irreducibility"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "S-spectrum, multiplicities and Jordan structure of a matrix");
  spectrum->add_option("-i,--input", cfg.inputs, "QMatrix JSON file(s)")->required();

  auto* riesz = app.add_subcommand("riesz", "Riesz projections for a spectral partition sigma | tau");
  riesz->add_option("-i,--input", cfg.inputs, "QMatrix JSON file")->required();
  riesz->add_option("-p,--partition", cfg.partition, "Spheres of sigma as \"re,rad;re,rad;...\"")->required();
  riesz->add_option("--nodes", cfg.nodes, "Quadrature nodes per circle")->capture_default_str();

  auto* irr = app.add_subcommand("irreducibility", "Strong irreducibility decision with witness");
  irr->add_option("-i,--input", cfg.inputs, "QMatrix JSON file")->required();
  irr->add_option("--seed", cfg.seed, "Seed of the brute-force cross-check (n <= 3)")->capture_default_str();

  auto* examples = app.add_subcommand("examples", "Factorization examples T = (W + K) S on a midpoint grid");
  examples->add_option("--which", cfg.which, "normal, nonnormal or both")
      ->check(CLI::IsMember({"normal", "nonnormal", "both"}))
      ->capture_default_str();
  examples->add_option("--n", cfg.n, "Grid size (a multiple of 3)")->capture_default_str();
  examples->add_option("--sweep", flags.sweep, "Norm sweep of K over n = a, 2a, ... <= b, given as a:b");
  examples->add_option("--csv", cfg.csv_output, "Write the sweep CSV here");

  auto* verify = app.add_subcommand("verify", "Run every invariant suite and report measured residuals");
  verify->add_option("--seed", cfg.seed, "Seed of the randomized suites")->capture_default_str();
  verify->add_option("--sizes", cfg.sizes, "Matrix sizes of the randomized suites")->delimiter(',')->capture_default_str();
  verify->add_option("--nodes", cfg.nodes, "Quadrature nodes per circle")->capture_default_str();
  verify->add_flag("--full", cfg.full, "Run the Volterra sweep up to n = 1024");

  for (auto* sub : {spectrum, riesz, irr, examples, verify}) add_common(sub, cfg, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : quatcalc::cli::kExitInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  quatcalc::cli::CommandResult result;
  try {
    if (!flags.sweep.empty()) cfg.sweep = quatcalc::cli::parse_range(flags.sweep);
    if (flags.tol_all > 0.0) {
      const auto defaults = RunConfig::default_tolerances();
      for (auto& [name, value] : cfg.tol)
        if (name != "cluster" && name != "match" && name != "separation" && value == defaults.at(name))
          value = flags.tol_all;
    }
    result = quatcalc::cli::run(cfg);
  } catch (const quatcalc::ValidationError& e) {
    result.exit_code = quatcalc::cli::kExitInput;
    result.report = {{"command", cfg.command}, {"error", "validation"}, {"message", e.what()}};
  }

  if (result.report.contains("message")) std::cerr << "error: " << result.report["message"].get<std::string>() << '\n';

  try {
    const std::string text = result.report.dump(2) + "\n";
    if (cfg.output.empty()) std::cout << text;
    else quatcalc::write_text_file_atomic(cfg.output, text);
    if (!result.csv.empty()) {
      if (!cfg.csv_output.empty()) quatcalc::write_text_file_atomic(cfg.csv_output, result.csv);
      else if (!cfg.output.empty()) quatcalc::write_text_file_atomic(cfg.output + ".csv", result.csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return quatcalc::cli::kExitInput;
  }
  return result.exit_code;
}
