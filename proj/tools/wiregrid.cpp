#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wiregrid/cli.hpp"

int main(int argc, char** argv) {
  using wiregrid::cli::Format;
  wiregrid::cli::RunRequest req;
  std::string format = "csv";

  CLI::App app{"Two-beam wire-grid interferometer: diffraction, photon budgets, complementarity"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--config", req.config_path, "experiment config file (key = value with units)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", req.output_path, "output file, '-' for standard output");
  app.add_option("--override", req.overrides, "KEY=VALUE applied after the config file (repeatable)");

  auto* pattern = app.add_subcommand("pattern", "closed-form two-beam grid diffraction pattern");
  pattern->add_option("--theta-range", req.theta_range_mrad, "half range in mrad");
  pattern->add_option("--samples", req.samples, "number of theta samples");
  app.add_subcommand("budget", "two-beam and single-beam photon budgets");
  app.add_subcommand("metrics", "visibility, which-way and complementarity sums at the configured b");
  auto* sweep = app.add_subcommand("sweep", "wire-thickness sweep of V^2, K'^2 and sums");
  sweep->add_option("--b-min", req.b_min_um, "smallest wire thickness, um");
  sweep->add_option("--b-max", req.b_max_um, "largest wire thickness, um");
  sweep->add_option("--steps", req.steps, "number of rows");
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo photon tallies and estimates");
  simulate->add_option("--seed", req.seed, "RNG seed");
  app.add_subcommand("scenario", "grid / output-splitter scenario truth table");
  app.add_subcommand("validate", "validate the config and run cross-validation checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wiregrid::cli::invalid_input;
  }
  req.subcommand = app.get_subcommands().front()->get_name();
  req.output_format = format == "json" ? Format::json : Format::csv;
  return wiregrid::cli::run(req);
}
