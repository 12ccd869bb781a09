#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "besselcert/report.hpp"

namespace {

using besselcert::RunConfig;

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--instance", cfg.instances,
                  "instance id(s); omit for the whole catalog");
  sub->add_option("--p-steps", cfg.p_steps, "grid steps in p");
  sub->add_option("--x-steps", cfg.x_steps, "grid steps in x");
  sub->add_option("--tol", cfg.tol, "evaluation tolerance [1e-14, 1e-6]");
  sub->add_option("--output,-o", cfg.output_path,
                  "report file (stdout when omitted)");
  std::map<std::string, RunConfig::Format> fmts{
      {"csv", RunConfig::Format::Csv}, {"json", RunConfig::Format::Json}};
  sub->add_option("--format", cfg.format, "report format")
      ->transform(CLI::CheckedTransformer(fmts, CLI::ignore_case));
  sub->add_flag("--exploration", cfg.exploration,
                "also sweep the oscillatory family over p in (-1/2, 0), "
                "reported without asserting");
}

void add_perturb_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--perturb", cfg.perturb,
                  "sharpness falsification factor: moves factor-able sharp "
                  "constants into the forbidden gap (lower * f, upper / f)");
  sub->add_option("--perturb-alpha-offset", cfg.perturb_alpha_offset,
                  "absolute offset added to the lower constant (signed)");
  std::map<std::string, besselcert::Perturbation::Side> sides{
      {"both", besselcert::Perturbation::Side::Both},
      {"left", besselcert::Perturbation::Side::Left},
      {"right", besselcert::Perturbation::Side::Right}};
  sub->add_option("--perturb-side", cfg.perturb_side,
                  "which side of a two-sided instance to perturb")
      ->transform(CLI::CheckedTransformer(sides, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "besselcert: certified evaluation of normalized Bessel functions and "
      "verification of Frame/Cusa/Turan-type inequalities"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.workers = besselcert::workers_from_env();

  auto* verify = app.add_subcommand("verify", "sweep inequality instances");
  add_grid_options(verify, cfg);
  add_perturb_options(verify, cfg);

  auto* all = app.add_subcommand(
      "all", "sweep the whole catalog at the default grids");
  add_grid_options(all, cfg);

  auto* constants =
      app.add_subcommand("constants", "best-possible constants at an order");
  constants->add_option("--p", cfg.p_value, "order")->required();
  constants->add_option("--output,-o", cfg.output_path, "report file");

  auto* zero = app.add_subcommand("zero", "first positive zero at an order");
  zero->add_option("--p", cfg.p_value, "order")->required();
  zero->add_option("--tol", cfg.tol, "refinement tolerance");
  zero->add_option("--output,-o", cfg.output_path, "report file");

  auto* certify = app.add_subcommand(
      "certify", "coefficient-ratio monotonicity and proof-sequence replays");
  certify->add_option("--p", cfg.p_value, "order");
  certify->add_option("--x", cfg.x_value,
                      "argument (default 0.9 * first zero)");
  certify->add_option("--n-terms", cfg.n_terms, "ratio range upper index");
  certify->add_option("--output,-o", cfg.output_path, "report file");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) cfg.command = RunConfig::Command::Verify;
  if (all->parsed()) cfg.command = RunConfig::Command::All;
  if (constants->parsed()) cfg.command = RunConfig::Command::Constants;
  if (zero->parsed()) cfg.command = RunConfig::Command::Zero;
  if (certify->parsed()) cfg.command = RunConfig::Command::Certify;

  return besselcert::run(cfg);
}
