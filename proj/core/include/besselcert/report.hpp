#pragma once

#include <string>
#include <vector>

#include "besselcert/inequalities.hpp"

namespace besselcert {

/// Run configuration shared by the library entry point and the CLI.
/// Exit-status contract: 0 when every asserted (non-exploration) check is
/// clean, 1 when any certified violation exists, 2 when the only findings are
/// indeterminate points, 3 for operational failures (I/O, bad ids).
struct RunConfig {
  enum class Command { Verify, Constants, Zero, Certify, All };
  enum class Format { Csv, Json };

  Command command = Command::All;
  std::vector<std::string> instances;  // empty = whole catalog (verify/all)
  int p_steps = 50;
  int x_steps = 200;
  double tol = 1e-12;
  std::string output_path;  // empty = stdout
  Format format = Format::Json;
  bool exploration = false;
  double perturb = 1.0;
  double perturb_alpha_offset = 0.0;
  Perturbation::Side perturb_side = Perturbation::Side::Both;
  double p_value = -0.5;   // constants / zero / certify
  double x_value = -1.0;   // certify; < 0 means 0.9 * j_{p,1}
  int n_terms = 200;       // certify
  int workers = 1;
  KernelConfig kernel;
};

void validate(const RunConfig& cfg);

/// Serialized sweep rows: one per violation and indeterminate point (capped),
/// plus the min-margin point per instance. Header is fixed; floats carry 17
/// significant digits; rows are ordered by catalog position then grid index,
/// so identical configs produce byte-identical files.
std::string to_csv(const std::vector<SweepReport>& reports);
std::string to_json(const RunConfig& cfg, const std::vector<SweepReport>& reports);

std::string constants_json(double p, const KernelConfig& cfg);
std::string zero_json(double p, double tol, const KernelConfig& cfg);
std::string certify_json(double p, double x, int n_terms, double tol,
                         const KernelConfig& cfg);

/// Writes content to path via a temp file + rename, or to stdout when the
/// path is empty.
void write_report(const std::string& path, const std::string& content);

/// Executes the configured command and returns the process exit status.
int run(const RunConfig& cfg);

/// Worker count from BESSELCERT_WORKERS (>= 1; 1 when unset/invalid).
int workers_from_env();

}  // namespace besselcert
