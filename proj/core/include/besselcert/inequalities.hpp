#pragma once

#include <optional>
#include <string>
#include <vector>

#include "besselcert/kernel.hpp"
#include "besselcert/sharpness.hpp"

namespace besselcert {

enum class Relation {
  StrictLess,
  LessEqual,
  StrictGreater,
  GreaterEqual,
  TwoSidedSandwich
};

/// How an instance's x grid is resolved per p.
enum class XRule {
  FixedInterval,   // (x_lo, x_hi), endpoints open unless flagged closed
  UpToFirstZero,   // (0, j_{p,1})
  UpToXMax         // (0, x_max], right endpoint included
};

/// Margin evaluation families. Frame-type instances share one code path over
/// the ratio functions; the rest have dedicated cancellation-free forms.
enum class MarginFamily {
  FrameOscillatory,  // (c - lambda x^2) N_{p+1} / (d - lambda x^2) vs 1
  FrameModified,     // (c + lambda x^2) M_{p+1} / (d + lambda x^2) vs 1
  SandwichJ,         // two-sided bounds on N_{p+1} rearranged from the above
  TuranJ,
  TuranI,
  CorKh7,
  CorKh8,
  CorKh9Elem,   // elementary tanh/cosh form (independent of the kernel)
  CusaHElem,    // elementary sinh/cosh form
  TuranTrigElem
};

struct InequalityInstance {
  std::string id;
  MarginFamily family = MarginFamily::FrameModified;
  Relation relation = Relation::StrictLess;

  bool p_is_point = false;
  double p_point = 0.0;
  double p_min = -1.0, p_max = 0.0;  // open left; closed right iff p_right_closed
  bool p_right_closed = true;

  XRule x_rule = XRule::UpToXMax;
  double x_lo = 0.0, x_hi = 40.0;
  bool x_right_closed = false;

  // Frame-family constants as functions of p; sharp sides use the
  // exactly-cancelled numerator series.
  bool left_sharp = false;
  bool right_sharp = false;
  double fixed_lambda_left = 0.0;   // used when p_is_point
  double fixed_lambda_right = 0.0;

  std::string boundary_note;
};

/// The full catalog, keyed by the ids used on the command line.
const std::vector<InequalityInstance>& catalog();
const InequalityInstance& find_instance(const std::string& id);

/// Constant perturbation for sharpness falsification. `factor` > 1 moves each
/// factor-able sharp constant into the forbidden gap (lower constant * f,
/// upper constant / f); `alpha_offset` is added to the lower constant as an
/// absolute shift (the only way to move a lower constant that is exactly 0).
struct Perturbation {
  double factor = 1.0;
  double alpha_offset = 0.0;
  enum class Side { Both, Left, Right } side = Side::Both;

  bool active() const { return factor != 1.0 || alpha_offset != 0.0; }
};

enum class PointStatus { Ok, Violation, Indeterminate };

struct MarginResult {
  double margin = 0.0;     // min over sides for two-sided relations
  double err_bound = 0.0;  // absolute error bound on that margin
  bool certain = false;    // err_bound * 100 <= |margin|
  PointStatus status = PointStatus::Indeterminate;
};

/// Signed margin at one (p, x): positive iff the inequality holds there.
/// A point is never a Violation unless the error bound rules out a sign flip.
/// Two-sided relations report the smaller of the two side margins.
MarginResult evaluate_instance(const InequalityInstance& inst, double p,
                               double x, double tol,
                               const KernelConfig& cfg = {},
                               const Perturbation& perturb = {});

/// Both side margins of a two-sided instance (lower-bound side first).
std::pair<MarginResult, MarginResult> evaluate_instance_sides(
    const InequalityInstance& inst, double p, double x, double tol,
    const KernelConfig& cfg = {}, const Perturbation& perturb = {});

struct GridSpec {
  int p_steps = 50;
  int x_steps = 200;
  double tol = 1e-12;
  double inset = 1e-6;  // relative endpoint inset for open interval ends
};

struct PointRecord {
  long index = 0;  // row-major grid index, stable across worker counts
  double p = 0.0, x = 0.0;
  double margin = 0.0, err = 0.0;
  PointStatus status = PointStatus::Ok;
};

struct SweepReport {
  std::string instance_id;
  GridSpec grid;
  Perturbation perturb;
  bool exploration = false;

  long n_points = 0, n_ok = 0, n_violation = 0, n_indeterminate = 0;
  double min_margin = 0.0;
  double argmin_p = 0.0, argmin_x = 0.0;
  PointRecord min_record;                   // the full argmin point
  std::vector<PointRecord> violations;      // capped at `record_cap`
  std::vector<PointRecord> indeterminates;  // capped at `record_cap`
  long record_cap = 500;
};

/// Deterministic grid sweep. The grid is uniform in p over the instance domain
/// clipped to the order guard and uniform in x per p; rows may be fanned out
/// across workers (BESSELCERT_WORKERS) but assembly is ordered by grid index.
SweepReport sweep(const InequalityInstance& inst, const GridSpec& grid,
                  const KernelConfig& cfg = {}, const Perturbation& perturb = {},
                  int workers = 1);

struct MonotoneReport {
  double p = 0.0;
  int x_steps = 0;
  bool monotone_ok = false;   // F nondecreasing / G nonincreasing within slack
  double worst_step = 0.0;    // most adverse consecutive difference
  double slack = 1e-12;
  double limit_near_zero = 0.0;   // extrapolated
  double limit_target = 0.0;      // 1/(8(p+1)(p+3))
  double far_value = 0.0;         // F at the last sample / G(x_max)
  bool h_positive = true;         // F only: H > 0 on the interior (diagnostic)
  double h_min = 0.0;
  double asym_rel_diff = 0.0;     // G only, when x_max reaches the asym regime
};

/// F(x) sampled on (0, j_{p,1}); asserts a nondecreasing sequence up to slack
/// and checks H = x^4 (1-N_{p+1})^2 F' > 0 on the interior via central
/// differences of F.
MonotoneReport check_F_monotone(double p, int x_steps,
                                const KernelConfig& cfg = {});

/// G(x) sampled on (0, x_max]; asserts a nonincreasing sequence, the limit
/// 1/(8(p+1)(p+3)) at 0, and smallness at x_max confirmed against the
/// asymptotic route when x_max is in its regime.
MonotoneReport check_G_monotone(double p, int x_steps, double x_max,
                                const KernelConfig& cfg = {});

}  // namespace besselcert
