#pragma once

#include "besselcert/kernel.hpp"

namespace besselcert {

/// First positive zero of the normalized oscillatory function, together with
/// the analytic bracket it was refined from:
///   4(p+1)sqrt(p+2) < j_{p,1}^2 < 2(p+1)(p+3).
struct ZeroResult {
  double p = 0.0;
  double lower = 0.0;  // analytic bracket, sqrt(4(p+1)sqrt(p+2))
  double upper = 0.0;  // analytic bracket, sqrt(2(p+1)(p+3))
  double zero = 0.0;
  double tol_achieved = 0.0;
};

/// The analytic bracket above. Proper (lower < upper) for every valid order,
/// since upper^2 - lower^2 = 2(p+1)(sqrt(p+2)-1)^2 > 0.
std::pair<double, double> bracket_zero(double p, const KernelConfig& cfg = {});

/// Bisection on certified signs of eval_J inside the bracket. If the bracket
/// endpoints do not show a certified sign change, falls back to scanning from
/// the bracket midpoint in 0.1 steps (toward 0 when the midpoint value is
/// negative, toward x_max otherwise) so the result is the smallest positive
/// sign change. Probes whose magnitude is inside the evaluation error band are
/// treated as sign-undetermined and nudged.
ZeroResult find_first_zero(double p, double tol = 1e-12,
                           const KernelConfig& cfg = {});

/// The scan-then-bisect fallback, entered at an arbitrary starting point
/// below the second zero. Walks toward 0 when the probe is negative and away
/// from 0 otherwise, so the refined result is the smallest positive zero.
ZeroResult find_first_zero_from(double p, double x0, double tol = 1e-12,
                                const KernelConfig& cfg = {});

}  // namespace besselcert
