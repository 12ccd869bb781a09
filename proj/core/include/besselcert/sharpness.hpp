#pragma once

#include <array>
#include <string>

#include "besselcert/kernel.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

/// A value with an absolute error bound (truncation + rounding model).
struct ValueWithError {
  double value = 0.0;
  double err = 0.0;
};

/// The pieces of the Frame-type ratio function at (p, x).
///
/// Oscillatory: F(x) = f1/f2 with
///   f1 = 1/(p+1) + N_p(x) - (p+2)/(p+1) N_{p+1}(x),   f2 = x^2 (1 - N_{p+1}(x)),
/// and modified: G(x) = g1/g2 with
///   g1 = 1/(p+1) + M_p(x) - (p+2)/(p+1) M_{p+1}(x),   g2 = x^2 (M_{p+1}(x) - 1),
/// where N/M are the normalized oscillatory/modified functions. Both f1 and f2
/// are O(x^4) at the origin, so each is computed by its own dedicated series
/// (leading coefficients cancelled analytically) rather than by subtracting
/// kernel values; this keeps full relative accuracy on the whole domain.
/// `d` is the Q-denominator base 1/(p+1) + N_p(x) (resp. M_p).
struct RatioParts {
  ValueWithError numerator;    // f1 or g1
  ValueWithError denominator;  // f2 or g2
  ValueWithError d;
  ValueWithError ratio;        // F or G
};

RatioParts eval_ratio_parts(Kind kind, double p, double x,
                            const KernelConfig& cfg = {});

/// F(x) for the oscillatory family (increasing on (0, j_{p,1}) for p <= -1/2).
ValueWithError eval_F(double p, double x, const KernelConfig& cfg = {});

/// G(x) for the modified family (decreasing on (0, inf) for p in (-1, 0]).
ValueWithError eval_G(double p, double x, const KernelConfig& cfg = {});

/// The exactly-cancelled sharp-side numerator series
///   oscillatory: f1(x) - alpha(p) f2(x)  (alternating, leading term x^6)
///   modified:    beta(p) g2(x) - g1(x)   (all positive,  leading term x^6)
/// where alpha(p) = beta(p) = 1/(8(p+1)(p+3)) is the shared closed form. The
/// n = 2 coefficient cancels identically, so these keep relative accuracy at
/// arbitrarily small x where the direct difference would lose every digit.
ValueWithError eval_sharp_numerator(Kind kind, double p, double x,
                                    const KernelConfig& cfg = {});

/// 1/(8(p+1)(p+3)): the x -> 0 limit of both F and G.
double alpha_T1(double p, const KernelConfig& cfg = {});
double beta_T2(double p, const KernelConfig& cfg = {});

/// The x -> j_{p,1} endpoint value of F,
///   beta = (1/(p+1) - (p+2)/(p+1) N_{p+1}(j)) / (j^2 (1 - N_{p+1}(j))),
/// computed as F at the refined first zero.
struct BetaT1Result {
  double value = 0.0;
  double err = 0.0;
  ZeroResult zero;
};
BetaT1Result beta_T1(double p, double tol = 1e-12, const KernelConfig& cfg = {});

enum class Provenance { ClosedForm, EndpointLimit };

struct BestConstantPair {
  std::string instance;  // "T1" or "T2"
  double p = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Provenance provenance = Provenance::ClosedForm;
};

BestConstantPair best_constants_T1(double p, double tol = 1e-12,
                                   const KernelConfig& cfg = {});
BestConstantPair best_constants_T2(double p, const KernelConfig& cfg = {});

/// Polynomial extrapolation to zero from three (u, value) samples.
double extrapolate_to_zero(const std::array<double, 3>& u,
                           const std::array<double, 3>& v);

/// Endpoint-limit confirmation for the two ratio functions.
/// Near x = 0 the natural small variable is u = x^2, sampled at
/// u in {1e-2, 1e-3, 1e-4}; near the first zero it is v = (j - x)/j with the
/// same sample set. The far side of G reports its value at x_far, a
/// monotone-tail check, and the relative difference against the asymptotic
/// route (which needs no gamma function: the e^x prefactors cancel in the
/// I_p/I_{p+1} ratio).
struct LimitsReport {
  std::string instance;
  double p = 0.0;
  double near_zero_extrapolated = 0.0;
  double near_zero_target = 0.0;  // alpha (T1) or beta (T2)
  double far_extrapolated = 0.0;  // T1: F(j-) -> beta; T2: G(x_far)
  double far_target = 0.0;        // T1: beta; T2: 0
  double far_value = 0.0;         // T2: G(x_far); T1: F at the last sample
  bool tail_monotone = true;      // T2 only: G decreasing over the tail samples
  double asym_rel_diff = 0.0;     // T2 only: |G - G_asym|/|G| at x_far
  bool convergent = true;
};

LimitsReport confirm_limits_T1(double p, double tol = 1e-12,
                               const KernelConfig& cfg = {});
LimitsReport confirm_limits_T2(double p, double x_far = 40.0, double tol = 1e-12,
                               const KernelConfig& cfg = {});

/// G rebuilt from the truncated asymptotic expansion (diagnostic).
double eval_G_asymptotic(double p, double x, int k_terms = 3,
                         const KernelConfig& cfg = {});

}  // namespace besselcert
