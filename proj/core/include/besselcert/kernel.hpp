#pragma once

#include <vector>

#include "besselcert/errors.hpp"

namespace besselcert {

enum class Kind { Oscillatory, Modified };

/// Evaluation limits. `order_guard` keeps orders away from the p = -1 pole where
/// the 1/(p+1) factors in the downstream ratio functions blow up; the theorems
/// are still exercised arbitrarily close to it. Exceeding `max_terms` is an
/// error, never a silent truncation.
struct KernelConfig {
  double order_guard = 1e-2;      // require p >= -1 + order_guard
  int max_terms = 500;            // series term cap
  double x_max_oscillatory = 6.0; // covers [0, j_{p,1}] with headroom for p <= 2
  double x_max_modified = 50.0;
  double x_asym = 30.0;           // smallest x accepted by the asymptotic form
};

/// Order + kind of a normalized Bessel function. The normalization used
/// throughout is 2^p Gamma(p+1) x^{-p} J_p(x) (resp. I_p), whose power series
/// starts at 1 and involves only even powers of x.
class BesselSpec {
 public:
  BesselSpec(double order, Kind kind, const KernelConfig& cfg = {});

  double order() const { return order_; }
  Kind kind() const { return kind_; }

 private:
  double order_;
  Kind kind_;
};

/// A computed value with a certified absolute truncation bound.
/// `err_bound` covers only the omitted series tail (it is what the stopping
/// rule certifies); `round_off` is an a priori model of the floating-point
/// error of the summation itself. On success err_bound <= requested tol.
struct Evaluation {
  double value = 0.0;
  double err_bound = 0.0;
  double round_off = 0.0;
  int terms_used = 0;

  double total_error() const { return err_bound + round_off; }
};

/// Normalized oscillatory function: 1 - x^2/(4(p+1)) + x^4/(32(p+1)(p+2)) - ...
/// Even in x by construction (computed on x^2), value <= 1, equals cos x at
/// p = -1/2 and sin x / x at p = 1/2.
Evaluation eval_J(const BesselSpec& spec, double x, double tol,
                  const KernelConfig& cfg = {});

/// Normalized modified function: same coefficients, all positive terms.
/// Value >= 1, equals cosh x at p = -1/2 and sinh x / x at p = 1/2.
Evaluation eval_I(const BesselSpec& spec, double x, double tol,
                  const KernelConfig& cfg = {});

/// Derivative of the normalized oscillatory function via
/// d/dx [J-normalized_p](x) = -x/(2(p+1)) * J-normalized_{p+1}(x).
Evaluation eval_dJ(const BesselSpec& spec, double x, double tol,
                   const KernelConfig& cfg = {});

/// 1 - J-normalized_nu(x), summed from the n = 1 term so the result keeps full
/// relative accuracy near x = 0 where the direct difference would cancel.
Evaluation eval_one_minus_J(double nu, double x, double tol,
                            const KernelConfig& cfg = {});

/// I-normalized_nu(x) - 1, all-positive series from the n = 1 term.
Evaluation eval_I_minus_one(double nu, double x, double tol,
                            const KernelConfig& cfg = {});

/// Coefficients of the product of two normalized series,
///   N_p(x) N_q(x) = sum_n s^n c_n x^{2n},  s = -1 oscillatory / +1 modified,
/// computed by a multiplicative recurrence in n (ratios of gamma arguments;
/// no standalone gamma evaluation). c_0 = 1 for any valid (p, q).
class ProductSeries {
 public:
  ProductSeries(double p, double q, int n_max, Kind kind,
                const KernelConfig& cfg = {});

  double p() const { return p_; }
  double q() const { return q_; }
  Kind kind() const { return kind_; }
  int n_max() const { return static_cast<int>(magnitudes_.size()) - 1; }

  /// Signed coefficient of x^{2n}.
  double coefficient(int n) const;
  /// |coefficient|, i.e. without the alternating sign.
  double magnitude(int n) const { return magnitudes_.at(n); }

  /// Partial sum sum_{n<=n_max} s^n c_n x^{2n}.
  double evaluate(double x) const;

 private:
  double p_, q_;
  Kind kind_;
  std::vector<double> magnitudes_;
};

ProductSeries product_coeffs(double p, double q, int n_max, Kind kind,
                             const KernelConfig& cfg = {});

/// Truncated large-argument expansion of the unnormalized modified function:
///   I_nu(x) ~ e^x / sqrt(2 pi x) * [1 - (4nu^2-1)/(8x) + ...]
/// with k_terms bracket terms (1..4). Diagnostic only: used to confirm decay
/// of the modified ratio function at the far end, never as a certified value.
double eval_I_asymptotic(double nu, double x, int k_terms,
                         const KernelConfig& cfg = {});

namespace detail {
/// Validates an order against the guard; throws DomainError.
void check_order(double p, const KernelConfig& cfg);

/// Floor-mode evaluations: run the series to the double-precision floor and
/// report the actual certified tail, without enforcing an absolute tolerance.
/// The margin machinery uses these; certainty there is relative to the margin.
Evaluation eval_normalized_floor(double p, double x, Kind kind,
                                 const KernelConfig& cfg);
Evaluation eval_tail_floor(double nu, double x, Kind kind,
                           const KernelConfig& cfg);
}  // namespace detail

}  // namespace besselcert
