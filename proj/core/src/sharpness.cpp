#include "besselcert/sharpness.hpp"

#include <cmath>
#include <limits>

#include "besselcert/series.hpp"

namespace besselcert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Numerator series of f1/g1: terms s^n (n-1) x^{2n} / (4^n n! (p+1) (p+2)_n),
// n from 2.
struct RatioNumeratorGen {
  double p;
  double u;     // x^2
  double sign;  // -1 oscillatory (term signs (-1)^n), +1 modified
  int n = 2;
  double t;

  RatioNumeratorGen(double p_, double u_, double sign_)
      : p(p_), u(u_), sign(sign_) {
    // n = 2 term: u^2 / (32 (p+1)(p+2)(p+3)); (-1)^2 = +1 either way.
    t = u * u / (32.0 * (p + 1.0) * (p + 2.0) * (p + 3.0));
  }

  double term() const { return t; }
  void advance() {
    // |t_{n+1}/t_n| = u * n / ((n-1) * 4 (n+1) (p+n+2))
    t *= sign * u * n / ((n - 1.0) * 4.0 * (n + 1.0) * (p + n + 2.0));
    ++n;
  }
  double ratio_bound() const {
    return u * n / ((n - 1.0) * 4.0 * (n + 1.0) * (p + n + 2.0));
  }
};

// Sharp-side combined numerator: terms with magnitude
//   phi_n = K_n (n-2)(n-p-3) / (8 n (p+n+1) (p+3)),
//   K_n   = 4^{1-n} / ((p+1) (n-1)! (p+2)_{n-1}),
// n from 3. The n = 2 coefficient vanishes identically (that is the point).
// Oscillatory signs: +, -, +, ... from n = 3; modified: all positive.
struct SharpNumeratorGen {
  double p;
  double u;
  double osc_sign;  // -1 oscillatory, +1 modified
  int n = 3;
  double K;     // K_n
  double upow;  // u^n
  double sgn = 1.0;

  SharpNumeratorGen(double p_, double u_, double osc_sign_)
      : p(p_), u(u_), osc_sign(osc_sign_) {
    // K_3 = 4^{-2} / ((p+1) * 2 * (p+2)(p+3))
    K = 1.0 / (32.0 * (p + 1.0) * (p + 2.0) * (p + 3.0));
    upow = u * u * u;
  }

  double phi(int m, double Km) const {
    return Km * (m - 2.0) * (m - p - 3.0) / (8.0 * m * (p + m + 1.0) * (p + 3.0));
  }

  double term() const { return sgn * phi(n, K) * upow; }
  void advance() {
    K /= 4.0 * n * (p + n + 1.0);
    upow *= u;
    if (osc_sign < 0.0) sgn = -sgn;
    ++n;
  }
  double ratio_bound() const {
    // Exact |t_{n+1}/t_n|; nonincreasing for n >= 4 when p <= 0. The n = 3
    // value can be large or infinite (the n = 3 coefficient vanishes at p = 0),
    // which is why callers pass min_terms past it.
    const double denom = (n - 2.0) * (n - p - 3.0) * (n + 1.0) * (p + n + 2.0);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return u * (n - 1.0) * (n - p - 2.0) / (4.0 * denom);
  }
};

ValueWithError to_value(const SeriesSum& s) {
  return {s.value, s.trunc_bound + s.round_off};
}

}  // namespace

RatioParts eval_ratio_parts(Kind kind, double p, double x,
                            const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  const double u = x * x;
  if (u == 0.0) throw DomainError("ratio function undefined at x = 0 (0/0)");

  const double sign = (kind == Kind::Oscillatory) ? -1.0 : 1.0;
  const SeriesKind sk = (kind == Kind::Oscillatory) ? SeriesKind::Alternating
                                                    : SeriesKind::Positive;

  RatioParts out;

  SeriesSum num = sum_series(RatioNumeratorGen(p, u, sign), sk, 0.0,
                             cfg.max_terms);
  if (!num.converged) throw EvaluationError("ratio numerator did not converge");
  out.numerator = to_value(num);

  Evaluation tail = detail::eval_tail_floor(p + 1.0, x, kind, cfg);
  out.denominator = {u * tail.value,
                     u * tail.total_error() + kEps * std::abs(u * tail.value)};

  Evaluation np = detail::eval_normalized_floor(p, x, kind, cfg);
  const double dval = 1.0 / (p + 1.0) + np.value;
  out.d = {dval, np.total_error() + kEps * std::abs(dval)};

  const double denom_mag = std::abs(out.denominator.value);
  if (denom_mag <= 2.0 * out.denominator.err) {
    out.ratio = {out.numerator.value / out.denominator.value,
                 std::numeric_limits<double>::infinity()};
    return out;
  }
  const double r = out.numerator.value / out.denominator.value;
  out.ratio = {r, (out.numerator.err + std::abs(r) * out.denominator.err) /
                      (denom_mag - out.denominator.err)};
  return out;
}

ValueWithError eval_F(double p, double x, const KernelConfig& cfg) {
  return eval_ratio_parts(Kind::Oscillatory, p, x, cfg).ratio;
}

ValueWithError eval_G(double p, double x, const KernelConfig& cfg) {
  return eval_ratio_parts(Kind::Modified, p, x, cfg).ratio;
}

ValueWithError eval_sharp_numerator(Kind kind, double p, double x,
                                    const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  if (p > 0.0) {
    throw DomainError("sharp-side cancelled series requires p <= 0");
  }
  const double u = x * x;
  if (u == 0.0) return {0.0, 0.0};
  const double osc_sign = (kind == Kind::Oscillatory) ? -1.0 : 1.0;
  const SeriesKind sk = (kind == Kind::Oscillatory) ? SeriesKind::Alternating
                                                    : SeriesKind::Positive;
  SeriesSum s = sum_series(SharpNumeratorGen(p, u, osc_sign), sk, 0.0,
                           cfg.max_terms, /*min_terms=*/3);
  if (!s.converged) throw EvaluationError("sharp numerator did not converge");
  return to_value(s);
}

double alpha_T1(double p, const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  return 1.0 / (8.0 * (p + 1.0) * (p + 3.0));
}

double beta_T2(double p, const KernelConfig& cfg) { return alpha_T1(p, cfg); }

BetaT1Result beta_T1(double p, double tol, const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  BetaT1Result r;
  r.zero = find_first_zero(p, tol, cfg);
  ValueWithError f = eval_F(p, r.zero.zero, cfg);
  r.value = f.value;
  // First-order sensitivity to the zero location; F' is O(1e-2) on this family,
  // a unit slope is a generous cover.
  r.err = f.err + r.zero.tol_achieved;
  return r;
}

BestConstantPair best_constants_T1(double p, double tol, const KernelConfig& cfg) {
  BestConstantPair b;
  b.instance = "T1";
  b.p = p;
  b.alpha = alpha_T1(p, cfg);
  b.beta = beta_T1(p, tol, cfg).value;
  b.provenance = Provenance::ClosedForm;
  return b;
}

BestConstantPair best_constants_T2(double p, const KernelConfig& cfg) {
  BestConstantPair b;
  b.instance = "T2";
  b.p = p;
  b.alpha = 0.0;
  b.beta = beta_T2(p, cfg);
  b.provenance = Provenance::ClosedForm;
  return b;
}

double extrapolate_to_zero(const std::array<double, 3>& u,
                           const std::array<double, 3>& v) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      w *= u[j] / (u[j] - u[i]);
    }
    acc += w * v[i];
  }
  return acc;
}

double eval_G_asymptotic(double p, double x, int k_terms,
                         const KernelConfig& cfg) {
  // The e^x/sqrt(2 pi x) prefactors cancel in the ratio, so the normalized
  // ratio M_p/M_{p+1} = x/(2(p+1)) * I_p/I_{p+1} needs no gamma function.
  const double ip = eval_I_asymptotic(p, x, k_terms, cfg);
  const double ip1 = eval_I_asymptotic(p + 1.0, x, k_terms, cfg);
  const double norm_ratio = x / (2.0 * (p + 1.0)) * (ip / ip1);
  return (norm_ratio - (p + 2.0) / (p + 1.0)) / (x * x);
}

LimitsReport confirm_limits_T1(double p, double tol, const KernelConfig& cfg) {
  LimitsReport r;
  r.instance = "T1";
  r.p = p;
  r.near_zero_target = alpha_T1(p, cfg);

  const std::array<double, 3> us = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> vals{};
  for (int i = 0; i < 3; ++i) {
    vals[i] = eval_F(p, std::sqrt(us[i]), cfg).value;
  }
  r.near_zero_extrapolated = extrapolate_to_zero(us, vals);

  BetaT1Result beta = beta_T1(p, tol, cfg);
  r.far_target = beta.value;
  const double j = beta.zero.zero;
  std::array<double, 3> vs = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> fj{};
  for (int i = 0; i < 3; ++i) {
    fj[i] = eval_F(p, j * (1.0 - vs[i]), cfg).value;
  }
  r.far_extrapolated = extrapolate_to_zero(vs, fj);
  r.far_value = fj[2];
  r.convergent = std::isfinite(r.near_zero_extrapolated) &&
                 std::isfinite(r.far_extrapolated);
  return r;
}

LimitsReport confirm_limits_T2(double p, double x_far, double tol,
                               const KernelConfig& cfg) {
  LimitsReport r;
  r.instance = "T2";
  r.p = p;
  r.near_zero_target = beta_T2(p, cfg);

  const std::array<double, 3> us = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> vals{};
  for (int i = 0; i < 3; ++i) {
    vals[i] = eval_G(p, std::sqrt(us[i]), cfg).value;
  }
  r.near_zero_extrapolated = extrapolate_to_zero(us, vals);

  r.far_target = 0.0;
  const double g_far = eval_G(p, x_far, cfg).value;
  r.far_value = g_far;
  r.far_extrapolated = g_far;

  const double g_a = eval_G(p, 0.75 * x_far, cfg).value;
  const double g_b = eval_G(p, 0.875 * x_far, cfg).value;
  r.tail_monotone = (g_a > g_b) && (g_b > g_far) && (g_far > 0.0);

  if (x_far >= cfg.x_asym) {
    const double g_asym = eval_G_asymptotic(p, x_far, 3, cfg);
    r.asym_rel_diff = std::abs(g_far - g_asym) / std::abs(g_far);
  }
  r.convergent = std::isfinite(r.near_zero_extrapolated) && std::isfinite(g_far);
  return r;
}

}  // namespace besselcert
