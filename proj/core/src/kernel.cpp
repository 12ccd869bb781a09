#include "besselcert/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "besselcert/series.hpp"

namespace besselcert {

namespace detail {

void check_order(double p, const KernelConfig& cfg) {
  if (!(p >= -1.0 + cfg.order_guard - 1e-12)) {
    throw DomainError("invalid order p=" + std::to_string(p) +
                      ": require p >= -1 + " + std::to_string(cfg.order_guard));
  }
}

namespace {

// Terms of sum_n (s u/4)^n / ((p+1)_n n!), u = x^2.
struct NormalizedSeriesGen {
  double p;
  double u4;  // u/4, signed by the kind
  int n = 0;
  double t = 1.0;

  double term() const { return t; }
  void advance() {
    t *= u4 / ((n + 1) * (p + n + 1));
    ++n;
  }
  double ratio_bound() const {
    // |t_{n+1}/t_n| = |u|/4 / ((n+1)(p+n+1)), decreasing in n for p > -1.
    return std::abs(u4) / ((n + 1) * (p + n + 1));
  }
};

Evaluation run_normalized_impl(double p, double x, double abs_tol, Kind kind,
                               const KernelConfig& cfg) {
  check_order(p, cfg);
  const double x_max =
      (kind == Kind::Oscillatory) ? cfg.x_max_oscillatory : cfg.x_max_modified;
  const double u = x * x;  // evenness: the sum depends on x only through x*x
  if (!(u <= x_max * x_max)) {
    throw DomainError("|x| exceeds configured x_max");
  }

  NormalizedSeriesGen gen{p, (kind == Kind::Oscillatory) ? -u / 4.0 : u / 4.0};
  const SeriesKind sk = (kind == Kind::Oscillatory) ? SeriesKind::Alternating
                                                    : SeriesKind::Positive;
  SeriesSum s = sum_series(gen, sk, abs_tol, cfg.max_terms);
  if (!s.converged) {
    throw EvaluationError("term cap reached before the tail certified");
  }
  return Evaluation{s.value, s.trunc_bound, s.round_off, s.terms};
}

Evaluation run_normalized(double p, double x, double tol, Kind kind,
                          const KernelConfig& cfg) {
  if (!(tol > 0.0)) throw DomainError("tol must be > 0");
  Evaluation e = run_normalized_impl(p, x, tol, kind, cfg);
  if (e.err_bound > tol) {
    throw EvaluationError("tolerance not reached: certified bound " +
                          std::to_string(e.err_bound));
  }
  return e;
}

// Terms of the tail sum_{n>=1} of the normalized series, negated for the
// oscillatory case so the n = 1 term is positive. Used for 1 - J and I - 1.
struct TailSeriesGen {
  double p;
  double u4;  // |u|/4
  double sign_step;
  int n = 1;
  double t;

  TailSeriesGen(double p_, double u_over_4, double sign_step_)
      : p(p_), u4(u_over_4), sign_step(sign_step_), t(u_over_4 / (p_ + 1)) {}

  double term() const { return t; }
  void advance() {
    t *= sign_step * u4 / ((n + 1) * (p + n + 1));
    ++n;
  }
  double ratio_bound() const { return u4 / ((n + 1) * (p + n + 1)); }
};

Evaluation run_tail_impl(double nu, double x, double abs_tol, Kind kind,
                         const KernelConfig& cfg) {
  check_order(nu, cfg);
  const double u = x * x;
  const double x_max =
      (kind == Kind::Oscillatory) ? cfg.x_max_oscillatory : cfg.x_max_modified;
  if (!(u <= x_max * x_max)) throw DomainError("|x| exceeds configured x_max");

  if (u == 0.0) return Evaluation{0.0, 0.0, 0.0, 1};

  TailSeriesGen gen(nu, u / 4.0, (kind == Kind::Oscillatory) ? -1.0 : 1.0);
  const SeriesKind sk = (kind == Kind::Oscillatory) ? SeriesKind::Alternating
                                                    : SeriesKind::Positive;
  SeriesSum s = sum_series(gen, sk, abs_tol, cfg.max_terms);
  if (!s.converged) {
    throw EvaluationError("term cap reached before the tail certified");
  }
  return Evaluation{s.value, s.trunc_bound, s.round_off, s.terms};
}

Evaluation run_tail(double nu, double x, double tol, Kind kind,
                    const KernelConfig& cfg) {
  if (!(tol > 0.0)) throw DomainError("tol must be > 0");
  Evaluation e = run_tail_impl(nu, x, tol, kind, cfg);
  if (e.err_bound > tol) throw EvaluationError("tolerance not reached");
  return e;
}

}  // namespace

Evaluation eval_normalized_floor(double p, double x, Kind kind,
                                 const KernelConfig& cfg) {
  return run_normalized_impl(p, x, 0.0, kind, cfg);
}

Evaluation eval_tail_floor(double nu, double x, Kind kind,
                           const KernelConfig& cfg) {
  return run_tail_impl(nu, x, 0.0, kind, cfg);
}

}  // namespace detail

BesselSpec::BesselSpec(double order, Kind kind, const KernelConfig& cfg)
    : order_(order), kind_(kind) {
  detail::check_order(order, cfg);
}

Evaluation eval_J(const BesselSpec& spec, double x, double tol,
                  const KernelConfig& cfg) {
  if (spec.kind() != Kind::Oscillatory) {
    throw DomainError("eval_J requires an oscillatory spec");
  }
  return detail::run_normalized(spec.order(), x, tol, Kind::Oscillatory, cfg);
}

Evaluation eval_I(const BesselSpec& spec, double x, double tol,
                  const KernelConfig& cfg) {
  if (spec.kind() != Kind::Modified) {
    throw DomainError("eval_I requires a modified spec");
  }
  return detail::run_normalized(spec.order(), x, tol, Kind::Modified, cfg);
}

Evaluation eval_dJ(const BesselSpec& spec, double x, double tol,
                   const KernelConfig& cfg) {
  if (spec.kind() != Kind::Oscillatory) {
    throw DomainError("eval_dJ requires an oscillatory spec");
  }
  const double p = spec.order();
  detail::check_order(p, cfg);
  const double factor = -x / (2.0 * (p + 1.0));
  if (x == 0.0) return Evaluation{0.0, 0.0, 0.0, 1};

  BesselSpec next(p + 1.0, Kind::Oscillatory, cfg);
  Evaluation inner = detail::run_normalized(p + 1.0, x, tol, Kind::Oscillatory, cfg);
  const double af = std::abs(factor);
  return Evaluation{factor * inner.value, inner.err_bound * af,
                    inner.round_off * af +
                        std::numeric_limits<double>::epsilon() *
                            std::abs(factor * inner.value),
                    inner.terms_used};
}

Evaluation eval_one_minus_J(double nu, double x, double tol,
                            const KernelConfig& cfg) {
  return detail::run_tail(nu, x, tol, Kind::Oscillatory, cfg);
}

Evaluation eval_I_minus_one(double nu, double x, double tol,
                            const KernelConfig& cfg) {
  return detail::run_tail(nu, x, tol, Kind::Modified, cfg);
}

ProductSeries::ProductSeries(double p, double q, int n_max, Kind kind,
                             const KernelConfig& cfg)
    : p_(p), q_(q), kind_(kind) {
  detail::check_order(p, cfg);
  detail::check_order(q, cfg);
  if (n_max < 0 || n_max > cfg.max_terms) {
    throw DomainError("product series order out of range");
  }
  magnitudes_.reserve(static_cast<size_t>(n_max) + 1);
  double c = 1.0;
  magnitudes_.push_back(c);
  for (int n = 0; n < n_max; ++n) {
    double ratio;
    if (n == 0) {
      // The (p+q+1) factors of the general ratio cancel; written cancelled so
      // p + q = -1 (e.g. p = q = -1/2) stays finite.
      ratio = (p + q + 2.0) / (4.0 * (p + 1.0) * (q + 1.0));
    } else {
      ratio = (p + q + 2 * n + 1) * (p + q + 2 * n + 2) /
              (4.0 * (n + 1) * (p + q + n + 1) * (p + n + 1) * (q + n + 1));
    }
    c *= ratio;  // may underflow to 0 for large n; harmless
    magnitudes_.push_back(c);
  }
}

double ProductSeries::coefficient(int n) const {
  const double m = magnitudes_.at(n);
  if (kind_ == Kind::Oscillatory && (n % 2 == 1)) return -m;
  return m;
}

double ProductSeries::evaluate(double x) const {
  const double u = x * x;
  KahanAccumulator acc;
  double pw = 1.0;
  for (size_t n = 0; n < magnitudes_.size(); ++n) {
    acc.add(coefficient(static_cast<int>(n)) * pw);
    pw *= u;
  }
  return acc.sum;
}

ProductSeries product_coeffs(double p, double q, int n_max, Kind kind,
                             const KernelConfig& cfg) {
  return ProductSeries(p, q, n_max, kind, cfg);
}

double eval_I_asymptotic(double nu, double x, int k_terms,
                         const KernelConfig& cfg) {
  if (k_terms < 1 || k_terms > 4) throw DomainError("k_terms must be in 1..4");
  if (!(x >= cfg.x_asym)) {
    throw DomainError("x too small for the asymptotic regime");
  }
  const double mu = 4.0 * nu * nu;
  double bracket = 0.0;
  double t = 1.0;
  for (int j = 0; j < k_terms; ++j) {
    bracket += t;
    const double odd = 2.0 * j + 1.0;
    t *= -(mu - odd * odd) / (8.0 * x * (j + 1));
  }
  const double two_pi = 6.283185307179586476925286766559;
  return std::exp(x) / std::sqrt(two_pi * x) * bracket;
}

}  // namespace besselcert
