#include "besselcert/inequalities.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include "besselcert/series.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

ValueWithError divide(const ValueWithError& num, const ValueWithError& den) {
  const double mag = std::abs(den.value);
  if (!(mag > 2.0 * den.err)) {
    return {num.value / den.value, kInf};
  }
  const double q = num.value / den.value;
  return {q, (num.err + std::abs(q) * den.err) / (mag - den.err)};
}

MarginResult classify(const ValueWithError& m) {
  MarginResult r;
  r.margin = m.value;
  r.err_bound = m.err;
  r.certain = std::isfinite(m.err) && 100.0 * m.err <= std::abs(m.value);
  if (!r.certain) {
    r.status = PointStatus::Indeterminate;
  } else {
    r.status = (m.value > 0.0) ? PointStatus::Ok : PointStatus::Violation;
  }
  return r;
}

MarginResult combine_two_sided(const MarginResult& a, const MarginResult& b) {
  MarginResult out = (a.margin <= b.margin) ? a : b;
  if (a.status == PointStatus::Violation || b.status == PointStatus::Violation) {
    out.status = PointStatus::Violation;
  } else if (a.status == PointStatus::Ok && b.status == PointStatus::Ok) {
    out.status = PointStatus::Ok;
  } else {
    out.status = PointStatus::Indeterminate;
  }
  out.certain = a.certain && b.certain;
  return out;
}

// ---------------------------------------------------------------------------
// Frame-type margins over the ratio-function pieces.
// Left:  1 - Q(lambda_L) = (n1 - lambda_L n2) / (d -+ lambda_L x^2)
// Right: Q(lambda_R) - 1 = (lambda_R n2 - n1) / (d -+ lambda_R x^2)
// with (n1, n2) = (f1, f2) oscillatory (minus sign in the denominators) or
// (g1, g2) modified (plus sign).
// ---------------------------------------------------------------------------

struct FrameSides {
  MarginResult left, right;
};

FrameSides frame_margins(Kind kind, double p, double x, double lambda_left,
                         double lambda_right, bool left_cancelled,
                         bool right_cancelled, const KernelConfig& cfg) {
  const double u = x * x;
  const double dsign = (kind == Kind::Oscillatory) ? -1.0 : 1.0;
  RatioParts parts = eval_ratio_parts(kind, p, x, cfg);

  auto q_denominator = [&](double lambda) -> ValueWithError {
    const double v = parts.d.value + dsign * lambda * u;
    return {v, parts.d.err + kEps * (std::abs(parts.d.value) +
                                     std::abs(lambda) * u + std::abs(v))};
  };

  auto direct_numerator = [&](double lambda, double sign) -> ValueWithError {
    // sign=+1: n1 - lambda n2 ; sign=-1: lambda n2 - n1
    const double v =
        sign * (parts.numerator.value - lambda * parts.denominator.value);
    return {v, parts.numerator.err + std::abs(lambda) * parts.denominator.err +
                   kEps * (std::abs(parts.numerator.value) +
                           std::abs(lambda * parts.denominator.value))};
  };

  FrameSides out;

  ValueWithError num_left =
      (left_cancelled && kind == Kind::Oscillatory)
          ? eval_sharp_numerator(Kind::Oscillatory, p, x, cfg)
          : direct_numerator(lambda_left, +1.0);
  out.left = classify(divide(num_left, q_denominator(lambda_left)));

  ValueWithError num_right =
      (right_cancelled && kind == Kind::Modified)
          ? eval_sharp_numerator(Kind::Modified, p, x, cfg)
          : direct_numerator(lambda_right, -1.0);
  out.right = classify(divide(num_right, q_denominator(lambda_right)));
  return out;
}

// Sandwich form: lower(x) < N_{p+1}(x) < upper(x), rearranged from the
// oscillatory Frame inequality. The upper-bound margin is the cancelled
// series over c - alpha x^2 with c = (p+2)/(p+1); the lower side divides the
// direct difference by c - beta x^2.
FrameSides sandwich_margins(double p, double x, double beta,
                            const KernelConfig& cfg) {
  const double u = x * x;
  const double c = (p + 2.0) / (p + 1.0);
  RatioParts parts = eval_ratio_parts(Kind::Oscillatory, p, x, cfg);

  auto denom = [&](double lambda) -> ValueWithError {
    const double v = c - lambda * u;
    return {v, kEps * (std::abs(c) + std::abs(lambda) * u + std::abs(v))};
  };

  FrameSides out;
  ValueWithError upper_num = eval_sharp_numerator(Kind::Oscillatory, p, x, cfg);
  out.right = classify(divide(upper_num, denom(alpha_T1(p, cfg))));

  ValueWithError lower_num = {
      beta * parts.denominator.value - parts.numerator.value,
      parts.numerator.err + std::abs(beta) * parts.denominator.err +
          kEps * (std::abs(parts.numerator.value) +
                  std::abs(beta * parts.denominator.value))};
  out.left = classify(divide(lower_num, denom(beta)));
  return out;
}

// ---------------------------------------------------------------------------
// Dedicated margin series for the corollary and Turan instances.
// ---------------------------------------------------------------------------

// Turan difference for the modified family: all-positive coefficient series
// starting at 1/(p+2).
struct TuranIGen {
  double p, u;
  int n = 0;
  double t;
  explicit TuranIGen(double p_, double u_) : p(p_), u(u_), t(1.0 / (p_ + 2.0)) {}
  double term() const { return t; }
  void advance() {
    t *= u * (2.0 * p + 2.0 * n + 3.0) /
         (2.0 * (n + 1.0) * (p + n + 3.0) * (2.0 * p + n + 3.0));
    ++n;
  }
  double ratio_bound() const {
    return u * (2.0 * p + 2.0 * n + 3.0) /
           (2.0 * (n + 1.0) * (p + n + 3.0) * (2.0 * p + n + 3.0));
  }
};

MarginResult turan_I_margin(double p, double x, const KernelConfig& cfg) {
  SeriesSum s = sum_series(TuranIGen(p, x * x), SeriesKind::Positive, 0.0,
                           cfg.max_terms);
  if (!s.converged) return classify({s.value, kInf});
  return classify({s.value, s.trunc_bound + s.round_off});
}

MarginResult turan_J_margin(double p, double x, const KernelConfig& cfg) {
  Evaluation e0 = detail::eval_normalized_floor(p, x, Kind::Oscillatory, cfg);
  Evaluation e1 = detail::eval_normalized_floor(p + 1.0, x, Kind::Oscillatory, cfg);
  Evaluation e2 = detail::eval_normalized_floor(p + 2.0, x, Kind::Oscillatory, cfg);
  const double c = (p + 1.0) / (p + 2.0);
  const double v = e1.value * e1.value - c * e0.value * e2.value;
  const double err = 2.0 * std::abs(e1.value) * e1.total_error() +
                     c * (std::abs(e0.value) * e2.total_error() +
                          std::abs(e2.value) * e0.total_error()) +
                     4.0 * kEps * (e1.value * e1.value +
                                   std::abs(c * e0.value * e2.value));
  return classify({v, err});
}

// (1 + (p+1) M_p)/(p+2) - M_{p+1}: all-positive series from k = 2 with
// m_k = (k-1) / (4^k k! (p+2)_{k-1} (p+2) (p+k+1)).
struct Kh7Gen {
  double p, u;
  int k = 2;
  double t;
  Kh7Gen(double p_, double u_) : p(p_), u(u_) {
    t = u * u / (32.0 * (p + 2.0) * (p + 2.0) * (p + 3.0));
  }
  double term() const { return t; }
  void advance() {
    t *= u * k / (4.0 * (k - 1.0) * (k + 1.0) * (p + k + 2.0));
    ++k;
  }
  double ratio_bound() const {
    return u * k / (4.0 * (k - 1.0) * (k + 1.0) * (p + k + 2.0));
  }
};

MarginResult kh7_margin(double p, double x, const KernelConfig& cfg) {
  if (x == 0.0) return classify({0.0, 0.0});
  SeriesSum s =
      sum_series(Kh7Gen(p, x * x), SeriesKind::Positive, 0.0, cfg.max_terms);
  if (!s.converged) return classify({s.value, kInf});
  return classify({s.value, s.trunc_bound + s.round_off});
}

// M_{p+1}/M_p + (p+2) M_p / (1 + (p+1) M_p) - 2, written as NUM/DEN with
//   NUM = -p M_p^2 - 2 M_p + M_{p+1} + (p+1) M_p M_{p+1},
//   DEN = M_p (1 + (p+1) M_p).
// The k = 0, 1 coefficients of NUM vanish identically; the series is summed
// from k = 2 with the four constituent recurrences advanced in lockstep and
// the tail bounded by the sum of the constituent geometric tails.
MarginResult kh8_margin(double p, double x, const KernelConfig& cfg) {
  const double u = x * x;

  // Constituent term values at index k (coefficients times u^k).
  // s_p: 1/(4^k k! (p+1)_k), s_p1: same at order p+1,
  // pc_pp: modified product (p,p), pc_pp1: modified product (p,p+1).
  double s_p = 1.0, s_p1 = 1.0, pc_pp = 1.0, pc_pp1 = 1.0;
  auto s_ratio = [u](double nu, int k) {
    return u / (4.0 * (k + 1.0) * (nu + k + 1.0));
  };
  auto pc_ratio = [u](double a, double b, int k) {
    if (k == 0) return u * (a + b + 2.0) / (4.0 * (a + 1.0) * (b + 1.0));
    return u * (a + b + 2 * k + 1.0) * (a + b + 2 * k + 2.0) /
           (4.0 * (k + 1.0) * (a + b + k + 1.0) * (a + k + 1.0) * (b + k + 1.0));
  };

  // Advance all four to k = 2.
  for (int k = 0; k < 2; ++k) {
    s_p *= s_ratio(p, k);
    s_p1 *= s_ratio(p + 1.0, k);
    pc_pp *= pc_ratio(p, p, k);
    pc_pp1 *= pc_ratio(p, p + 1.0, k);
  }

  KahanAccumulator num;
  double abs_majorant = 0.0;
  const double wp = std::abs(p);
  double trunc = kInf;
  int k = 2;
  for (; k < cfg.max_terms; ++k) {
    const double combined = -p * pc_pp - 2.0 * s_p + s_p1 + (p + 1.0) * pc_pp1;
    num.add(combined);
    abs_majorant += wp * pc_pp + 2.0 * s_p + s_p1 + (p + 1.0) * pc_pp1;

    const double r1 = s_ratio(p, k), r2 = s_ratio(p + 1.0, k);
    const double r3 = pc_ratio(p, p, k), r4 = pc_ratio(p, p + 1.0, k);
    const double rmax = std::max(std::max(r1, r2), std::max(r3, r4));
    s_p *= r1;
    s_p1 *= r2;
    pc_pp *= r3;
    pc_pp1 *= r4;
    if (k >= 4 && rmax < 1.0) {
      const double tail =
          (wp * pc_pp + 2.0 * s_p + s_p1 + (p + 1.0) * pc_pp1) / (1.0 - rmax);
      const double floor = 0.25 * kEps * std::max(abs_majorant, 1e-300);
      if (tail <= 0.5 * floor) {
        trunc = tail;
        break;
      }
    }
  }
  if (!std::isfinite(trunc)) return classify({num.sum, kInf});
  const double round_off = kEps * abs_majorant * (2.0 + 4.0 * k);

  Evaluation mp = detail::eval_normalized_floor(p, x, Kind::Modified, cfg);
  const double den = mp.value * (1.0 + (p + 1.0) * mp.value);
  const double den_err =
      mp.total_error() * (1.0 + 2.0 * (p + 1.0) * mp.value) + 2.0 * kEps * den;
  return classify(
      divide({num.sum, trunc + round_off}, {den, den_err}));
}

// Elementary margin for the p = -1/2 specialization of the corollary:
// tanh x / x + 3 cosh x / (2 + cosh x) - 2, as N(x)/(x cosh x (2 + cosh x))
// with N_k = (2 + 4^k)/(2k+1)! + (4^k/2 - 4)/(2k)! for k >= 2. Series for
// |x| <= 1, direct elementary evaluation beyond.
struct Kh9Gen {
  double u;
  int k = 2;
  double pow4 = 16.0;      // 4^k
  double fact2k = 24.0;    // (2k)!
  double fact2k1 = 120.0;  // (2k+1)!
  double xodd;             // x^{2k+1}
  double x2;

  Kh9Gen(double x) : u(x * x), xodd(x * x * x * x * x), x2(x * x) {}

  double coeff() const {
    return (2.0 + pow4) / fact2k1 + (0.5 * pow4 - 4.0) / fact2k;
  }
  double term() const { return coeff() * xodd; }
  void advance() {
    ++k;
    pow4 *= 4.0;
    fact2k *= (2.0 * k - 1.0) * (2.0 * k);
    fact2k1 *= (2.0 * k) * (2.0 * k + 1.0);
    xodd *= x2;
  }
  double ratio_bound() const {
    // Rigorous for k >= 3 (see the coefficient comparison in the tests).
    return 10.0 * u / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
  }
};

MarginResult kh9_margin(double x, const KernelConfig& cfg) {
  if (std::abs(x) <= 1.0) {
    if (x == 0.0) return classify({0.0, 0.0});
    SeriesSum s = sum_series(Kh9Gen(std::abs(x)), SeriesKind::Positive, 0.0,
                             cfg.max_terms, /*min_terms=*/2);
    if (!s.converged) return classify({s.value, kInf});
    const double ch = std::cosh(x);
    const double den = std::abs(x) * ch * (2.0 + ch);
    return classify(divide({s.value, s.trunc_bound + s.round_off},
                           {den, 4.0 * kEps * den}));
  }
  const double ch = std::cosh(x);
  const double t1 = std::tanh(x) / x;
  const double t2 = 3.0 * ch / (2.0 + ch);
  const double m = t1 + t2 - 2.0;
  return classify({m, 4.0 * kEps * (std::abs(t1) + t2 + 2.0)});
}

// (2 + cosh x)/3 - sinh x / x: series sum_{k>=2} (2k-2)/(3 (2k+1)!) x^{2k}
// for |x| <= 1, direct beyond.
struct CusaGen {
  double u;
  int k = 2;
  double t;
  explicit CusaGen(double u_) : u(u_) { t = u * u / 180.0; }
  double term() const { return t; }
  void advance() {
    t *= u * k / ((k - 1.0) * (2.0 * k + 2.0) * (2.0 * k + 3.0));
    ++k;
  }
  double ratio_bound() const {
    return u * k / ((k - 1.0) * (2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
};

MarginResult cusa_margin(double x, const KernelConfig& cfg) {
  if (std::abs(x) <= 1.0) {
    if (x == 0.0) return classify({0.0, 0.0});
    SeriesSum s =
        sum_series(CusaGen(x * x), SeriesKind::Positive, 0.0, cfg.max_terms);
    if (!s.converged) return classify({s.value, kInf});
    return classify({s.value, s.trunc_bound + s.round_off});
  }
  const double a = (2.0 + std::cosh(x)) / 3.0;
  const double b = std::sinh(x) / x;
  return classify({a - b, 4.0 * kEps * (a + std::abs(b))});
}

// sin^2 x - cos x (sin x / x - cos x) = 1 - sin(2x)/(2x):
// alternating series sum_{k>=1} (-1)^{k+1} (2x)^{2k}/(2k+1)!.
struct TuranTrigGen {
  double w;  // (2x)^2
  int k = 1;
  double t;
  explicit TuranTrigGen(double x) : w(4.0 * x * x) { t = w / 6.0; }
  double term() const { return (k % 2 == 1) ? t : -t; }
  void advance() {
    t *= w / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    ++k;
  }
  double ratio_bound() const { return w / ((2.0 * k + 2.0) * (2.0 * k + 3.0)); }
};

MarginResult turan_trig_margin(double x, const KernelConfig& cfg) {
  if (x == 0.0) return classify({0.0, 0.0});
  SeriesSum s = sum_series(TuranTrigGen(std::abs(x)), SeriesKind::Alternating,
                           0.0, cfg.max_terms);
  if (!s.converged) return classify({s.value, kInf});
  return classify({s.value, s.trunc_bound + s.round_off});
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

std::vector<InequalityInstance> build_catalog() {
  std::vector<InequalityInstance> v;
  const double pi = std::numbers::pi;
  const double rho2_trig = (8.0 * pi - 24.0) / (pi * pi * pi - 2.0 * pi * pi);

  {
    InequalityInstance i;
    i.id = "FRAME-1954";
    i.family = MarginFamily::FrameModified;
    i.relation = Relation::TwoSidedSandwich;
    i.p_is_point = true;
    i.p_point = -0.5;
    i.x_rule = XRule::FixedInterval;
    i.x_lo = 0.0;
    i.x_hi = 5.0;
    i.x_right_closed = false;
    i.fixed_lambda_left = 1.0 / 11.0;
    i.fixed_lambda_right = 0.1;
    i.right_sharp = true;  // 1/10 = 1/(8(p+1)(p+3)) at p = -1/2
    i.boundary_note = "strict on (0,5); the upper constant is the sharp one";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "CHEN-SANDOR-H";
    i.family = MarginFamily::FrameModified;
    i.relation = Relation::TwoSidedSandwich;
    i.p_is_point = true;
    i.p_point = -0.5;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    i.fixed_lambda_left = 0.0;
    i.fixed_lambda_right = 0.1;
    i.left_sharp = true;
    i.right_sharp = true;
    i.boundary_note = "equality only in the x->0 / x->inf limits";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "CHEN-SANDOR-T";
    i.family = MarginFamily::FrameOscillatory;
    i.relation = Relation::TwoSidedSandwich;
    i.p_is_point = true;
    i.p_point = -0.5;
    i.x_rule = XRule::UpToFirstZero;
    i.fixed_lambda_left = 0.1;
    i.fixed_lambda_right = rho2_trig;
    i.left_sharp = true;
    i.boundary_note =
        "encoded with minus signs in both denominators (the specialization of "
        "the general oscillatory form)";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "T1";
    i.family = MarginFamily::FrameOscillatory;
    i.relation = Relation::TwoSidedSandwich;
    i.p_min = -1.0;
    i.p_max = -0.5;
    i.p_right_closed = true;
    i.x_rule = XRule::UpToFirstZero;
    i.left_sharp = true;
    i.boundary_note = "lower constant 1/(8(p+1)(p+3)); upper from F at the zero";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "T2";
    i.family = MarginFamily::FrameModified;
    i.relation = Relation::TwoSidedSandwich;
    i.p_min = -1.0;
    i.p_max = 0.0;
    i.p_right_closed = true;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    i.left_sharp = true;   // lower constant 0
    i.right_sharp = true;  // upper constant 1/(8(p+1)(p+3))
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "COR-KH7";
    i.family = MarginFamily::CorKh7;
    i.relation = Relation::LessEqual;
    i.p_min = -1.0;
    i.p_max = 0.0;
    i.p_right_closed = true;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    i.boundary_note = "equality exactly at x = 0";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "COR-KH8";
    i.family = MarginFamily::CorKh8;
    i.relation = Relation::GreaterEqual;
    i.p_min = -1.0;
    i.p_max = 0.0;
    i.p_right_closed = true;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    i.boundary_note = "equality exactly at x = 0";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "COR-KH9";
    i.family = MarginFamily::CorKh9Elem;
    i.relation = Relation::GreaterEqual;
    i.p_is_point = true;
    i.p_point = -0.5;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    i.boundary_note = "equality exactly at x = 0; margin ~ (19/180) x^4";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "R2-SANDWICH";
    i.family = MarginFamily::SandwichJ;
    i.relation = Relation::TwoSidedSandwich;
    i.p_min = -1.0;
    i.p_max = -0.5;
    i.p_right_closed = true;
    i.x_rule = XRule::UpToFirstZero;
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "CUSA-H";
    i.family = MarginFamily::CusaHElem;
    i.relation = Relation::StrictLess;
    i.p_is_point = true;
    i.p_point = -0.5;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    i.boundary_note = "equality only in the x -> 0 limit";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "TURAN-J";
    i.family = MarginFamily::TuranJ;
    i.relation = Relation::StrictGreater;
    i.p_min = -1.0;
    i.p_max = 0.0;
    i.p_right_closed = false;
    i.x_rule = XRule::UpToFirstZero;
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "TURAN-TRIG";
    i.family = MarginFamily::TuranTrigElem;
    i.relation = Relation::LessEqual;
    i.p_is_point = true;
    i.p_point = -0.5;
    i.x_rule = XRule::FixedInterval;
    i.x_lo = 0.0;
    i.x_hi = 0.5 * std::numbers::pi;
    i.x_right_closed = false;
    i.boundary_note = "equality exactly at x = 0";
    v.push_back(i);
  }
  {
    InequalityInstance i;
    i.id = "TURAN-I";
    i.family = MarginFamily::TuranI;
    i.relation = Relation::StrictGreater;
    i.p_min = -1.0;
    i.p_max = 0.0;
    i.p_right_closed = false;
    i.x_rule = XRule::UpToXMax;
    i.x_hi = 40.0;
    i.x_right_closed = true;
    v.push_back(i);
  }
  return v;
}

// Per-p row state shared by every x on the row.
struct RowContext {
  double p = 0.0;
  double x_lo = 0.0, x_hi = 0.0;
  bool x_right_closed = false;
  double lambda_left = 0.0, lambda_right = 0.0;
  bool left_cancelled = false, right_cancelled = false;
  bool valid = false;
  std::string error;
};

RowContext build_row(const InequalityInstance& inst, double p,
                     const KernelConfig& cfg, const Perturbation& perturb) {
  RowContext row;
  row.p = p;
  try {
    switch (inst.x_rule) {
      case XRule::FixedInterval:
        row.x_lo = inst.x_lo;
        row.x_hi = inst.x_hi;
        row.x_right_closed = inst.x_right_closed;
        break;
      case XRule::UpToFirstZero: {
        ZeroResult z = find_first_zero(p, 1e-12, cfg);
        row.x_lo = 0.0;
        row.x_hi = z.zero;
        row.x_right_closed = false;
        break;
      }
      case XRule::UpToXMax:
        row.x_lo = 0.0;
        row.x_hi = inst.x_hi;
        row.x_right_closed = inst.x_right_closed;
        break;
    }

    const bool frame = inst.family == MarginFamily::FrameOscillatory ||
                       inst.family == MarginFamily::FrameModified ||
                       inst.family == MarginFamily::SandwichJ;
    if (frame) {
      if (inst.p_is_point) {
        row.lambda_left = inst.fixed_lambda_left;
        row.lambda_right = inst.fixed_lambda_right;
      } else if (inst.family == MarginFamily::FrameOscillatory ||
                 inst.family == MarginFamily::SandwichJ) {
        row.lambda_left = alpha_T1(p, cfg);
        row.lambda_right = beta_T1(p, 1e-12, cfg).value;
      } else {
        row.lambda_left = 0.0;
        row.lambda_right = beta_T2(p, cfg);
      }
      row.left_cancelled = inst.left_sharp;
      row.right_cancelled = inst.right_sharp;

      if (perturb.active()) {
        using Side = Perturbation::Side;
        if (perturb.side != Side::Right) {
          if (perturb.factor != 1.0) row.lambda_left *= perturb.factor;
          row.lambda_left += perturb.alpha_offset;
          row.left_cancelled = false;
        }
        if (perturb.side != Side::Left) {
          if (perturb.factor != 1.0) row.lambda_right /= perturb.factor;
          row.right_cancelled = false;
        }
      }
    } else if (perturb.active()) {
      throw DomainError("perturbation applies only to Frame-type instances");
    }
    row.valid = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

MarginResult evaluate_in_row(const InequalityInstance& inst,
                             const RowContext& row, double x,
                             const KernelConfig& cfg) {
  switch (inst.family) {
    case MarginFamily::FrameOscillatory: {
      FrameSides s = frame_margins(Kind::Oscillatory, row.p, x, row.lambda_left,
                                   row.lambda_right, row.left_cancelled,
                                   row.right_cancelled, cfg);
      return combine_two_sided(s.left, s.right);
    }
    case MarginFamily::FrameModified: {
      FrameSides s = frame_margins(Kind::Modified, row.p, x, row.lambda_left,
                                   row.lambda_right, row.left_cancelled,
                                   row.right_cancelled, cfg);
      return combine_two_sided(s.left, s.right);
    }
    case MarginFamily::SandwichJ: {
      FrameSides s = sandwich_margins(row.p, x, row.lambda_right, cfg);
      return combine_two_sided(s.left, s.right);
    }
    case MarginFamily::TuranJ:
      return turan_J_margin(row.p, x, cfg);
    case MarginFamily::TuranI:
      return turan_I_margin(row.p, x, cfg);
    case MarginFamily::CorKh7:
      return kh7_margin(row.p, x, cfg);
    case MarginFamily::CorKh8:
      return kh8_margin(row.p, x, cfg);
    case MarginFamily::CorKh9Elem:
      return kh9_margin(x, cfg);
    case MarginFamily::CusaHElem:
      return cusa_margin(x, cfg);
    case MarginFamily::TuranTrigElem:
      return turan_trig_margin(x, cfg);
  }
  throw DomainError("unknown margin family");
}

std::vector<double> p_rows(const InequalityInstance& inst, int p_steps,
                           const KernelConfig& cfg) {
  if (inst.p_is_point) return {inst.p_point};
  const double a = std::max(inst.p_min, -1.0 + cfg.order_guard);
  const double b = inst.p_max;
  std::vector<double> rows;
  rows.reserve(p_steps);
  if (inst.p_right_closed) {
    const double h = (b - a) / p_steps;
    for (int i = 0; i < p_steps; ++i) {
      rows.push_back(i + 1 == p_steps ? b : a + (i + 1) * h);
    }
  } else {
    const double h = (b - a) / (p_steps + 1);
    for (int i = 0; i < p_steps; ++i) rows.push_back(a + (i + 1) * h);
  }
  return rows;
}

std::vector<double> x_samples(const RowContext& row, int x_steps, double inset) {
  const double len = row.x_hi - row.x_lo;
  const double a = row.x_lo + len * inset;
  const double b = row.x_right_closed ? row.x_hi : row.x_hi - len * inset;
  std::vector<double> xs;
  xs.reserve(x_steps);
  for (int k = 0; k < x_steps; ++k) {
    xs.push_back(a + k * (b - a) / (x_steps - 1));
  }
  return xs;
}

}  // namespace

const std::vector<InequalityInstance>& catalog() {
  static const std::vector<InequalityInstance> c = build_catalog();
  return c;
}

const InequalityInstance& find_instance(const std::string& id) {
  for (const auto& inst : catalog()) {
    if (inst.id == id) return inst;
  }
  throw DomainError("unknown instance id: " + id);
}

namespace {

RowContext checked_row(const InequalityInstance& inst, double p, double x,
                       const KernelConfig& cfg, const Perturbation& perturb) {
  if (inst.p_is_point) {
    if (p != inst.p_point) throw DomainError("instance is pinned to one order");
  } else {
    const double lo = std::max(inst.p_min, -1.0 + cfg.order_guard - 1e-12);
    const bool hi_ok = inst.p_right_closed ? (p <= inst.p_max) : (p < inst.p_max);
    if (!(p >= lo && hi_ok)) throw DomainError("p outside the instance domain");
  }
  RowContext row = build_row(inst, p, cfg, perturb);
  if (!row.valid) throw EvaluationError(row.error);
  if (!(x > row.x_lo) ||
      !(row.x_right_closed ? x <= row.x_hi : x < row.x_hi)) {
    throw DomainError("x outside the instance domain");
  }
  return row;
}

}  // namespace

MarginResult evaluate_instance(const InequalityInstance& inst, double p,
                               double x, double tol, const KernelConfig& cfg,
                               const Perturbation& perturb) {
  if (!(tol > 0.0)) throw DomainError("tol must be > 0");
  // Margins always run to the double floor; tol is recorded with the report.
  RowContext row = checked_row(inst, p, x, cfg, perturb);
  return evaluate_in_row(inst, row, x, cfg);
}

std::pair<MarginResult, MarginResult> evaluate_instance_sides(
    const InequalityInstance& inst, double p, double x, double tol,
    const KernelConfig& cfg, const Perturbation& perturb) {
  (void)tol;
  if (inst.relation != Relation::TwoSidedSandwich) {
    throw DomainError("per-side margins exist only for two-sided instances");
  }
  RowContext row = checked_row(inst, p, x, cfg, perturb);
  FrameSides s;
  switch (inst.family) {
    case MarginFamily::FrameOscillatory:
      s = frame_margins(Kind::Oscillatory, row.p, x, row.lambda_left,
                        row.lambda_right, row.left_cancelled,
                        row.right_cancelled, cfg);
      break;
    case MarginFamily::FrameModified:
      s = frame_margins(Kind::Modified, row.p, x, row.lambda_left,
                        row.lambda_right, row.left_cancelled,
                        row.right_cancelled, cfg);
      break;
    case MarginFamily::SandwichJ:
      s = sandwich_margins(row.p, x, row.lambda_right, cfg);
      break;
    default:
      throw DomainError("per-side margins exist only for Frame-type instances");
  }
  return {s.left, s.right};
}

SweepReport sweep(const InequalityInstance& inst, const GridSpec& grid,
                  const KernelConfig& cfg, const Perturbation& perturb,
                  int workers) {
  if (grid.p_steps < 1 || grid.x_steps < 2) {
    throw DomainError("grid steps out of range");
  }
  SweepReport rep;
  rep.instance_id = inst.id;
  rep.grid = grid;
  rep.perturb = perturb;

  const std::vector<double> rows = p_rows(inst, grid.p_steps, cfg);

  struct RowResult {
    std::vector<PointRecord> records;
  };

  auto run_row = [&](int row_idx) -> RowResult {
    RowResult rr;
    const double p = rows[row_idx];
    RowContext row = build_row(inst, p, cfg, perturb);
    rr.records.reserve(grid.x_steps);
    if (!row.valid) {
      for (int k = 0; k < grid.x_steps; ++k) {
        PointRecord rec;
        rec.index = static_cast<long>(row_idx) * grid.x_steps + k;
        rec.p = p;
        rec.x = std::numeric_limits<double>::quiet_NaN();
        rec.err = kInf;
        rec.status = PointStatus::Indeterminate;
        rr.records.push_back(rec);
      }
      return rr;
    }
    const std::vector<double> xs = x_samples(row, grid.x_steps, grid.inset);
    for (int k = 0; k < grid.x_steps; ++k) {
      PointRecord rec;
      rec.index = static_cast<long>(row_idx) * grid.x_steps + k;
      rec.p = p;
      rec.x = xs[k];
      try {
        MarginResult m = evaluate_in_row(inst, row, xs[k], cfg);
        rec.margin = m.margin;
        rec.err = m.err_bound;
        rec.status = m.status;
      } catch (const std::exception&) {
        rec.margin = std::numeric_limits<double>::quiet_NaN();
        rec.err = kInf;
        rec.status = PointStatus::Indeterminate;
      }
      rr.records.push_back(rec);
    }
    return rr;
  };

  std::vector<RowResult> results(rows.size());
  if (workers > 1 && rows.size() > 1) {
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    const int n = std::min<int>(workers, static_cast<int>(rows.size()));
    for (int w = 0; w < n; ++w) {
      futs.push_back(std::async(std::launch::async, [&]() {
        for (size_t i = next.fetch_add(1); i < rows.size();
             i = next.fetch_add(1)) {
          results[i] = run_row(static_cast<int>(i));
        }
      }));
    }
    for (auto& f : futs) f.get();
  } else {
    for (size_t i = 0; i < rows.size(); ++i) {
      results[i] = run_row(static_cast<int>(i));
    }
  }

  bool first = true;
  for (const auto& rr : results) {
    for (const auto& rec : rr.records) {
      ++rep.n_points;
      switch (rec.status) {
        case PointStatus::Ok:
          ++rep.n_ok;
          break;
        case PointStatus::Violation:
          ++rep.n_violation;
          if (static_cast<long>(rep.violations.size()) < rep.record_cap) {
            rep.violations.push_back(rec);
          }
          break;
        case PointStatus::Indeterminate:
          ++rep.n_indeterminate;
          if (static_cast<long>(rep.indeterminates.size()) < rep.record_cap) {
            rep.indeterminates.push_back(rec);
          }
          break;
      }
      if (std::isfinite(rec.margin) && (first || rec.margin < rep.min_margin)) {
        rep.min_margin = rec.margin;
        rep.argmin_p = rec.p;
        rep.argmin_x = rec.x;
        rep.min_record = rec;
        first = false;
      }
    }
  }
  return rep;
}

MonotoneReport check_F_monotone(double p, int x_steps, const KernelConfig& cfg) {
  if (x_steps < 3) throw DomainError("x_steps too small");
  MonotoneReport rep;
  rep.p = p;
  rep.x_steps = x_steps;
  rep.limit_target = alpha_T1(p, cfg);

  ZeroResult z = find_first_zero(p, 1e-12, cfg);
  const double j = z.zero;
  const double inset = 1e-6;
  std::vector<double> xs(x_steps), fs(x_steps);
  for (int k = 0; k < x_steps; ++k) {
    xs[k] = j * (inset + k * (1.0 - 2.0 * inset) / (x_steps - 1));
    fs[k] = eval_F(p, xs[k], cfg).value;
  }

  rep.monotone_ok = true;
  rep.worst_step = kInf;
  for (int k = 0; k + 1 < x_steps; ++k) {
    const double step = fs[k + 1] - fs[k];
    rep.worst_step = std::min(rep.worst_step, step);
    if (step < -rep.slack) rep.monotone_ok = false;
  }

  const std::array<double, 3> us = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> vals{};
  for (int i = 0; i < 3; ++i) {
    vals[i] = eval_F(p, std::sqrt(us[i]), cfg).value;
  }
  rep.limit_near_zero = extrapolate_to_zero(us, vals);
  rep.far_value = fs[x_steps - 1];

  // H = x^4 (1 - N_{p+1})^2 F' via central differences, interior only.
  rep.h_min = kInf;
  const double h = 1e-4 * j;
  for (int k = 0; k < x_steps; ++k) {
    const double x = xs[k];
    if (x < 0.1 * j || x > 0.9 * j) continue;
    const double fp =
        (eval_F(p, x + h, cfg).value - eval_F(p, x - h, cfg).value) / (2.0 * h);
    const double omj =
        detail::eval_tail_floor(p + 1.0, x, Kind::Oscillatory, cfg).value;
    const double H = x * x * x * x * omj * omj * fp;
    rep.h_min = std::min(rep.h_min, H);
    if (!(H > 0.0)) rep.h_positive = false;
  }
  return rep;
}

MonotoneReport check_G_monotone(double p, int x_steps, double x_max,
                                const KernelConfig& cfg) {
  if (x_steps < 3) throw DomainError("x_steps too small");
  if (!(x_max > 0.0) || x_max > cfg.x_max_modified) {
    throw DomainError("x_max out of range");
  }
  MonotoneReport rep;
  rep.p = p;
  rep.x_steps = x_steps;
  rep.limit_target = beta_T2(p, cfg);

  const double inset = 1e-6;
  std::vector<double> xs(x_steps), gs(x_steps);
  for (int k = 0; k < x_steps; ++k) {
    xs[k] = x_max * inset + k * (x_max - x_max * inset) / (x_steps - 1);
    gs[k] = eval_G(p, xs[k], cfg).value;
  }

  rep.monotone_ok = true;
  rep.worst_step = -kInf;
  for (int k = 0; k + 1 < x_steps; ++k) {
    const double step = gs[k + 1] - gs[k];
    rep.worst_step = std::max(rep.worst_step, step);
    if (step > rep.slack) rep.monotone_ok = false;
  }

  const std::array<double, 3> us = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> vals{};
  for (int i = 0; i < 3; ++i) {
    vals[i] = eval_G(p, std::sqrt(us[i]), cfg).value;
  }
  rep.limit_near_zero = extrapolate_to_zero(us, vals);
  rep.far_value = gs[x_steps - 1];
  rep.h_positive = true;
  rep.h_min = 0.0;
  if (x_max >= cfg.x_asym) {
    const double g_asym = eval_G_asymptotic(p, x_max, 3, cfg);
    rep.asym_rel_diff = std::abs(rep.far_value - g_asym) / std::abs(rep.far_value);
  }
  return rep;
}

}  // namespace besselcert
