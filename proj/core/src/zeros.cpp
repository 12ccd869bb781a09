#include "besselcert/zeros.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace besselcert {

namespace {

// Certified sign of eval_J at x: +1/-1 when the value clears its own error
// band, 0 when undetermined.
int certified_sign(double p, double x, double eval_tol, const KernelConfig& cfg) {
  BesselSpec spec(p, Kind::Oscillatory, cfg);
  Evaluation e = eval_J(spec, x, eval_tol, cfg);
  if (std::abs(e.value) <= e.total_error()) return 0;
  return e.value > 0.0 ? 1 : -1;
}

// Sign with nudging: tries small offsets until the sign is determined.
int sign_with_nudge(double p, double& x, double step, double eval_tol,
                    const KernelConfig& cfg) {
  int s = certified_sign(p, x, eval_tol, cfg);
  if (s != 0) return s;
  for (int k = 1; k <= 4 && s == 0; ++k) {
    double cand = x + step * k / 16.0;
    s = certified_sign(p, cand, eval_tol, cfg);
    if (s != 0) {
      x = cand;
      return s;
    }
    cand = x - step * k / 16.0;
    s = certified_sign(p, cand, eval_tol, cfg);
    if (s != 0) {
      x = cand;
      return s;
    }
  }
  return 0;
}

// Bisection on certified signs: lo certified positive, hi certified negative.
std::pair<double, double> refine(double p, double lo, double hi, double tol,
                                 double eval_tol, const KernelConfig& cfg) {
  while (hi - lo > 2.0 * tol) {
    const double w = hi - lo;
    double m = 0.5 * (lo + hi);
    int s = certified_sign(p, m, eval_tol, cfg);
    if (s == 0) {
      bool resolved = false;
      for (int k = 1; k <= 4 && !resolved; ++k) {
        for (double cand : {m + w * k / 16.0, m - w * k / 16.0}) {
          if (cand <= lo || cand >= hi) continue;
          s = certified_sign(p, cand, eval_tol, cfg);
          if (s != 0) {
            m = cand;
            resolved = true;
            break;
          }
        }
      }
      if (!resolved) break;  // stalled inside the error band; keep the bracket
    }
    if (s > 0) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return {lo, hi};
}

ZeroResult scan_and_refine(double p, double x0, double tol, double eval_tol,
                           const KernelConfig& cfg) {
  const double step = 0.1;
  double m = x0;
  int sm = sign_with_nudge(p, m, step, eval_tol, cfg);
  if (sm == 0) {
    throw EvaluationError("sign undetermined near the scan start");
  }
  double lo = 0.0, hi = 0.0;
  bool found = false;
  if (sm < 0) {
    // Walk toward 0 until the value turns positive; the first zero is in the
    // last step.
    double right = m;
    for (double left = m - step; left > 0.0; left -= step) {
      double probe = std::max(left, 1e-8);
      const int s = sign_with_nudge(p, probe, step, eval_tol, cfg);
      if (s > 0) {
        lo = probe;
        hi = right;
        found = true;
        break;
      }
      if (s < 0) right = probe;
    }
    if (!found) {
      // The function starts at 1 > 0.
      double probe = 1e-8;
      if (certified_sign(p, probe, eval_tol, cfg) > 0) {
        lo = probe;
        hi = right;
        found = true;
      }
    }
  } else {
    double left = m;
    for (double right = m + step; right <= cfg.x_max_oscillatory;
         right += step) {
      double probe = right;
      const int s = sign_with_nudge(p, probe, step, eval_tol, cfg);
      if (s < 0) {
        lo = left;
        hi = probe;
        found = true;
        break;
      }
      if (s > 0) left = probe;
    }
  }
  if (!found) {
    throw EvaluationError("no sign change found within [0, x_max] for p=" +
                          std::to_string(p));
  }
  auto [rlo, rhi] = refine(p, lo, hi, tol, eval_tol, cfg);
  auto [blo, bhi] = bracket_zero(p, cfg);
  ZeroResult r;
  r.p = p;
  r.lower = blo;
  r.upper = bhi;
  r.zero = 0.5 * (rlo + rhi);
  r.tol_achieved = 0.5 * (rhi - rlo);
  return r;
}

}  // namespace

std::pair<double, double> bracket_zero(double p, const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  const double lower = std::sqrt(4.0 * (p + 1.0) * std::sqrt(p + 2.0));
  const double upper = std::sqrt(2.0 * (p + 1.0) * (p + 3.0));
  return {lower, upper};
}

ZeroResult find_first_zero(double p, double tol, const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  if (!(tol >= 1e-14)) throw DomainError("tol must be >= 1e-14");
  const double eval_tol = tol / 10.0;

  const auto [blo, bhi] = bracket_zero(p, cfg);
  const int slo = (blo < bhi) ? certified_sign(p, blo, eval_tol, cfg) : 0;
  const int shi = (blo < bhi) ? certified_sign(p, bhi, eval_tol, cfg) : 0;

  if (!(blo < bhi) || slo <= 0 || shi >= 0) {
    // Degenerate or unconfirmed bracket.
    return scan_and_refine(p, 0.5 * (blo + bhi), tol, eval_tol, cfg);
  }

  auto [rlo, rhi] = refine(p, blo, bhi, tol, eval_tol, cfg);
  ZeroResult r;
  r.p = p;
  r.lower = blo;
  r.upper = bhi;
  r.zero = 0.5 * (rlo + rhi);
  r.tol_achieved = 0.5 * (rhi - rlo);
  return r;
}

ZeroResult find_first_zero_from(double p, double x0, double tol,
                                const KernelConfig& cfg) {
  detail::check_order(p, cfg);
  if (!(tol >= 1e-14)) throw DomainError("tol must be >= 1e-14");
  if (!(x0 > 0.0) || !(x0 <= cfg.x_max_oscillatory)) {
    throw DomainError("scan start outside (0, x_max]");
  }
  return scan_and_refine(p, x0, tol, tol / 10.0, cfg);
}

}  // namespace besselcert
