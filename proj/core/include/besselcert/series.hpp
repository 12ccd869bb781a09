#pragma once

#include <cmath>
#include <limits>

#include "besselcert/kahan.hpp"

namespace besselcert {

enum class SeriesKind {
  Alternating,  // signs alternate; tail bounded by the first omitted term
  Positive      // all terms one sign; tail bounded by a geometric majorant
};

struct SeriesSum {
  double value = 0.0;
  double trunc_bound = 0.0;  // rigorous bound on the omitted tail
  double round_off = 0.0;    // a priori model of accumulated rounding error
  int terms = 0;             // number of terms summed
  bool converged = false;    // stopped via the tail rule rather than the cap
};

/// Sums an even power series term by term with a certified truncation bound.
///
/// Gen contract:
///   double term() const;        current (signed) term
///   void advance();             step to the next term
///   double ratio_bound() const; upper bound on |t_next/t_current| valid for
///                               every later step as well (nonincreasing along
///                               the series once it holds)
///
/// Stopping: once at least `min_terms` terms are in, the sum stops when the
/// first omitted term certifies a tail at or below max(abs_tol, machine floor)/2.
/// Alternating series use the first-omitted-term bound and additionally require
/// the observed magnitudes to be decreasing; positive series use the geometric
/// tail t/(1-r). `min_terms` exists for series whose leading coefficients can
/// vanish at special parameter values; callers set it past any such index.
template <class Gen>
SeriesSum sum_series(Gen gen, SeriesKind kind, double abs_tol, int max_terms,
                     int min_terms = 1) {
  constexpr double eps = std::numeric_limits<double>::epsilon();

  KahanAccumulator acc;
  double abs_sum = 0.0;

  double current = gen.term();
  acc.add(current);
  abs_sum += std::abs(current);
  int count = 1;

  SeriesSum out;
  while (true) {
    const double prev_mag = std::abs(current);
    gen.advance();
    current = gen.term();
    const double mag = std::abs(current);
    const double rho = gen.ratio_bound();  // bounds ratios from here on

    // With an explicit target the loop runs until the truncation certificate
    // meets it (rounding is reported separately); abs_tol = 0 means "as far
    // as doubles go", stopping at the relative machine floor.
    const double tol_eff =
        (abs_tol > 0.0) ? abs_tol : 0.25 * eps * abs_sum;

    if (count >= min_terms && rho < 1.0) {
      if (kind == SeriesKind::Alternating) {
        if (mag <= prev_mag && mag <= 0.5 * tol_eff) {
          out.trunc_bound = mag;
          out.converged = true;
          break;
        }
      } else {
        const double tail = mag / (1.0 - rho);
        if (tail <= 0.5 * tol_eff) {
          out.trunc_bound = tail;
          out.converged = true;
          break;
        }
      }
    }

    acc.add(current);
    abs_sum += mag;
    ++count;

    if (count >= max_terms) {
      // Best-effort bound so the caller can report how far off it stopped.
      out.trunc_bound = (rho < 1.0) ? mag / (1.0 - rho)
                                    : std::numeric_limits<double>::infinity();
      out.converged = false;
      break;
    }
  }

  out.value = acc.sum;
  out.terms = count;
  out.round_off = (count > 1) ? eps * abs_sum * (2.0 + 4.0 * count) : 0.0;
  return out;
}

}  // namespace besselcert
