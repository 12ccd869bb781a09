#pragma once

namespace besselcert {

/// Compensated (Kahan) accumulator. Tracks the rounding error of each
/// addition and feeds it back into the next, so a long sum of doubles
/// carries an error bounded by ~2*eps*sum(|x_i|) independent of length.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  KahanAccumulator& operator+=(double value) {
    add(value);
    return *this;
  }

  operator double() const { return sum; }
};

}  // namespace besselcert
