#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "besselcert/kernel.hpp"

namespace besselcert {

/// Exact rational with int64 storage; comparisons cross-multiply in 128 bits.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d);
  double to_double() const { return static_cast<double>(num) / den; }
};

bool operator<(const Rational& a, const Rational& b);
bool operator==(const Rational& a, const Rational& b);
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }

/// A pair of coefficient sequences (a_n, b_n) with b_n > 0, whose ratio
/// monotonicity transfers to the ratio of the generated power series.
struct CoeffSequencePair {
  std::string name;
  int n_min = 0;
  std::function<double(int)> a;
  std::function<double(int)> b;
  // Exact generators, when the coefficients are rational in n.
  std::function<Rational(int)> a_exact;
  std::function<Rational(int)> b_exact;

  bool has_exact() const { return a_exact && b_exact; }
};

enum class Direction { Increasing, Decreasing };

struct RatioVerdict {
  bool b_positive = true;        // b_n > 0 held on the range
  bool monotone = false;         // nonstrict monotone in the stated direction
  bool strict = false;           // strictly monotone
  int first_failure_n = -1;      // first n where monotonicity reverses
  int first_nonstrict_n = -1;    // first n where consecutive ratios tie
  bool exact_mode = false;
};

/// Scans a_n/b_n over [n_min, N] and reports monotonicity in the requested
/// direction. Uses exact rational comparisons when the pair provides them.
RatioVerdict certify_ratio_monotone(const CoeffSequencePair& pair, int N,
                                    Direction direction);

/// The modified-family ratio sequence a_n/b_n = (n-1)/(4n(p+1)(p+n+1)), n >= 2
/// (strictly decreasing for p < 0; the n = 2 -> 3 step ties at p = 0).
CoeffSequencePair t2_ratio_pair(double p, const KernelConfig& cfg = {});
/// Same pair with exact rational generators for rational p = p_num/p_den.
CoeffSequencePair t2_ratio_pair_exact(std::int64_t p_num, std::int64_t p_den,
                                      const KernelConfig& cfg = {});

struct ReplayVerdict {
  bool pass = false;
  int first_fail_n = -1;
  std::string detail;
};

/// Replays the tail-coefficient ratio chain
///   (n^2+n+3) x^2 / (4(n+1)(n+p+2)(n^2-n+2)) <= x^2/(2(n+1)(n+p+2))
///     < (p+1)(p+3)/((n+1)(n+p+2)) < 1
/// for 6 <= n <= N, using x^2 < j^2 < 2(p+1)(p+3).
ReplayVerdict replay_alpha_ratio(double p, double x, int N,
                                 const KernelConfig& cfg = {});

/// Replays the product-series ratio chains: B_{n+1}/B_n < 1 for n >= 0 and
/// D_{n+1}/D_n < 1 for n >= 6, via the intermediate bounds stepping through
/// j^2 < 2(p+1)(p+3).
ReplayVerdict replay_B_D_ratios(double p, double x, int N,
                                const KernelConfig& cfg = {});

/// Coefficient magnitude B_n of the Turan difference series,
///   N_{p+1}^2 - (p+1)/(p+2) N_p N_{p+2} = sum_n (-1)^n B_n x^{2n},
/// B_0 = 1/(p+2), with the multiplicative ratio
///   B_{n+1}/B_n = (2p+2n+3)/(2(n+1)(p+n+3)(2p+n+3)).
double turan_B_coefficient(double p, int n);

/// D-series coefficients, D_n = (n-2) E_n with E_n multiplicative; D_2 = 0.
double proof_D_coefficient(double p, int n);

struct TuranEnclosure {
  double lower = 0.0;  // certified lower bound on the Turan expression
  double upper = 0.0;
  bool positive = false;
  bool terms_decreasing = false;
  int terms = 0;
  double kernel_value = 0.0;  // direct evaluation through the kernel
  double kernel_err = 0.0;
  bool kernel_agrees = false;  // |midpoint - kernel| within max(1e-10, widths)
};

/// Alternating partial sums of the Turan coefficient series give a certified
/// enclosure once the terms decrease; cross-checked against the kernel route.
TuranEnclosure turan_via_coefficients(double p, double x, int N,
                                      const KernelConfig& cfg = {});

}  // namespace besselcert
