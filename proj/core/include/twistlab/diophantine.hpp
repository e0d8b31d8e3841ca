#pragma once

#include <string>
#include <vector>

#include <stdexcept>

namespace twistlab {

/// Best rational approximation p/q with its witness error |q omega - p|.
struct Convergent {
  long long p = 0, q = 1;
  double error = 0.0;
};

struct ContinuedFraction {
  std::vector<long> quotients;
  /// The remaining fraction became indistinguishable from a rational at
  /// working precision before reaching the requested depth.
  bool terminated = false;
};

/// Regular continued fraction of omega in (0, 1). depth is capped at 12
/// for generic doubles; past that the quotients are precision noise.
ContinuedFraction continued_fraction(double omega, int depth);

/// Convergents by the standard recurrence. Errors alternate in sign of
/// q*omega - p and strictly decrease.
std::vector<Convergent> convergents(double omega, int count);

/// Quadratic constants carried exactly: their partial quotients are
/// constant and |q_k omega - p_k| = omega^{k+1}, so the convergent list is
/// exact far beyond double-precision depth.
enum class NamedOmega { GoldenMean, Sqrt2Minus1 };
double named_value(NamedOmega w);
std::vector<Convergent> convergents(NamedOmega w, int count);

struct ApproximationClass {
  double mu = 0.0;
  double C = 1.0;
  std::vector<Convergent> witnesses;  // those with error < C q^{-1-mu}
  int tested = 0;
};

/// Filters a convergent list through the mu-approximation inequality.
ApproximationClass mu_witness_check(const std::vector<Convergent>& conv,
                                    double mu, double C);
ApproximationClass mu_witness_check(double omega, double mu, double C,
                                    int count);

/// Partial sums of sum_k 10^{-k!}. The witness errors are measured against
/// the full series and live far below double precision, so they are kept
/// as exact base-10 exponent arithmetic, never as bare doubles.
struct LiouvilleWitness {
  int k = 0;
  std::string p_decimal;     // exact digits of p_k
  long long log10_q = 0;     // q_k = 10^{k!}
  double log10_error = 0.0;  // log10 |q_k omega - p_k|, exact to ~1e-15

  /// strict inequality |q omega - p| < C q^{-1-mu}, decided in exponents
  bool qualifies(double mu, double C) const;
};

struct LiouvilleSample {
  double value = 0.0;  // partial sum, as a double
  int terms = 0;
  double log10_tail = 0.0;  // log10 of the truncation error interval width
  std::vector<LiouvilleWitness> witnesses;
};

/// terms <= 4; beyond that 10^{-k!} has no double representation at all.
LiouvilleSample liouville_sample(int terms);

/// The closing parameter choice of the destruction pipeline:
/// epsilon = 2 delta (alpha-1)/alpha, a = (2 - 2/alpha)(1+mu) - epsilon,
/// r = a + 2 - epsilon. Throws std::invalid_argument when a would be
/// nonpositive.
struct PipelineBudget {
  double a = 0.0;
  double r = 0.0;
  double epsilon = 0.0;
};
PipelineBudget pipeline_budget(double alpha, double mu, double delta);

}  // namespace twistlab
