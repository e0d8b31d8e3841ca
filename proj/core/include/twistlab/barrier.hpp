#pragma once

#include <vector>

#include "twistlab/model.hpp"
#include "twistlab/variational.hpp"

namespace twistlab {

/// Complementary interval of the minimal set containing xi, together with
/// its bounding minimal configurations (x_0^- = xi_minus, x_0^+ = xi_plus).
struct GapBracket {
  double xi_minus = 0.0, xi_plus = 0.0;
  Configuration lower, upper;
  bool on_minimal = false;  // xi coincides with a minimal point
};

struct BarrierSample {
  double xi = 0.0;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  int window = 0;
};

struct BarrierProfile {
  RotationSymbol symbol;
  std::vector<BarrierSample> samples;
  double tol = 0.0;
};

/// Barrier at rotation symbol p/q (sign = 0) or p/q+- (sign = +-1) through
/// xi. The plain symbol minimizes the one-period excess action over the
/// bracketing periodic minimizers; the one-sided symbols (implemented for
/// q = 1, which covers 0+ and 0-) minimize the windowed excess over the
/// bracketing heteroclinics. Returns 0 without solving when xi lies on a
/// minimal configuration. Constrained minimization is cyclic coordinate
/// descent with per-coordinate clamping to the bracket interval.
double peierls_rational(const GeneratingFunction& h, long p, long q, int sign,
                        double xi, double tol = 1e-10);

/// Independent formulation of the 0+ barrier: K(eta) - K, the constrained
/// and unconstrained heteroclinic minima computed on the identical window
/// with identical pinned edges, differenced bond by bond.
double peierls_zero_plus(const GeneratingFunction& h, double eta,
                         double tol = 1e-10);

/// Same computation, also handing back both minimizers (the constrained
/// one glued from the two split solves). Empty configurations when the
/// value was settled by the on-minimal-set detection.
struct ZeroPlusDetail {
  double value = 0.0;
  Configuration constrained;
  Configuration unconstrained;
  bool detected_on_minimal = true;
};
ZeroPlusDetail peierls_zero_plus_detail(const GeneratingFunction& h,
                                        double eta, double tol = 1e-10);

/// Samples xi -> P(xi) on a uniform grid over [0, 1]. Individual failures
/// are flagged on the sample, not fatal. Deterministic output order for
/// any worker count.
BarrierProfile barrier_profile(const GeneratingFunction& h,
                               const RotationSymbol& symbol, int grid,
                               double tol = 1e-10, int workers = 1);

enum class Verdict { Destroyed, Inconclusive };

struct CertificateReport {
  Verdict verdict = Verdict::Inconclusive;
  double max_barrier = 0.0;
  double threshold = 0.0;  // 10 * tol
  int converged_samples = 0;
  int failed_samples = 0;
};

/// "destroyed" iff some converged sample exceeds 10*tol. Absence of
/// positivity at grid resolution is inconclusive, never an existence claim.
CertificateReport destruction_certificate(const GeneratingFunction& h,
                                          const RotationSymbol& symbol,
                                          int grid, double tol = 1e-10,
                                          int workers = 1);

struct ModulusRow {
  long Q = 0;
  double p_rational = 0.0;
  double p_zero_plus = 0.0;
  double diff = 0.0;
};

/// |P_{1/Q} - P_{0+}|(eta) for each Q. The Q = 1 row compares the two
/// formulations of the same one-sided barrier (cross-method check); rows
/// with Q >= 2 use the plain rational symbol 1/Q.
std::vector<ModulusRow> modulus_experiment(const GeneratingFunction& h,
                                           double eta,
                                           const std::vector<long>& Qs,
                                           double tol = 1e-10);

}  // namespace twistlab
