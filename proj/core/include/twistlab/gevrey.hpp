#pragma once

#include <string>
#include <vector>

#include "twistlab/model.hpp"

namespace twistlab {

/// Estimate of sup |d^k phi| over the function's domain.
struct DerivativeSup {
  int order = 0;
  double sup_value = 0.0;
  std::string method;  // "analytic" or "fd8(h=...)"
  int grid = 0;
  bool converged = true;
  double disagreement = 0.0;  // relative spread of the accepted ladder rungs
};

/// Truncated Gevrey-norm sum with a geometric tail estimate.
struct NormEstimate {
  double value = 0.0;
  int truncation_order = 0;
  int grid_size = 0;
  double tail_bound = 0.0;
  bool converged = true;
};

struct SupOptions {
  int grid = 1 << 14;       // localization grid for the sup
  bool force_fd = false;    // skip analytic paths (used by cross-checks)
  double ladder_h0 = 1.0 / 32.0;  // coarsest finite-difference step
  int ladder_len = 11;
  int workers = 1;
};

/// Sup of the k-th derivative. Analytic derivatives are used through order
/// two (or any order when the function carries closed forms); otherwise
/// order-8 central differences on a descending step ladder, Richardson
/// extrapolation between adjacent rungs, accepting the triple of rungs in
/// closest agreement. Disagreement above 5% marks the estimate
/// non-converged; it is reported, never hidden.
DerivativeSup derivative_sup(const ScalarFunction& phi, int k,
                             const SupOptions& opts = {});

/// Throws GevreyError when a required derivative estimate fails.
struct GevreyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sum over 0 <= k <= kmax of L^{k alpha} / (k!)^alpha * sup |d^k phi|,
/// plus a tail bound from the last term ratio.
NormEstimate gevrey_norm(const ScalarFunction& phi, double alpha, double L,
                         int kmax, const SupOptions& opts = {});

/// Verification of the derivative growth bound for the edge factor:
/// sup |e^{(k)}| <= (2/sin sigma)^k (k/(lambda p e))^{k/p} k! on (0, 2].
struct CauchyCheck {
  int k = 0;
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound / observed
  bool holds = false;
  bool converged = true;
};
CauchyCheck verify_cauchy_bound(double alpha, double lambda, int k,
                                const SupOptions& opts = {});

/// max over 0 <= k <= r of derivative_sup.
double cr_norm(const ScalarFunction& phi, int r, const SupOptions& opts = {});

/// C^r norm of the rescaled perturbation Q_q = q^{-2}(u_q + v_q)(q .),
/// family index tied to the rescaling integer.
double perturbation_cr_decay(int q, const PerturbationParams& base, int r,
                             const SupOptions& opts = {});

/// Real trigonometric polynomial c0 + sum_m (a_m cos 2 pi m x + b_m sin).
/// Products and exact derivatives stay in closed form; used as oracles for
/// the norm machinery and as random test material.
class TrigPoly {
 public:
  TrigPoly() : a_{0.0}, b_{0.0} {}
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  double operator()(double x) const;
  double deriv(int k, double x) const;
  double deriv_sup(int k) const;  // grid + parabolic refinement, exact forms
  TrigPoly operator*(const TrigPoly& other) const;
  TrigPoly operator+(const TrigPoly& other) const;
  int degree() const { return static_cast<int>(a_.size()) - 1; }

  ScalarFunction as_function(const std::string& id) const;

 private:
  std::vector<double> a_, b_;  // b_[0] unused
};

}  // namespace twistlab
