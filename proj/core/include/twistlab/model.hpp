#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace twistlab {

/// Parameters of the perturbation family. alpha is the Gevrey exponent of
/// the bump, lambda its decay rate, a the amplitude exponent and n the
/// family index. The bump support half-width is w(n) = 1/(8 n^{a/2}).
struct PerturbationParams {
  double alpha = 2.0;
  double lambda = 1.0;
  double a = 1.0;
  int n = 1;

  double support_half_width() const;
  double amplitude() const;  // n^{-a}
  /// Throws std::invalid_argument if any constraint is violated.
  void validate() const;
};

/// One-sided building block of the bump: vanishes identically for x <= 0,
/// exp(-lambda*sqrt(2)*x^{-1/(alpha-1)}) for x > 0. Smooth on all of R and
/// flat to every order at 0.
double edge_exp(double alpha, double lambda, double x);
double edge_exp_d1(double alpha, double lambda, double x);
double edge_exp_d2(double alpha, double lambda, double x);
long double edge_exp_ld(double alpha, double lambda, long double x);

/// A real function of one variable with analytic derivatives through order
/// two. Optional hooks: exact_deriv for closed-form derivatives of every
/// order (trigonometric members), value_ld for extended-precision
/// evaluation (feeds the high-order finite-difference estimators).
/// Instances are immutable and safe to share across threads.
class ScalarFunction {
 public:
  using Eval = std::function<double(double)>;
  using EvalK = std::function<double(int, double)>;
  using EvalLd = std::function<long double(long double)>;
  using EvalDiff = std::function<double(double, double)>;

  ScalarFunction();  // the zero function, periodic
  ScalarFunction(std::string id, Eval v, Eval d1, Eval d2);

  double operator()(double x) const { return v_(x); }
  double deriv(double x) const { return d1_(x); }
  double deriv2(double x) const { return d2_(x); }

  bool periodic() const { return periodic_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::string& id() const { return id_; }

  bool has_exact_deriv() const { return bool(dk_); }
  double exact_deriv(int k, double x) const { return dk_(k, x); }
  bool has_ld() const { return bool(vld_); }
  long double value_ld(long double x) const { return vld_(x); }

  /// f(x) - f(y), via a cancellation-free closed form when one is
  /// registered. Barrier sums live many orders of magnitude below the
  /// individual values, so this is the only safe way to difference them.
  double diff(double x, double y) const {
    return dv_ ? dv_(x, y) : v_(x) - v_(y);
  }

  ScalarFunction& with_exact_deriv(EvalK dk);
  ScalarFunction& with_ld(EvalLd vld);
  ScalarFunction& with_diff(EvalDiff dv);
  ScalarFunction& on_interval(double lo, double hi);  // marks non-periodic

  friend ScalarFunction operator+(const ScalarFunction& f,
                                  const ScalarFunction& g);
  friend ScalarFunction operator*(double c, const ScalarFunction& f);

 private:
  std::string id_;
  Eval v_, d1_, d2_;
  EvalK dk_;
  EvalLd vld_;
  EvalDiff dv_;
  bool periodic_ = true;
  double lo_ = 0.0, hi_ = 1.0;
};

/// u_n(x) = n^{-a} (1 - cos 2 pi x), the resonant well. Carries exact
/// derivatives of every order.
ScalarFunction cosine_well(const PerturbationParams& p);

/// v_n: the compactly supported bump n^{-a} e(w+m) e(w-m), m = x - 1/2
/// reduced mod 1, e = edge_exp, supported on [1/2-w, 1/2+w].
ScalarFunction bump(const PerturbationParams& p);

/// Same bump with its axis of symmetry moved to eta.
ScalarFunction bump_shifted(const PerturbationParams& p, double eta);

/// Q(x) = q^{-2} P(q x). Preserves period 1. Throws on q == 0.
ScalarFunction rescale(const ScalarFunction& P, int q);

enum class Variant { Integrable, CosineOnly, Full, FullShifted };
std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// Identifies a member of the generating-function family in result files.
struct FamilyDescriptor {
  double alpha = 2.0, lambda = 1.0, a = 1.0;
  int n = 1;
  Variant variant = Variant::Integrable;
  double eta = 0.5;

  /// "alpha=...\nlambda=...\na=...\nn=...\nvariant=...\neta=...\n"
  std::string key_value_block() const;
};

/// Two-point energy h(x, x') = (x - x')^2 / 2 + V(x') with analytic
/// partial derivatives. The perturbation acts on the second argument only,
/// so d12 = -1 identically (uniform twist).
class GeneratingFunction {
 public:
  GeneratingFunction();  // integrable: V = 0
  GeneratingFunction(ScalarFunction potential, FamilyDescriptor desc);

  double value(double x, double xp) const;
  double d1(double x, double xp) const;
  double d2(double x, double xp) const;
  double d11(double, double) const { return 1.0; }
  double d12(double, double) const { return -1.0; }
  double d22(double x, double xp) const;

  /// h(x, xp) - h(y, yp) without forming the two near-equal values. Exact
  /// zero when the bonds coincide.
  double value_diff(double x, double xp, double y, double yp) const;

  const ScalarFunction& potential() const { return potential_; }
  const FamilyDescriptor& descriptor() const { return desc_; }

 private:
  ScalarFunction potential_;
  FamilyDescriptor desc_;
};

double eval_h0(double x, double xp);

/// Assembles the requested family member. eta is only read for
/// Variant::FullShifted.
GeneratingFunction make_family(const PerturbationParams& p, Variant variant,
                               double eta = 0.5);

/// Builds h0 + P(x') for an arbitrary 1-periodic potential.
GeneratingFunction with_potential(ScalarFunction P, FamilyDescriptor desc);

/// The map generated by h: (x, y) -> (x + y, y + V'(x + y)).
/// Both generating equations y = -d1, y' = d2 hold exactly by construction.
class TwistMap {
 public:
  explicit TwistMap(GeneratingFunction h) : h_(std::move(h)) {}
  std::pair<double, double> step(double x, double y) const;
  /// n-fold iterate of (x, y); returns the x-coordinates visited.
  std::vector<double> orbit_x(double x, double y, int steps) const;

 private:
  GeneratingFunction h_;
};

/// Lemma-level admissibility of lambda: the Gevrey norm series of the edge
/// factor converges for weight L once lambda > (2 L^alpha / sin sigma)^p / p,
/// sigma = (pi/4) min(1, 1/p), p = 1/(alpha-1).
struct LambdaAdmissibility {
  double min_lambda;
  bool ok;
};
LambdaAdmissibility check_lambda_admissible(double lambda, double L,
                                            double alpha);

}  // namespace twistlab
