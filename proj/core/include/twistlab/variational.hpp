#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twistlab/model.hpp"

namespace twistlab {

/// Rotation symbol: irrational omega, rational p/q, or one-sided p/q+-.
struct RotationSymbol {
  enum class Tag { Irrational, Rational, RationalPlus, RationalMinus };
  Tag tag = Tag::Rational;
  double omega = 0.0;  // irrational case
  long p = 0, q = 1;   // rational cases, gcd(p, q) = 1

  static RotationSymbol irrational(double w);
  static RotationSymbol rational(long p, long q);
  static RotationSymbol rational_plus(long p, long q);
  static RotationSymbol rational_minus(long p, long q);
  static RotationSymbol zero_plus() { return rational_plus(0, 1); }

  double value() const;
  std::string str() const;  // "p/q", "p/q+", "p/q-", or decimal
  static RotationSymbol parse(const std::string& s);
};

struct FixedBoundary {
  double left, right;
};
struct PeriodicBoundary {
  long p, q;
};
struct HeteroclinicBoundary {
  double limit_low = 0.0, limit_high = 1.0;
};
using BoundaryPolicy =
    std::variant<FixedBoundary, PeriodicBoundary, HeteroclinicBoundary>;

/// A finite window of a configuration. values[j] is the position at index
/// first_index + j. For periodic boundaries the window holds one period
/// (x_{i+q} = x_i + p); for heteroclinic windows the first and last entries
/// are pinned to the limits.
struct Configuration {
  std::vector<double> values;
  long first_index = 0;
  BoundaryPolicy boundary = FixedBoundary{0.0, 0.0};
  std::optional<RotationSymbol> symbol;

  int size() const { return static_cast<int>(values.size()); }
  bool monotone() const;
  /// Value at arbitrary index, using the boundary policy to extend the
  /// window (periodic lift / constant limits).
  double at(long i) const;
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;
  double action = 0.0;
  bool monotone = false;
  int window = 0;
  bool converged = false;
  bool psd_certified = false;  // second variation PSD at the solution
};

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Action of a fixed-endpoint segment: sum of h over consecutive pairs.
double action(const GeneratingFunction& h, const std::vector<double>& segment);

/// Gradient of the action with respect to each interior point of a
/// fixed-endpoint window, or all points of a periodic window:
/// g_i = d2 h(x_{i-1}, x_i) + d1 h(x_i, x_{i+1}).
std::vector<double> action_gradient(const GeneratingFunction& h,
                                    const Configuration& c);

/// Damped Newton on the stationarity system with fixed endpoints. init
/// may be empty (linear interpolation). The tridiagonal Jacobian is solved
/// directly each step; falls back to gradient descent with Armijo
/// backtracking when the Newton step fails to decrease the action.
std::pair<Configuration, SolveReport> minimize_segment(
    const GeneratingFunction& h, double left, double right, int window,
    std::vector<double> init = {}, double tol = 1e-10);

/// Minimal (p, q)-periodic configuration. Multi-started over seed phases;
/// returns the lowest-action stationary solution whose periodic Hessian is
/// positive semidefinite.
std::pair<Configuration, SolveReport> minimize_periodic(
    const GeneratingFunction& h, long p, long q, std::vector<double> init = {},
    double tol = 1e-10);

enum class HeteroclinicSign { Plus, Minus };

struct HeteroclinicOptions {
  int initial_window = 64;
  int max_window = 1 << 14;
  double tail_tol = 1e-12;
  double limit_low = 0.0, limit_high = 1.0;
};

/// Monotone configuration limiting on the two boundary values (increasing
/// for Plus). The window doubles until the edge values are within tail_tol
/// of the limits and the action stops moving. Both centerings of the
/// transition are solved and the lower action kept, so the result is the
/// minimal one, not the saddle.
std::pair<Configuration, SolveReport> minimize_heteroclinic(
    const GeneratingFunction& h, HeteroclinicSign sign, double tol = 1e-10,
    const HeteroclinicOptions& opts = {});

/// (x_right - x_left) / (window - 1); exact p/q for periodic windows.
double rotation_number(const Configuration& c);

/// Number of sign changes of c1 - c2 over the common window. A touch
/// without sign change does not count; differences within touch_tol are
/// touches (minimal configurations hugging the same well differ by less
/// than double rounding there, and those signs are noise).
int crossing_count(const Configuration& c1, const Configuration& c2,
                   double touch_tol = 1e-12);

/// Finds eta in [3/8, 5/8] whose distance to every configuration point
/// exceeds the bump support half-width. Throws SolveError if no such gap
/// exists (which would contradict the step lower bound upstream).
double gap_search(const Configuration& c, const PerturbationParams& p);

}  // namespace twistlab
