#include "twistlab/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "twistlab/numerics.hpp"

namespace twistlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
}  // namespace

double PerturbationParams::support_half_width() const {
  return 1.0 / (8.0 * std::pow(static_cast<double>(n), a / 2.0));
}

double PerturbationParams::amplitude() const {
  return std::pow(static_cast<double>(n), -a);
}

void PerturbationParams::validate() const {
  if (!(alpha > 1.0))
    throw std::invalid_argument("perturbation: alpha must exceed 1");
  if (!(lambda > 0.0))
    throw std::invalid_argument("perturbation: lambda must be positive");
  if (!(a > 0.0)) throw std::invalid_argument("perturbation: a must be positive");
  if (n < 1) throw std::invalid_argument("perturbation: n must be a positive integer");
  double w = support_half_width();
  if (!(w > 0.0 && w <= 0.125 + 1e-15))
    throw std::invalid_argument("perturbation: support half-width out of (0, 1/8]");
}

double edge_exp(double alpha, double lambda, double x) {
  if (x <= 0.0) return 0.0;
  double p = 1.0 / (alpha - 1.0);
  double e = -lambda * kSqrt2 * std::pow(x, -p);
  return e < -745.0 ? 0.0 : std::exp(e);
}

long double edge_exp_ld(double alpha, double lambda, long double x) {
  if (x <= 0.0L) return 0.0L;
  long double p = 1.0L / (static_cast<long double>(alpha) - 1.0L);
  long double e = -static_cast<long double>(lambda) *
                  1.41421356237309504880168872420977L * powl(x, -p);
  return e < -11300.0L ? 0.0L : expl(e);
}

double edge_exp_d1(double alpha, double lambda, double x) {
  if (x <= 0.0) return 0.0;
  double p = 1.0 / (alpha - 1.0);
  double g = -lambda * kSqrt2 * std::pow(x, -p);
  if (g < -700.0) return 0.0;  // exp underflows before g' can overflow
  double gp = lambda * kSqrt2 * p * std::pow(x, -p - 1.0);
  return std::exp(g) * gp;
}

double edge_exp_d2(double alpha, double lambda, double x) {
  if (x <= 0.0) return 0.0;
  double p = 1.0 / (alpha - 1.0);
  double g = -lambda * kSqrt2 * std::pow(x, -p);
  if (g < -700.0) return 0.0;
  double gp = lambda * kSqrt2 * p * std::pow(x, -p - 1.0);
  double gpp = -lambda * kSqrt2 * p * (p + 1.0) * std::pow(x, -p - 2.0);
  return std::exp(g) * (gp * gp + gpp);
}

ScalarFunction::ScalarFunction()
    : id_("zero"),
      v_([](double) { return 0.0; }),
      d1_([](double) { return 0.0; }),
      d2_([](double) { return 0.0; }) {
  dk_ = [](int, double) { return 0.0; };
  vld_ = [](long double) { return 0.0L; };
}

ScalarFunction::ScalarFunction(std::string id, Eval v, Eval d1, Eval d2)
    : id_(std::move(id)), v_(std::move(v)), d1_(std::move(d1)),
      d2_(std::move(d2)) {}

ScalarFunction& ScalarFunction::with_exact_deriv(EvalK dk) {
  dk_ = std::move(dk);
  return *this;
}

ScalarFunction& ScalarFunction::with_ld(EvalLd vld) {
  vld_ = std::move(vld);
  return *this;
}

ScalarFunction& ScalarFunction::with_diff(EvalDiff dv) {
  dv_ = std::move(dv);
  return *this;
}

ScalarFunction& ScalarFunction::on_interval(double lo, double hi) {
  periodic_ = false;
  lo_ = lo;
  hi_ = hi;
  return *this;
}

ScalarFunction operator+(const ScalarFunction& f, const ScalarFunction& g) {
  ScalarFunction out(
      f.id() + "+" + g.id(), [f, g](double x) { return f(x) + g(x); },
      [f, g](double x) { return f.deriv(x) + g.deriv(x); },
      [f, g](double x) { return f.deriv2(x) + g.deriv2(x); });
  if (f.has_exact_deriv() && g.has_exact_deriv())
    out.with_exact_deriv([f, g](int k, double x) {
      return f.exact_deriv(k, x) + g.exact_deriv(k, x);
    });
  if (f.has_ld() && g.has_ld())
    out.with_ld([f, g](long double x) { return f.value_ld(x) + g.value_ld(x); });
  out.with_diff([f, g](double x, double y) { return f.diff(x, y) + g.diff(x, y); });
  out.periodic_ = f.periodic_ && g.periodic_;
  out.lo_ = std::min(f.lo_, g.lo_);
  out.hi_ = std::max(f.hi_, g.hi_);
  return out;
}

ScalarFunction operator*(double c, const ScalarFunction& f) {
  ScalarFunction out(
      "scaled:" + f.id(), [c, f](double x) { return c * f(x); },
      [c, f](double x) { return c * f.deriv(x); },
      [c, f](double x) { return c * f.deriv2(x); });
  if (f.has_exact_deriv())
    out.with_exact_deriv(
        [c, f](int k, double x) { return c * f.exact_deriv(k, x); });
  if (f.has_ld())
    out.with_ld([c, f](long double x) {
      return static_cast<long double>(c) * f.value_ld(x);
    });
  out.with_diff([c, f](double x, double y) { return c * f.diff(x, y); });
  out.periodic_ = f.periodic_;
  out.lo_ = f.lo_;
  out.hi_ = f.hi_;
  return out;
}

ScalarFunction cosine_well(const PerturbationParams& p) {
  p.validate();
  const double amp = p.amplitude();
  ScalarFunction f(
      "u_" + std::to_string(p.n),
      [amp](double x) {
        double s = std::sin(M_PI * x);
        return 2.0 * amp * s * s;  // = amp*(1 - cos 2 pi x), stable near 0
      },
      [amp](double x) { return amp * kTwoPi * std::sin(kTwoPi * x); },
      [amp](double x) { return amp * kTwoPi * kTwoPi * std::cos(kTwoPi * x); });
  f.with_exact_deriv([amp](int k, double x) {
    if (k == 0) {
      double s = std::sin(M_PI * x);
      return 2.0 * amp * s * s;
    }
    double c = amp * std::pow(kTwoPi, k);
    switch (k % 4) {
      case 1: return c * std::sin(kTwoPi * x);
      case 2: return c * std::cos(kTwoPi * x);
      case 3: return -c * std::sin(kTwoPi * x);
      default: return -c * std::cos(kTwoPi * x);
    }
  });
  f.with_ld([amp](long double x) {
    long double s = sinl(3.14159265358979323846264338327950L * x);
    return 2.0L * static_cast<long double>(amp) * s * s;
  });
  // u(x) - u(y) = 2 amp sin(pi(x+y)) sin(pi(x-y)), exact to relative
  // precision however close x and y are
  f.with_diff([amp](double x, double y) {
    return 2.0 * amp * std::sin(M_PI * (x + y)) * std::sin(M_PI * (x - y));
  });
  return f;
}

namespace {

// Bump profile as a function of the signed offset m from the symmetry
// axis, reduced to the nearest period.
struct BumpKernel {
  double alpha, lambda, amp, w, center;

  double offset(double x) const { return reduce_near(x - center, 0.0); }

  double value(double x) const {
    double m = offset(x);
    if (std::fabs(m) >= w) return 0.0;
    return amp * edge_exp(alpha, lambda, w + m) * edge_exp(alpha, lambda, w - m);
  }
  double d1(double x) const {
    double m = offset(x);
    if (std::fabs(m) >= w) return 0.0;
    double fa = edge_exp(alpha, lambda, w + m);
    double fb = edge_exp(alpha, lambda, w - m);
    double fa1 = edge_exp_d1(alpha, lambda, w + m);
    double fb1 = edge_exp_d1(alpha, lambda, w - m);
    return amp * (fa1 * fb - fa * fb1);
  }
  double d2(double x) const {
    double m = offset(x);
    if (std::fabs(m) >= w) return 0.0;
    double fa = edge_exp(alpha, lambda, w + m);
    double fb = edge_exp(alpha, lambda, w - m);
    double fa1 = edge_exp_d1(alpha, lambda, w + m);
    double fb1 = edge_exp_d1(alpha, lambda, w - m);
    double fa2 = edge_exp_d2(alpha, lambda, w + m);
    double fb2 = edge_exp_d2(alpha, lambda, w - m);
    return amp * (fa2 * fb - 2.0 * fa1 * fb1 + fa * fb2);
  }
  long double value_ld(long double x) const {
    long double m = x - static_cast<long double>(center);
    m -= roundl(m);
    if (fabsl(m) >= static_cast<long double>(w)) return 0.0L;
    long double wl = w;
    return static_cast<long double>(amp) * edge_exp_ld(alpha, lambda, wl + m) *
           edge_exp_ld(alpha, lambda, wl - m);
  }
};

ScalarFunction make_bump(const PerturbationParams& p, double center,
                         std::string id) {
  p.validate();
  BumpKernel k{p.alpha, p.lambda, p.amplitude(), p.support_half_width(),
               center};
  ScalarFunction f(
      std::move(id), [k](double x) { return k.value(x); },
      [k](double x) { return k.d1(x); }, [k](double x) { return k.d2(x); });
  f.with_ld([k](long double x) { return k.value_ld(x); });
  return f;
}

}  // namespace

ScalarFunction bump(const PerturbationParams& p) {
  return make_bump(p, 0.5, "v_" + std::to_string(p.n));
}

ScalarFunction bump_shifted(const PerturbationParams& p, double eta) {
  return make_bump(p, eta, "v_" + std::to_string(p.n) + "@" + format17(eta));
}

ScalarFunction rescale(const ScalarFunction& P, int q) {
  if (q == 0) throw std::invalid_argument("rescale: q must be nonzero");
  const double qd = q;
  ScalarFunction out(
      "rescale" + std::to_string(q) + ":" + P.id(),
      [P, qd](double x) { return P(qd * x) / (qd * qd); },
      [P, qd](double x) { return P.deriv(qd * x) / qd; },
      [P, qd](double x) { return P.deriv2(qd * x); });
  if (P.has_exact_deriv())
    out.with_exact_deriv([P, qd](int k, double x) {
      return std::pow(qd, k - 2) * P.exact_deriv(k, qd * x);
    });
  if (P.has_ld())
    out.with_ld([P, qd](long double x) {
      long double ql = qd;
      return P.value_ld(ql * x) / (ql * ql);
    });
  out.with_diff([P, qd](double x, double y) {
    return P.diff(qd * x, qd * y) / (qd * qd);
  });
  return out;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Integrable: return "integrable";
    case Variant::CosineOnly: return "cosine-only";
    case Variant::Full: return "full";
    case Variant::FullShifted: return "full-shifted";
  }
  return "integrable";
}

Variant variant_from_string(const std::string& s) {
  if (s == "integrable") return Variant::Integrable;
  if (s == "cosine-only") return Variant::CosineOnly;
  if (s == "full") return Variant::Full;
  if (s == "full-shifted") return Variant::FullShifted;
  throw std::invalid_argument("unknown family variant: " + s);
}

std::string FamilyDescriptor::key_value_block() const {
  std::ostringstream os;
  os << "alpha=" << format17(alpha) << "\n"
     << "lambda=" << format17(lambda) << "\n"
     << "a=" << format17(a) << "\n"
     << "n=" << n << "\n"
     << "variant=" << to_string(variant) << "\n"
     << "eta=" << format17(eta) << "\n";
  return os.str();
}

GeneratingFunction::GeneratingFunction() = default;

GeneratingFunction::GeneratingFunction(ScalarFunction potential,
                                       FamilyDescriptor desc)
    : potential_(std::move(potential)), desc_(desc) {}

double GeneratingFunction::value(double x, double xp) const {
  return 0.5 * sq(x - xp) + potential_(xp);
}
double GeneratingFunction::d1(double x, double xp) const { return x - xp; }
double GeneratingFunction::d2(double x, double xp) const {
  return (xp - x) + potential_.deriv(xp);
}
double GeneratingFunction::d22(double, double xp) const {
  return 1.0 + potential_.deriv2(xp);
}

double GeneratingFunction::value_diff(double x, double xp, double y,
                                      double yp) const {
  if (x == y && xp == yp) return 0.0;
  double dA = x - xp, dB = y - yp;
  double quad = 0.5 * (dA + dB) * ((x - y) - (xp - yp));
  return quad + potential_.diff(xp, yp);
}

double eval_h0(double x, double xp) { return 0.5 * sq(x - xp); }

GeneratingFunction make_family(const PerturbationParams& p, Variant variant,
                               double eta) {
  p.validate();
  FamilyDescriptor d{p.alpha, p.lambda, p.a, p.n, variant, eta};
  switch (variant) {
    case Variant::Integrable:
      return GeneratingFunction(ScalarFunction(), d);
    case Variant::CosineOnly:
      return GeneratingFunction(cosine_well(p), d);
    case Variant::Full:
      return GeneratingFunction(cosine_well(p) + bump(p), d);
    case Variant::FullShifted:
      return GeneratingFunction(cosine_well(p) + bump_shifted(p, eta), d);
  }
  throw std::invalid_argument("make_family: invalid variant tag");
}

GeneratingFunction with_potential(ScalarFunction P, FamilyDescriptor desc) {
  return GeneratingFunction(std::move(P), desc);
}

std::pair<double, double> TwistMap::step(double x, double y) const {
  double xp = x + y;
  return {xp, y + h_.potential().deriv(xp)};
}

std::vector<double> TwistMap::orbit_x(double x, double y, int steps) const {
  std::vector<double> xs;
  xs.reserve(steps + 1);
  xs.push_back(x);
  for (int i = 0; i < steps; ++i) {
    auto [xn, yn] = step(x, y);
    x = xn;
    y = yn;
    xs.push_back(x);
  }
  return xs;
}

LambdaAdmissibility check_lambda_admissible(double lambda, double L,
                                            double alpha) {
  double p = 1.0 / (alpha - 1.0);
  double sigma = M_PI / 4.0 * std::min(1.0, 1.0 / p);
  double min_lambda =
      std::pow(2.0 * std::pow(L, alpha) / std::sin(sigma), p) / p;
  return {min_lambda, lambda > min_lambda};
}

}  // namespace twistlab
