#include "twistlab/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "twistlab/numerics.hpp"

namespace twistlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Localization grid for the sup. Periodic functions get a uniform grid on
// [0, 1); interval functions whose left end sits near a flat edge get a
// geometric/linear hybrid so small-x structure is resolved.
std::vector<double> sup_grid(const ScalarFunction& f, int n) {
  std::vector<double> xs;
  xs.reserve(n);
  if (f.periodic()) {
    for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(i) / n);
    return xs;
  }
  double lo = f.lo(), hi = f.hi();
  if (lo > 0.0 && hi / lo > 100.0) {
    double split = hi / 10.0;
    int half = n / 2;
    double ratio = std::pow(split / lo, 1.0 / (half - 1));
    double x = lo;
    for (int i = 0; i < half; ++i) {
      xs.push_back(x);
      x *= ratio;
    }
    for (int i = 0; i < n - half; ++i)
      xs.push_back(split + (hi - split) * (i + 1) / (n - half));
  } else {
    for (int i = 0; i < n; ++i)
      xs.push_back(lo + (hi - lo) * (i + 0.5) / n);
  }
  return xs;
}

double grid_step(const ScalarFunction& f, int n) {
  return (f.periodic() ? 1.0 : f.hi() - f.lo()) / n;
}

struct Stencil {
  std::vector<double> offsets;
  std::vector<double> weights;
};

Stencil make_stencil(int k) {
  int half = (k + 8) / 2;
  Stencil s;
  for (int o = -half; o <= half; ++o) s.offsets.push_back(o);
  s.weights = fd_weights(k, s.offsets);
  return s;
}

// FD value of the k-th derivative at x with step h. Uses the extended
// precision evaluator when the function provides one; the stencil
// combination is always accumulated in extended precision.
double fd_apply(const ScalarFunction& f, const Stencil& st, int k, double x,
                double h) {
  long double acc = 0.0L, comp = 0.0L;
  if (f.has_ld()) {
    for (size_t j = 0; j < st.offsets.size(); ++j) {
      long double term = static_cast<long double>(st.weights[j]) *
                         f.value_ld(static_cast<long double>(x) +
                                    static_cast<long double>(st.offsets[j]) *
                                        static_cast<long double>(h));
      long double t = acc + term;
      comp += (fabsl(acc) >= fabsl(term)) ? (acc - t) + term : (term - t) + acc;
      acc = t;
    }
  } else {
    for (size_t j = 0; j < st.offsets.size(); ++j) {
      long double term =
          static_cast<long double>(st.weights[j]) * f(x + st.offsets[j] * h);
      long double t = acc + term;
      comp += (fabsl(acc) >= fabsl(term)) ? (acc - t) + term : (term - t) + acc;
      acc = t;
    }
  }
  return static_cast<double>((acc + comp) / powl(static_cast<long double>(h),
                                                 static_cast<long double>(k)));
}

double analytic_deriv(const ScalarFunction& f, int k, double x) {
  if (f.has_exact_deriv()) return f.exact_deriv(k, x);
  switch (k) {
    case 0: return f(x);
    case 1: return f.deriv(x);
    case 2: return f.deriv2(x);
    default: throw GevreyError("no analytic derivative of order " +
                               std::to_string(k));
  }
}

bool has_analytic(const ScalarFunction& f, int k) {
  return k <= 2 || f.has_exact_deriv();
}

double grid_sup(const std::function<double(double)>& g,
                const std::vector<double>& xs, double step, double lo,
                double hi, int workers) {
  std::vector<double> vals(xs.size());
  parallel_for(static_cast<int>(xs.size()), workers,
               [&](int i) { vals[i] = std::fabs(g(xs[i])); });
  size_t best = 0;
  for (size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[best]) best = i;
  // One refinement pass around the observed maximizer.
  double a = std::max(lo, xs[best] - step);
  double b = std::min(hi, xs[best] + step);
  double xr = minimize_scalar([&](double x) { return -std::fabs(g(x)); }, a, b,
                              1e-12);
  return std::max(vals[best], std::fabs(g(xr)));
}

}  // namespace

DerivativeSup derivative_sup(const ScalarFunction& phi, int k,
                             const SupOptions& opts) {
  DerivativeSup out;
  out.order = k;
  out.grid = opts.grid;
  const double lo = phi.periodic() ? 0.0 : phi.lo();
  const double hi = phi.periodic() ? 1.0 : phi.hi();

  if (!opts.force_fd && has_analytic(phi, k)) {
    auto g = [&](double x) { return analytic_deriv(phi, k, x); };
    auto xs = sup_grid(phi, opts.grid);
    auto xs2 = sup_grid(phi, opts.grid / 2);
    double s1 = grid_sup(g, xs, grid_step(phi, opts.grid), lo, hi, opts.workers);
    double s2 =
        grid_sup(g, xs2, grid_step(phi, opts.grid / 2), lo, hi, opts.workers);
    out.sup_value = std::max(s1, s2);
    out.method = "analytic";
    double m = std::max({std::fabs(s1), std::fabs(s2), 1e-300});
    out.disagreement = std::fabs(s1 - s2) / m;
    out.converged = out.disagreement <= 0.05;
    return out;
  }

  if (k == 0) {
    auto xs = sup_grid(phi, opts.grid);
    out.sup_value = grid_sup([&](double x) { return phi(x); }, xs,
                             grid_step(phi, opts.grid), lo, hi, opts.workers);
    out.method = "analytic";
    return out;
  }

  // Constant functions make the ladder diverge by pure rounding; detect
  // them up front, the answer is exactly zero.
  {
    auto xs = sup_grid(phi, 257);
    double ref = phi(xs[0]), dev = 0.0, scale = std::fabs(ref);
    for (double x : xs) {
      dev = std::max(dev, std::fabs(phi(x) - ref));
      scale = std::max(scale, std::fabs(phi(x)));
    }
    if (dev <= 1e-14 * (1.0 + scale)) {
      out.sup_value = 0.0;
      out.method = "analytic";
      return out;
    }
  }

  Stencil st = make_stencil(k);
  const int n = std::min(opts.grid, 8192);
  auto xs = sup_grid(phi, n);
  const double step = grid_step(phi, n);

  std::vector<double> sup_at_h(opts.ladder_len);
  std::vector<double> arg_at_h(opts.ladder_len);
  for (int j = 0; j < opts.ladder_len; ++j) {
    double h = opts.ladder_h0 / std::pow(2.0, j);
    std::vector<double> vals(xs.size());
    parallel_for(static_cast<int>(xs.size()), opts.workers, [&](int i) {
      vals[i] = std::fabs(fd_apply(phi, st, k, xs[i], h));
    });
    size_t best = 0;
    for (size_t i = 1; i < vals.size(); ++i)
      if (vals[i] > vals[best]) best = i;
    double a = std::max(phi.periodic() ? -0.5 : lo, xs[best] - step);
    double b = std::min(phi.periodic() ? 1.5 : hi, xs[best] + step);
    double xr = minimize_scalar(
        [&](double x) { return -std::fabs(fd_apply(phi, st, k, x, h)); }, a, b,
        1e-12);
    sup_at_h[j] = std::max(vals[best], std::fabs(fd_apply(phi, st, k, xr, h)));
    arg_at_h[j] = xr;
  }

  // Richardson between adjacent rungs, then accept the closest triple.
  std::vector<double> R(opts.ladder_len - 1);
  for (int j = 0; j + 1 < opts.ladder_len; ++j)
    R[j] = (256.0 * sup_at_h[j + 1] - sup_at_h[j]) / 255.0;
  int bi = 0;
  double bestdis = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 2 < static_cast<int>(R.size()); ++i) {
    double mx = std::max({R[i], R[i + 1], R[i + 2]});
    double mn = std::min({R[i], R[i + 1], R[i + 2]});
    double m = std::max(std::fabs(mx), 1e-300);
    double dis = (mx - mn) / m;
    if (dis < bestdis) {
      bestdis = dis;
      bi = i;
    }
  }
  out.sup_value = R[bi + 1];
  out.disagreement = bestdis;
  out.converged = bestdis <= 0.05;
  std::ostringstream m;
  m << "fd8(h=" << opts.ladder_h0 / std::pow(2.0, bi + 1) << ")";
  out.method = m.str();
  out.grid = n;
  return out;
}

NormEstimate gevrey_norm(const ScalarFunction& phi, double alpha, double L,
                         int kmax, const SupOptions& opts) {
  if (kmax < 0 || L <= 0.0)
    throw GevreyError("gevrey_norm: need kmax >= 0 and L > 0");
  NormEstimate est;
  est.truncation_order = kmax;
  est.grid_size = opts.grid;
  StableSum sum;
  double t_prev = 0.0, t_last = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    DerivativeSup ds = derivative_sup(phi, k, opts);
    if (!ds.converged)
      throw GevreyError("gevrey_norm: derivative estimate failed at k=" +
                        std::to_string(k) + " (disagreement " +
                        std::to_string(ds.disagreement) + ")");
    double lw = k * alpha * std::log(L) - alpha * std::lgamma(k + 1.0);
    double term = std::exp(lw) * ds.sup_value;
    sum.add(term);
    t_prev = t_last;
    t_last = term;
  }
  est.value = sum.value();
  if (kmax >= 1 && t_prev > 0.0) {
    double rho = t_last / t_prev;
    if (rho < 1.0) {
      est.tail_bound = t_last * rho / (1.0 - rho);
    } else {
      est.tail_bound = std::numeric_limits<double>::infinity();
      est.converged = false;
    }
  }
  return est;
}

CauchyCheck verify_cauchy_bound(double alpha, double lambda, int k,
                                const SupOptions& opts) {
  CauchyCheck c;
  c.k = k;
  double p = 1.0 / (alpha - 1.0);
  double sigma = M_PI / 4.0 * std::min(1.0, 1.0 / p);
  if (k == 0) {
    c.bound = 1.0;
  } else {
    c.bound = std::pow(2.0 / std::sin(sigma), k) *
              std::pow(k / (lambda * p * M_E), k / p) *
              std::tgamma(k + 1.0);
  }
  ScalarFunction edge(
      "edge", [alpha, lambda](double x) { return edge_exp(alpha, lambda, x); },
      [alpha, lambda](double x) { return edge_exp_d1(alpha, lambda, x); },
      [alpha, lambda](double x) { return edge_exp_d2(alpha, lambda, x); });
  edge.with_ld([alpha, lambda](long double x) {
    return edge_exp_ld(alpha, lambda, x);
  });
  edge.on_interval(1e-6, 2.0);
  DerivativeSup ds = derivative_sup(edge, k, opts);
  c.observed = ds.sup_value;
  c.converged = ds.converged;
  c.margin = c.observed > 0.0 ? c.bound / c.observed
                              : std::numeric_limits<double>::infinity();
  c.holds = c.converged && c.margin >= 1.0;
  return c;
}

double cr_norm(const ScalarFunction& phi, int r, const SupOptions& opts) {
  if (r < 0) throw GevreyError("cr_norm: r must be nonnegative");
  double m = 0.0;
  for (int k = 0; k <= r; ++k) {
    DerivativeSup ds = derivative_sup(phi, k, opts);
    if (!ds.converged)
      throw GevreyError("cr_norm: derivative estimate failed at k=" +
                        std::to_string(k));
    m = std::max(m, ds.sup_value);
  }
  return m;
}

double perturbation_cr_decay(int q, const PerturbationParams& base, int r,
                             const SupOptions& opts) {
  PerturbationParams p = base;
  p.n = q;
  ScalarFunction P = cosine_well(p) + bump(p);
  return cr_norm(rescale(P, q), r, opts);
}

TrigPoly::TrigPoly(std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs)
    : a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  if (a_.empty()) a_.push_back(0.0);
  b_.resize(a_.size(), 0.0);
}

double TrigPoly::operator()(double x) const { return deriv(0, x); }

double TrigPoly::deriv(int k, double x) const {
  double s = (k == 0) ? a_[0] : 0.0;
  for (size_t m = 1; m < a_.size(); ++m) {
    double am = a_[m], bm = b_[m];
    double f = std::pow(kTwoPi * m, k);
    // each derivative maps (a, b) -> (b, -a) up to the frequency factor
    double ar = am, br = bm;
    for (int i = 0; i < k % 4; ++i) {
      double t = ar;
      ar = br;
      br = -t;
    }
    s += f * (ar * std::cos(kTwoPi * m * x) + br * std::sin(kTwoPi * m * x));
  }
  return s;
}

double TrigPoly::deriv_sup(int k) const {
  const int n = 4096;
  double best = 0.0;
  int bi = 0;
  for (int i = 0; i < n; ++i) {
    double v = std::fabs(deriv(k, static_cast<double>(i) / n));
    if (v > best) {
      best = v;
      bi = i;
    }
  }
  double a = (bi - 1.0) / n, b = (bi + 1.0) / n;
  double xr = minimize_scalar(
      [&](double x) { return -std::fabs(deriv(k, x)); }, a, b, 1e-14);
  return std::max(best, std::fabs(deriv(k, xr)));
}

TrigPoly TrigPoly::operator*(const TrigPoly& other) const {
  // convolution in the complex exponential basis
  int d1 = degree(), d2 = other.degree();
  int d = d1 + d2;
  std::vector<std::complex<double>> c1(2 * d1 + 1), c2(2 * d2 + 1),
      cp(2 * d + 1, 0.0);
  auto pack = [](const std::vector<double>& a, const std::vector<double>& b,
                 std::vector<std::complex<double>>& c, int deg) {
    c[deg] = a[0];
    for (int m = 1; m <= deg; ++m) {
      c[deg + m] = std::complex<double>(a[m] / 2.0, -b[m] / 2.0);
      c[deg - m] = std::conj(c[deg + m]);
    }
  };
  pack(a_, b_, c1, d1);
  pack(other.a_, other.b_, c2, d2);
  for (int i = 0; i <= 2 * d1; ++i)
    for (int j = 0; j <= 2 * d2; ++j) cp[i + j] += c1[i] * c2[j];
  std::vector<double> ao(d + 1), bo(d + 1, 0.0);
  ao[0] = cp[d].real();
  for (int m = 1; m <= d; ++m) {
    ao[m] = 2.0 * cp[d + m].real();
    bo[m] = -2.0 * cp[d + m].imag();
  }
  return TrigPoly(ao, bo);
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
  std::vector<double> a = a_, b = b_;
  if (other.a_.size() > a.size()) {
    a.resize(other.a_.size(), 0.0);
    b.resize(other.a_.size(), 0.0);
  }
  for (size_t m = 0; m < other.a_.size(); ++m) {
    a[m] += other.a_[m];
    b[m] += other.b_[m];
  }
  return TrigPoly(a, b);
}

ScalarFunction TrigPoly::as_function(const std::string& id) const {
  TrigPoly self = *this;
  ScalarFunction f(
      id, [self](double x) { return self.deriv(0, x); },
      [self](double x) { return self.deriv(1, x); },
      [self](double x) { return self.deriv(2, x); });
  f.with_exact_deriv([self](int k, double x) { return self.deriv(k, x); });
  return f;
}

}  // namespace twistlab
