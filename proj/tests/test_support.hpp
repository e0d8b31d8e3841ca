#pragma once

// Shared oracles for the test suites. Everything here is deliberately
// independent of the library's solver paths: plain finite differences,
// exhaustive search, and unconstrained coordinate descent built only on
// h(x, x') evaluations.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "twistlab/model.hpp"

namespace oracle {

// Central finite difference of the segment action with respect to each
// interior coordinate.
inline std::vector<double> action_gradient_fd(
    const twistlab::GeneratingFunction& h, const std::vector<double>& x,
    double step = 1e-6) {
  auto act = [&](const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i + 1 < y.size(); ++i) s += h.value(y[i], y[i + 1]);
    return s;
  };
  std::vector<double> g(x.size() > 2 ? x.size() - 2 : 0);
  for (size_t i = 1; i + 1 < x.size(); ++i) {
    std::vector<double> yp = x, ym = x;
    yp[i] += step;
    ym[i] -= step;
    g[i - 1] = (act(yp) - act(ym)) / (2.0 * step);
  }
  return g;
}

// Unconstrained cyclic coordinate descent on a fixed-endpoint segment,
// golden-section per coordinate. Slow and simple.
inline std::vector<double> polish_segment(const twistlab::GeneratingFunction& h,
                                          std::vector<double> x,
                                          double move_tol = 1e-11,
                                          int max_sweeps = 20000) {
  auto one_dim = [&](double xl, double xr, double t0) {
    double a = t0 - 0.5, b = t0 + 0.5;
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    auto f = [&](double t) { return h.value(xl, t) + h.value(t, xr); };
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-13) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = f(x2);
      }
    }
    return 0.5 * (a + b);
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double mv = 0.0;
    for (size_t i = 1; i + 1 < x.size(); ++i) {
      double t = one_dim(x[i - 1], x[i + 1], x[i]);
      mv = std::max(mv, std::fabs(t - x[i]));
      x[i] = t;
    }
    if (mv < move_tol) break;
  }
  return x;
}

// Same idea on one period of a (p, q)-periodic configuration.
inline std::vector<double> polish_periodic(const twistlab::GeneratingFunction& h,
                                           long p, long q,
                                           std::vector<double> x,
                                           double move_tol = 1e-12,
                                           int max_sweeps = 50000) {
  auto lift = [&](const std::vector<double>& y, long i) {
    long r = ((i % q) + q) % q;
    long k = (i - r) / q;
    return y[r] + static_cast<double>(k * p);
  };
  auto one_dim = [&](double xl, double xr, double t0) {
    double a = t0 - 0.6, b = t0 + 0.6;
    const double gr = 0.6180339887498949;
    auto f = [&](double t) { return h.value(xl, t) + h.value(t, xr); };
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-14) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = f(x2);
      }
    }
    return 0.5 * (a + b);
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double mv = 0.0;
    for (long i = 0; i < q; ++i) {
      double t = one_dim(lift(x, i - 1), lift(x, i + 1), x[i]);
      mv = std::max(mv, std::fabs(t - x[i]));
      x[i] = t;
    }
    if (mv < move_tol) break;
  }
  return x;
}

// Exhaustive grid search over one period of a (p, q)-periodic
// configuration (q <= 3), g points per coordinate, then the independent
// polisher. Returns the sorted mod-1 representative.
inline std::vector<double> brute_force_periodic(
    const twistlab::GeneratingFunction& h, long p, long q, int g = 1000) {
  const auto& V = h.potential();
  std::vector<double> vtab(g);
  for (int j = 0; j < g; ++j) vtab[j] = V(static_cast<double>(j) / g);
  auto xval = [&](int j) { return static_cast<double>(j) / g; };

  std::vector<int> best(q, 0);
  double bestA = 1e300;
  if (q == 1) {
    for (int j0 = 0; j0 < g; ++j0) {
      double x0 = xval(j0);
      double A = 0.5 * (static_cast<double>(p)) * p + vtab[j0];
      (void)x0;
      if (A < bestA) {
        bestA = A;
        best = {j0};
      }
    }
  } else if (q == 2) {
    for (int j0 = 0; j0 < g; ++j0)
      for (int j1 = 0; j1 < g; ++j1) {
        double x0 = xval(j0), x1 = xval(j1);
        double d0 = x0 - x1, d1 = x1 - (x0 + p);
        double A = 0.5 * (d0 * d0 + d1 * d1) + vtab[j1] + vtab[j0];
        if (A < bestA) {
          bestA = A;
          best = {j0, j1};
        }
      }
  } else {
    for (int j0 = 0; j0 < g; ++j0) {
      double x0 = xval(j0);
      for (int j1 = 0; j1 < g; ++j1) {
        double x1 = xval(j1);
        double b01 = 0.5 * (x0 - x1) * (x0 - x1) + vtab[j1];
        for (int j2 = 0; j2 < g; ++j2) {
          double x2 = xval(j2);
          double d12 = x1 - x2, d20 = x2 - (x0 + p);
          double A = b01 + 0.5 * (d12 * d12 + d20 * d20) + vtab[j2] + vtab[j0];
          if (A < bestA) {
            bestA = A;
            best = {j0, j1, j2};
          }
        }
      }
    }
  }
  std::vector<double> x(q);
  for (long i = 0; i < q; ++i) x[i] = xval(best[i]);
  x = polish_periodic(h, p, q, x);
  for (auto& v : x) v -= std::floor(v);
  std::sort(x.begin(), x.end());
  return x;
}

inline std::vector<double> sorted_mod1(std::vector<double> x) {
  for (auto& v : x) v -= std::floor(v);
  std::sort(x.begin(), x.end());
  return x;
}

// Largest pointwise circular distance between two orbits seen as point
// sets on the circle, minimized over cyclic alignment. A value near 0 at
// the wrap (0.999...) must match one near 1e-9.
inline double circular_mismatch(std::vector<double> a, std::vector<double> b) {
  a = sorted_mod1(std::move(a));
  b = sorted_mod1(std::move(b));
  if (a.size() != b.size()) return 1.0;
  const size_t n = a.size();
  double best = 1.0;
  for (size_t off = 0; off < n; ++off) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double d = std::fabs(a[i] - b[(i + off) % n]);
      d = std::min(d, 1.0 - d);
      worst = std::max(worst, d);
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace oracle
