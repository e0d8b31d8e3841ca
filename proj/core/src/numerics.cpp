#include "twistlab/numerics.hpp"

#include <algorithm>

namespace twistlab {

bool solve_tridiagonal(std::vector<double>& diag, std::vector<double>& lower,
                       std::vector<double>& upper, std::vector<double>& rhs) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) return false;
    double m = lower[i - 1] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) return false;
  rhs[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i)
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
  return true;
}

bool solve_dense(std::vector<double>& a, std::vector<double>& rhs, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) return false;
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double m = a[r * n + col] / a[col * n + col];
      if (m == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= m * a[col * n + c];
      rhs[r] -= m * rhs[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * rhs[c];
    rhs[r] = s / a[r * n + r];
  }
  return true;
}

bool tridiagonal_psd(const std::vector<double>& diag,
                     const std::vector<double>& off, double tol) {
  // LDL^T pivots; a pivot below -tol certifies a negative eigenvalue.
  double d = diag.empty() ? 0.0 : diag[0];
  if (d < -tol) return false;
  for (size_t i = 1; i < diag.size(); ++i) {
    double piv = (std::fabs(d) < 1e-300) ? 1e-300 : d;
    d = diag[i] - off[i - 1] * off[i - 1] / piv;
    if (d < -tol) return false;
  }
  return true;
}

std::vector<double> fd_weights(int k, const std::vector<double>& offsets) {
  const int n = static_cast<int>(offsets.size());
  // Fornberg (1988). d[m][i][j] with the outer two indices flattened.
  std::vector<long double> d(static_cast<size_t>(k + 1) * n * n, 0.0L);
  auto at = [&](int m, int i, int j) -> long double& {
    return d[(static_cast<size_t>(m) * n + i) * n + j];
  };
  at(0, 0, 0) = 1.0L;
  long double c1 = 1.0L;
  for (int i = 1; i < n; ++i) {
    long double c2 = 1.0L;
    for (int j = 0; j < i; ++j) {
      long double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      for (int m = 0; m <= std::min(i, k); ++m)
        at(m, i, j) = (offsets[i] * at(m, i - 1, j) -
                       (m > 0 ? m * at(m - 1, i - 1, j) : 0.0L)) /
                      c3;
    }
    for (int m = 0; m <= std::min(i, k); ++m)
      at(m, i, i) = c1 / c2 *
                    ((m > 0 ? m * at(m - 1, i - 1, i - 1) : 0.0L) -
                     offsets[i - 1] * at(m, i - 1, i - 1));
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = static_cast<double>(at(k, n - 1, j));
  return w;
}

double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double xtol,
                       const std::function<double(double)>& df,
                       const std::function<double(double)>& ddf) {
  if (hi <= lo) return lo;
  // Coarse scan: the objectives here can have several local minima.
  const int kScan = 33;
  double bestx = lo, bestv = f(lo);
  for (int i = 1; i <= kScan; ++i) {
    double x = lo + (hi - lo) * i / kScan;
    double v = f(x);
    if (v < bestv) {
      bestv = v;
      bestx = x;
    }
  }
  double a = std::max(lo, bestx - (hi - lo) / kScan);
  double b = std::min(hi, bestx + (hi - lo) / kScan);
  const double gr = 0.6180339887498949;
  const double gwidth = df ? std::max(xtol, 1e-7) : std::max(xtol, 1e-15);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > gwidth) {
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
  double x = 0.5 * (a + b);
  if (df) {
    // Safeguarded Newton on the derivative, bisecting on the golden
    // bracket when a step leaves it or fails to shrink the gradient.
    double ga = df(a), gb = df(b);
    bool bracket = ga <= 0.0 && gb >= 0.0;
    double g = df(x);
    for (int it = 0; it < 60 && g != 0.0; ++it) {
      double curv;
      if (ddf) {
        curv = ddf(x);
      } else {
        double step = std::max(1e-7, 1e-7 * std::fabs(x));
        curv = (df(std::min(x + step, hi)) - df(std::max(x - step, lo))) /
               (std::min(x + step, hi) - std::max(x - step, lo));
      }
      double xn;
      if (std::isfinite(curv) && curv > 0.0) {
        xn = x - g / curv;
      } else {
        xn = bracket ? 0.5 * (a + b) : x;
      }
      if (bracket && (xn <= a || xn >= b)) xn = 0.5 * (a + b);
      if (!bracket && (xn < lo || xn > hi))
        xn = std::clamp(xn, lo, hi);
      if (xn == x) break;
      double gn = df(xn);
      if (bracket) {
        if (gn <= 0.0)
          a = xn;
        else
          b = xn;
      }
      if (std::fabs(xn - x) < 1e-17 * std::max(1.0, std::fabs(x)) &&
          std::fabs(gn) >= std::fabs(g))
        break;
      x = xn;
      g = gn;
    }
    // endpoint minima: the clamp may bind
    if (f(x) > bestv && (bestx == lo || bestx == hi)) x = bestx;
    if (f(lo) < f(x)) x = lo;
    if (f(hi) < f(x)) x = hi;
  }
  return x;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace twistlab
