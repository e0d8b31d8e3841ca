#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace twistlab {

/// Neumaier-compensated accumulator in extended precision. All action sums
/// and barrier differences go through this; the quantities of interest sit
/// many orders of magnitude below the individual summands.
class StableSum {
 public:
  void add(long double v) {
    long double t = s_ + v;
    if (std::fabs(s_) >= std::fabs(v))
      c_ += (s_ - t) + v;
    else
      c_ += (v - t) + s_;
    s_ = t;
  }
  double value() const { return static_cast<double>(s_ + c_); }
  long double value_ld() const { return s_ + c_; }

 private:
  long double s_ = 0, c_ = 0;
};

/// Reduce x to the representative of x mod 1 nearest to center.
inline double reduce_near(double x, double center) {
  return x - std::round(x - center);
}

inline double sq(double x) { return x * x; }

/// Solves a tridiagonal system in place (Thomas algorithm).
/// diag/rhs have size n, lower/upper size n-1. Returns false on a
/// vanishing pivot.
bool solve_tridiagonal(std::vector<double>& diag, std::vector<double>& lower,
                       std::vector<double>& upper, std::vector<double>& rhs);

/// Dense LU solve with partial pivoting for the small cyclic systems
/// (periodic orbits couple first and last unknowns, and for q <= 2 the
/// corner entries overlap the band). a is row-major n x n, overwritten.
bool solve_dense(std::vector<double>& a, std::vector<double>& rhs, int n);

/// Smallest eigen-pivot test: returns true iff the symmetric tridiagonal
/// matrix (diag, off) has an LDL^T factorization with all pivots >= -tol.
bool tridiagonal_psd(const std::vector<double>& diag,
                     const std::vector<double>& off, double tol);

/// Finite-difference weights for the k-th derivative at offset 0 on the
/// integer stencil offsets[] (Fornberg's recurrence).
std::vector<double> fd_weights(int k, const std::vector<double>& offsets);

/// Minimizes a smooth one-dimensional function on [lo, hi]: coarse scan,
/// golden-section on the best bracket, then safeguarded Newton on the
/// derivative when one is supplied (with optional exact second
/// derivative). Returns the argmin.
double minimize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, double xtol,
                       const std::function<double(double)>& df = nullptr,
                       const std::function<double(double)>& ddf = nullptr);

/// Runs fn(0..n-1) across `workers` threads. Results must be written to
/// per-index slots so that the outcome is independent of scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

/// Fixed 17-significant-digit formatting used by every CSV/report writer,
/// so outputs are byte-stable across runs and round-trip doubles exactly.
inline std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace twistlab
