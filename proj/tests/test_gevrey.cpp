#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twistlab/gevrey.hpp"

using namespace twistlab;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarFunction one_minus_cos() {
  PerturbationParams p{2.0, 1.0, 1.0, 1};  // amplitude n^{-a} = 1
  return cosine_well(p);
}

TrigPoly random_trig(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> a(degree + 1), b(degree + 1);
  for (int m = 0; m <= degree; ++m) {
    a[m] = U(rng);
    b[m] = U(rng);
  }
  b[0] = 0.0;
  return TrigPoly(a, b);
}

}  // namespace

TEST_CASE("derivative sup: analytic orders of the cosine") {
  ScalarFunction u = one_minus_cos();
  auto d3 = derivative_sup(u, 3);
  CHECK(d3.sup_value == doctest::Approx(std::pow(kTwoPi, 3)).epsilon(1e-10));
  CHECK(d3.method == "analytic");
  CHECK(d3.converged);
}

TEST_CASE("derivative sup: finite differences against the analytic path") {
  ScalarFunction u = one_minus_cos();
  SupOptions fd;
  fd.force_fd = true;
  for (int k : {1, 3, 4, 6}) {
    auto est = derivative_sup(u, k, fd);
    CHECK(est.converged);
    CHECK(est.sup_value ==
          doctest::Approx(std::pow(kTwoPi, k)).epsilon(1e-3));
  }
}

TEST_CASE("derivative sup: constants vanish") {
  ScalarFunction c(
      "const", [](double) { return 0.7; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
  SupOptions fd;
  fd.force_fd = true;
  for (int k : {1, 2, 5}) {
    auto est = derivative_sup(c, k, fd);
    CHECK(est.converged);
    CHECK(est.sup_value == 0.0);
  }
}

TEST_CASE("derivative sup: bump first derivative vs closed-form chain rule") {
  PerturbationParams p{2.0, 1.0, 2.0, 1};
  ScalarFunction v = bump(p);
  auto est = derivative_sup(v, 1);
  // oracle: the analytic first derivative maximized on a dense grid
  double sup = 0.0;
  const int N = 100000;
  for (int j = 0; j < N; ++j)
    sup = std::max(sup, std::fabs(v.deriv(static_cast<double>(j) / N)));
  CHECK(est.sup_value == doctest::Approx(sup).epsilon(0.01));
  // and the FD route agrees with the analytic one
  SupOptions fd;
  fd.force_fd = true;
  auto fde = derivative_sup(v, 1, fd);
  CHECK(fde.converged);
  CHECK(fde.sup_value == doctest::Approx(est.sup_value).epsilon(0.01));
}

TEST_CASE("gevrey norm of the shifted cosine converges to the closed sum") {
  // sum_k L^k / k! * sup|d^k phi| with L = 1/(2 pi): 2 + sum_{k>=1} 1/k!
  ScalarFunction u = one_minus_cos();
  NormEstimate est = gevrey_norm(u, 1.0, 1.0 / kTwoPi, 14);
  CHECK(est.value == doctest::Approx(M_E + 1.0).epsilon(1e-9));
  CHECK(est.tail_bound > 0.0);
  CHECK(est.tail_bound < 1e-10);
  CHECK(est.converged);

  // monotone nondecreasing in the truncation order
  double prev = 0.0;
  for (int kmax : {2, 4, 8, 12}) {
    double val = gevrey_norm(u, 1.0, 1.0 / kTwoPi, kmax).value;
    CHECK(val >= prev);
    prev = val;
  }
}

TEST_CASE("gevrey norm: zero function") {
  CHECK(gevrey_norm(ScalarFunction(), 2.0, 0.5, 8).value == 0.0);
}

TEST_CASE("gevrey norm homogeneity") {
  std::mt19937_64 rng(31);
  TrigPoly t = random_trig(rng, 3);
  ScalarFunction f = t.as_function("t");
  double base = gevrey_norm(f, 1.5, 0.2, 10).value;
  for (double c : {2.0, -3.0}) {
    double scaled = gevrey_norm(c * f, 1.5, 0.2, 10).value;
    CHECK(scaled == doctest::Approx(std::fabs(c) * base).epsilon(1e-9));
  }
}

TEST_CASE("gevrey norm submultiplicativity on random pairs") {
  std::mt19937_64 rng(2024);
  const double alpha = 1.5, L = 0.1;
  for (int trial = 0; trial < 20; ++trial) {
    TrigPoly f = random_trig(rng, 3), g = random_trig(rng, 3);
    TrigPoly fg = f * g;
    double nf = gevrey_norm(f.as_function("f"), alpha, L, 10).value;
    double ng = gevrey_norm(g.as_function("g"), alpha, L, 10).value;
    double nfg = gevrey_norm(fg.as_function("fg"), alpha, L, 10).value;
    CHECK(nfg <= nf * ng + 1e-6);
  }
}

TEST_CASE("trig polynomial product is exact") {
  // (cos)(cos) = 1/2 + 1/2 cos(2.)
  TrigPoly c({0.0, 1.0}, {0.0, 0.0});
  TrigPoly cc = c * c;
  for (double x : {0.0, 0.21, 0.5, 0.83}) {
    double expect = std::cos(kTwoPi * x) * std::cos(kTwoPi * x);
    CHECK(cc(x) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("C^r norms") {
  ScalarFunction u = one_minus_cos();
  CHECK(cr_norm(u, 2) ==
        doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-10));
  ScalarFunction c(
      "const", [](double) { return -0.4; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
  CHECK(cr_norm(c, 3) == doctest::Approx(0.4).epsilon(1e-12));
  // monotone nondecreasing in r
  PerturbationParams p{2.0, 1.0, 2.0, 1};
  ScalarFunction v = bump(p);
  double prev = -1.0;
  for (int r = 0; r <= 3; ++r) {
    double val = cr_norm(v, r);
    CHECK(val >= prev);
    prev = val;
  }
}

TEST_CASE("bump C^r norms stay bounded by the amplitude scale") {
  // ||v_n||_{C^2} * n^a is bounded (and in fact decreasing) along n
  double c1 = 0.0;
  for (int n : {1, 2, 4, 8}) {
    PerturbationParams p{2.0, 1.0, 2.0, n};
    double val = cr_norm(bump(p), 2);
    double scaled = val * std::pow(n, p.a);
    if (n == 1)
      c1 = scaled;
    else
      CHECK(scaled <= c1 * 1.05);
  }
}

TEST_CASE("derivative growth bound for the edge factor") {
  // k = 0 is the empty-product case: sup f <= 1
  auto c0 = verify_cauchy_bound(2.0, 1.0, 0);
  CHECK(c0.holds);
  CHECK(c0.bound == 1.0);
  CHECK(c0.margin >= 1.0);

  // k = 1: compare the observed sup against the closed-form derivative
  // maximized on a dense grid
  auto c1 = verify_cauchy_bound(2.0, 1.0, 1);
  double sup = 0.0;
  for (int j = 1; j <= 200000; ++j) {
    double x = 2.0 * j / 200000.0;
    sup = std::max(sup, std::fabs(edge_exp_d1(2.0, 1.0, x)));
  }
  CHECK(c1.observed == doctest::Approx(sup).epsilon(1e-3));
  CHECK(c1.holds);

  auto c3 = verify_cauchy_bound(2.0, 1.0, 3);
  CHECK(c3.holds);
  CHECK(c3.margin > 1.0);
  CHECK(c3.converged);
}

TEST_CASE("rescaled perturbation norms") {
  PerturbationParams base{2.0, 1.0, 1.0, 1};
  // q = 1, r = 0: no rescaling at all
  PerturbationParams p1 = base;
  p1.n = 1;
  double direct = cr_norm(cosine_well(p1) + bump(p1), 0);
  CHECK(perturbation_cr_decay(1, base, 0) ==
        doctest::Approx(direct).epsilon(1e-12));

  // cosine part dominates: q^{-2} q^{-a} (2 pi)^r q^r
  for (int q : {2, 4}) {
    double val = perturbation_cr_decay(q, base, 2);
    double expect = std::pow(static_cast<double>(q), -1.0 - 2.0 + 2.0) *
                    std::pow(kTwoPi, 2.0);
    CHECK(val == doctest::Approx(expect).epsilon(1e-6));
  }

  // boundedness of q^{a+2-r} * ||Q_q||_{C^r} along a doubling sequence
  double lo = 1e300, hi = 0.0;
  for (int q : {2, 4, 8, 16}) {
    double val = perturbation_cr_decay(q, base, 2);
    double scaled = std::pow(static_cast<double>(q), 1.0) * val;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("non-convergent extrapolation is flagged, not hidden") {
  // a lacunary cosine sum: high derivatives are dominated by the top
  // frequency and no double-precision step resolves them
  auto val = [](double x) {
    double s = 0.0, amp = 1.0, freq = 1.0;
    for (int m = 0; m <= 12; ++m) {
      s += amp * std::cos(kTwoPi * freq * x);
      amp /= 4.0;
      freq *= 3.0;
    }
    return s;
  };
  auto d1 = [](double x) {
    double s = 0.0, amp = 1.0, freq = 1.0;
    for (int m = 0; m <= 12; ++m) {
      s += -amp * kTwoPi * freq * std::sin(kTwoPi * freq * x);
      amp /= 4.0;
      freq *= 3.0;
    }
    return s;
  };
  auto d2 = [](double x) {
    double s = 0.0, amp = 1.0, freq = 1.0;
    for (int m = 0; m <= 12; ++m) {
      s += -amp * kTwoPi * kTwoPi * freq * freq * std::cos(kTwoPi * freq * x);
      amp /= 4.0;
      freq *= 3.0;
    }
    return s;
  };
  ScalarFunction w("lacunary", val, d1, d2);
  SupOptions fd;
  fd.force_fd = true;
  fd.grid = 4096;
  auto est = derivative_sup(w, 9, fd);
  CHECK_FALSE(est.converged);
  CHECK_THROWS_AS(gevrey_norm(w, 2.0, 0.5, 9, fd), GevreyError);
}

TEST_CASE("input validation") {
  ScalarFunction u = one_minus_cos();
  CHECK_THROWS_AS(gevrey_norm(u, 1.0, -1.0, 4), GevreyError);
  CHECK_THROWS_AS(cr_norm(u, -1), GevreyError);
}
