#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "twistlab/variational.hpp"

using namespace twistlab;

namespace {

GeneratingFunction hbar(int n, double a = 1.0) {
  PerturbationParams p{2.0, 1.0, a, n};
  return make_family(p, Variant::CosineOnly);
}

GeneratingFunction integrable() {
  PerturbationParams p{2.0, 1.0, 1.0, 1};
  return make_family(p, Variant::Integrable);
}

double stationarity_sup(const GeneratingFunction& h, const Configuration& c) {
  double worst = 0.0;
  for (double g : action_gradient(h, c)) worst = std::max(worst, std::fabs(g));
  return worst;
}

}  // namespace

TEST_CASE("rotation symbols") {
  RotationSymbol s = RotationSymbol::rational(2, 4);
  CHECK(s.p == 1);
  CHECK(s.q == 2);
  CHECK(s.str() == "1/2");
  CHECK(RotationSymbol::parse("1/2+").tag == RotationSymbol::Tag::RationalPlus);
  CHECK(RotationSymbol::parse("0/1-").tag == RotationSymbol::Tag::RationalMinus);
  CHECK(RotationSymbol::parse("0.618").tag == RotationSymbol::Tag::Irrational);
  CHECK(RotationSymbol::zero_plus().str() == "0/1+");
  CHECK_THROWS_AS(RotationSymbol::rational(1, 0), std::invalid_argument);
}

TEST_CASE("segment action") {
  GeneratingFunction h0 = integrable();
  CHECK(action(h0, {0.0, 0.5, 1.0}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(action(h0, {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(action(h0, {0.3, 0.3}) == 0.0);
  std::vector<double> too_short{0.5};
  CHECK_THROWS_AS(action(h0, too_short), std::invalid_argument);
}

TEST_CASE("action gradient: stationary examples") {
  GeneratingFunction h0 = integrable();
  Configuration lin;
  for (int i = 0; i < 12; ++i) lin.values.push_back(0.618 * i);
  lin.boundary = FixedBoundary{lin.values.front(), lin.values.back()};
  for (double g : action_gradient(h0, lin)) CHECK(std::fabs(g) < 1e-12);

  GeneratingFunction hb = hbar(3);
  Configuration zero;
  zero.values.assign(9, 0.0);
  zero.boundary = FixedBoundary{0.0, 0.0};
  for (double g : action_gradient(hb, zero)) CHECK(std::fabs(g) < 1e-15);
}

TEST_CASE("action gradient matches finite differences") {
  GeneratingFunction h = hbar(4);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(10);
    double acc = 0.0;
    for (auto& v : x) {
      acc += 0.2 * U(rng);
      v = acc;
    }
    Configuration c;
    c.values = x;
    c.boundary = FixedBoundary{x.front(), x.back()};
    auto ga = action_gradient(h, c);
    auto gf = oracle::action_gradient_fd(h, x);
    double scale = 1.0;
    for (double g : ga) scale = std::max(scale, std::fabs(g));
    for (size_t i = 0; i < ga.size(); ++i)
      CHECK(std::fabs(ga[i] - gf[i]) / scale < 1e-6);
  }
}

TEST_CASE("segment minimizer: integrable equal spacing") {
  GeneratingFunction h0 = integrable();
  auto [c, rep] = minimize_segment(h0, 0.0, 1.0, 11);
  CHECK(rep.converged);
  CHECK(rep.action == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(rep.psd_certified);
  for (int i = 0; i < 11; ++i)
    CHECK(c.values[i] == doctest::Approx(i / 10.0).epsilon(1e-12));
}

TEST_CASE("segment minimizer: perturbation only adds action") {
  auto [c, rep] = minimize_segment(hbar(2), 0.0, 1.0, 11);
  CHECK(rep.action >= 0.05);
}

TEST_CASE("segment minimizer matches slow coordinate-descent oracle") {
  // The transition can pin at any bond; adjacent basins differ by ~1e-13
  // in action, so basin choice between two descent methods is noise.
  // Starting both from the same near-solution profile makes the
  // comparison well posed: within a basin the minimizer is unique.
  GeneratingFunction h = hbar(4);
  const int w = 21;
  std::vector<double> init(w);
  for (int i = 0; i < w; ++i) init[i] = (i < 5) ? 0.1 : 0.9;
  init[0] = 0.1;
  init[w - 1] = 0.9;
  auto [c, rep] = minimize_segment(h, 0.1, 0.9, w, init);
  CHECK(rep.converged);
  CHECK(rep.psd_certified);
  auto ref = oracle::polish_segment(h, init, 1e-12);
  CHECK(rep.action == doctest::Approx(action(h, ref)).epsilon(1e-9));
  for (int i = 0; i < w; ++i)
    CHECK(std::fabs(c.values[i] - ref[i]) < 1e-8);
}

TEST_CASE("segment minimizer input validation") {
  GeneratingFunction h0 = integrable();
  CHECK_THROWS_AS(minimize_segment(h0, 0.0, 1.0, 2), std::invalid_argument);
  std::vector<double> bad{0.5, 0.5, 1.0};  // does not respect left endpoint
  CHECK_THROWS_AS(minimize_segment(h0, 0.0, 1.0, 3, bad),
                  std::invalid_argument);
}

TEST_CASE("periodic minimizer: integrable degenerate family") {
  GeneratingFunction h0 = integrable();
  auto [c, rep] = minimize_periodic(h0, 1, 3);
  CHECK(rep.converged);
  CHECK(rep.action == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(rotation_number(c) == 1.0 / 3.0);
  CHECK(stationarity_sup(h0, c) < 1e-10);
}

TEST_CASE("periodic minimizer: well bottom at rotation number 0") {
  auto [c, rep] = minimize_periodic(hbar(3), 0, 1);
  CHECK(rep.converged);
  CHECK(std::fabs(c.values[0]) < 1e-10);
  CHECK(rep.action == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.psd_certified);
}

TEST_CASE("periodic minimizer avoids the symmetric saddle") {
  // the rigid rotation (0, 1/2) is stationary for the cosine family but
  // not minimal; the minimizer straddles the well
  GeneratingFunction h = hbar(4);
  auto [c, rep] = minimize_periodic(h, 1, 2);
  CHECK(rep.converged);
  CHECK(rep.psd_certified);
  auto ref = oracle::brute_force_periodic(h, 1, 2, 400);
  CHECK(oracle::circular_mismatch(c.values, ref) < 1e-6);
}

TEST_CASE("periodic minimizer: brute-force equivalence at q = 3") {
  GeneratingFunction h = hbar(4);
  auto [c, rep] = minimize_periodic(h, 1, 3);
  CHECK(rep.converged);
  auto ref = oracle::brute_force_periodic(h, 1, 3, 150);
  CHECK(oracle::circular_mismatch(c.values, ref) < 1e-6);
}

TEST_CASE("periodic minimizer input validation") {
  GeneratingFunction h0 = integrable();
  CHECK_THROWS_AS(minimize_periodic(h0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(minimize_periodic(h0, 2, 4), std::invalid_argument);
}

TEST_CASE("heteroclinic minimizer: monotone interior orbit") {
  for (int n : {4, 8}) {
    auto [c, rep] = minimize_heteroclinic(hbar(n), HeteroclinicSign::Plus);
    CHECK(rep.converged);
    CHECK(rep.monotone);
    CHECK(c.monotone());
    CHECK(rep.action > 0.0);
    for (int i = 1; i + 1 < c.size(); ++i) {
      CHECK(c.values[i] > 0.0);
      CHECK(c.values[i] < 1.0);
    }
    CHECK(c.values.front() == 0.0);
    CHECK(c.values.back() == 1.0);
  }
}

TEST_CASE("heteroclinic minimizer: decreasing branch") {
  auto [c, rep] = minimize_heteroclinic(hbar(4), HeteroclinicSign::Minus);
  CHECK(rep.converged);
  CHECK(rep.monotone);
  CHECK(c.values.front() == 1.0);
  CHECK(c.values.back() == 0.0);
}

TEST_CASE("heteroclinic step bound on the middle band") {
  for (int n : {4, 8, 16}) {
    auto [c, rep] = minimize_heteroclinic(hbar(n), HeteroclinicSign::Plus);
    double bound = 0.5 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i + 1 < c.size(); ++i)
      if (c.values[i] >= 0.25 && c.values[i] <= 0.75)
        CHECK(c.values[i + 1] - c.values[i] >= bound);
  }
}

TEST_CASE("heteroclinic double-step inequality against the well") {
  for (int n : {4, 8, 16}) {
    PerturbationParams p{2.0, 1.0, 1.0, n};
    GeneratingFunction h = make_family(p, Variant::CosineOnly);
    ScalarFunction u = cosine_well(p);
    auto [c, rep] = minimize_heteroclinic(h, HeteroclinicSign::Plus);
    for (int i = 1; i + 1 < c.size(); ++i) {
      double lhs = c.values[i + 1] - c.values[i - 1];
      double rhs = 2.0 * std::sqrt(u(c.values[i]));
      CHECK(lhs >= rhs - 1e-10);
    }
  }
}

TEST_CASE("heteroclinic window growth cap is an error, not a hang") {
  GeneratingFunction h0 = integrable();
  HeteroclinicOptions opts;
  opts.max_window = 512;
  CHECK_THROWS_AS(minimize_heteroclinic(h0, HeteroclinicSign::Plus, 1e-10, opts),
                  SolveError);
}

TEST_CASE("rotation numbers") {
  Configuration c;
  for (int i = 0; i < 40; ++i) c.values.push_back(0.3 + 0.618 * i);
  c.boundary = FixedBoundary{c.values.front(), c.values.back()};
  CHECK(rotation_number(c) == doctest::Approx(0.618).epsilon(1e-12));

  auto [orb, rep] = minimize_periodic(hbar(4), 1, 3);
  CHECK(rotation_number(orb) == 1.0 / 3.0);

  auto [k, krep] = minimize_heteroclinic(hbar(4), HeteroclinicSign::Plus);
  CHECK(rotation_number(k) == doctest::Approx(1.0 / (k.size() - 1)).epsilon(1e-12));
  CHECK(rotation_number(k) < 0.05);
}

TEST_CASE("crossing counts") {
  GeneratingFunction h = hbar(4);
  auto [c1, r1] = minimize_segment(h, 0.1, 0.9, 31);
  Configuration c2 = c1;
  for (auto& v : c2.values) v += 0.1;
  CHECK(crossing_count(c1, c2) == 0);
  CHECK(crossing_count(c1, c1) == 0);

  // crossed endpoints force exactly one crossing of minimizers
  auto [c3, r3] = minimize_segment(h, 0.3, 0.7, 31);
  CHECK(crossing_count(c1, c3) == 1);
}

TEST_CASE("aubry ordering of heteroclinics") {
  // the solver's result and its index-shift are both minimal; as diagrams
  // they never cross
  auto [k, rep] = minimize_heteroclinic(hbar(4), HeteroclinicSign::Plus);
  Configuration shifted = k;
  shifted.first_index -= 1;
  int crossings = crossing_count(k, shifted);
  CHECK(crossings <= 1);

  // re-solving gives the identical minimizer
  auto [k2, rep2] = minimize_heteroclinic(hbar(4), HeteroclinicSign::Plus);
  bool same = k.size() == k2.size();
  double dsup = 0.0;
  if (same)
    for (int i = 0; i < k.size(); ++i)
      dsup = std::max(dsup, std::fabs(k.values[i] - k2.values[i]));
  CHECK(same);
  CHECK(dsup < 1e-8);
}

TEST_CASE("gap search clears the bump support") {
  for (int n : {4, 8}) {
    PerturbationParams p{2.0, 1.0, 1.0, n};
    auto [k, rep] = minimize_heteroclinic(hbar(n), HeteroclinicSign::Plus);
    double eta = gap_search(k, p);
    CHECK(eta >= 3.0 / 8.0);
    CHECK(eta <= 5.0 / 8.0);
    double w = p.support_half_width();
    for (double x : k.values) CHECK(std::fabs(x - eta) > w);
    ScalarFunction vs = bump_shifted(p, eta);
    for (double x : k.values) CHECK(vs(x) == 0.0);
  }
}

TEST_CASE("gap search avoids a point sitting exactly at 1/2") {
  PerturbationParams p{2.0, 1.0, 1.0, 4};
  Configuration c;
  c.values = {0.1, 0.5, 0.9};
  c.boundary = FixedBoundary{0.1, 0.9};
  double eta = gap_search(c, p);
  CHECK(eta != 0.5);
  CHECK(std::fabs(eta - 0.5) > p.support_half_width());
}

TEST_CASE("rescaling conjugacy for stationary configurations") {
  PerturbationParams p2{2.0, 1.0, 1.0, 2};
  ScalarFunction P = cosine_well(p2) + bump(p2);
  FamilyDescriptor d{2.0, 1.0, 1.0, 2, Variant::Full, 0.5};
  GeneratingFunction hP = with_potential(P, d);

  for (int q : {2, 3}) {
    GeneratingFunction hQ = with_potential(rescale(P, q), d);

    // periodic input
    auto [c, rep] = minimize_periodic(hQ, 1, 3, {}, 1e-12);
    CHECK(rep.converged);
    Configuration scaled;
    for (double v : c.values) scaled.values.push_back(q * v);
    scaled.boundary = PeriodicBoundary{q, 3};
    CHECK(stationarity_sup(hP, scaled) < 1e-10);
    CHECK(rotation_number(scaled) ==
          doctest::Approx(q * rotation_number(c)).epsilon(1e-15));

    // heteroclinic input between adjacent wells of the rescaled system
    HeteroclinicOptions opts;
    opts.limit_high = 1.0 / q;
    auto [k, krep] = minimize_heteroclinic(hQ, HeteroclinicSign::Plus, 1e-12,
                                           opts);
    CHECK(krep.converged);
    Configuration kscaled;
    for (double v : k.values) kscaled.values.push_back(q * v);
    kscaled.first_index = k.first_index;
    kscaled.boundary = HeteroclinicBoundary{0.0, 1.0};
    CHECK(stationarity_sup(hP, kscaled) < 1e-10);
  }
}
