#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "twistlab/diophantine.hpp"

using namespace twistlab;

TEST_CASE("continued fractions of the classical constants") {
  double golden = named_value(NamedOmega::GoldenMean);
  auto cf = continued_fraction(golden, 10);
  REQUIRE(cf.quotients.size() == 10);
  for (long a : cf.quotients) CHECK(a == 1);
  CHECK_FALSE(cf.terminated);

  auto cf2 = continued_fraction(named_value(NamedOmega::Sqrt2Minus1), 10);
  for (long a : cf2.quotients) CHECK(a == 2);

  auto cfr = continued_fraction(0.25, 10);
  CHECK(cfr.terminated);
  REQUIRE(cfr.quotients.size() == 1);
  CHECK(cfr.quotients[0] == 4);

  CHECK_THROWS_AS(continued_fraction(1.5, 5), std::invalid_argument);
}

TEST_CASE("convergents: golden mean gives ratios of Fibonacci numbers") {
  auto cs = convergents(named_value(NamedOmega::GoldenMean), 8);
  REQUIRE(cs.size() == 8);
  long long fib[10] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (size_t k = 0; k < cs.size(); ++k) {
    CHECK(cs[k].p == fib[k]);
    CHECK(cs[k].q == fib[k + 1]);
  }
}

TEST_CASE("convergents: Pell numbers for sqrt(2) - 1") {
  auto cs = convergents(named_value(NamedOmega::Sqrt2Minus1), 5);
  REQUIRE(cs.size() >= 4);
  CHECK(cs[0].p == 1);
  CHECK(cs[0].q == 2);
  CHECK(cs[1].p == 2);
  CHECK(cs[1].q == 5);
  CHECK(cs[2].p == 5);
  CHECK(cs[2].q == 12);
  CHECK(cs[3].p == 12);
  CHECK(cs[3].q == 29);
}

TEST_CASE("convergent invariants") {
  for (double omega : {named_value(NamedOmega::GoldenMean),
                       named_value(NamedOmega::Sqrt2Minus1), 0.56714329,
                       0.31830988}) {
    auto cs = convergents(omega, 10);
    REQUIRE(cs.size() >= 5);
    for (size_t k = 0; k < cs.size(); ++k) {
      // classical bound and strict error decrease
      CHECK(cs[k].error < 1.0 / cs[k].q);
      if (k > 0) {
        CHECK(cs[k].error < cs[k - 1].error);
        // determinant identity of the recurrence
        long long det =
            cs[k].p * cs[k - 1].q - cs[k - 1].p * cs[k].q;
        CHECK(std::abs(det) == 1);
        // value approach is monotone too
        CHECK(cs[k].error / cs[k].q < cs[k - 1].error / cs[k - 1].q);
      }
    }
  }
}

TEST_CASE("exact error law for the named constants") {
  auto cs = convergents(NamedOmega::GoldenMean, 30);
  double omega = named_value(NamedOmega::GoldenMean);
  REQUIRE(cs.size() == 30);
  for (size_t k = 0; k < cs.size(); ++k) {
    double expect = std::pow(omega, static_cast<double>(k + 2));
    CHECK(cs[k].error == doctest::Approx(expect).epsilon(1e-12));
  }
  // spot check against direct long double arithmetic at small k
  for (size_t k = 0; k < 10; ++k) {
    long double direct = fabsl(static_cast<long double>(cs[k].q) *
                                   static_cast<long double>(omega) -
                               static_cast<long double>(cs[k].p));
    CHECK(cs[k].error == doctest::Approx(static_cast<double>(direct))
                             .epsilon(1e-9));
  }
}

TEST_CASE("mu-approximation witnesses") {
  double golden = named_value(NamedOmega::GoldenMean);
  // every irrational is 0-approximated
  auto all = mu_witness_check(golden, 0.0, 1.0, 12);
  CHECK(all.tested == 12);
  CHECK(all.witnesses.size() == 12);

  // the golden mean is badly approximable: only finitely many qualify
  auto few = mu_witness_check(golden, 0.5, 1.0, 12);
  CHECK(few.witnesses.size() == 3);
  for (const auto& w : few.witnesses)
    CHECK(w.error < std::pow(static_cast<double>(w.q), -1.5));
}

TEST_CASE("liouville partial sums and exact witness exponents") {
  auto s1 = liouville_sample(1);
  CHECK(s1.value == doctest::Approx(0.1).epsilon(1e-15));

  auto s2 = liouville_sample(2);
  CHECK(s2.value == doctest::Approx(0.11).epsilon(1e-15));
  REQUIRE(s2.witnesses.size() == 2);
  const auto& w2 = s2.witnesses[1];
  CHECK(w2.p_decimal == "11");
  CHECK(w2.log10_q == 2);
  // |100 omega - 11| = 1.0001e-4 against the full series
  CHECK(w2.log10_error == doctest::Approx(-4.0).epsilon(1e-4));
  CHECK(w2.log10_error < std::log10(2.0) - 4.0);

  CHECK_THROWS_AS(liouville_sample(0), std::invalid_argument);
  CHECK_THROWS_AS(liouville_sample(5), std::invalid_argument);
}

TEST_CASE("liouville witnesses beat every polynomial rate eventually") {
  auto s = liouville_sample(4);
  REQUIRE(s.witnesses.size() == 4);
  // k = 3 beats mu = 2 (with any constant above 1)
  CHECK(s.witnesses[2].qualifies(2.0, 2.0));
  CHECK_FALSE(s.witnesses[2].qualifies(3.0, 2.0));
  // k = 4 beats mu = 3
  CHECK(s.witnesses[3].qualifies(3.0, 2.0));
  // the qualification exponent margin grows factorially
  for (int k = 1; k <= 4; ++k) {
    const auto& w = s.witnesses[k - 1];
    double slack = std::log10(2.0) - (1.0 + 2.0) * w.log10_q - w.log10_error;
    if (k >= 3) CHECK(slack > 0.0);
  }
  CHECK(s.witnesses[0].p_decimal == "1");
  CHECK(s.witnesses[2].p_decimal == "110001");
}

TEST_CASE("pipeline exponent budget") {
  auto b = pipeline_budget(2.0, 0.0, 0.05);
  CHECK(b.epsilon == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(b.a == doctest::Approx(0.95).epsilon(1e-14));
  CHECK(b.r == doctest::Approx(2.90).epsilon(1e-14));

  auto b2 = pipeline_budget(2.0, 1.0, 0.05);
  CHECK(b2.a == doctest::Approx(1.95).epsilon(1e-14));
  CHECK(b2.r == doctest::Approx(3.90).epsilon(1e-14));

  // large-alpha limit: a -> 2 (1 + mu) - epsilon
  auto binf = pipeline_budget(1e9, 0.5, 0.05);
  CHECK(binf.a == doctest::Approx(3.0 - binf.epsilon).epsilon(1e-6));

  // r stays strictly below the ceiling, with margin epsilon
  for (double alpha : {1.5, 2.0, 3.0})
    for (double mu : {0.0, 0.5, 2.0}) {
      auto bb = pipeline_budget(alpha, mu, 0.05);
      double ceiling = 2.0 + (2.0 - 2.0 / alpha) * (1.0 + mu);
      CHECK(bb.r < ceiling);
      CHECK(bb.r == doctest::Approx(ceiling - 2.0 * bb.epsilon).epsilon(1e-12));
    }

  CHECK_THROWS_AS(pipeline_budget(1.0, 0.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(pipeline_budget(2.0, 0.0, 10.0), std::invalid_argument);
}
