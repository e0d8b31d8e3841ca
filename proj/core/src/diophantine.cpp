#include "twistlab/diophantine.hpp"

#include <algorithm>
#include <cmath>

namespace twistlab {

namespace {

// factorials through 5! are all that liouville_sample needs
long long fact(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::vector<Convergent> from_quotients(const std::vector<long>& a,
                                       long double omega) {
  std::vector<Convergent> cs;
  long long pm2 = 1, pm1 = 0;  // p_{-1}, p_0 conventions: p_{-1}=1, q_{-1}=0
  long long qm2 = 0, qm1 = 1;
  for (long ak : a) {
    long long p = ak * pm1 + pm2;
    long long q = ak * qm1 + qm2;
    Convergent c;
    c.p = p;
    c.q = q;
    c.error = static_cast<double>(
        fabsl(static_cast<long double>(q) * omega - static_cast<long double>(p)));
    cs.push_back(c);
    pm2 = pm1;
    pm1 = p;
    qm2 = qm1;
    qm1 = q;
  }
  return cs;
}

}  // namespace

ContinuedFraction continued_fraction(double omega, int depth) {
  if (!(omega > 0.0 && omega < 1.0))
    throw std::invalid_argument("continued_fraction: omega must lie in (0, 1)");
  depth = std::min(depth, 12);  // precision budget for generic doubles
  ContinuedFraction cf;
  long double x = omega;
  for (int i = 0; i < depth; ++i) {
    long double inv = 1.0L / x;
    long a = static_cast<long>(floorl(inv));
    long double rem = inv - static_cast<long double>(a);
    if (a <= 0) {
      cf.terminated = true;
      break;
    }
    cf.quotients.push_back(a);
    if (rem < 1e-12L) {  // remaining fraction indistinguishable from rational
      cf.terminated = true;
      break;
    }
    x = rem;
  }
  return cf;
}

std::vector<Convergent> convergents(double omega, int count) {
  ContinuedFraction cf = continued_fraction(omega, count);
  return from_quotients(cf.quotients, static_cast<long double>(omega));
}

double named_value(NamedOmega w) {
  switch (w) {
    case NamedOmega::GoldenMean: return (std::sqrt(5.0) - 1.0) / 2.0;
    case NamedOmega::Sqrt2Minus1: return std::sqrt(2.0) - 1.0;
  }
  return 0.0;
}

std::vector<Convergent> convergents(NamedOmega w, int count) {
  const long a = w == NamedOmega::GoldenMean ? 1 : 2;
  const long double omega =
      w == NamedOmega::GoldenMean
          ? (sqrtl(5.0L) - 1.0L) / 2.0L
          : sqrtl(2.0L) - 1.0L;
  std::vector<long> quotients;
  // int64 overflow guards: golden-mean q grows like phi^k, Pell like
  // (1+sqrt2)^k; stop one step before the recurrence would wrap
  long long qm2 = 0, qm1 = 1;
  for (int k = 0; k < count; ++k) {
    long long next = a * qm1 + qm2;
    if (next < qm1) break;  // overflow
    quotients.push_back(a);
    qm2 = qm1;
    qm1 = next;
    if (qm1 > (1LL << 61) / (a + 1)) {
      break;
    }
  }
  auto cs = from_quotients(quotients, omega);
  // |q_k omega - p_k| = omega^{k+2} exactly for a purely periodic
  // single-quotient expansion (k = 0 is the convergent with q = a);
  // replaces the cancellation-limited direct value
  for (size_t k = 0; k < cs.size(); ++k)
    cs[k].error = std::exp(static_cast<double>(k + 2) *
                           std::log(static_cast<double>(omega)));
  return cs;
}

ApproximationClass mu_witness_check(const std::vector<Convergent>& conv,
                                    double mu, double C) {
  ApproximationClass out;
  out.mu = mu;
  out.C = C;
  out.tested = static_cast<int>(conv.size());
  for (const auto& c : conv) {
    double bound = C * std::pow(static_cast<double>(c.q), -1.0 - mu);
    if (c.error < bound) out.witnesses.push_back(c);
  }
  return out;
}

ApproximationClass mu_witness_check(double omega, double mu, double C,
                                    int count) {
  return mu_witness_check(convergents(omega, count), mu, C);
}

bool LiouvilleWitness::qualifies(double mu, double C) const {
  // |q omega - p| < C q^{-1-mu}  <=>  log10_error < log10 C - (1+mu) k!
  return log10_error <
         std::log10(C) - (1.0 + mu) * static_cast<double>(log10_q);
}

LiouvilleSample liouville_sample(int terms) {
  if (terms < 1 || terms > 4)
    throw std::invalid_argument(
        "liouville_sample: terms must lie in [1, 4]; 10^{-k!} underflows "
        "past that");
  LiouvilleSample s;
  s.terms = terms;
  double v = 0.0;
  for (int k = 1; k <= terms; ++k) v += std::pow(10.0, -static_cast<double>(fact(k)));
  s.value = v;
  s.log10_tail = -static_cast<double>(fact(terms + 1)) + std::log10(2.0);

  for (int k = 1; k <= terms; ++k) {
    LiouvilleWitness w;
    w.k = k;
    w.log10_q = fact(k);
    // p_k = sum_{j<=k} 10^{k!-j!}: one digit per term
    std::string digits(static_cast<size_t>(fact(k) - 1) + 1, '0');
    for (int j = 1; j <= k; ++j) digits[fact(k) - fact(j)] = '1';
    std::reverse(digits.begin(), digits.end());
    w.p_decimal = digits;
    // error against the full series: 10^{k!-(k+1)!} (1 + 10^{(k+1)!-(k+2)!} + ...)
    double lead = static_cast<double>(fact(k) - fact(k + 1));
    double corr = std::pow(10.0, static_cast<double>(fact(k + 1) - fact(k + 2)));
    w.log10_error = lead + std::log10(1.0 + corr);
    s.witnesses.push_back(std::move(w));
  }
  return s;
}

PipelineBudget pipeline_budget(double alpha, double mu, double delta) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("pipeline_budget: alpha must exceed 1");
  if (mu < 0.0 || delta <= 0.0)
    throw std::invalid_argument("pipeline_budget: need mu >= 0 and delta > 0");
  PipelineBudget b;
  b.epsilon = 2.0 * delta * (alpha - 1.0) / alpha;
  b.a = (2.0 - 2.0 / alpha) * (1.0 + mu) - b.epsilon;
  b.r = b.a + 2.0 - b.epsilon;
  if (!(b.a > 0.0))
    throw std::invalid_argument(
        "pipeline_budget: parameters give a nonpositive amplitude exponent");
  return b;
}

}  // namespace twistlab
