#include "twistlab/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "twistlab/numerics.hpp"

namespace twistlab {

namespace {

long gcd_l(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

// Symmetric dense PSD test via LDL^T pivots.
bool dense_psd(std::vector<double> a, int n, double tol) {
  for (int j = 0; j < n; ++j) {
    double piv = a[j * n + j];
    if (piv < -tol) return false;
    if (std::fabs(piv) < 1e-300) piv = 1e-300;
    for (int r = j + 1; r < n; ++r) {
      double m = a[r * n + j] / piv;
      for (int c = j; c < n; ++c) a[r * n + c] -= m * a[j * n + c];
    }
  }
  return true;
}

}  // namespace

RotationSymbol RotationSymbol::irrational(double w) {
  RotationSymbol s;
  s.tag = Tag::Irrational;
  s.omega = w;
  return s;
}
RotationSymbol RotationSymbol::rational(long p, long q) {
  if (q <= 0) throw std::invalid_argument("rotation symbol: q must be positive");
  long g = gcd_l(p, q);
  if (g == 0) g = 1;
  RotationSymbol s;
  s.tag = Tag::Rational;
  s.p = p / g;
  s.q = q / g;
  return s;
}
RotationSymbol RotationSymbol::rational_plus(long p, long q) {
  RotationSymbol s = rational(p, q);
  s.tag = Tag::RationalPlus;
  return s;
}
RotationSymbol RotationSymbol::rational_minus(long p, long q) {
  RotationSymbol s = rational(p, q);
  s.tag = Tag::RationalMinus;
  return s;
}

double RotationSymbol::value() const {
  if (tag == Tag::Irrational) return omega;
  return static_cast<double>(p) / static_cast<double>(q);
}

std::string RotationSymbol::str() const {
  std::ostringstream os;
  switch (tag) {
    case Tag::Irrational: os << format17(omega); break;
    case Tag::Rational: os << p << "/" << q; break;
    case Tag::RationalPlus: os << p << "/" << q << "+"; break;
    case Tag::RationalMinus: os << p << "/" << q << "-"; break;
  }
  return os.str();
}

RotationSymbol RotationSymbol::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    return irrational(std::stod(s));
  }
  long p = std::stol(s.substr(0, slash));
  std::string rest = s.substr(slash + 1);
  Tag tag = Tag::Rational;
  if (!rest.empty() && (rest.back() == '+' || rest.back() == '-')) {
    tag = rest.back() == '+' ? Tag::RationalPlus : Tag::RationalMinus;
    rest.pop_back();
  }
  long q = std::stol(rest);
  RotationSymbol out = rational(p, q);
  out.tag = tag;
  return out;
}

bool Configuration::monotone() const {
  for (size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) return false;
  return true;
}

double Configuration::at(long i) const {
  long j = i - first_index;
  long m = static_cast<long>(values.size());
  if (j >= 0 && j < m) return values[j];
  if (const auto* per = std::get_if<PeriodicBoundary>(&boundary)) {
    long q = per->q;
    long r = j % q;
    if (r < 0) r += q;
    long k = (j - r) / q;
    return values[r] + static_cast<double>(k * per->p);
  }
  if (const auto* het = std::get_if<HeteroclinicBoundary>(&boundary)) {
    return j < 0 ? het->limit_low : het->limit_high;
  }
  const auto& fb = std::get<FixedBoundary>(boundary);
  return j < 0 ? fb.left : fb.right;
}

double action(const GeneratingFunction& h, const std::vector<double>& seg) {
  if (seg.size() < 2)
    throw std::invalid_argument("action: segment needs at least two points");
  StableSum s;
  for (size_t i = 0; i + 1 < seg.size(); ++i)
    s.add(h.value(seg[i], seg[i + 1]));
  return s.value();
}

std::vector<double> action_gradient(const GeneratingFunction& h,
                                    const Configuration& c) {
  std::vector<double> g;
  if (std::holds_alternative<PeriodicBoundary>(c.boundary)) {
    long q = std::get<PeriodicBoundary>(c.boundary).q;
    g.resize(q);
    for (long i = 0; i < q; ++i) {
      long gi = c.first_index + i;
      g[i] = h.d2(c.at(gi - 1), c.at(gi)) + h.d1(c.at(gi), c.at(gi + 1));
    }
    return g;
  }
  const int m = c.size();
  if (m < 3) return g;
  g.resize(m - 2);
  for (int i = 1; i + 1 < m; ++i)
    g[i - 1] = h.d2(c.values[i - 1], c.values[i]) +
               h.d1(c.values[i], c.values[i + 1]);
  return g;
}

namespace {

// Newton with action-descent damping on the fixed-endpoint system.
// x has m entries; x[0] and x[m-1] are pinned.
SolveReport newton_segment(const GeneratingFunction& h, std::vector<double>& x,
                           double tol, int max_iter = 200) {
  SolveReport rep;
  const int m = static_cast<int>(x.size());
  const int nu = m - 2;
  if (nu <= 0) {
    rep.converged = true;
    rep.residual = 0.0;
    rep.action = action(h, x);
    rep.window = m;
    rep.psd_certified = true;
    return rep;
  }
  auto resid = [&](const std::vector<double>& y, std::vector<double>& F) {
    F.resize(nu);
    double r = 0.0;
    for (int i = 1; i + 1 < m; ++i) {
      F[i - 1] = h.d2(y[i - 1], y[i]) + h.d1(y[i], y[i + 1]);
      r = std::max(r, std::fabs(F[i - 1]));
    }
    return r;
  };
  std::vector<double> F, diag(nu), lower(nu - 1), upper(nu - 1), xt(m);
  double a_cur = action(h, x);
  for (int it = 0; it < max_iter; ++it) {
    double r = resid(x, F);
    rep.iterations = it;
    rep.residual = r;
    if (r <= tol) {
      rep.converged = true;
      break;
    }
    for (int i = 1; i + 1 < m; ++i) {
      diag[i - 1] = h.d22(x[i - 1], x[i]) + h.d11(x[i], x[i + 1]);
      if (i + 2 < m) upper[i - 1] = h.d12(x[i], x[i + 1]);
      if (i > 1) lower[i - 2] = h.d12(x[i - 1], x[i]);
    }
    // Newton with action-descent damping. The step is only taken through
    // a positive definite model: an indefinite second variation gets its
    // diagonal lifted until the factorization pivots are positive, which
    // turns the step into a descent direction instead of a saddle chase.
    double dscale = 1.0;
    for (int i = 0; i < nu; ++i) dscale = std::max(dscale, std::fabs(diag[i]));
    bool accepted = false;
    for (double tau : {0.0, 1e-8, 1e-4, 1e-2, 1.0, 1e2}) {
      std::vector<double> d = diag;
      for (int i = 0; i < nu; ++i) d[i] += tau * dscale;
      // negative tolerance: require strictly positive pivots
      if (!tridiagonal_psd(d, upper, -1e-12)) continue;
      std::vector<double> rhs(nu);
      for (int i = 0; i < nu; ++i) rhs[i] = -F[i];
      std::vector<double> lo = lower, up = upper;
      if (!solve_tridiagonal(d, lo, up, rhs)) continue;
      double t = 1.0;
      for (int half = 0; half < 8; ++half, t *= 0.5) {
        xt = x;
        for (int i = 0; i < nu; ++i) xt[i + 1] += t * rhs[i];
        double a_new = action(h, xt);
        if (a_new <= a_cur + 1e-14 * (1.0 + std::fabs(a_cur))) {
          x = xt;
          a_cur = a_new;
          accepted = true;
          break;
        }
      }
      if (accepted) break;
    }
    if (!accepted) {
      // steepest descent with Armijo backtracking as a last resort
      double g2 = 0.0;
      for (int i = 0; i < nu; ++i) g2 += F[i] * F[i];
      double t = 1.0 / (1.0 + std::sqrt(g2));
      bool ok = false;
      for (int half = 0; half < 40; ++half, t *= 0.5) {
        xt = x;
        for (int i = 0; i < nu; ++i) xt[i + 1] -= t * F[i];
        double a_new = action(h, xt);
        if (a_new <= a_cur - 1e-4 * t * g2) {
          x = xt;
          a_cur = a_new;
          ok = true;
          break;
        }
      }
      if (!ok) {
        rep.converged = rep.residual <= tol;
        break;
      }
    }
  }
  std::vector<double> Ff;
  rep.residual = resid(x, Ff);
  rep.converged = rep.residual <= tol;
  rep.action = a_cur;
  rep.window = m;
  // minimality certificate: second variation PSD on the window
  std::vector<double> dg(nu), off(std::max(nu - 1, 0));
  for (int i = 1; i + 1 < m; ++i) {
    dg[i - 1] = h.d22(x[i - 1], x[i]) + h.d11(x[i], x[i + 1]);
    if (i + 2 < m) off[i - 1] = h.d12(x[i], x[i + 1]);
  }
  rep.psd_certified = tridiagonal_psd(dg, off, 1e-9);
  rep.monotone = std::is_sorted(x.begin(), x.end(),
                                [](double u, double v) { return u <= v; });
  return rep;
}

}  // namespace

std::pair<Configuration, SolveReport> minimize_segment(
    const GeneratingFunction& h, double left, double right, int window,
    std::vector<double> init, double tol) {
  if (window < 3)
    throw std::invalid_argument("minimize_segment: window must be >= 3");
  std::vector<double> x;
  if (!init.empty()) {
    if (static_cast<int>(init.size()) != window)
      throw std::invalid_argument("minimize_segment: init size mismatch");
    if (std::fabs(init.front() - left) > 1e-12 ||
        std::fabs(init.back() - right) > 1e-12)
      throw std::invalid_argument("minimize_segment: init must respect endpoints");
    x = std::move(init);
    x.front() = left;
    x.back() = right;
  } else {
    x.resize(window);
    for (int i = 0; i < window; ++i)
      x[i] = left + (right - left) * i / (window - 1);
  }
  SolveReport rep = newton_segment(h, x, tol);
  // a converged but indefinite solution is a saddle of the action; kick
  // it off the symmetric subspace and descend again
  if (rep.converged && !rep.psd_certified) {
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int attempt = 0; attempt < 4 && !rep.psd_certified; ++attempt) {
      std::vector<double> xk = x;
      double scale = 1e-3 * (attempt + 1);
      for (size_t i = 1; i + 1 < xk.size(); ++i) xk[i] += scale * N(rng);
      SolveReport rk = newton_segment(h, xk, tol);
      if (rk.converged && rk.psd_certified &&
          rk.action <= rep.action + 1e-13) {
        x = std::move(xk);
        rep = rk;
      }
    }
  }
  if (!rep.converged)
    throw SolveError("minimize_segment: solver did not reach tolerance (residual " +
                     format17(rep.residual) + ")");
  Configuration c;
  c.values = std::move(x);
  c.boundary = FixedBoundary{left, right};
  return {std::move(c), rep};
}

namespace {

// Periodic residual / Jacobian on one period with lift x_{i+q} = x_i + p.
struct PeriodicSystem {
  const GeneratingFunction& h;
  long p, q;

  double lift(const std::vector<double>& x, long i) const {
    long r = i % q;
    if (r < 0) r += q;
    long k = (i - r) / q;
    return x[r] + static_cast<double>(k * p);
  }
  double residual(const std::vector<double>& x, std::vector<double>& F) const {
    F.assign(q, 0.0);
    double r = 0.0;
    for (long i = 0; i < q; ++i) {
      F[i] = h.d2(lift(x, i - 1), x[i]) + h.d1(x[i], lift(x, i + 1));
      r = std::max(r, std::fabs(F[i]));
    }
    return r;
  }
  double per_period_action(const std::vector<double>& x) const {
    StableSum s;
    for (long i = 0; i < q; ++i) s.add(h.value(x[i], lift(x, i + 1)));
    return s.value();
  }
  void jacobian(const std::vector<double>& x, std::vector<double>& J) const {
    J.assign(q * q, 0.0);
    for (long i = 0; i < q; ++i) {
      double xm = lift(x, i - 1), xp = lift(x, i + 1);
      J[i * q + i] += h.d11(x[i], xp) + h.d22(xm, x[i]);
      long jn = ((i + 1) % q + q) % q;
      long jp = ((i - 1) % q + q) % q;
      J[i * q + jn] += h.d12(x[i], xp);
      J[i * q + jp] += h.d12(xm, x[i]);
    }
  }
};

}  // namespace

std::pair<Configuration, SolveReport> minimize_periodic(
    const GeneratingFunction& h, long p, long q, std::vector<double> init,
    double tol) {
  if (q <= 0) throw std::invalid_argument("minimize_periodic: q must be positive");
  if (gcd_l(p, q) > 1)
    throw std::invalid_argument("minimize_periodic: p/q must be in lowest terms");
  PeriodicSystem sys{h, p, q};

  auto solve_from = [&](std::vector<double> x, SolveReport& rep) {
    std::vector<double> F, J, rhs;
    double a_cur = sys.per_period_action(x);
    for (int it = 0; it < 300; ++it) {
      double r = sys.residual(x, F);
      rep.iterations = it;
      rep.residual = r;
      if (r <= tol) break;
      sys.jacobian(x, J);
      double dscale = 1.0;
      for (long i = 0; i < q; ++i)
        dscale = std::max(dscale, std::fabs(J[i * q + i]));
      bool accepted = false;
      // descent-safe Newton: lift the diagonal until the model is
      // positive definite, so saddles of the action repel the iteration
      for (double tau : {0.0, 1e-8, 1e-4, 1e-2, 1.0, 1e2}) {
        std::vector<double> A = J;
        for (long i = 0; i < q; ++i) A[i * q + i] += tau * dscale;
        if (!dense_psd(A, static_cast<int>(q), -1e-12)) continue;
        rhs.assign(q, 0.0);
        for (long i = 0; i < q; ++i) rhs[i] = -F[i];
        std::vector<double> Afac = A;
        if (!solve_dense(Afac, rhs, static_cast<int>(q))) continue;
        double t = 1.0;
        for (int half = 0; half < 8; ++half, t *= 0.5) {
          std::vector<double> xt = x;
          for (long i = 0; i < q; ++i) xt[i] += t * rhs[i];
          double at = sys.per_period_action(xt);
          if (at <= a_cur + 1e-14 * (1.0 + std::fabs(a_cur))) {
            x = xt;
            a_cur = at;
            accepted = true;
            break;
          }
        }
        if (accepted) break;
      }
      if (!accepted) {
        double g2 = 0.0;
        for (long i = 0; i < q; ++i) g2 += F[i] * F[i];
        double t = 0.1 / (1.0 + std::sqrt(g2));
        bool ok = false;
        for (int half = 0; half < 40; ++half, t *= 0.5) {
          std::vector<double> xt = x;
          for (long i = 0; i < q; ++i) xt[i] -= t * F[i];
          double at = sys.per_period_action(xt);
          if (at <= a_cur - 1e-4 * t * g2) {
            x = xt;
            a_cur = at;
            ok = true;
            break;
          }
        }
        if (!ok) break;
      }
    }
    std::vector<double> F2;
    rep.residual = sys.residual(x, F2);
    rep.converged = rep.residual <= tol;
    rep.action = a_cur;
    rep.window = static_cast<int>(q);
    std::vector<double> J2;
    sys.jacobian(x, J2);
    rep.psd_certified = dense_psd(J2, static_cast<int>(q), 1e-9);
    return x;
  };

  // A converged but indefinite solution is a saddle of the action (a
  // symmetric seed lands there with a vanishing gradient). Kick it along
  // random directions and descend again.
  auto escape_saddle = [&](std::vector<double> x, SolveReport& rep) {
    std::mt19937_64 rng(9001);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int attempt = 0; attempt < 4 && rep.converged && !rep.psd_certified;
         ++attempt) {
      std::vector<double> xk = x;
      double scale = 1e-3 * (attempt + 1);
      for (auto& v : xk) v += scale * N(rng);
      SolveReport rk;
      auto xs = solve_from(xk, rk);
      if (rk.converged && rk.action <= rep.action + 1e-13) {
        x = xs;
        rep = rk;
      }
    }
    return x;
  };

  std::vector<std::vector<double>> seeds;
  if (!init.empty()) {
    if (static_cast<long>(init.size()) != q)
      throw std::invalid_argument("minimize_periodic: init must have q entries");
    seeds.push_back(std::move(init));
  } else {
    // rigid-rotation seeds over one sub-period of phases
    for (int j = 0; j < 8; ++j) {
      std::vector<double> s(q);
      double phase = static_cast<double>(j) / (8.0 * q);
      for (long i = 0; i < q; ++i)
        s[i] = phase + static_cast<double>(i * p) / q;
      seeds.push_back(std::move(s));
    }
    if (q <= 3) {
      // coarse exhaustive seed: at small q the landscape is cheap to scan
      // and rigid rotations can all sit in the wrong basin
      const int g = q == 3 ? 32 : 64;
      std::vector<int> idx(q, 0);
      std::vector<double> s(q), best_s;
      double best_a = std::numeric_limits<double>::infinity();
      std::function<void(long)> scan = [&](long d) {
        if (d == q) {
          for (long i = 0; i < q; ++i)
            s[i] = static_cast<double>(idx[i]) / g +
                   static_cast<double>(i * p) / q;
          double a = sys.per_period_action(s);
          if (a < best_a) {
            best_a = a;
            best_s = s;
          }
          return;
        }
        for (idx[d] = 0; idx[d] < g; ++idx[d]) scan(d + 1);
      };
      scan(0);
      if (!best_s.empty()) seeds.insert(seeds.begin(), best_s);
    }
  }

  bool have = false;
  std::vector<double> best;
  SolveReport best_rep;
  for (auto& s : seeds) {
    SolveReport rep;
    auto x = solve_from(s, rep);
    if (rep.converged && !rep.psd_certified) x = escape_saddle(x, rep);
    if (!rep.converged) continue;
    bool better = false;
    if (!have) {
      better = true;
    } else if (rep.psd_certified != best_rep.psd_certified) {
      better = rep.psd_certified;
    } else {
      better = rep.action < best_rep.action - 1e-14;
    }
    if (better) {
      best = x;
      best_rep = rep;
      have = true;
    }
  }
  if (!have)
    throw SolveError("minimize_periodic: no seed converged to tolerance");
  // canonical representative: x_0 in [0, 1)
  double shift = std::floor(best[0]);
  for (auto& v : best) v -= shift;

  Configuration c;
  c.values = std::move(best);
  c.boundary = PeriodicBoundary{p, q};
  c.symbol = RotationSymbol::rational(p, q);
  return {std::move(c), best_rep};
}

std::pair<Configuration, SolveReport> minimize_heteroclinic(
    const GeneratingFunction& h, HeteroclinicSign sign, double tol,
    const HeteroclinicOptions& opts) {
  const double lo = opts.limit_low, hi = opts.limit_high;
  const double span = hi - lo;
  double b = std::max(h.potential().deriv2(lo), 0.0);
  double mu = (2.0 + b + std::sqrt(b * b + 4.0 * b)) / 2.0;
  double beta = std::log(std::max(mu, 1.0 + 1e-8));

  auto seed = [&](int M, double center_shift) {
    std::vector<double> x(2 * M + 1);
    for (int j = 0; j <= 2 * M; ++j) {
      double i = j - M - center_shift;
      double t = 0.5 + std::atan(beta * i) / M_PI;
      x[j] = sign == HeteroclinicSign::Plus ? lo + span * t
                                            : hi - span * t;
    }
    x.front() = sign == HeteroclinicSign::Plus ? lo : hi;
    x.back() = sign == HeteroclinicSign::Plus ? hi : lo;
    return x;
  };

  auto embed = [&](const std::vector<double>& prev, int M) {
    // pad the previous window with the limits on both sides
    int Mp = (static_cast<int>(prev.size()) - 1) / 2;
    std::vector<double> x(2 * M + 1);
    double l = prev.front(), r = prev.back();
    for (int j = 0; j <= 2 * M; ++j) {
      int i = j - M;
      if (i < -Mp)
        x[j] = l;
      else if (i > Mp)
        x[j] = r;
      else
        x[j] = prev[i + Mp];
    }
    return x;
  };

  auto solve_centering = [&](double center_shift) {
    int M = std::max(opts.initial_window / 2, 8);
    std::vector<double> x = seed(M, center_shift);
    SolveReport rep;
    double prev_action = 0.0;
    bool have_prev = false;
    while (true) {
      rep = newton_segment(h, x, tol);
      if (!rep.converged)
        throw SolveError("minimize_heteroclinic: window " + std::to_string(2 * M + 1) +
                         " did not converge");
      double edge_l = std::fabs(x[1] - x.front());
      double edge_r = std::fabs(x[x.size() - 2] - x.back());
      bool tails_ok = edge_l < opts.tail_tol && edge_r < opts.tail_tol;
      bool action_ok = have_prev && std::fabs(rep.action - prev_action) < tol * 0.1;
      if (tails_ok && action_ok) break;
      prev_action = rep.action;
      have_prev = true;
      if (2 * (2 * M) + 1 > opts.max_window)
        throw SolveError("minimize_heteroclinic: window growth cap reached at " +
                         std::to_string(2 * M + 1));
      M *= 2;
      x = embed(x, M);
    }
    return std::make_pair(std::move(x), rep);
  };

  // Both centerings of the transition; the discrete system pins the kink,
  // and one of the two is the minimum while the other is the saddle.
  auto [xs, rs] = solve_centering(0.0);
  auto [xb, rb] = solve_centering(0.5);
  bool take_bond = rb.action < rs.action;
  auto& x = take_bond ? xb : xs;
  auto& rep = take_bond ? rb : rs;
  int M = (static_cast<int>(x.size()) - 1) / 2;

  // Doubling overshoots the decay length by orders of magnitude; near the
  // upper limit the tail gaps then fall below the spacing of doubles and
  // the values collapse onto the limit. Trim back to the smallest window
  // whose edge gaps just pass the tail tolerance and re-polish.
  {
    const int n = static_cast<int>(x.size());
    int iL = 1;
    while (iL < n - 1 && std::fabs(x[iL] - x.front()) < opts.tail_tol) ++iL;
    int iR = n - 2;
    while (iR > 0 && std::fabs(x[iR] - x.back()) < opts.tail_tol) --iR;
    int Mn = std::max({M - (iL - 1), (iR + 1) - M, 8});
    if (Mn < M) {
      std::vector<double> xt(x.begin() + (M - Mn), x.begin() + (M + Mn) + 1);
      xt.front() = x.front();
      xt.back() = x.back();
      SolveReport rp = newton_segment(h, xt, tol);
      if (rp.converged) {
        x = std::move(xt);
        rep = rp;
        M = Mn;
      }
    }
  }

  // Tail values below solver resolution are tridiagonal rounding noise.
  // Snap them onto the geometric decay of the stable manifold: the
  // replacement stays within the residual tolerance and restores the
  // strict monotone approach to the limits.
  {
    const double thresh = 1e-14;
    const double l_edge = x.front(), r_edge = x.back();
    double b_l = std::max(h.potential().deriv2(l_edge), 0.0);
    double b_r = std::max(h.potential().deriv2(r_edge), 0.0);
    double mu_l = (2.0 + b_l + std::sqrt(b_l * b_l + 4.0 * b_l)) / 2.0;
    double mu_r = (2.0 + b_r + std::sqrt(b_r * b_r + 4.0 * b_r)) / 2.0;
    const int n = static_cast<int>(x.size());
    auto shrink = [](double gap, double mu) {
      double g = gap / mu;
      if (g == 0.0 || !std::isfinite(g))
        g = std::copysign(std::numeric_limits<double>::min(), gap);
      return g;
    };
    if (mu_l > 1.0) {
      int iL = 1;
      while (iL < n - 1 && std::fabs(x[iL] - l_edge) < thresh) ++iL;
      for (int i = iL - 1; i >= 1; --i)
        x[i] = l_edge + shrink(x[i + 1] - l_edge, mu_l);
    }
    if (mu_r > 1.0) {
      int iR = n - 2;
      while (iR > 0 && std::fabs(x[iR] - r_edge) < thresh) --iR;
      for (int i = iR + 1; i <= n - 2; ++i)
        x[i] = r_edge - shrink(r_edge - x[i - 1], mu_r);
    }
    double rsup = 0.0;
    for (int i = 1; i + 1 < n; ++i)
      rsup = std::max(rsup, std::fabs(h.d2(x[i - 1], x[i]) +
                                      h.d1(x[i], x[i + 1])));
    rep.residual = rsup;
    rep.converged = rsup <= tol;
  }

  Configuration c;
  c.values = std::move(x);
  c.first_index = -M;
  c.boundary = sign == HeteroclinicSign::Plus
                   ? HeteroclinicBoundary{lo, hi}
                   : HeteroclinicBoundary{hi, lo};
  if (lo == 0.0 && hi == 1.0)
    c.symbol = sign == HeteroclinicSign::Plus
                   ? RotationSymbol::rational_plus(0, 1)
                   : RotationSymbol::rational_minus(0, 1);
  rep.monotone = sign == HeteroclinicSign::Plus
                     ? c.monotone()
                     : std::is_sorted(c.values.rbegin(), c.values.rend(),
                                      [](double u, double v) { return u <= v; });
  return {std::move(c), rep};
}

double rotation_number(const Configuration& c) {
  if (const auto* per = std::get_if<PeriodicBoundary>(&c.boundary))
    return static_cast<double>(per->p) / static_cast<double>(per->q);
  if (c.size() < 2)
    throw std::invalid_argument("rotation_number: window too small");
  return (c.values.back() - c.values.front()) / (c.size() - 1);
}

int crossing_count(const Configuration& c1, const Configuration& c2,
                   double touch_tol) {
  long lo = std::max(c1.first_index, c2.first_index);
  long hi = std::min(c1.first_index + c1.size(), c2.first_index + c2.size());
  if (hi <= lo)
    throw std::invalid_argument("crossing_count: windows do not overlap");
  int crossings = 0;
  int last_sign = 0;
  for (long i = lo; i < hi; ++i) {
    double d = c1.at(i) - c2.at(i);
    int s = std::fabs(d) <= touch_tol ? 0 : (d > 0.0 ? 1 : -1);
    if (s == 0) continue;  // touching without sign change is not a crossing
    if (last_sign != 0 && s != last_sign) ++crossings;
    last_sign = s;
  }
  return crossings;
}

double gap_search(const Configuration& c, const PerturbationParams& p) {
  const double w = p.support_half_width();
  const double lo = 3.0 / 8.0, hi = 5.0 / 8.0;
  std::vector<double> pts = c.values;
  std::sort(pts.begin(), pts.end());
  auto clearance = [&](double eta) {
    double d = std::numeric_limits<double>::infinity();
    for (double x : pts) d = std::min(d, std::fabs(x - eta));
    return d;
  };
  std::vector<double> candidates{lo, hi};
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double mid = 0.5 * (pts[i] + pts[i + 1]);
    candidates.push_back(std::clamp(mid, lo, hi));
  }
  double best = lo, best_cl = -1.0;
  for (double eta : candidates) {
    double cl = clearance(eta);
    if (cl > best_cl) {
      best_cl = cl;
      best = eta;
    }
  }
  if (!(best_cl > w))
    throw SolveError("gap_search: no admissible gap in [3/8, 5/8]; clearance " +
                     format17(best_cl) + " vs half-width " + format17(w));
  return best;
}

}  // namespace twistlab
