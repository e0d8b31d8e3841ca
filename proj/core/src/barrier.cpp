#include "twistlab/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twistlab/numerics.hpp"

namespace twistlab {

namespace {

constexpr double kBracketTol = 1e-9;    // "xi on a minimal point" threshold
constexpr double kSolverTol = 1e-12;    // inner stationarity tolerance
constexpr double kActiveWidth = 1e-12;  // bracket width below which the gap
                                        // has pinched shut

double frac(double x) { return x - std::floor(x); }

// ---------------------------------------------------------------------
// Ground state of rotation number p/q and the in-A detection. xi lies on
// the minimal set iff a periodic solve seeded with the rigid rotation
// through xi stays at xi, stays minimal, and matches the global minimal
// per-period action. This is what makes the integrable family report a
// vanishing barrier everywhere instead of inventing a gap from one orbit
// of a degenerate phase family.
struct PeriodicGround {
  Configuration orbit;
  double action = 0.0;
  bool valid = false;
};

PeriodicGround solve_ground(const GeneratingFunction& h, long p, long q) {
  PeriodicGround g;
  auto [orbit, rep] = minimize_periodic(h, p, q, {}, kSolverTol);
  g.orbit = std::move(orbit);
  g.action = rep.action;
  g.valid = rep.converged;
  return g;
}

bool xi_on_minimal(const GeneratingFunction& h, long p, long q, double xi,
                   const PeriodicGround& ground) {
  std::vector<double> seed(q);
  for (long i = 0; i < q; ++i)
    seed[i] = xi + static_cast<double>(i * p) / static_cast<double>(q);
  try {
    auto [orbit, rep] = minimize_periodic(h, p, q, seed, kSolverTol);
    if (!rep.converged || !rep.psd_certified) return false;
    double drift = std::fabs(reduce_near(orbit.values[0] - xi, 0.0));
    return drift <= kBracketTol && rep.action <= ground.action + 1e-9;
  } catch (const SolveError&) {
    return false;
  }
}

// ---------------------------------------------------------------------
// Clamped cyclic coordinate descent. x holds the working window; fixed[i]
// marks pinned entries (the constraint point and the window edges).
// Each 1-D subproblem is minimized globally on its clamp interval.
struct DescentResult {
  bool converged = false;
  int sweeps = 0;
};

DescentResult clamped_descent(const GeneratingFunction& h,
                              std::vector<double>& x,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi,
                              const std::vector<char>& fixed,
                              const std::function<double()>& left_edge,
                              const std::function<double()>& right_edge,
                              double tol) {
  const int m = static_cast<int>(x.size());
  DescentResult res;
  const int max_sweeps = 5000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < m; ++i) {
      if (fixed[i]) continue;
      double a = lo[i], b = hi[i];
      if (b - a <= kActiveWidth) continue;
      double xl = (i == 0) ? left_edge() : x[i - 1];
      double xr = (i == m - 1) ? right_edge() : x[i + 1];
      auto psi = [&](double t) { return h.value(xl, t) + h.value(t, xr); };
      auto dpsi = [&](double t) { return h.d2(xl, t) + h.d1(t, xr); };
      auto ddpsi = [&](double t) { return h.d22(xl, t) + h.d11(t, xr); };
      double t = minimize_scalar(psi, a, b, 1e-14, dpsi, ddpsi);
      // reject only moves that are uphill beyond evaluation rounding
      double cur = psi(x[i]);
      if (psi(t) > cur + 1e-13 * (1.0 + std::fabs(cur))) t = x[i];
      x[i] = t;
    }
    res.sweeps = sweep + 1;
    // Projected stationarity: interior coordinates need a small gradient,
    // clamped ones need it to point outward.
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      if (fixed[i] || hi[i] - lo[i] <= kActiveWidth) continue;
      double xl = (i == 0) ? left_edge() : x[i - 1];
      double xr = (i == m - 1) ? right_edge() : x[i + 1];
      double g = h.d2(xl, x[i]) + h.d1(x[i], xr);
      if (x[i] - lo[i] <= 1e-12)
        worst = std::max(worst, std::max(0.0, -g));
      else if (hi[i] - x[i] <= 1e-12)
        worst = std::max(worst, std::max(0.0, g));
      else
        worst = std::max(worst, std::fabs(g));
    }
    if (worst <= std::max(tol, 1e-12)) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------
// Plain rational symbol p/q: periodic brackets, one-period excess action.
struct PlainContext {
  long p = 0, q = 1;
  PeriodicGround ground;
};

double plain_rational_value(const GeneratingFunction& h,
                            const PlainContext& ctx, double xi, double tol,
                            BarrierSample* meta) {
  const long p = ctx.p, q = ctx.q;
  const double pd = static_cast<double>(p);
  double xi_r = frac(xi);
  if (xi_on_minimal(h, p, q, xi_r, ctx.ground)) {
    if (meta) meta->converged = true;
    return 0.0;
  }
  // Projections of the translates of the ground orbit near xi; consecutive
  // points of this list bound the complementary interval containing xi.
  struct APoint {
    double v;
    long k, j;
  };
  std::vector<APoint> pts;
  for (long k = 0; k < q; ++k) {
    double base = ctx.ground.orbit.at(k);
    long j0 = static_cast<long>(std::floor(xi_r - base)) - 1;
    for (long j = j0; j <= j0 + 3; ++j)
      pts.push_back({base + static_cast<double>(j), k, j});
  }
  std::sort(pts.begin(), pts.end(),
            [](const APoint& a, const APoint& b) { return a.v < b.v; });
  const APoint* below = nullptr;
  const APoint* above = nullptr;
  for (const auto& pt : pts) {
    if (pt.v <= xi_r) below = &pt;
    if (pt.v >= xi_r && !above) above = &pt;
  }
  if (!below || !above)
    throw SolveError("peierls_rational: bracket construction failed");
  if (xi_r - below->v <= kBracketTol || above->v - xi_r <= kBracketTol) {
    if (meta) meta->converged = true;
    return 0.0;
  }

  auto lower_at = [&](long i) {
    return ctx.ground.orbit.at(i + below->k) + static_cast<double>(below->j);
  };
  auto upper_at = [&](long i) {
    return ctx.ground.orbit.at(i + above->k) + static_cast<double>(above->j);
  };
  std::vector<double> lo(q), hi(q), x(q);
  std::vector<char> fixed(q, 0);
  for (long i = 0; i < q; ++i) {
    lo[i] = lower_at(i);
    hi[i] = upper_at(i);
    x[i] = 0.5 * (lo[i] + hi[i]);
  }
  x[0] = xi_r;
  fixed[0] = 1;
  auto left_edge = [&]() { return x[q - 1] - pd; };
  auto right_edge = [&]() { return x[0] + pd; };
  DescentResult dr =
      clamped_descent(h, x, lo, hi, fixed, left_edge, right_edge, tol);
  StableSum G;
  for (long i = 0; i < q; ++i) {
    double xn = (i + 1 < q) ? x[i + 1] : x[0] + pd;
    double ln = (i + 1 < q) ? lo[i + 1] : lo[0] + pd;
    G.add(h.value_diff(x[i], xn, lo[i], ln));
  }
  if (meta) {
    meta->converged = dr.converged;
    meta->iterations = dr.sweeps;
    meta->window = static_cast<int>(q);
  } else if (!dr.converged) {
    throw SolveError("peierls_rational: coordinate descent stalled");
  }
  return G.value();
}

// ---------------------------------------------------------------------
// One-sided symbols with q = 1. The advance p per step telescopes out of
// every action difference, so p/1+ reduces to the rotation-free system:
// brackets are consecutive index-shifts of the advancing heteroclinic.
struct SignedContext {
  long p_sym = 0, q_sym = 1;
  int sign = +1;
  PeriodicGround ground;  // ground of (p_sym, q_sym), for the detection
  Configuration kink;
  bool have_kink = false;
};

void ensure_kink(const GeneratingFunction& h, SignedContext& ctx) {
  if (ctx.have_kink) return;
  auto [k, rep] = minimize_heteroclinic(
      h, ctx.sign > 0 ? HeteroclinicSign::Plus : HeteroclinicSign::Minus,
      kSolverTol);
  (void)rep;
  ctx.kink = std::move(k);
  ctx.have_kink = true;
}

double signed_q1_value(const GeneratingFunction& h, SignedContext& ctx,
                       double xi, double tol, BarrierSample* meta) {
  double xi_r = frac(xi);
  if (xi_on_minimal(h, ctx.p_sym, ctx.q_sym, xi_r, ctx.ground)) {
    if (meta) meta->converged = true;
    return 0.0;
  }
  ensure_kink(h, ctx);
  const Configuration& K = ctx.kink;
  const long wlo = K.first_index, whi = K.first_index + K.size() - 1;

  // bracketing pair of the ordered family = index-shifts (kk, kk+1)
  long kk = 0;
  bool found = false;
  for (long k = wlo - 1; k <= whi; ++k) {
    double a = K.at(k), b = K.at(k + 1);
    if (std::fabs(xi_r - a) <= kBracketTol ||
        std::fabs(xi_r - b) <= kBracketTol) {
      if (meta) meta->converged = true;
      return 0.0;
    }
    if (xi_r > std::min(a, b) && xi_r < std::max(a, b)) {
      kk = k;
      found = true;
      break;
    }
  }
  if (!found)
    throw SolveError("peierls_rational: one-sided bracket not found");

  // the active window is where the two bracketing shifts actually differ
  long alo = 0, ahi = 0;
  bool any = false;
  for (long i = wlo - kk - 2; i <= whi - kk + 2; ++i) {
    if (std::fabs(K.at(i + kk + 1) - K.at(i + kk)) > kActiveWidth) {
      if (!any) alo = i;
      ahi = i;
      any = true;
    }
  }
  if (!any) throw SolveError("peierls_rational: empty active window");
  const long ilo = std::min(alo - 2, -1L);
  const long ihi = std::max(ahi + 2, 1L);
  const int m = static_cast<int>(ihi - ilo + 1);

  std::vector<double> lo(m), hi(m), x(m);
  std::vector<char> fixed(m, 0);
  for (int j = 0; j < m; ++j) {
    long i = ilo + j;
    double a = K.at(i + kk), b = K.at(i + kk + 1);
    lo[j] = std::min(a, b);
    hi[j] = std::max(a, b);
    x[j] = 0.5 * (lo[j] + hi[j]);
  }
  const int j0 = static_cast<int>(-ilo);
  x[j0] = xi_r;
  fixed[j0] = 1;
  x[0] = K.at(ilo + kk);
  x[m - 1] = K.at(ihi + kk);
  fixed[0] = fixed[m - 1] = 1;
  auto left_edge = [&]() { return K.at(ilo - 1 + kk); };
  auto right_edge = [&]() { return K.at(ihi + 1 + kk); };
  DescentResult dr =
      clamped_descent(h, x, lo, hi, fixed, left_edge, right_edge, tol);

  // windowed excess action against the lower bracket; bonds outside the
  // window coincide with it and contribute exactly zero
  auto at_x = [&](long i) {
    return (i < ilo || i > ihi) ? K.at(i + kk) : x[i - ilo];
  };
  StableSum G;
  for (long i = ilo - 1; i <= ihi; ++i)
    G.add(h.value_diff(at_x(i), at_x(i + 1), K.at(i + kk), K.at(i + kk + 1)));
  if (meta) {
    meta->converged = dr.converged;
    meta->iterations = dr.sweeps;
    meta->window = m;
  } else if (!dr.converged) {
    throw SolveError("peierls_rational: coordinate descent stalled");
  }
  return G.value();
}

void check_zero_plus_pre(const GeneratingFunction& h) {
  const auto& V = h.potential();
  if (std::fabs(V(0.0)) > 1e-12)
    throw std::invalid_argument("peierls_zero_plus: requires V(0) = 0");
  for (int i = 0; i < 64; ++i)
    if (V(i / 64.0) < -1e-12)
      throw std::invalid_argument(
          "peierls_zero_plus: requires a nonnegative potential well at 0");
}

}  // namespace

double peierls_rational(const GeneratingFunction& h, long p, long q, int sign,
                        double xi, double tol) {
  if (q <= 0)
    throw std::invalid_argument("peierls_rational: q must be positive");
  if (sign == 0) {
    PlainContext ctx{p, q, solve_ground(h, p, q)};
    return plain_rational_value(h, ctx, xi, tol, nullptr);
  }
  PeriodicGround ground = solve_ground(h, p, q);
  if (xi_on_minimal(h, p, q, frac(xi), ground)) return 0.0;
  if (q != 1)
    throw SolveError(
        "peierls_rational: one-sided symbols are computed for q = 1 only; "
        "reach p/q+ through the plain symbol or via convergents");
  SignedContext ctx;
  ctx.p_sym = p;
  ctx.q_sym = q;
  ctx.sign = sign > 0 ? +1 : -1;
  ctx.ground = std::move(ground);
  return signed_q1_value(h, ctx, xi, tol, nullptr);
}

ZeroPlusDetail peierls_zero_plus_detail(const GeneratingFunction& h,
                                        double eta, double tol) {
  check_zero_plus_pre(h);
  ZeroPlusDetail out;
  double eta_r = frac(eta);
  if (eta_r <= kBracketTol || 1.0 - eta_r <= kBracketTol) return out;

  PeriodicGround wells = solve_ground(h, 0, 1);
  if (xi_on_minimal(h, 0, 1, eta_r, wells)) return out;

  auto [z, zrep] =
      minimize_heteroclinic(h, HeteroclinicSign::Plus, kSolverTol);
  (void)zrep;
  for (double v : z.values)
    if (std::fabs(v - eta_r) <= kBracketTol) return out;
  out.detected_on_minimal = false;

  // Constrained minimum on the identical window: pinning x_0 = eta splits
  // the system into two independent fixed-endpoint solves whose divergent
  // parts cancel bond by bond against the unconstrained minimizer.
  const int M = (z.size() - 1) / 2;
  double z0 = z.at(0);
  std::vector<double> left(M + 1), right(M + 1);
  for (int j = 0; j <= M; ++j) {
    left[j] = z.values[j] * (eta_r / z0);
    right[j] = 1.0 - (1.0 - z.values[M + j]) * ((1.0 - eta_r) / (1.0 - z0));
  }
  left[0] = 0.0;
  left[M] = eta_r;
  right[0] = eta_r;
  right[M] = 1.0;
  auto [cl, rl] = minimize_segment(h, 0.0, eta_r, M + 1, left, tol);
  auto [cr, rr] = minimize_segment(h, eta_r, 1.0, M + 1, right, tol);
  (void)rl;
  (void)rr;

  auto constrained_at = [&](int j) {
    return j <= M ? cl.values[j] : cr.values[j - M];
  };
  StableSum P;
  for (int j = 0; j < 2 * M; ++j)
    P.add(h.value_diff(constrained_at(j), constrained_at(j + 1), z.values[j],
                       z.values[j + 1]));
  out.value = P.value();

  Configuration con;
  con.values.resize(2 * M + 1);
  for (int j = 0; j <= 2 * M; ++j) con.values[j] = constrained_at(j);
  con.first_index = -M;
  con.boundary = HeteroclinicBoundary{0.0, 1.0};
  out.constrained = std::move(con);
  out.unconstrained = std::move(z);
  return out;
}

double peierls_zero_plus(const GeneratingFunction& h, double eta, double tol) {
  return peierls_zero_plus_detail(h, eta, tol).value;
}

BarrierProfile barrier_profile(const GeneratingFunction& h,
                               const RotationSymbol& symbol, int grid,
                               double tol, int workers) {
  if (symbol.tag == RotationSymbol::Tag::Irrational)
    throw std::invalid_argument(
        "barrier_profile: irrational symbols are reached through their "
        "convergents, not computed directly");
  if (grid < 1)
    throw std::invalid_argument("barrier_profile: grid must be >= 1");
  BarrierProfile prof;
  prof.symbol = symbol;
  prof.tol = tol;
  prof.samples.resize(grid);
  std::vector<double> xs(grid);
  if (grid == 1)
    xs[0] = 0.5;
  else
    for (int i = 0; i < grid; ++i)
      xs[i] = static_cast<double>(i) / (grid - 1);

  const bool plain = symbol.tag == RotationSymbol::Tag::Rational;
  PlainContext pctx;
  SignedContext sctx;
  if (plain) {
    pctx.p = symbol.p;
    pctx.q = symbol.q;
    pctx.ground = solve_ground(h, symbol.p, symbol.q);
  } else {
    sctx.p_sym = symbol.p;
    sctx.q_sym = symbol.q;
    sctx.sign = symbol.tag == RotationSymbol::Tag::RationalPlus ? +1 : -1;
    sctx.ground = solve_ground(h, symbol.p, symbol.q);
    if (symbol.q == 1) {
      try {
        ensure_kink(h, sctx);
      } catch (const SolveError&) {
        // no hyperbolic structure (integrable case): samples either land
        // on the minimal set or get flagged below
      }
    }
  }

  parallel_for(grid, workers, [&](int i) {
    BarrierSample& s = prof.samples[i];
    s.xi = xs[i];
    try {
      if (plain) {
        s.value = plain_rational_value(h, pctx, xs[i], tol, &s);
      } else if (xi_on_minimal(h, symbol.p, symbol.q, frac(xs[i]),
                               sctx.ground)) {
        s.value = 0.0;
        s.converged = true;
      } else if (symbol.q == 1 && sctx.have_kink) {
        SignedContext local = sctx;  // shared kink, per-sample bracket
        s.value = signed_q1_value(h, local, xs[i], tol, &s);
      } else {
        s.converged = false;  // outside the computed range
      }
    } catch (const std::exception&) {
      s.converged = false;
    }
  });
  return prof;
}

CertificateReport destruction_certificate(const GeneratingFunction& h,
                                          const RotationSymbol& symbol,
                                          int grid, double tol, int workers) {
  BarrierProfile prof = barrier_profile(h, symbol, grid, tol, workers);
  CertificateReport rep;
  rep.threshold = 10.0 * tol;
  for (const auto& s : prof.samples) {
    if (!s.converged) {
      ++rep.failed_samples;
      continue;
    }
    ++rep.converged_samples;
    rep.max_barrier = std::max(rep.max_barrier, s.value);
  }
  rep.verdict = rep.max_barrier > rep.threshold ? Verdict::Destroyed
                                                : Verdict::Inconclusive;
  return rep;
}

std::vector<ModulusRow> modulus_experiment(const GeneratingFunction& h,
                                           double eta,
                                           const std::vector<long>& Qs,
                                           double tol) {
  std::vector<ModulusRow> rows;
  double p0 = peierls_zero_plus(h, eta, tol);
  for (long Q : Qs) {
    ModulusRow r;
    r.Q = Q;
    r.p_zero_plus = p0;
    r.p_rational = (Q == 1) ? peierls_rational(h, 0, 1, +1, eta, tol)
                            : peierls_rational(h, 1, Q, 0, eta, tol);
    r.diff = std::fabs(r.p_rational - r.p_zero_plus);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace twistlab
