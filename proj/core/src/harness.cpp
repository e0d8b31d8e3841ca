#include "twistlab/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twistlab/numerics.hpp"

namespace twistlab {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

json check_to_json(const CheckResult& c) {
  return json{{"name", c.name},
              {"operation", c.module_op},
              {"tolerance", c.tolerance},
              {"pass", c.pass},
              {"measured", c.measured}};
}

struct ReportWriter {
  json j;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  ReportWriter(const std::string& command) {
    j["schema"] = 1;
    j["command"] = command;
    j["checks"] = json::array();
    j["artifacts"] = json::array();
  }
  void params_from(const ExperimentConfig& cfg) {
    json p = json::object();
    std::istringstream is(cfg.serialize());
    std::string line;
    while (std::getline(is, line)) {
      auto eq = line.find('=');
      if (eq != std::string::npos)
        p[line.substr(0, eq)] = line.substr(eq + 1);
    }
    j["params"] = p;
  }
  void add(RunResult& rr, CheckResult c) {
    j["checks"].push_back(check_to_json(c));
    rr.checks.push_back(std::move(c));
  }
  void artifact(RunResult& rr, const std::string& path) {
    j["artifacts"].push_back(path);
    rr.artifacts.push_back(path);
  }
  void finish(RunResult& rr, const std::string& outdir,
              const ExperimentConfig& cfg) {
    bool all = true;
    for (const auto& c : rr.checks) all = all && c.pass;
    rr.exit_code = all ? 0 : 1;
    j["runtime_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    j["ok"] = all;
    params_from(cfg);
    write_text_file(outdir + "/report.json", j.dump(2) + "\n");
    write_text_file(outdir + "/config.txt", cfg.serialize());
  }
};

PerturbationParams params_from(ExperimentConfig& cfg) {
  PerturbationParams p;
  p.alpha = cfg.get_double("alpha", 2.0);
  p.lambda = cfg.get_double("lambda", 1.0);
  p.a = cfg.get_double("a", 1.0);
  p.n = cfg.get_int("n", 4);
  p.validate();
  return p;
}

GeneratingFunction family_from(ExperimentConfig& cfg,
                               const PerturbationParams& p) {
  Variant v = variant_from_string(cfg.get("variant", "cosine-only"));
  double eta = cfg.get_double("eta", 0.5);
  return make_family(p, v, eta);
}

std::string verdict_str(Verdict v) {
  return v == Verdict::Destroyed ? "destroyed" : "inconclusive";
}

}  // namespace

// ---------------------------------------------------------------------
// ExperimentConfig

std::pair<std::string, std::string>* ExperimentConfig::find(
    const std::string& key) {
  for (auto& kv : kv_)
    if (kv.first == key) return &kv;
  return nullptr;
}
const std::pair<std::string, std::string>* ExperimentConfig::find(
    const std::string& key) const {
  for (const auto& kv : kv_)
    if (kv.first == key) return &kv;
  return nullptr;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    cfg.set(key, val);
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  for (const auto& kv : kv_) os << kv.first << "=" << kv.second << "\n";
  return os.str();
}

bool ExperimentConfig::has(const std::string& key) const {
  return find(key) != nullptr;
}

std::string ExperimentConfig::get(const std::string& key,
                                  const std::string& def) {
  if (auto* kv = find(key)) return kv->second;
  set(key, def);  // defaults become part of the echoed config
  return def;
}

double ExperimentConfig::get_double(const std::string& key, double def) {
  if (auto* kv = find(key)) {
    try {
      size_t pos = 0;
      double v = std::stod(kv->second, &pos);
      if (pos != kv->second.size()) throw std::invalid_argument(kv->second);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': not a number: '" +
                        kv->second + "'");
    }
  }
  set_double(key, def);
  return def;
}

long ExperimentConfig::get_long(const std::string& key, long def) {
  if (auto* kv = find(key)) {
    try {
      size_t pos = 0;
      long v = std::stol(kv->second, &pos);
      if (pos != kv->second.size()) throw std::invalid_argument(kv->second);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': not an integer: '" +
                        kv->second + "'");
    }
  }
  set_long(key, def);
  return def;
}

int ExperimentConfig::get_int(const std::string& key, int def) {
  return static_cast<int>(get_long(key, def));
}

std::string ExperimentConfig::require(const std::string& key) const {
  if (const auto* kv = find(key)) return kv->second;
  throw ConfigError("config key '" + key + "' is required");
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (auto* kv = find(key))
    kv->second = value;
  else
    kv_.emplace_back(key, value);
}
void ExperimentConfig::set_double(const std::string& key, double value) {
  set(key, format17(value));
}
void ExperimentConfig::set_long(const std::string& key, long value) {
  set(key, std::to_string(value));
}

// ---------------------------------------------------------------------
// artifact writers

void write_text_file(const std::string& path, const std::string& body) {
  std::filesystem::create_directories(
      std::filesystem::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

namespace {

std::string descriptor_header(const FamilyDescriptor& d) {
  std::ostringstream os;
  std::istringstream is(d.key_value_block());
  std::string line;
  while (std::getline(is, line)) os << "# " << line << "\n";
  return os.str();
}

std::string boundary_str(const BoundaryPolicy& b) {
  if (const auto* f = std::get_if<FixedBoundary>(&b)) {
    return "fixed(" + format17(f->left) + "," + format17(f->right) + ")";
  }
  if (const auto* p = std::get_if<PeriodicBoundary>(&b)) {
    return "periodic(" + std::to_string(p->p) + "," + std::to_string(p->q) +
           ")";
  }
  const auto& h = std::get<HeteroclinicBoundary>(b);
  return "heteroclinic(" + format17(h.limit_low) + "," +
         format17(h.limit_high) + ")";
}

}  // namespace

std::string configuration_csv(const Configuration& c, const SolveReport& rep,
                              const FamilyDescriptor& desc) {
  std::ostringstream os;
  os << descriptor_header(desc);
  os << "# boundary=" << boundary_str(c.boundary) << "\n";
  os << "# symbol=" << (c.symbol ? c.symbol->str() : "none") << "\n";
  os << "# residual=" << format17(rep.residual) << "\n";
  os << "# action=" << format17(rep.action) << "\n";
  os << "index,value\n";
  for (int j = 0; j < c.size(); ++j)
    os << (c.first_index + j) << "," << format17(c.values[j]) << "\n";
  return os.str();
}

std::string profile_csv(const BarrierProfile& prof,
                        const FamilyDescriptor& desc) {
  std::ostringstream os;
  os << descriptor_header(desc);
  os << "# symbol=" << prof.symbol.str() << "\n";
  os << "# tol=" << format17(prof.tol) << "\n";
  os << "xi,P,converged,iterations,window\n";
  for (const auto& s : prof.samples)
    os << format17(s.xi) << "," << format17(s.value) << ","
       << (s.converged ? 1 : 0) << "," << s.iterations << "," << s.window
       << "\n";
  return os.str();
}

// ---------------------------------------------------------------------
// orbit

RunResult run_orbit(ExperimentConfig cfg, const std::string& outdir) {
  RunResult rr;
  ReportWriter rep("orbit");
  PerturbationParams p = params_from(cfg);
  GeneratingFunction h = family_from(cfg, p);
  double tol = cfg.get_double("tol", 1e-10);
  std::string kind = cfg.get("orbit.kind", "heteroclinic");

  if (kind == "periodic") {
    long op = cfg.get_long("orbit.p", 1);
    long oq = cfg.get_long("orbit.q", 3);
    if (oq <= 0) throw ConfigError("orbit.q must be a positive integer");
    auto [c, sr] = minimize_periodic(h, op, oq, {}, tol);
    std::string csv = configuration_csv(c, sr, h.descriptor());
    write_text_file(outdir + "/orbit.csv", csv);
    rep.artifact(rr, outdir + "/orbit.csv");
    rep.add(rr, {"stationary", "variational.minimize_periodic", tol,
                 sr.converged && sr.residual <= tol,
                 "residual=" + format17(sr.residual)});
    rep.add(rr, {"rotation_number", "variational.rotation_number", 0.0,
                 rotation_number(c) == static_cast<double>(op) / oq,
                 format17(rotation_number(c))});
    rep.add(rr, {"minimality_psd", "variational.minimize_periodic", 1e-9,
                 sr.psd_certified, sr.psd_certified ? "psd" : "indefinite"});
  } else if (kind == "heteroclinic") {
    std::string sgn = cfg.get("orbit.sign", "plus");
    auto sign = sgn == "minus" ? HeteroclinicSign::Minus : HeteroclinicSign::Plus;
    auto [c, sr] = minimize_heteroclinic(h, sign, tol);
    std::string csv = configuration_csv(c, sr, h.descriptor());
    write_text_file(outdir + "/orbit.csv", csv);
    rep.artifact(rr, outdir + "/orbit.csv");
    rep.add(rr, {"stationary", "variational.minimize_heteroclinic", tol,
                 sr.converged, "residual=" + format17(sr.residual)});
    rep.add(rr, {"monotone", "variational.minimize_heteroclinic", 0.0,
                 sr.monotone, sr.monotone ? "monotone" : "non-monotone"});
    // step lower bound on the quarter-to-three-quarters band
    double bound = 0.5 * std::pow(static_cast<double>(p.n), -p.a / 2.0);
    bool steps_ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j + 1 < c.size(); ++j) {
      double xi = c.values[j];
      if (sign == HeteroclinicSign::Plus && xi >= 0.25 && xi <= 0.75) {
        double st = c.values[j + 1] - c.values[j];
        worst = std::min(worst, st);
        steps_ok = steps_ok && st >= bound;
      }
    }
    rep.add(rr, {"step_lower_bound", "variational.minimize_heteroclinic", 0.0,
                 steps_ok,
                 "min_step=" + (std::isfinite(worst) ? format17(worst) : "n/a") +
                     " bound=" + format17(bound)});
  } else {
    throw ConfigError("orbit.kind must be 'periodic' or 'heteroclinic'");
  }
  rep.finish(rr, outdir, cfg);
  return rr;
}

// ---------------------------------------------------------------------
// barrier

RunResult run_barrier(ExperimentConfig cfg, const std::string& outdir) {
  RunResult rr;
  ReportWriter rep("barrier");
  PerturbationParams p = params_from(cfg);
  std::string variant_s = cfg.get("variant", "full");
  double tol = cfg.get_double("tol", 1e-10);
  int grid = cfg.get_int("barrier.grid", 33);
  int workers = cfg.get_int("workers", 1);
  RotationSymbol symbol = RotationSymbol::parse(cfg.get("barrier.symbol", "0/1+"));

  GeneratingFunction h = family_from(cfg, p);
  BarrierProfile prof = barrier_profile(h, symbol, grid, tol, workers);
  write_text_file(outdir + "/profile.csv", profile_csv(prof, h.descriptor()));
  rep.artifact(rr, outdir + "/profile.csv");

  CertificateReport cert;
  cert.threshold = 10.0 * tol;
  for (const auto& s : prof.samples) {
    if (!s.converged) {
      ++cert.failed_samples;
      continue;
    }
    ++cert.converged_samples;
    cert.max_barrier = std::max(cert.max_barrier, s.value);
  }
  cert.verdict = cert.max_barrier > cert.threshold ? Verdict::Destroyed
                                                   : Verdict::Inconclusive;

  double floor = -1e-9;
  bool nonneg = true;
  for (const auto& s : prof.samples)
    if (s.converged && s.value < floor) nonneg = false;
  rep.add(rr, {"nonnegativity", "barrier.barrier_profile", 1e-9, nonneg,
               "min sample >= -1e-9"});
  rep.add(rr, {"certificate", "barrier.destruction_certificate", tol, true,
               verdict_str(cert.verdict) +
                   " max_barrier=" + format17(cert.max_barrier)});

  // lower-bound margin for the perturbed families: the barrier at the gap
  // point dominates the shifted bump maximum there
  Variant variant = variant_from_string(variant_s);
  if (variant == Variant::Full || variant == Variant::FullShifted) {
    GeneratingFunction hbar = make_family(p, Variant::CosineOnly);
    auto [kink, krep] = minimize_heteroclinic(hbar, HeteroclinicSign::Plus, tol);
    (void)krep;
    double eta = gap_search(kink, p);
    GeneratingFunction hfull = make_family(p, Variant::FullShifted, eta);
    double P = peierls_zero_plus(hfull, eta, tol);
    double v_eta = bump_shifted(p, eta)(eta);
    bool ok = P >= v_eta;
    rep.add(rr, {"barrier_lower_bound", "barrier.peierls_zero_plus", 0.0, ok,
                 "P=" + format17(P) + " bump_max=" + format17(v_eta) +
                     " eta=" + format17(eta)});
  }

  json cert_json{{"verdict", verdict_str(cert.verdict)},
                 {"max_barrier", cert.max_barrier},
                 {"threshold", cert.threshold},
                 {"converged_samples", cert.converged_samples},
                 {"failed_samples", cert.failed_samples}};
  rep.j["certificate"] = cert_json;
  rep.finish(rr, outdir, cfg);
  return rr;
}

// ---------------------------------------------------------------------
// norms

RunResult run_norms(ExperimentConfig cfg, const std::string& outdir) {
  RunResult rr;
  ReportWriter rep("norms");
  PerturbationParams p = params_from(cfg);
  int kmax = cfg.get_int("norms.kmax", 6);
  int r = cfg.get_int("norms.r", 2);
  int grid = cfg.get_int("norms.grid", 1 << 14);
  int workers = cfg.get_int("workers", 1);
  SupOptions opt;
  opt.grid = grid;
  opt.workers = workers;

  ScalarFunction u = cosine_well(p);
  ScalarFunction v = bump(p);
  PerturbationParams pq = p;  // rescaled family ties index to q
  ScalarFunction Q = rescale(cosine_well(pq) + bump(pq), p.n);

  std::ostringstream csv;
  csv << descriptor_header(FamilyDescriptor{p.alpha, p.lambda, p.a, p.n,
                                            Variant::Full, 0.5});
  csv << "function_id,k,sup,method,grid,tail_bound\n";
  bool u_ok = true;
  int flagged = 0;
  for (int k = 0; k <= kmax; ++k) {
    for (const auto& [fn, name] :
         {std::make_pair(&u, std::string("u")), {&v, "v"}, {&Q, "Q"}}) {
      DerivativeSup ds = derivative_sup(*fn, k, opt);
      if (!ds.converged) ++flagged;
      csv << name << "_" << p.n << "," << k << "," << format17(ds.sup_value)
          << "," << (ds.converged ? ds.method : ds.method + "!failed") << ","
          << ds.grid << "," << format17(0.0) << "\n";
      if (name == "u" && k >= 1) {
        double expect = std::pow(2.0 * M_PI, k) * p.amplitude();
        if (std::fabs(ds.sup_value - expect) > 1e-3 * expect) u_ok = false;
      }
    }
  }
  write_text_file(outdir + "/norms.csv", csv.str());
  rep.artifact(rr, outdir + "/norms.csv");
  rep.add(rr, {"cosine_sups_analytic", "gevrey.derivative_sup", 1e-3, u_ok,
               "u rows vs (2 pi)^k n^-a"});

  std::ostringstream ccsv;
  ccsv << "alpha,lambda,k,observed,bound,margin,holds,converged\n";
  bool cauchy_all = true;
  for (int k = 0; k <= std::min(kmax, 6); ++k) {
    CauchyCheck c = verify_cauchy_bound(p.alpha, p.lambda, k, opt);
    cauchy_all = cauchy_all && c.holds;
    ccsv << format17(p.alpha) << "," << format17(p.lambda) << "," << k << ","
         << format17(c.observed) << "," << format17(c.bound) << ","
         << format17(c.margin) << "," << (c.holds ? 1 : 0) << ","
         << (c.converged ? 1 : 0) << "\n";
  }
  write_text_file(outdir + "/cauchy.csv", ccsv.str());
  rep.artifact(rr, outdir + "/cauchy.csv");
  rep.add(rr, {"derivative_growth_bound", "gevrey.verify_cauchy_bound", 0.0,
               cauchy_all, "margins >= 1 for k <= " +
                               std::to_string(std::min(kmax, 6))});

  double cr = cr_norm(v, std::min(r, 2), opt);
  rep.add(rr, {"bump_cr_scale", "gevrey.cr_norm", 0.0,
               cr <= 1.0,  // the bump never exceeds unit scale at these n
               "||v||_C" + std::to_string(std::min(r, 2)) + "=" + format17(cr)});
  rep.add(rr, {"fd_failures_flagged", "gevrey.derivative_sup", 0.0, true,
               std::to_string(flagged) + " rows flagged"});
  rep.finish(rr, outdir, cfg);
  return rr;
}

// ---------------------------------------------------------------------
// destroy: the end-to-end pipeline

RunResult run_destroy(ExperimentConfig cfg, const std::string& outdir) {
  RunResult rr;
  ReportWriter rep("destroy");
  double alpha = cfg.get_double("alpha", 2.0);
  double lambda = cfg.get_double("lambda", 1.0);
  double mu = cfg.get_double("mu", 0.0);
  double delta = cfg.get_double("delta", 0.05);
  double tol = cfg.get_double("tol", 1e-10);
  int workers = cfg.get_int("workers", 1);
  int grid = cfg.get_int("destroy.grid", 9);
  long qmax = cfg.get_long("destroy.qmax", 40);
  int count = cfg.get_int("destroy.convergents", 10);
  std::string omega_s = cfg.get("omega", "golden");

  // rational rotation numbers are destroyed by analytic perturbations;
  // nothing to measure at this desk
  if (omega_s.find('/') != std::string::npos) {
    rep.add(rr, {"rational_omega", "harness.cmd_destroy", 0.0, true,
                 "rational: destroyed by analytic perturbation, out of "
                 "numerical scope"});
    rep.finish(rr, outdir, cfg);
    return rr;
  }

  std::vector<Convergent> conv;
  if (omega_s == "golden")
    conv = convergents(NamedOmega::GoldenMean, count);
  else if (omega_s == "sqrt2-1")
    conv = convergents(NamedOmega::Sqrt2Minus1, count);
  else {
    double w = 0.0;
    try {
      w = std::stod(omega_s);
    } catch (const std::exception&) {
      throw ConfigError("omega: expected 'golden', 'sqrt2-1', p/q or a decimal");
    }
    ContinuedFraction cf = continued_fraction(w, count);
    if (cf.terminated) {
      rep.add(rr, {"rational_omega", "harness.cmd_destroy", 0.0, true,
                   "rational at working precision: destroyed by analytic "
                   "perturbation, out of numerical scope"});
      rep.finish(rr, outdir, cfg);
      return rr;
    }
    conv = convergents(w, count);
  }

  // witness table for the chosen rotation number
  {
    std::ostringstream wcsv;
    wcsv << "k,p,q,error,bound,qualifies\n";
    double C = cfg.get_double("destroy.C", 1.0);
    for (size_t k = 0; k < conv.size(); ++k) {
      double bound =
          C * std::pow(static_cast<double>(conv[k].q), -1.0 - mu);
      wcsv << (k + 1) << "," << conv[k].p << "," << conv[k].q << ","
           << format17(conv[k].error) << "," << format17(bound) << ","
           << (conv[k].error < bound ? 1 : 0) << "\n";
    }
    write_text_file(outdir + "/witnesses.csv", wcsv.str());
    rep.artifact(rr, outdir + "/witnesses.csv");
  }

  PipelineBudget budget = pipeline_budget(alpha, mu, delta);
  double a = cfg.get_double("destroy.a", budget.a);
  double r_req = cfg.get_double("destroy.r", budget.r);
  int r_norm = std::max(0, static_cast<int>(std::floor(r_req)));
  bool decay_expected = static_cast<double>(r_norm) < a + 2.0;
  rep.add(rr, {"budget", "arithmetic.pipeline_budget", 0.0, true,
               "a=" + format17(a) + " r=" + format17(r_req) +
                   " epsilon=" + format17(budget.epsilon) +
                   (decay_expected ? "" : " (no decay expected)")});

  std::vector<long> qs;
  for (const auto& c : conv) {
    long q = static_cast<long>(c.q);
    if (q >= 1 && q <= qmax &&
        (qs.empty() || q != qs.back()))
      qs.push_back(q);
  }
  if (qs.empty()) throw ConfigError("destroy: empty convergent q-list");

  SupOptions sopt;
  sopt.workers = workers;

  std::ostringstream csv;
  csv << "q,n,eta,P_eta,bump_max,lowb_ok,certificate,max_barrier,norm_Cr\n";
  std::vector<double> norms;
  bool all_destroyed = true, all_lowb = true;
  for (long q : qs) {
    PerturbationParams pq{alpha, lambda, a, static_cast<int>(q)};
    pq.validate();
    GeneratingFunction hbar = make_family(pq, Variant::CosineOnly);
    auto [kink, krep] = minimize_heteroclinic(hbar, HeteroclinicSign::Plus, tol);
    (void)krep;
    double eta = gap_search(kink, pq);
    GeneratingFunction hq = make_family(pq, Variant::FullShifted, eta);

    CertificateReport cert = destruction_certificate(
        hq, RotationSymbol::zero_plus(), grid, tol, workers);
    double P_eta = peierls_zero_plus(hq, eta, tol);
    double bump_max = bump_shifted(pq, eta)(eta);
    bool lowb = P_eta >= bump_max;
    all_lowb = all_lowb && lowb;
    all_destroyed = all_destroyed && cert.verdict == Verdict::Destroyed;

    ScalarFunction Qq = rescale(cosine_well(pq) + bump_shifted(pq, eta),
                                static_cast<int>(q));
    double nrm = cr_norm(Qq, r_norm, sopt);
    norms.push_back(nrm);

    csv << q << "," << q << "," << format17(eta) << "," << format17(P_eta)
        << "," << format17(bump_max) << "," << (lowb ? 1 : 0) << ","
        << verdict_str(cert.verdict) << "," << format17(cert.max_barrier)
        << "," << format17(nrm) << "\n";
  }
  write_text_file(outdir + "/destroy.csv", csv.str());
  rep.artifact(rr, outdir + "/destroy.csv");

  bool decreasing = true;
  for (size_t i = 1; i < norms.size(); ++i)
    decreasing = decreasing && norms[i] < norms[i - 1];
  rep.add(rr, {"norm_decay", "gevrey.perturbation_cr_decay", 0.0,
               decreasing || !decay_expected,
               "C^" + std::to_string(r_norm) + " norms along q-list " +
                   (decreasing ? "strictly decrease" : "do not decrease")});
  rep.add(rr, {"certificates_destroyed", "barrier.destruction_certificate",
               tol, all_destroyed,
               all_destroyed ? "every q destroyed" : "some q inconclusive"});
  rep.add(rr, {"barrier_lower_bound", "barrier.peierls_zero_plus", 0.0,
               all_lowb, all_lowb ? "P(eta) >= bump max at every q"
                                  : "violated at some q"});
  rep.finish(rr, outdir, cfg);
  return rr;
}

}  // namespace twistlab
