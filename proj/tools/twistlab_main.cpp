// Command-line driver for the twist-map laboratory: periodic and
// heteroclinic minimal orbits, Peierls barrier profiles and destruction
// certificates, Gevrey/C^r norm tables, and the end-to-end destruction
// pipeline over a convergent list.
//
// Exit codes: 0 all checks passed, 1 a scientific check failed,
// 2 usage or configuration error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "twistlab/harness.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = "twistlab-out";
  int workers = 0;      // 0 = leave config value
  double tol = 0.0;     // 0 = leave config value
};

int dispatch(const std::string& cmd, const GlobalArgs& g) {
  using namespace twistlab;
  ExperimentConfig cfg;
  if (!g.config_path.empty()) cfg = ExperimentConfig::load(g.config_path);
  if (g.workers > 0) cfg.set_long("workers", g.workers);
  if (g.tol > 0.0) cfg.set_double("tol", g.tol);

  RunResult rr;
  if (cmd == "orbit")
    rr = run_orbit(std::move(cfg), g.out_dir);
  else if (cmd == "barrier")
    rr = run_barrier(std::move(cfg), g.out_dir);
  else if (cmd == "norms")
    rr = run_norms(std::move(cfg), g.out_dir);
  else if (cmd == "destroy")
    rr = run_destroy(std::move(cfg), g.out_dir);

  for (const auto& c : rr.checks)
    std::printf("[%s] %s (%s) %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                c.module_op.c_str(), c.measured.c_str());
  if (rr.exit_code != 0) {
    for (const auto& c : rr.checks)
      if (!c.pass) std::printf("failing check: %s\n", c.name.c_str());
  }
  std::printf("artifacts in %s\n", g.out_dir.c_str());
  return rr.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: variational laboratory for area-preserving twist maps"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "key=value configuration file");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--workers", g.workers, "worker threads for profile sampling");
  app.add_option("--tol", g.tol, "solver/barrier tolerance override");

  app.add_subcommand("orbit", "solve periodic or heteroclinic minimal orbits")
      ->fallthrough();
  app.add_subcommand("barrier", "Peierls barrier profile and certificate")
      ->fallthrough();
  app.add_subcommand("norms", "derivative sups, Gevrey norms, growth bounds")
      ->fallthrough();
  app.add_subcommand("destroy", "destruction pipeline along a convergent list")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are exit 2
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), g);
  } catch (const twistlab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failed: %s\n", e.what());
    return 1;
  }
}
