#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistlab/barrier.hpp"
#include "twistlab/diophantine.hpp"
#include "twistlab/gevrey.hpp"
#include "twistlab/model.hpp"
#include "twistlab/variational.hpp"

namespace twistlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plain-text key=value configuration. Insertion order is preserved and
/// the canonical serialization round-trips byte-identically. Reading a key
/// with a default records the default, so the echoed config.txt always
/// carries the full effective parameter set.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  std::string serialize() const;

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& def);
  double get_double(const std::string& key, double def);
  long get_long(const std::string& key, long def);
  int get_int(const std::string& key, int def);

  /// strict accessors: throw ConfigError when missing/malformed
  std::string require(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_long(const std::string& key, long value);

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
  std::pair<std::string, std::string>* find(const std::string& key);
  const std::pair<std::string, std::string>* find(const std::string& key) const;
};

/// One verdict row of a report: which module/operation produced it, at
/// what tolerance, and what was measured.
struct CheckResult {
  std::string name;
  std::string module_op;  // "module.operation"
  double tolerance = 0.0;
  bool pass = false;
  std::string measured;  // human-readable measured quantity
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 science check failed, 2 config error
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;  // file paths written
};

/// Experiment pipelines behind the CLI subcommands. Each writes its CSV
/// artifacts, a report.json (schema 1) and a config.txt echo into outdir,
/// and returns the CI-friendly exit status.
RunResult run_orbit(ExperimentConfig cfg, const std::string& outdir);
RunResult run_barrier(ExperimentConfig cfg, const std::string& outdir);
RunResult run_norms(ExperimentConfig cfg, const std::string& outdir);
RunResult run_destroy(ExperimentConfig cfg, const std::string& outdir);

/// Shared helpers for deterministic artifacts (fixed 17-digit formatting,
/// fixed row order, single writer per file).
void write_text_file(const std::string& path, const std::string& body);
std::string configuration_csv(const Configuration& c, const SolveReport& rep,
                              const FamilyDescriptor& desc);
std::string profile_csv(const BarrierProfile& prof,
                        const FamilyDescriptor& desc);

}  // namespace twistlab
