#ifndef DCF2D_HARNESS_HPP
#define DCF2D_HARNESS_HPP

#include "dcf2d/engine.hpp"
#include "dcf2d/oracle.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dcf2d {

// Oracle artifacts for one problem at one resolution, built on demand and
// cached on disk under <root>/oracle_cache/.
struct OracleBundle {
  ReferenceSet reference;
  CouplingType type = CouplingType::TypeA;
  std::vector<double> hv_reference; // nadir of the reference front
};

OracleBundle load_or_build_oracle(const Problem& problem, int resolution,
                                  const std::filesystem::path& cache_root);

// Metric hook bound to a reference front: IGD+/HV of the feasible
// non-dominated part of the population; +inf / 0 when nothing is feasible.
MetricHook make_metric_hook(const OracleBundle& oracle);

// Runs one configuration and persists final_mp.csv, events.csv, metrics.csv
// (and per-generation snapshots when snapshot_every > 0). Returns the result.
RunResult run_and_persist(const Problem& problem, const EngineConfig& cfg, Variant variant,
                          const std::filesystem::path& out_dir, const OracleBundle& oracle,
                          int snapshot_every = 0);

struct BatchSpec {
  std::vector<std::string> problems;
  std::vector<std::string> variants;
  std::vector<std::uint64_t> seeds;
  EngineConfig engine;
  int resolution = 1001;
  std::string reference_variant = "dcf2d";
  std::filesystem::path output_dir;
  bool force = false;
  int jobs = 1;
};

BatchSpec parse_batch_spec(const std::string& json_text);

// Cross product of problems x variants x seeds; writes per-run directories
// (problem__variant__seed), summary.csv (median/IQR of final IGD+ and HV per
// cell) and wilcoxon.csv (two-sided p and +/-/= mark against the reference
// variant at 0.05). Already-complete run directories are reused unless
// force is set.
void run_batch(const BatchSpec& spec);

} // namespace dcf2d

#endif
