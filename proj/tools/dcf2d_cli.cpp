#include "dcf2d/harness.hpp"
#include "dcf2d/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dcf2d;

namespace {

std::string default_out_root() {
  const char* env = std::getenv("DCF2D_OUTPUT_ROOT");
  return env ? env : "out";
}

int list_problems_error(const std::string& name) {
  std::cerr << "unknown problem '" << name << "'; registered problems:";
  for (const auto& p : problem_names()) std::cerr << ' ' << p;
  std::cerr << '\n';
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcf2d: constrained multi-objective optimization toolkit"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "execute one optimization run");
  std::string run_problem, run_variant = "dcf2d", run_out;
  EngineConfig run_cfg;
  int run_dim = 0, run_snapshots = 0, run_resolution = 1001;
  run_cmd->add_option("--problem", run_problem, "problem name")->required();
  run_cmd->add_option("--variant", run_variant, "algorithm variant");
  run_cmd->add_option("--pop", run_cfg.pop_size, "population size N");
  run_cmd->add_option("--max-fe", run_cfg.max_fe, "evaluation budget");
  run_cmd->add_option("--beta", run_cfg.beta, "stage-3 threshold");
  run_cmd->add_option("--seed", run_cfg.seed, "rng seed");
  run_cmd->add_option("--dim", run_dim, "decision dimension override");
  run_cmd->add_option("--alpha", run_cfg.alpha, "detection interval (accepted, unused)");
  run_cmd->add_option("--snapshots", run_snapshots, "write population snapshots every G generations");
  run_cmd->add_option("--resolution", run_resolution, "oracle grid resolution for metrics");
  run_cmd->add_option("--out", run_out, "output directory");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "grid ground truth and front labels");
  std::string oracle_problem, oracle_out;
  int oracle_resolution = 1001, oracle_dim = 0;
  oracle_cmd->add_option("--problem", oracle_problem, "problem name")->required();
  oracle_cmd->add_option("--resolution", oracle_resolution, "grid resolution");
  oracle_cmd->add_option("--dim", oracle_dim, "decision dimension override");
  oracle_cmd->add_option("--out", oracle_out, "output directory");

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "run an experiment grid from a JSON spec");
  std::string batch_config;
  bool batch_force = false;
  int batch_jobs = 0;
  batch_cmd->add_option("--config", batch_config, "batch spec (JSON)")->required();
  batch_cmd->add_flag("--force", batch_force, "redo completed runs");
  batch_cmd->add_option("--jobs", batch_jobs, "worker count override");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "score a front CSV against the oracle");
  std::string metrics_problem, metrics_front;
  int metrics_resolution = 1001;
  metrics_cmd->add_option("--problem", metrics_problem, "problem name")->required();
  metrics_cmd->add_option("--front", metrics_front, "snapshot CSV with the front")->required();
  metrics_cmd->add_option("--resolution", metrics_resolution, "oracle grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      Problem problem;
      try {
        problem = problem_by_name(run_problem, run_dim);
      } catch (const std::invalid_argument&) {
        return list_problems_error(run_problem);
      }
      Variant variant;
      try {
        variant = variant_by_name(run_variant);
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return 2;
      }
      const fs::path out = run_out.empty()
                               ? fs::path(default_out_root()) /
                                     (run_problem + "__" + run_variant + "__" +
                                      std::to_string(run_cfg.seed))
                               : fs::path(run_out);
      const auto oracle =
          load_or_build_oracle(problem, run_resolution, out.parent_path().empty()
                                                            ? fs::path(".")
                                                            : out.parent_path());
      const auto result = run_and_persist(problem, run_cfg, variant, out, oracle, run_snapshots);
      std::cout << "run complete: " << result.generations << " generations, fe="
                << result.fe_used << ", output in " << out.string() << '\n';
      return 0;
    }
    if (*oracle_cmd) {
      if (oracle_resolution < 2) {
        std::cerr << "resolution must be >= 2\n";
        return 2;
      }
      Problem problem;
      try {
        problem = problem_by_name(oracle_problem, oracle_dim);
      } catch (const std::invalid_argument&) {
        return list_problems_error(oracle_problem);
      }
      GridSample sample = sample_grid(problem, oracle_resolution);
      label_fronts(sample);
      const auto type = classify_coupling(sample);
      const fs::path out = oracle_out.empty() ? fs::path(default_out_root()) / "oracle"
                                              : fs::path(oracle_out);
      fs::create_directories(out);
      {
        std::ofstream os(out / (oracle_problem + "_labeled.csv"));
        write_labeled_csv(sample, os);
      }
      {
        std::ofstream os(out / (oracle_problem + "_summary.txt"));
        os << "problem=" << oracle_problem << "\nresolution=" << oracle_resolution
           << "\ntype=" << to_string(type) << '\n';
      }
      std::cout << "type=" << to_string(type) << '\n';
      return 0;
    }
    if (*batch_cmd) {
      std::ifstream is(batch_config);
      if (!is) {
        std::cerr << "cannot open config " << batch_config << '\n';
        return 2;
      }
      std::stringstream buf;
      buf << is.rdbuf();
      BatchSpec spec;
      try {
        spec = parse_batch_spec(buf.str());
        for (const auto& p : spec.problems) problem_by_name(p);
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return 2;
      }
      if (batch_force) spec.force = true;
      if (batch_jobs > 0) spec.jobs = batch_jobs;
      run_batch(spec);
      std::cout << "batch complete: " << spec.output_dir.string() << '\n';
      return 0;
    }
    if (*metrics_cmd) {
      Problem problem;
      try {
        problem = problem_by_name(metrics_problem);
      } catch (const std::invalid_argument&) {
        return list_problems_error(metrics_problem);
      }
      std::ifstream is(metrics_front);
      if (!is) {
        std::cerr << "cannot open front " << metrics_front << '\n';
        return 2;
      }
      const auto pop = read_snapshot(is);
      const auto oracle =
          load_or_build_oracle(problem, metrics_resolution, fs::path(default_out_root()));
      const auto hook = make_metric_hook(oracle);
      const auto [igd, hv] = hook(pop);
      std::cout << "igd_plus=" << format_double(igd) << " hv=" << format_double(hv) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
