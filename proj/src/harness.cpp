#include "dcf2d/harness.hpp"
#include "dcf2d/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dcf2d {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> feasible_front(const std::vector<Individual>& pop) {
  std::vector<Individual> feas;
  for (const auto& m : pop)
    if (m.feasible()) feas.push_back(m);
  std::vector<std::vector<double>> front;
  for (const auto& m : nondominated_subset(feas, DominanceMode::objective()))
    front.push_back(m.f);
  return front;
}

double read_final_igd(const fs::path& metrics_csv) {
  std::ifstream is(metrics_csv);
  if (!is) throw std::runtime_error("missing " + metrics_csv.string());
  std::string line, last;
  std::getline(is, line); // header
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  if (last.empty()) return kInf;
  std::stringstream ss(last);
  std::string cell;
  std::getline(ss, cell, ','); // generation
  std::getline(ss, cell, ','); // fe
  std::getline(ss, cell, ',');
  return std::strtod(cell.c_str(), nullptr);
}

CouplingType classify_from_letter(const std::string& s) {
  if (s == "A") return CouplingType::TypeA;
  if (s == "B") return CouplingType::TypeB;
  if (s == "C") return CouplingType::TypeC;
  if (s == "D") return CouplingType::TypeD;
  throw std::invalid_argument("bad coupling type '" + s + "'");
}

double read_final_hv(const fs::path& metrics_csv) {
  std::ifstream is(metrics_csv);
  std::string line, last;
  std::getline(is, line);
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  if (last.empty()) return 0.0;
  std::stringstream ss(last);
  std::string cell;
  for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
  return std::strtod(cell.c_str(), nullptr);
}

} // namespace

OracleBundle load_or_build_oracle(const Problem& problem, int resolution,
                                  const fs::path& cache_root) {
  const fs::path dir = cache_root / "oracle_cache" /
                       (problem.name + "_" + std::to_string(resolution));
  const fs::path ref_file = dir / "reference.csv";
  const fs::path meta_file = dir / "meta.json";
  OracleBundle bundle;
  if (fs::exists(ref_file) && fs::exists(meta_file)) {
    std::ifstream mis(meta_file);
    json meta = json::parse(mis);
    bundle.type = classify_from_letter(meta.at("type").get<std::string>());
    std::ifstream ris(ref_file);
    std::string line;
    std::getline(ris, line); // header
    while (std::getline(ris, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string cell;
      std::vector<double> pt;
      while (std::getline(ss, cell, ',')) pt.push_back(std::strtod(cell.c_str(), nullptr));
      bundle.reference.points.push_back(std::move(pt));
    }
  } else {
    GridSample sample = sample_grid(problem, resolution);
    label_fronts(sample);
    bundle.type = classify_coupling(sample);
    bundle.reference = build_reference_set(sample);
    fs::create_directories(dir);
    {
      std::ofstream os(ref_file);
      os << "f1,f2\n";
      for (const auto& pt : bundle.reference.points)
        os << format_double(pt[0]) << ',' << format_double(pt[1]) << '\n';
    }
    {
      std::ofstream os(dir / "labeled.csv");
      write_labeled_csv(sample, os);
    }
    {
      std::ofstream os(meta_file);
      json meta{{"problem", problem.name},
                {"resolution", resolution},
                {"type", to_string(bundle.type)}};
      os << meta.dump(2) << '\n';
    }
  }
  bundle.hv_reference.assign(2, -kInf);
  for (const auto& pt : bundle.reference.points)
    for (int d = 0; d < 2; ++d) bundle.hv_reference[d] = std::max(bundle.hv_reference[d], pt[d]);
  return bundle;
}

MetricHook make_metric_hook(const OracleBundle& oracle) {
  const ReferenceSet ref = oracle.reference;
  const std::vector<double> hv_ref = oracle.hv_reference;
  return [ref, hv_ref](const std::vector<Individual>& mp) -> std::pair<double, double> {
    const auto front = feasible_front(mp);
    if (front.empty()) return {kInf, 0.0};
    return {igd_plus(ref, front), hypervolume_2d(front, hv_ref)};
  };
}

RunResult run_and_persist(const Problem& problem, const EngineConfig& cfg, Variant variant,
                          const fs::path& out_dir, const OracleBundle& oracle,
                          int snapshot_every) {
  fs::create_directories(out_dir);
  std::ofstream snaps;
  bool snap_header = true;
  Observer observer = nullptr;
  if (snapshot_every > 0) {
    snaps.open(out_dir / "snapshots.csv");
    observer = [&](const EngineState& st, const std::map<int, std::size_t>&) {
      if (st.generation % snapshot_every != 0) return;
      write_snapshot(st.mp, snaps, st.generation, "mp", problem.dim, problem.n_obj,
                     problem.n_con, 0, snap_header);
      snap_header = false;
      if (st.ap0_active)
        write_snapshot(st.ap0, snaps, st.generation, "ap0", problem.dim, problem.n_obj,
                       problem.n_con, 0, false);
      for (const auto& ap : st.aux)
        if (ap.active)
          write_snapshot(ap.members, snaps, st.generation,
                         "ap" + std::to_string(ap.constraint + 1), problem.dim, problem.n_obj,
                         problem.n_con, ap.direction == Direction::Positive ? 1 : -1, false);
    };
  }

  RunResult result = run_variant(problem, cfg, variant, make_metric_hook(oracle), observer);

  {
    std::ofstream os(out_dir / "final_mp.csv");
    write_snapshot(result.final_mp, os, result.generations, "mp", problem.dim, problem.n_obj,
                   problem.n_con);
  }
  {
    std::ofstream os(out_dir / "events.csv");
    write_events(result.events, os);
  }
  {
    std::ofstream os(out_dir / "metrics.csv");
    write_metrics(result.timeline, os);
  }
  {
    std::ofstream os(out_dir / "config.json");
    json echo{{"problem", problem.name}, {"variant", to_string(variant)},
              {"pop", cfg.pop_size},    {"max_fe", cfg.max_fe},
              {"beta", cfg.beta},       {"seed", cfg.seed},
              {"window", cfg.window},   {"min_quota", cfg.min_quota},
              {"protection_span", cfg.protection_span}};
    os << echo.dump(2) << '\n';
  }
  {
    std::ofstream os(out_dir / "done.marker");
    os << "ok\n";
  }
  return result;
}

BatchSpec parse_batch_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("batch config is not valid JSON: ") + e.what());
  }
  BatchSpec spec;
  if (!j.contains("problems") || !j["problems"].is_array() || j["problems"].empty())
    throw std::invalid_argument("batch config: 'problems' must be a non-empty array");
  for (const auto& p : j["problems"]) spec.problems.push_back(p.get<std::string>());
  if (!j.contains("variants") || !j["variants"].is_array() || j["variants"].empty())
    throw std::invalid_argument("batch config: 'variants' must be a non-empty array");
  for (const auto& v : j["variants"]) {
    variant_by_name(v.get<std::string>()); // validate now
    spec.variants.push_back(v.get<std::string>());
  }
  if (!j.contains("seeds")) throw std::invalid_argument("batch config: 'seeds' missing");
  if (j["seeds"].is_array()) {
    for (const auto& s : j["seeds"]) spec.seeds.push_back(s.get<std::uint64_t>());
  } else if (j["seeds"].is_object()) {
    const std::uint64_t base = j["seeds"].at("base").get<std::uint64_t>();
    const std::uint64_t count = j["seeds"].at("count").get<std::uint64_t>();
    for (std::uint64_t i = 0; i < count; ++i) spec.seeds.push_back(base + i);
  } else {
    throw std::invalid_argument("batch config: 'seeds' must be array or {base,count}");
  }
  {
    std::vector<std::uint64_t> sorted = spec.seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("batch config: seeds must be distinct");
  }
  if (j.contains("engine")) {
    const auto& e = j["engine"];
    if (e.contains("pop")) spec.engine.pop_size = e["pop"].get<std::size_t>();
    if (e.contains("max_fe")) spec.engine.max_fe = e["max_fe"].get<long long>();
    if (e.contains("beta")) spec.engine.beta = e["beta"].get<double>();
    if (e.contains("window")) spec.engine.window = e["window"].get<int>();
    if (e.contains("move_threshold")) spec.engine.move_threshold = e["move_threshold"].get<double>();
    if (e.contains("min_quota")) spec.engine.min_quota = e["min_quota"].get<std::size_t>();
    if (e.contains("protection_span")) spec.engine.protection_span = e["protection_span"].get<int>();
    if (e.contains("alpha")) spec.engine.alpha = e["alpha"].get<double>();
    if (e.contains("de")) {
      const auto& d = e["de"];
      if (d.contains("F")) spec.engine.de.F = d["F"].get<double>();
      if (d.contains("CR")) spec.engine.de.CR = d["CR"].get<double>();
      if (d.contains("p_best_frac")) spec.engine.de.p_best_frac = d["p_best_frac"].get<double>();
      if (d.contains("pm")) spec.engine.de.pm = d["pm"].get<double>();
      if (d.contains("eta_m")) spec.engine.de.eta_m = d["eta_m"].get<double>();
    }
  }
  if (j.contains("resolution")) spec.resolution = j["resolution"].get<int>();
  if (j.contains("reference_variant"))
    spec.reference_variant = j["reference_variant"].get<std::string>();
  if (!j.contains("output_dir"))
    throw std::invalid_argument("batch config: 'output_dir' missing");
  spec.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("force")) spec.force = j["force"].get<bool>();
  if (j.contains("jobs")) spec.jobs = std::max(1, j["jobs"].get<int>());
  return spec;
}

void run_batch(const BatchSpec& spec) {
  fs::create_directories(spec.output_dir);

  struct Cell {
    std::string problem, variant;
  };
  struct RunJob {
    std::string problem, variant;
    std::uint64_t seed;
    fs::path dir;
  };
  std::vector<RunJob> jobs;
  std::map<std::string, OracleBundle> oracles;
  std::map<std::string, Problem> problems;
  for (const auto& pname : spec.problems) {
    problems.emplace(pname, problem_by_name(pname));
    oracles.emplace(pname,
                    load_or_build_oracle(problems.at(pname), spec.resolution, spec.output_dir));
  }
  for (const auto& pname : spec.problems)
    for (const auto& vname : spec.variants)
      for (std::uint64_t seed : spec.seeds) {
        RunJob job{pname, vname, seed,
                   spec.output_dir /
                       (pname + "__" + vname + "__" + std::to_string(seed))};
        jobs.push_back(std::move(job));
      }

  auto worker = [&](const RunJob& job) {
    if (!spec.force && fs::exists(job.dir / "done.marker")) return;
    EngineConfig cfg = spec.engine;
    cfg.seed = job.seed;
    run_and_persist(problems.at(job.problem), cfg, variant_by_name(job.variant), job.dir,
                    oracles.at(job.problem));
  };

  if (spec.jobs <= 1) {
    for (const auto& job : jobs) worker(job);
  } else {
    std::size_t next = 0;
    while (next < jobs.size()) {
      std::vector<std::future<void>> pending;
      for (int j = 0; j < spec.jobs && next < jobs.size(); ++j, ++next)
        pending.push_back(std::async(std::launch::async, worker, std::cref(jobs[next])));
      for (auto& f : pending) f.get();
    }
  }

  // summary: per-cell medians and IQRs from the persisted per-run metrics
  std::map<std::pair<std::string, std::string>, std::vector<double>> igd_cells, hv_cells;
  for (const auto& job : jobs) {
    igd_cells[{job.problem, job.variant}].push_back(read_final_igd(job.dir / "metrics.csv"));
    hv_cells[{job.problem, job.variant}].push_back(read_final_hv(job.dir / "metrics.csv"));
  }
  {
    std::ofstream os(spec.output_dir / "summary.csv");
    os << "problem,variant,runs,igd_plus_median,igd_plus_iqr,hv_median,hv_iqr\n";
    for (const auto& [key, igds] : igd_cells) {
      const auto& hvs = hv_cells.at(key);
      os << key.first << ',' << key.second << ',' << igds.size() << ','
         << format_double(median(igds)) << ',' << format_double(iqr(igds)) << ','
         << format_double(median(hvs)) << ',' << format_double(iqr(hvs)) << '\n';
    }
  }
  {
    std::ofstream os(spec.output_dir / "wilcoxon.csv");
    os << "problem,variant,reference,p_value,mark\n";
    for (const auto& pname : spec.problems) {
      const auto ref_it = igd_cells.find({pname, spec.reference_variant});
      if (ref_it == igd_cells.end()) continue;
      for (const auto& vname : spec.variants) {
        if (vname == spec.reference_variant) continue;
        const auto& a = igd_cells.at({pname, vname});
        const auto& b = ref_it->second;
        const auto w = wilcoxon_rank_sum(a, b);
        char mark = '=';
        if (w.p_value < 0.05) mark = median(a) < median(b) ? '+' : '-';
        os << pname << ',' << vname << ',' << spec.reference_variant << ','
           << format_double(w.p_value) << ',' << mark << '\n';
      }
    }
  }
}

} // namespace dcf2d
