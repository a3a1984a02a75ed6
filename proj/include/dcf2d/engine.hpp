#ifndef DCF2D_ENGINE_HPP
#define DCF2D_ENGINE_HPP

#include "dcf2d/archives.hpp"
#include "dcf2d/operators.hpp"
#include "dcf2d/problems.hpp"
#include "dcf2d/rng.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dcf2d {

struct EngineConfig {
  std::size_t pop_size = 100;   // N
  long long max_fe = 100000;
  double beta = 0.9;            // stage-3 cutoff fraction
  int window = 5;               // W
  double move_eps = 1e-12;
  double move_threshold = 1e-4; // delta
  std::size_t min_quota = 5;
  int protection_span = 20;     // generations
  double alpha = 0.0;           // accepted for interface parity; unused
  std::uint64_t seed = 1;
  DEConfig de;
};

enum class Variant { Bidirectional, PositiveOnly, NegativeOnly, NoStage3, CdpBaseline };
Variant variant_by_name(const std::string& name);
std::string to_string(Variant v);

enum class EventKind {
  StageTransition, // detail: "1->2" or "->3"
  Activation,      // ap >= 1, detail: "positive"/"negative"
  DirectionFlip,   // ap >= 1, detail: "negative"
  Deactivation,    // ap >= 0 (0 is the explorer population)
  Diagnostic
};
std::string to_string(EventKind k);

struct Event {
  int generation = 0;
  long long fe = 0;
  EventKind kind = EventKind::Diagnostic;
  int ap = -1; // 1-based constraint id, 0 for the explorer, -1 none
  std::string detail;
};

struct MetricRow {
  int generation = 0;
  long long fe = 0;
  double igd_plus = std::numeric_limits<double>::quiet_NaN();
  double hv = std::numeric_limits<double>::quiet_NaN();
  double feasible_ratio = 0.0;
};

struct RunResult {
  std::vector<Individual> final_mp;
  std::vector<Event> events;
  std::vector<MetricRow> timeline;
  int generations = 0;
  long long fe_used = 0;
  Variant variant = Variant::Bidirectional;
  std::uint64_t seed = 0;
};

struct EngineState {
  int stage = 1;
  int generation = 0;
  long long fe_used = 0;
  std::deque<double> movement_window;
  std::optional<std::vector<double>> centroid_prev;
  std::vector<Individual> mp;
  std::vector<Individual> ap0;
  bool ap0_active = true;
  InfeasibleArchive li;
  std::vector<AuxState> aux; // one per constraint
};

// ||c_now - c_prev|| / (||c_now|| + eps)
double centroid_movement(const std::vector<double>& c_prev, const std::vector<double>& c_now,
                         double eps);

// True iff the window holds `window` entries and their mean is strictly
// below the threshold.
bool stage1_should_transition(const std::deque<double>& window, int window_size,
                              double threshold);

// Offspring counts per population for one generation. Key -1 is the main
// population, 0 the explorer, i >= 1 constraint i. Counts sum to N and every
// active auxiliary population receives at least min_quota.
std::map<int, std::size_t> allocate_offspring(const std::vector<int>& active_aps,
                                              std::size_t n, std::size_t min_quota);

// Per-generation observer for invariant checks in tests.
using Observer =
    std::function<void(const EngineState&, const std::map<int, std::size_t>& allocation)>;

// Optional metric evaluator: (igd_plus, hv) of the feasible non-dominated
// part of the main population (infinity when none is feasible).
using MetricHook = std::function<std::pair<double, double>(const std::vector<Individual>&)>;

RunResult run(const Problem& problem, const EngineConfig& cfg,
              const MetricHook& metrics = nullptr, const Observer& observer = nullptr);

RunResult run_variant(const Problem& problem, const EngineConfig& cfg, Variant variant,
                      const MetricHook& metrics = nullptr, const Observer& observer = nullptr);

} // namespace dcf2d

#endif
