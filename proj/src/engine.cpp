#include "dcf2d/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dcf2d {

Variant variant_by_name(const std::string& name) {
  if (name == "dcf2d" || name == "bidirectional") return Variant::Bidirectional;
  if (name == "dcf2d-pos" || name == "positive-only") return Variant::PositiveOnly;
  if (name == "dcf2d-neg" || name == "negative-only") return Variant::NegativeOnly;
  if (name == "dcf2d-nos3" || name == "no-stage3") return Variant::NoStage3;
  if (name == "cdp" || name == "cdp-baseline") return Variant::CdpBaseline;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Bidirectional: return "dcf2d";
    case Variant::PositiveOnly: return "dcf2d-pos";
    case Variant::NegativeOnly: return "dcf2d-neg";
    case Variant::NoStage3: return "dcf2d-nos3";
    case Variant::CdpBaseline: return "cdp";
  }
  return "?";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::StageTransition: return "stage";
    case EventKind::Activation: return "activate";
    case EventKind::DirectionFlip: return "flip";
    case EventKind::Deactivation: return "deactivate";
    case EventKind::Diagnostic: return "diagnostic";
  }
  return "?";
}

double centroid_movement(const std::vector<double>& c_prev, const std::vector<double>& c_now,
                         double eps) {
  assert(c_prev.size() == c_now.size());
  double diff2 = 0.0, norm2 = 0.0;
  for (std::size_t i = 0; i < c_now.size(); ++i) {
    const double d = c_now[i] - c_prev[i];
    diff2 += d * d;
    norm2 += c_now[i] * c_now[i];
  }
  return std::sqrt(diff2) / (std::sqrt(norm2) + eps);
}

bool stage1_should_transition(const std::deque<double>& window, int window_size,
                              double threshold) {
  if (static_cast<int>(window.size()) < window_size) return false;
  double mean = 0.0;
  for (double m : window) mean += m;
  mean /= static_cast<double>(window.size());
  return mean < threshold; // strict
}

std::map<int, std::size_t> allocate_offspring(const std::vector<int>& active_aps,
                                              std::size_t n, std::size_t min_quota) {
  std::map<int, std::size_t> out;
  if (active_aps.empty()) {
    out[-1] = n;
    return out;
  }
  const std::size_t half = n / 2;
  const std::size_t k = active_aps.size();
  std::vector<int> order = active_aps;
  std::sort(order.begin(), order.end());
  if (half / k >= min_quota) {
    const std::size_t base = half / k;
    std::size_t rem = half - base * k;
    out[-1] = n - half;
    for (int id : order) {
      out[id] = base + (rem > 0 ? 1 : 0);
      if (rem > 0) --rem;
    }
  } else {
    // even split would starve the DE operators: fixed quota each, the main
    // population absorbs the difference
    std::size_t total_ap = min_quota * k;
    for (int id : order) out[id] = min_quota;
    if (total_ap > n) { // degenerate; trim from the highest index
      std::size_t excess = total_ap - n;
      for (auto it = order.rbegin(); it != order.rend() && excess > 0; ++it) {
        const std::size_t cut = std::min(excess, out[*it]);
        out[*it] -= cut;
        excess -= cut;
      }
      total_ap = n;
    }
    out[-1] = n - total_ap;
  }
  return out;
}

namespace {

struct VariantFlags {
  bool allow_flip = true;
  bool force_negative = false;
  bool baseline = false;
};

VariantFlags flags_for(Variant v) {
  switch (v) {
    case Variant::PositiveOnly: return {false, false, false};
    case Variant::NegativeOnly: return {true, true, false};
    case Variant::CdpBaseline: return {true, false, true};
    default: return {true, false, false};
  }
}

// Midrange of the population's objective bounding box. The plain member
// mean wobbles at ~1e-2 relative scale from selection churn and would never
// cross the 1e-4 movement threshold; the midrange settles exactly when the
// explorer stops finding new extremes.
std::vector<double> objective_centroid(const std::vector<Individual>& pop) {
  if (pop.empty()) return {};
  std::vector<double> lo = pop[0].f, hi = pop[0].f;
  for (const auto& m : pop)
    for (std::size_t d = 0; d < lo.size(); ++d) {
      lo[d] = std::min(lo[d], m.f[d]);
      hi[d] = std::max(hi[d], m.f[d]);
    }
  std::vector<double> c(lo.size());
  for (std::size_t d = 0; d < c.size(); ++d) c[d] = 0.5 * (lo[d] + hi[d]);
  return c;
}

class Engine {
public:
  Engine(const Problem& problem, EngineConfig cfg, Variant variant, const MetricHook& metrics,
         const Observer& observer)
      : problem_(problem),
        cfg_(std::move(cfg)),
        variant_(variant),
        flags_(flags_for(variant)),
        metrics_(metrics),
        observer_(observer),
        rng_mp_(Rng::stream(cfg_.seed, 0)),
        rng_ap0_(Rng::stream(cfg_.seed, 1)),
        rng_init_(Rng::stream(cfg_.seed, 1000)) {
    if (variant == Variant::NoStage3) cfg_.beta = 1.0;
    for (int c = 0; c < problem_.n_con; ++c)
      rng_aux_.push_back(Rng::stream(cfg_.seed, static_cast<std::uint64_t>(c) + 2));
  }

  RunResult run() {
    init();
    const std::size_t n = cfg_.pop_size;
    if (st_.fe_used + static_cast<long long>(n) > cfg_.max_fe) {
      push_event(EventKind::Diagnostic, -1, "budget below one generation");
      return finish();
    }
    while (st_.fe_used + static_cast<long long>(n) <= cfg_.max_fe) {
      ++st_.generation;
      step();
    }
    return finish();
  }

private:
  void push_event(EventKind kind, int ap, std::string detail) {
    result_.events.push_back({st_.generation, st_.fe_used, kind, ap, std::move(detail)});
  }

  void init() {
    st_.mp.reserve(cfg_.pop_size);
    for (std::size_t i = 0; i < cfg_.pop_size; ++i) {
      std::vector<double> x(problem_.dim);
      for (int d = 0; d < problem_.dim; ++d)
        x[d] = rng_init_.uniform(problem_.lower[d], problem_.upper[d]);
      st_.mp.push_back(problem_.evaluate(std::move(x)));
    }
    st_.fe_used += static_cast<long long>(cfg_.pop_size);
    st_.ap0 = st_.mp;
    st_.ap0_active = !flags_.baseline;
    st_.aux.resize(problem_.n_con);
    for (int c = 0; c < problem_.n_con; ++c) st_.aux[c].constraint = c;
    if (!flags_.baseline) st_.centroid_prev = objective_centroid(st_.ap0);
  }

  std::vector<int> active_ap_ids() const {
    std::vector<int> ids;
    if (st_.stage == 1 && st_.ap0_active) ids.push_back(0);
    for (const auto& ap : st_.aux)
      if (ap.active) ids.push_back(ap.constraint + 1);
    return ids;
  }

  // Reproduce `count` children from `pool` with the hybrid DE pair; `fit`
  // ranks the pool for the pbest pick.
  void reproduce(const std::vector<Individual>& pool, const FitnessVector& fit,
                 std::size_t count, Rng& rng, std::vector<Individual>& out) {
    if (pool.empty() || count == 0) return;
    std::vector<std::size_t> by_fit = select_top_indices(pool, fit, pool.size());
    const std::size_t top =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(
                                     cfg_.de.p_best_frac * static_cast<double>(pool.size()))));
    for (std::size_t i = 0; i < count; ++i) {
      const Individual& target = pool[rng.index(pool.size())];
      std::vector<double> mutant;
      if (pool.size() < 4) {
        if (!fallback_flagged_) {
          push_event(EventKind::Diagnostic, -1, "parent pool too small; mutation-only");
          fallback_flagged_ = true;
        }
        mutant = target.x;
      } else {
        std::size_t r1 = rng.index(pool.size());
        std::size_t r2 = rng.index(pool.size());
        std::size_t r3 = rng.index(pool.size());
        while (r2 == r1) r2 = rng.index(pool.size());
        while (r3 == r1 || r3 == r2) r3 = rng.index(pool.size());
        if (rng.uniform01() < 0.5) {
          mutant = de_rand_1(pool[r1].x, pool[r2].x, pool[r3].x, cfg_.de);
        } else {
          const Individual& pbest = pool[by_fit[rng.index(top)]];
          mutant = de_current_to_pbest(target.x, pbest.x, pool[r2].x, pool[r3].x, cfg_.de);
        }
      }
      auto child = binomial_crossover(target.x, mutant, cfg_.de.CR, rng);
      child = repair_and_mutate(std::move(child), problem_, cfg_.de, rng);
      out.push_back(problem_.evaluate(std::move(child)));
    }
  }

  // Auxiliary parent pool: own members plus a random quarter of the main
  // population, giving helper tasks access to converged material.
  std::vector<Individual> aux_pool(const std::vector<Individual>& members, Rng& rng) const {
    std::vector<Individual> pool = members;
    const std::size_t take = st_.mp.size() / 4;
    for (std::size_t i = 0; i < take; ++i) pool.push_back(st_.mp[rng.index(st_.mp.size())]);
    return pool;
  }

  FitnessVector pool_fitness(const std::vector<Individual>& pool, int ap_id) const {
    if (ap_id == -1) return spea2_fitness(pool, DominanceMode::cdp_all());
    if (ap_id == 0) return spea2_fitness(pool, DominanceMode::objective());
    const auto& ap = st_.aux[ap_id - 1];
    if (ap.direction == Direction::Positive)
      return spea2_fitness(pool, DominanceMode::cdp_single(ap.constraint));
    std::vector<std::vector<double>> vs(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      vs[i].reserve(pool[i].f.size() + 1);
      for (double v : pool[i].f) vs[i].push_back(-v);
      vs[i].push_back(pool[i].c[ap.constraint]);
    }
    return spea2_fitness_vectors(vs, 3);
  }

  // Seed a resurrected population: the best archive members violating the
  // constraint, padded from the main population.
  std::vector<Individual> seed_members(int constraint) const {
    const std::size_t n_sub = cfg_.pop_size / 4;
    std::vector<Individual> violators;
    for (const auto& m : st_.li.members)
      if (m.c[constraint] > 0.0) violators.push_back(m);
    std::vector<Individual> seeds;
    if (!violators.empty()) {
      seeds = select_top(
          violators, spea2_fitness(violators, DominanceMode::cdp_single(constraint)),
          n_sub);
    }
    if (seeds.size() < n_sub && !st_.mp.empty()) {
      const auto pad = select_top(
          st_.mp, spea2_fitness(st_.mp, DominanceMode::cdp_single(constraint)),
          n_sub - seeds.size());
      seeds.insert(seeds.end(), pad.begin(), pad.end());
    }
    return seeds;
  }

  void activate(int constraint, const char* reason) {
    auto& ap = st_.aux[constraint];
    ap.active = true;
    ap.direction = flags_.force_negative ? Direction::Negative : Direction::Positive;
    ap.protected_until = st_.generation + cfg_.protection_span;
    ap.members = seed_members(constraint);
    push_event(EventKind::Activation, constraint + 1,
               std::string(ap.direction == Direction::Positive ? "positive" : "negative") +
                   "," + reason);
  }

  void on_li_updated(const std::vector<Individual>& new_members) {
    if (st_.stage != 2) return; // stage 3 stops auxiliary populations for good
    for (int c = 0; c < problem_.n_con; ++c) {
      if (st_.aux[c].active) continue;
      bool violated = false;
      for (const auto& m : new_members)
        if (m.c[c] > 0.0) {
          violated = true;
          break;
        }
      if (violated) activate(c, "resurrection");
    }
  }

  void stage2_adjust() {
    for (auto& ap : st_.aux) {
      if (!ap.active) continue;
      if (ap.direction == Direction::Positive) {
        bool has_feasible = false;
        for (const auto& m : ap.members)
          if (m.c[ap.constraint] == 0.0) {
            has_feasible = true;
            break;
          }
        if (!has_feasible && flags_.allow_flip) {
          ap.direction = Direction::Negative;
          push_event(EventKind::DirectionFlip, ap.constraint + 1, "negative");
        }
      } else if (st_.generation > ap.protected_until.value_or(-1)) {
        bool all_dominated = !ap.members.empty();
        for (const auto& m : ap.members) {
          bool dominated = false;
          for (const auto& x : st_.mp)
            if (dominates_obj(x.f, m.f)) {
              dominated = true;
              break;
            }
          if (!dominated) {
            all_dominated = false;
            break;
          }
        }
        if (all_dominated) {
          ap.active = false;
          ap.protected_until.reset();
          push_event(EventKind::Deactivation, ap.constraint + 1, "dominated by MP");
        }
      }
    }
  }

  void step() {
    const std::size_t n = cfg_.pop_size;
    const auto allocation = allocate_offspring(active_ap_ids(), n, cfg_.min_quota);

    // one shared offspring set; allocation only decides the parent pools
    std::vector<Individual> offspring;
    offspring.reserve(n);
    for (const auto& [id, count] : allocation) {
      if (count == 0) continue;
      if (id == -1) {
        reproduce(st_.mp, pool_fitness(st_.mp, -1), count, rng_mp_, offspring);
      } else if (id == 0) {
        const auto pool = aux_pool(st_.ap0, rng_ap0_);
        reproduce(pool, pool_fitness(pool, 0), count, rng_ap0_, offspring);
      } else {
        auto& r = rng_aux_[id - 1];
        const auto pool = aux_pool(st_.aux[id - 1].members, r);
        reproduce(pool, pool_fitness(pool, id), count, r, offspring);
      }
    }
    st_.fe_used += static_cast<long long>(offspring.size());

    // population updates on the pre-generation snapshots
    const std::vector<Individual> mp_snapshot = st_.mp;
    std::vector<Individual> mp_next = update_mp(mp_snapshot, offspring, n);
    std::vector<Individual> ap0_next;
    if (st_.stage == 1 && st_.ap0_active) ap0_next = update_ap0(st_.ap0, offspring, n);
    std::vector<std::pair<int, std::vector<Individual>>> aux_next;
    for (auto& ap : st_.aux)
      if (ap.active)
        aux_next.emplace_back(ap.constraint, update_ap(ap, offspring, mp_snapshot, n).members);
    LiUpdate li_next;
    if (!flags_.baseline) li_next = update_li(st_.li, offspring, mp_snapshot, n);

    st_.mp = std::move(mp_next);
    if (!ap0_next.empty()) st_.ap0 = std::move(ap0_next);
    for (auto& [c, members] : aux_next) st_.aux[c].members = std::move(members);
    std::vector<Individual> li_new;
    if (!flags_.baseline) {
      if (li_next.updated)
        for (const auto& m : li_next.members) {
          bool was = false;
          for (const auto& old : st_.li.members)
            if (old.x == m.x) {
              was = true;
              break;
            }
          if (!was) li_new.push_back(m);
        }
      st_.li.members = std::move(li_next.members);
      if (li_next.updated) on_li_updated(li_new);
    }

    // stage machinery
    if (!flags_.baseline) {
      if (st_.stage == 1) {
        const auto centroid = objective_centroid(st_.ap0);
        if (st_.centroid_prev) {
          st_.movement_window.push_back(
              centroid_movement(*st_.centroid_prev, centroid, cfg_.move_eps));
          while (static_cast<int>(st_.movement_window.size()) > cfg_.window)
            st_.movement_window.pop_front();
        }
        st_.centroid_prev = centroid;
        if (stage1_should_transition(st_.movement_window, cfg_.window, cfg_.move_threshold)) {
          st_.stage = 2;
          push_event(EventKind::StageTransition, -1, "1->2");
          st_.ap0_active = false;
          push_event(EventKind::Deactivation, 0, "global exploration stopped");
          for (int c = 0; c < problem_.n_con; ++c) {
            if (st_.aux[c].active) continue;
            bool violated = false;
            for (const auto& m : st_.li.members)
              if (m.c[c] > 0.0) {
                violated = true;
                break;
              }
            if (violated) activate(c, "initial scan");
          }
        }
      } else if (st_.stage == 2) {
        stage2_adjust();
      }
      if (st_.stage < 3 &&
          static_cast<double>(st_.fe_used) > cfg_.beta * static_cast<double>(cfg_.max_fe)) {
        for (auto& ap : st_.aux)
          if (ap.active) {
            ap.active = false;
            ap.protected_until.reset();
            push_event(EventKind::Deactivation, ap.constraint + 1, "stage 3 cutoff");
          }
        if (st_.ap0_active) {
          st_.ap0_active = false;
          push_event(EventKind::Deactivation, 0, "stage 3 cutoff");
        }
        st_.stage = 3;
        push_event(EventKind::StageTransition, -1, "->3");
      }
    }

    record_metrics();
    if (observer_) observer_(st_, allocation);
  }

  void record_metrics() {
    MetricRow row;
    row.generation = st_.generation;
    row.fe = st_.fe_used;
    std::size_t feasible = 0;
    for (const auto& m : st_.mp)
      if (m.feasible()) ++feasible;
    row.feasible_ratio =
        st_.mp.empty() ? 0.0 : static_cast<double>(feasible) / static_cast<double>(st_.mp.size());
    if (metrics_) {
      const auto [igd, hv] = metrics_(st_.mp);
      row.igd_plus = igd;
      row.hv = hv;
    }
    result_.timeline.push_back(row);
  }

  RunResult finish() {
    result_.final_mp = st_.mp;
    result_.generations = st_.generation;
    result_.fe_used = st_.fe_used;
    result_.variant = variant_;
    result_.seed = cfg_.seed;
    return std::move(result_);
  }

  const Problem& problem_;
  EngineConfig cfg_;
  Variant variant_;
  VariantFlags flags_;
  const MetricHook& metrics_;
  const Observer& observer_;
  Rng rng_mp_;
  Rng rng_ap0_;
  Rng rng_init_;
  std::vector<Rng> rng_aux_;
  EngineState st_;
  RunResult result_;
  bool fallback_flagged_ = false;
};

} // namespace

RunResult run_variant(const Problem& problem, const EngineConfig& cfg, Variant variant,
                      const MetricHook& metrics, const Observer& observer) {
  Engine engine(problem, cfg, variant, metrics, observer);
  return engine.run();
}

RunResult run(const Problem& problem, const EngineConfig& cfg, const MetricHook& metrics,
              const Observer& observer) {
  return run_variant(problem, cfg, Variant::Bidirectional, metrics, observer);
}

} // namespace dcf2d
