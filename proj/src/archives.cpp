#include "dcf2d/archives.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace dcf2d {

namespace {

constexpr int kAuxKnnK = 3;

std::vector<Individual> merged(const std::vector<Individual>& a,
                               const std::vector<Individual>& b) {
  std::vector<Individual> s = a;
  s.insert(s.end(), b.begin(), b.end());
  return s;
}

std::vector<std::vector<double>> negated_objectives(const std::vector<Individual>& pop) {
  std::vector<std::vector<double>> vs(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    vs[i].reserve(pop[i].f.size());
    for (double v : pop[i].f) vs[i].push_back(-v);
  }
  return vs;
}

// (-f..., c_i): negated objectives with the single violation appended as an
// extra minimized coordinate, so solutions deep in the infeasible region do
// not crowd out boundary ones.
std::vector<std::vector<double>> negated_with_violation(const std::vector<Individual>& pop,
                                                        int constraint) {
  auto vs = negated_objectives(pop);
  for (std::size_t i = 0; i < pop.size(); ++i) vs[i].push_back(pop[i].c[constraint]);
  return vs;
}

} // namespace

std::vector<Individual> update_mp(const std::vector<Individual>& mp,
                                  const std::vector<Individual>& offspring, std::size_t n) {
  const auto s = merged(mp, offspring);
  if (s.empty()) return {};
  return select_top(s, spea2_fitness(s, DominanceMode::cdp_all()), n);
}

std::vector<Individual> update_ap0(const std::vector<Individual>& ap0,
                                   const std::vector<Individual>& offspring, std::size_t n) {
  const auto s = merged(ap0, offspring);
  if (s.empty()) return {};
  return select_top(s, spea2_fitness(s, DominanceMode::objective()), n);
}

bool li_invariant_holds(const std::vector<Individual>& li, const std::vector<Individual>& mp) {
  for (const auto& m : li) {
    bool dominates_some = false, dominated = false;
    for (const auto& x : mp) {
      if (dominates_obj(m.f, x.f)) dominates_some = true;
      if (dominates_obj(x.f, m.f)) dominated = true;
    }
    if (!dominates_some || dominated) return false;
  }
  return true;
}

bool same_member_set(const std::vector<Individual>& a, const std::vector<Individual>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::vector<double>> xa, xb;
  for (const auto& m : a) xa.push_back(m.x);
  for (const auto& m : b) xb.push_back(m.x);
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  return xa == xb;
}

LiUpdate update_li(const InfeasibleArchive& li, const std::vector<Individual>& offspring,
                   const std::vector<Individual>& mp, std::size_t n) {
  if (mp.empty()) return {{}, false};

  // Objective-dominance screening: keep solutions better than some MP member
  // but worse than none.
  std::vector<Individual> screened;
  for (const auto& s : merged(li.members, offspring)) {
    bool dominates_some = false, dominated = false;
    for (const auto& x : mp) {
      if (dominates_obj(s.f, x.f)) dominates_some = true;
      if (dominates_obj(x.f, s.f)) {
        dominated = true;
        break;
      }
    }
    if (dominates_some && !dominated) screened.push_back(s);
  }

  std::vector<Individual> inf, fea;
  for (auto& s : screened) (s.cv > 0.0 ? inf : fea).push_back(s);

  std::vector<Individual> next;
  if (inf.size() > n) {
    // Boundary-focused: rank on negated objectives so the worse-objective
    // side (nearest the feasible boundary) wins.
    const auto vs = negated_objectives(inf);
    const int k = std::max(
        1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(inf.size())))));
    FitnessVector fit = spea2_fitness_vectors(vs, k);
    next = select_top(inf, fit, n);
  } else {
    next = inf;
    if (!fea.empty() && next.size() < n) {
      const auto fill =
          select_top(fea, spea2_fitness(fea, DominanceMode::objective()), n - next.size());
      next.insert(next.end(), fill.begin(), fill.end());
    }
  }
  const bool updated = !same_member_set(next, li.members);
  return {std::move(next), updated};
}

ApUpdate update_ap(const AuxState& ap, const std::vector<Individual>& offspring,
                   const std::vector<Individual>& mp, std::size_t n) {
  assert(ap.active);
  const std::size_t n_sub = n / 4;
  const int ci = ap.constraint;
  const auto s = merged(ap.members, offspring);
  if (s.empty()) return {{}, {}};

  if (ap.direction == Direction::Positive) {
    FitnessVector fit = spea2_fitness(s, DominanceMode::cdp_single(ci));
    return {select_top(s, fit, n_sub), std::move(fit)};
  }

  std::vector<Individual> target, reserve;
  for (const auto& m : s) (m.c[ci] > 0.0 ? target : reserve).push_back(m);

  if (target.empty()) {
    // never empty the population: fall back to the satisfying solutions
    FitnessVector fit = spea2_fitness(reserve, DominanceMode::cdp_single(ci));
    return {select_top(reserve, fit, n_sub), std::move(fit)};
  }

  FitnessVector diag = spea2_fitness_vectors(
      [&] {
        auto vs = std::vector<std::vector<double>>(target.size());
        for (std::size_t i = 0; i < target.size(); ++i) {
          vs[i] = target[i].f;
          vs[i].push_back(target[i].c[ci]);
        }
        return vs;
      }(),
      kAuxKnnK);

  std::vector<Individual> penalized, best;
  for (const auto& t : target) {
    bool dominated = false;
    for (const auto& m : mp)
      if (dominates_obj(m.f, t.f)) {
        dominated = true;
        break;
      }
    (dominated ? penalized : best).push_back(t);
  }

  std::vector<Individual> next;
  if (best.size() <= n_sub) {
    next = best;
    const std::size_t k = n_sub - best.size();
    if (k > 0 && !penalized.empty()) {
      const auto fill = select_top(
          penalized, spea2_fitness(penalized, DominanceMode::cdp_single(ci)), k);
      next.insert(next.end(), fill.begin(), fill.end());
    }
  } else {
    const auto vs = negated_with_violation(best, ci);
    next = select_top(best, spea2_fitness_vectors(vs, kAuxKnnK), n_sub);
  }
  return {std::move(next), std::move(diag)};
}

} // namespace dcf2d
