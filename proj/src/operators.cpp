#include "dcf2d/operators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace dcf2d {

std::vector<double> de_rand_1(const std::vector<double>& r1, const std::vector<double>& r2,
                              const std::vector<double>& r3, const DEConfig& cfg) {
  assert(r1.size() == r2.size() && r2.size() == r3.size());
  std::vector<double> v(r1.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = r1[i] + cfg.F * (r2[i] - r3[i]);
  return v;
}

std::vector<double> de_current_to_pbest(const std::vector<double>& x,
                                        const std::vector<double>& pbest,
                                        const std::vector<double>& r2,
                                        const std::vector<double>& r3, const DEConfig& cfg) {
  assert(x.size() == pbest.size() && x.size() == r2.size() && x.size() == r3.size());
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = x[i] + cfg.F * (pbest[i] - x[i]) + cfg.F * (r2[i] - r3[i]);
  return v;
}

std::vector<double> binomial_crossover(const std::vector<double>& target,
                                       const std::vector<double>& mutant, double cr, Rng& rng) {
  assert(target.size() == mutant.size());
  std::vector<double> child(target.size());
  const std::size_t j_rand = rng.index(target.size());
  for (std::size_t i = 0; i < child.size(); ++i)
    child[i] = (i == j_rand || rng.uniform01() < cr) ? mutant[i] : target[i];
  return child;
}

std::vector<double> repair_and_mutate(std::vector<double> child, const Problem& problem,
                                      const DEConfig& cfg, Rng& rng) {
  const double pm = cfg.pm > 0.0 ? cfg.pm : 1.0 / static_cast<double>(problem.dim);
  for (std::size_t i = 0; i < child.size(); ++i) {
    const double lo = problem.lower[i], hi = problem.upper[i];
    child[i] = std::clamp(child[i], lo, hi);
    if (rng.uniform01() >= pm) continue;
    // bounded polynomial mutation, distribution index eta_m
    const double span = hi - lo;
    const double d1 = (child[i] - lo) / span;
    const double d2 = (hi - child[i]) / span;
    const double u = rng.uniform01();
    const double mpow = 1.0 / (cfg.eta_m + 1.0);
    double dq;
    if (u <= 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, cfg.eta_m + 1.0);
      dq = std::pow(val, mpow) - 1.0;
    } else {
      const double val =
          2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, cfg.eta_m + 1.0);
      dq = 1.0 - std::pow(val, mpow);
    }
    child[i] = std::clamp(child[i] + dq * span, lo, hi);
  }
  return child;
}

} // namespace dcf2d
