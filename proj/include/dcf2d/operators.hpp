#ifndef DCF2D_OPERATORS_HPP
#define DCF2D_OPERATORS_HPP

#include "dcf2d/problems.hpp"
#include "dcf2d/rng.hpp"

#include <vector>

namespace dcf2d {

struct DEConfig {
  double F = 0.5;
  double CR = 0.9;
  double p_best_frac = 0.1;
  double pm = -1.0; // <= 0 means 1/D at point of use
  double eta_m = 20.0;
};

// v = r1 + F (r2 - r3)
std::vector<double> de_rand_1(const std::vector<double>& r1, const std::vector<double>& r2,
                              const std::vector<double>& r3, const DEConfig& cfg);

// v = x + F (pbest - x) + F (r2 - r3)
std::vector<double> de_current_to_pbest(const std::vector<double>& x,
                                        const std::vector<double>& pbest,
                                        const std::vector<double>& r2,
                                        const std::vector<double>& r3, const DEConfig& cfg);

// Binomial crossover with one forced mutant coordinate.
std::vector<double> binomial_crossover(const std::vector<double>& target,
                                       const std::vector<double>& mutant, double cr, Rng& rng);

// Clamp to bounds, then polynomial mutation per coordinate.
std::vector<double> repair_and_mutate(std::vector<double> child, const Problem& problem,
                                      const DEConfig& cfg, Rng& rng);

} // namespace dcf2d

#endif
