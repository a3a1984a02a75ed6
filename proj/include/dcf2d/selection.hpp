#ifndef DCF2D_SELECTION_HPP
#define DCF2D_SELECTION_HPP

#include "dcf2d/core.hpp"

#include <cstddef>
#include <vector>

namespace dcf2d {

using FitnessVector = std::vector<double>; // lower is better

// SPEA2 fitness R(i) + D(i): R is the sum of strengths of all dominators,
// D = 1/(sigma_k + 2) with sigma_k the k-th nearest neighbor distance in
// objective space, k = floor(sqrt(n)) (at least 1). Distances are computed on
// objectives normalized to the candidate set's per-dimension range.
FitnessVector spea2_fitness(const std::vector<Individual>& pop, DominanceMode mode);

// Same R + D scheme over arbitrary vectors under plain componentwise-min
// dominance, with an explicit neighbor count k.
FitnessVector spea2_fitness_vectors(const std::vector<std::vector<double>>& vs, int k);

// Density term alone: 1/(sigma_k + 2); all zero when |points| <= k.
FitnessVector knn_density_fitness(const std::vector<std::vector<double>>& points, int k);

// The n best by fitness. Ties break lexicographically by objective vector,
// then by insertion index; output comes back in that sorted order.
std::vector<Individual> select_top(const std::vector<Individual>& pop,
                                   const FitnessVector& fitness, std::size_t n);
std::vector<std::size_t> select_top_indices(const std::vector<Individual>& pop,
                                            const FitnessVector& fitness, std::size_t n);

} // namespace dcf2d

#endif
