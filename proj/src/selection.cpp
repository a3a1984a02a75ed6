#include "dcf2d/selection.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace dcf2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-dimension min/max normalization; dimensions with a degenerate range
// are dropped from the distance.
std::vector<std::vector<double>> normalize(const std::vector<std::vector<double>>& vs) {
  if (vs.empty()) return {};
  const std::size_t m = vs[0].size();
  std::vector<double> lo(m, kInf), hi(m, -kInf);
  for (const auto& v : vs)
    for (std::size_t d = 0; d < m; ++d) {
      lo[d] = std::min(lo[d], v[d]);
      hi[d] = std::max(hi[d], v[d]);
    }
  std::vector<std::vector<double>> out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out[i].reserve(m);
    for (std::size_t d = 0; d < m; ++d) {
      const double range = hi[d] - lo[d];
      if (range > 1e-12) out[i].push_back((vs[i][d] - lo[d]) / range);
    }
  }
  return out;
}

// sigma_k per point: distance to the k-th nearest other point (inf when
// there are not enough neighbors).
std::vector<double> kth_distances(const std::vector<std::vector<double>>& vs, int k) {
  const std::size_t n = vs.size();
  std::vector<double> sigma(n, kInf);
  if (k < 1 || n == 0 || static_cast<std::size_t>(k) > n - 1) return sigma;
  const auto nv = normalize(vs);
  std::vector<double> dist;
  dist.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (std::size_t d = 0; d < nv[i].size(); ++d) {
        const double t = nv[i][d] - nv[j][d];
        d2 += t * t;
      }
      dist.push_back(std::sqrt(d2));
    }
    std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
    sigma[i] = dist[k - 1];
  }
  return sigma;
}

template <typename DominatesFn>
FitnessVector raw_fitness(std::size_t n, DominatesFn&& dom) {
  std::vector<double> strength(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dom(i, j)) strength[i] += 1.0;
  FitnessVector r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dom(j, i)) r[i] += strength[j];
  return r;
}

} // namespace

FitnessVector knn_density_fitness(const std::vector<std::vector<double>>& points, int k) {
  const auto sigma = kth_distances(points, k);
  FitnessVector fit(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    fit[i] = std::isinf(sigma[i]) ? 0.0 : 1.0 / (sigma[i] + 2.0);
  return fit;
}

FitnessVector spea2_fitness(const std::vector<Individual>& pop, DominanceMode mode) {
  const std::size_t n = pop.size();
  assert(n >= 1);
  FitnessVector fit = raw_fitness(n, [&](std::size_t a, std::size_t b) {
    return dominates(pop[a], pop[b], mode);
  });
  std::vector<std::vector<double>> objs(n);
  for (std::size_t i = 0; i < n; ++i) objs[i] = pop[i].f;
  const int k = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
  const auto density = knn_density_fitness(objs, k);
  for (std::size_t i = 0; i < n; ++i) fit[i] += density[i];
  return fit;
}

FitnessVector spea2_fitness_vectors(const std::vector<std::vector<double>>& vs, int k) {
  const std::size_t n = vs.size();
  FitnessVector fit = raw_fitness(n, [&](std::size_t a, std::size_t b) {
    return dominates_obj(vs[a], vs[b]);
  });
  const auto density = knn_density_fitness(vs, k);
  for (std::size_t i = 0; i < n; ++i) fit[i] += density[i];
  return fit;
}

std::vector<std::size_t> select_top_indices(const std::vector<Individual>& pop,
                                            const FitnessVector& fitness, std::size_t n) {
  assert(pop.size() == fitness.size());
  std::vector<std::size_t> idx(pop.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (fitness[a] != fitness[b]) return fitness[a] < fitness[b];
    if (pop[a].f != pop[b].f) return pop[a].f < pop[b].f;
    return a < b;
  });
  if (n < idx.size()) idx.resize(n);
  return idx;
}

std::vector<Individual> select_top(const std::vector<Individual>& pop,
                                   const FitnessVector& fitness, std::size_t n) {
  std::vector<Individual> out;
  for (std::size_t i : select_top_indices(pop, fitness, n)) out.push_back(pop[i]);
  return out;
}

} // namespace dcf2d
