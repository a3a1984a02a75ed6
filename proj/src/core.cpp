#include "dcf2d/core.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dcf2d {

std::vector<double> evaluate_violations(const std::vector<double>& g,
                                        const std::vector<double>& h,
                                        double delta) {
  assert(delta > 0.0);
  std::vector<double> c;
  c.reserve(g.size() + h.size());
  for (double v : g) c.push_back(std::max(0.0, v));
  for (double v : h) c.push_back(std::max(0.0, std::abs(v) - delta));
  return c;
}

double total_violation(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += v; // same summation order as the violation vector
  return s;
}

bool dominates_obj(const std::vector<double>& fa, const std::vector<double>& fb) {
  assert(fa.size() == fb.size());
  bool strict = false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i] > fb[i]) return false;
    if (fa[i] < fb[i]) strict = true;
  }
  return strict;
}

bool dominates(const Individual& a, const Individual& b, DominanceMode mode) {
  switch (mode.kind) {
    case DominanceMode::Kind::Objective:
      return dominates_obj(a.f, b.f);
    case DominanceMode::Kind::CdpAll: {
      const bool fa = a.cv == 0.0, fb = b.cv == 0.0;
      if (fa != fb) return fa;
      if (!fa) return a.cv < b.cv; // equal nonzero cv: neither dominates
      return dominates_obj(a.f, b.f);
    }
    case DominanceMode::Kind::CdpSingle: {
      assert(mode.constraint >= 0 &&
             static_cast<std::size_t>(mode.constraint) < a.c.size());
      const double ca = a.c[mode.constraint], cb = b.c[mode.constraint];
      const bool fa = ca == 0.0, fb = cb == 0.0;
      if (fa != fb) return fa;
      if (!fa) return ca < cb;
      return dominates_obj(a.f, b.f);
    }
  }
  return false;
}

std::vector<std::size_t> nondominated_indices(const std::vector<Individual>& pop,
                                              DominanceMode mode) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pop.size() && !dominated; ++j)
      if (j != i && dominates(pop[j], pop[i], mode)) dominated = true;
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::vector<Individual> nondominated_subset(const std::vector<Individual>& pop,
                                            DominanceMode mode) {
  std::vector<Individual> out;
  for (std::size_t i : nondominated_indices(pop, mode)) out.push_back(pop[i]);
  return out;
}

} // namespace dcf2d
