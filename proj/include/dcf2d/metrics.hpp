#ifndef DCF2D_METRICS_HPP
#define DCF2D_METRICS_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace dcf2d {

// Reference front P for IGD+; points are mutually non-dominated.
struct ReferenceSet {
  std::vector<std::vector<double>> points;
};

// IGD+ of approximation set Q against P. Throws std::invalid_argument on
// empty Q or dimension mismatch.
double igd_plus(const ReferenceSet& p, const std::vector<std::vector<double>>& q);

// Area dominated by Q relative to reference point R (minimization, M = 2).
double hypervolume_2d(const std::vector<std::vector<double>>& q,
                      const std::vector<double>& r);

enum class Alternative { TwoSided, Greater, Less };

struct WilcoxonResult {
  double statistic = 0.0; // rank sum of the first sample (midranks for ties)
  double p_value = 1.0;
};

// Rank-sum test. Exact p by enumeration for n+m <= 20, normal approximation
// with tie correction above. `Greater` tests whether `a` tends larger.
WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b,
                                 Alternative alt = Alternative::TwoSided);

double median(std::vector<double> v);
// interquartile range (q75 - q25, linear interpolation)
double iqr(std::vector<double> v);

} // namespace dcf2d

#endif
