#include "dcf2d/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dcf2d {

double igd_plus(const ReferenceSet& p, const std::vector<std::vector<double>>& q) {
  if (p.points.empty()) throw std::invalid_argument("igd_plus: empty reference set");
  if (q.empty()) throw std::invalid_argument("igd_plus: empty approximation set");
  const std::size_t m = p.points[0].size();
  double total = 0.0;
  for (const auto& v : p.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : q) {
      if (u.size() != m) throw std::invalid_argument("igd_plus: dimension mismatch");
      double d2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double t = std::max(u[i] - v[i], 0.0);
        d2 += t * t;
      }
      best = std::min(best, std::sqrt(d2));
    }
    total += best;
  }
  return total / static_cast<double>(p.points.size());
}

double hypervolume_2d(const std::vector<std::vector<double>>& q,
                      const std::vector<double>& r) {
  assert(r.size() == 2);
  std::vector<std::pair<double, double>> pts;
  for (const auto& u : q) {
    assert(u.size() == 2);
    if (u[0] < r[0] && u[1] < r[1]) pts.emplace_back(u[0], u[1]);
  }
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end());
  // staircase sweep; dominated and duplicate points contribute nothing
  double hv = 0.0;
  double best_f2 = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> stair;
  for (const auto& [f1, f2] : pts)
    if (f2 < best_f2) {
      stair.emplace_back(f1, f2);
      best_f2 = f2;
    }
  for (std::size_t i = 0; i < stair.size(); ++i) {
    const double next_f1 = (i + 1 < stair.size()) ? stair[i + 1].first : r[0];
    hv += (next_f1 - stair[i].first) * (r[1] - stair[i].second);
  }
  return hv;
}

namespace {

std::vector<double> midranks(const std::vector<double>& pooled_sorted) {
  const std::size_t n = pooled_sorted.size();
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled_sorted[j + 1] == pooled_sorted[i]) ++j;
    const double mid = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) rank[k] = mid;
    i = j + 1;
  }
  return rank;
}

// Exact tail probabilities of the rank-sum statistic by enumerating all
// C(n+m, n) assignments of the pooled midranks to the first sample.
void exact_tails(const std::vector<double>& ranks, std::size_t n, double w,
                 double& p_le, double& p_ge) {
  const std::size_t total = ranks.size();
  std::vector<std::size_t> comb(n);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  const double eps = 1e-9;
  unsigned long long count = 0, le = 0, ge = 0;
  while (true) {
    double s = 0.0;
    for (std::size_t i : comb) s += ranks[i];
    ++count;
    if (s <= w + eps) ++le;
    if (s >= w - eps) ++ge;
    // next combination
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (comb[k] != k + total - n) {
        ++comb[k];
        for (std::size_t j = k + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        k = n + 1;
        break;
      }
    }
    if (k != n + 1) break;
  }
  p_le = static_cast<double>(le) / static_cast<double>(count);
  p_ge = static_cast<double>(ge) / static_cast<double>(count);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b,
                                 Alternative alt) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
  const std::size_t n = a.size(), m = b.size();
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<double> sorted(pooled.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = pooled[order[i]];
  const auto ranks_sorted = midranks(sorted);
  std::vector<double> rank_of(pooled.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank_of[order[i]] = ranks_sorted[i];

  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i) w += rank_of[i];

  double p_le, p_ge;
  if (n + m <= 20) {
    exact_tails(ranks_sorted, n, w, p_le, p_ge);
  } else {
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    const double total = nn + mm;
    const double mean = nn * (total + 1.0) / 2.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    const double var =
        nn * mm / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if (var <= 0.0) {
      p_le = p_ge = 1.0;
    } else {
      const double sd = std::sqrt(var);
      p_ge = 1.0 - normal_cdf((w - mean - 0.5) / sd);
      p_le = normal_cdf((w - mean + 0.5) / sd);
    }
  }

  WilcoxonResult res;
  res.statistic = w;
  switch (alt) {
    case Alternative::TwoSided: res.p_value = std::min(1.0, 2.0 * std::min(p_le, p_ge)); break;
    case Alternative::Greater: res.p_value = p_ge; break;
    case Alternative::Less: res.p_value = p_le; break;
  }
  return res;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double iqr(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("iqr: empty sample");
  std::sort(v.begin(), v.end());
  auto quantile = [&](double p) {
    const double h = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return quantile(0.75) - quantile(0.25);
}

} // namespace dcf2d
