#include "dcf2d/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace dcf2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Non-dominated subset of the points selected by `idx`, bi-objective
// minimization, by plane sweep. Duplicate objective vectors are all kept
// (identity never dominates).
std::vector<char> nondominated_mask_2d(const std::vector<Individual>& pts,
                                       const std::vector<std::size_t>& idx) {
  std::vector<char> mask(pts.size(), 0);
  if (idx.empty()) return mask;
  std::vector<std::size_t> order = idx;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a].f[0] != pts[b].f[0]) return pts[a].f[0] < pts[b].f[0];
    return pts[a].f[1] < pts[b].f[1];
  });
  double best_f2 = kInf; // min f2 over strictly smaller f1
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    const double f1 = pts[order[i]].f[0];
    while (j + 1 < order.size() && pts[order[j + 1]].f[0] == f1) ++j;
    const double group_min = pts[order[i]].f[1];
    for (std::size_t k = i; k <= j; ++k) {
      const auto& p = pts[order[k]];
      if (p.f[1] == group_min && p.f[1] < best_f2) mask[order[k]] = 1;
    }
    best_f2 = std::min(best_f2, group_min);
    i = j + 1;
  }
  return mask;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

struct Point2 {
  double f1, f2;
};

bool dom2(const Point2& a, const Point2& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

} // namespace

std::string to_string(CouplingType t) {
  switch (t) {
    case CouplingType::TypeA: return "A";
    case CouplingType::TypeB: return "B";
    case CouplingType::TypeC: return "C";
    case CouplingType::TypeD: return "D";
  }
  return "?";
}

GridSample sample_grid(const Problem& problem, int resolution) {
  if (resolution < 2) throw std::invalid_argument("sample_grid: resolution < 2");
  if (problem.n_obj != 2) throw std::invalid_argument("sample_grid: needs M = 2");
  GridSample sample;
  sample.resolution = resolution;
  sample.n_con = problem.n_con;

  if (problem.ct_slice) {
    // (x1, distance) parameterization, exact for the CT family. Distance
    // layers are offset by 1e-9 so no layer sits exactly on a constraint
    // boundary; the g = 0 layer stays exact so the unconstrained front is hit.
    std::vector<double> sweep{0.0};
    for (int j = 1; j <= 10; ++j) sweep.push_back(0.05 * j + 1e-9);
    sample.points.reserve(static_cast<std::size_t>(resolution) * sweep.size());
    for (double g : sweep) {
      for (int i = 0; i < resolution; ++i) {
        std::vector<double> x(problem.dim, 0.0);
        x[0] = static_cast<double>(i) / static_cast<double>(resolution - 1);
        x[1] = std::sqrt(g);
        sample.points.push_back(problem.evaluate(std::move(x)));
      }
    }
    return sample;
  }

  if (problem.dim > 3)
    throw std::invalid_argument("sample_grid: full-grid fallback needs dim <= 3");
  std::vector<std::size_t> counter(problem.dim, 0);
  while (true) {
    std::vector<double> x(problem.dim);
    for (int d = 0; d < problem.dim; ++d)
      x[d] = problem.lower[d] + (problem.upper[d] - problem.lower[d]) *
                                    static_cast<double>(counter[d]) /
                                    static_cast<double>(resolution - 1);
    sample.points.push_back(problem.evaluate(std::move(x)));
    int d = 0;
    for (; d < problem.dim; ++d) {
      if (++counter[d] < static_cast<std::size_t>(resolution)) break;
      counter[d] = 0;
    }
    if (d == problem.dim) break;
  }
  return sample;
}

void label_fronts(GridSample& sample, double tol_match) {
  const auto& pts = sample.points;
  const std::size_t n = pts.size();
  sample.labels.assign(n, FrontLabels{});
  for (auto& l : sample.labels) {
    l.scpf.assign(sample.n_con, false);
    l.rcpf.assign(sample.n_con, false);
  }

  const auto upf_mask = nondominated_mask_2d(pts, all_indices(n));
  std::vector<std::size_t> feasible, infeasible;
  for (std::size_t i = 0; i < n; ++i) (pts[i].cv == 0.0 ? feasible : infeasible).push_back(i);
  const auto cpf_mask = nondominated_mask_2d(pts, feasible);

  std::vector<std::vector<char>> scpf_masks(sample.n_con);
  for (int c = 0; c < sample.n_con; ++c) {
    std::vector<std::size_t> sat;
    for (std::size_t i = 0; i < n; ++i)
      if (pts[i].c[c] == 0.0) sat.push_back(i);
    scpf_masks[c] = nondominated_mask_2d(pts, sat);
  }

  for (std::size_t i = 0; i < n; ++i) {
    sample.labels[i].upf = upf_mask[i];
    sample.labels[i].cpf = cpf_mask[i];
    for (int c = 0; c < sample.n_con; ++c) sample.labels[i].scpf[c] = scpf_masks[c][i];
  }

  // ICPF: CPF points not matched by any single-constraint front point, in
  // objectives normalized by the CPF bounding box.
  std::vector<std::size_t> cpf_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (cpf_mask[i]) cpf_idx.push_back(i);
  if (!cpf_idx.empty()) {
    double lo[2] = {kInf, kInf}, hi[2] = {-kInf, -kInf};
    for (std::size_t i : cpf_idx)
      for (int d = 0; d < 2; ++d) {
        lo[d] = std::min(lo[d], pts[i].f[d]);
        hi[d] = std::max(hi[d], pts[i].f[d]);
      }
    double scale[2];
    for (int d = 0; d < 2; ++d) {
      const double range = hi[d] - lo[d];
      scale[d] = range > 1e-12 ? 1.0 / range : 0.0; // degenerate dim ignored
    }
    std::vector<std::size_t> scpf_union;
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < sample.n_con; ++c)
        if (scpf_masks[c][i]) {
          scpf_union.push_back(i);
          break;
        }
    for (std::size_t i : cpf_idx) {
      double best = kInf;
      for (std::size_t j : scpf_union) {
        double d2 = 0.0;
        for (int d = 0; d < 2; ++d) {
          const double t = (pts[i].f[d] - pts[j].f[d]) * scale[d];
          d2 += t * t;
        }
        best = std::min(best, d2);
        if (best <= tol_match * tol_match) break;
      }
      sample.labels[i].icpf = best > tol_match * tol_match;
    }
  }

  sample.labeled = true;

  // RCPF_i: infeasible points violating constraint i that dominate some
  // ICPF point with no infeasible point strictly between the two.
  std::vector<Point2> icpf;
  for (std::size_t i : cpf_idx)
    if (sample.labels[i].icpf) icpf.push_back({pts[i].f[0], pts[i].f[1]});
  if (icpf.empty()) return; // no ICPF -> every RCPF_i empty
  std::sort(icpf.begin(), icpf.end(),
            [](const Point2& a, const Point2& b) { return a.f1 < b.f1; });

  std::vector<Point2> inf_pts(infeasible.size());
  for (std::size_t k = 0; k < infeasible.size(); ++k)
    inf_pts[k] = {pts[infeasible[k]].f[0], pts[infeasible[k]].f[1]};

  std::vector<Point2> stair;
  for (std::size_t k = 0; k < infeasible.size(); ++k) {
    const Point2 x = inf_pts[k];
    // minimal staircase of infeasible points dominated by x
    stair.clear();
    for (const auto& z : inf_pts)
      if (dom2(x, z)) stair.push_back(z);
    std::sort(stair.begin(), stair.end(), [](const Point2& a, const Point2& b) {
      if (a.f1 != b.f1) return a.f1 < b.f1;
      return a.f2 < b.f2;
    });
    std::vector<Point2> minimal;
    double best_f2 = kInf;
    for (const auto& z : stair)
      if (z.f2 < best_f2) {
        minimal.push_back(z);
        best_f2 = z.f2;
      }
    bool qualified = false;
    for (const auto& y : icpf) {
      if (!dom2(x, y)) continue;
      bool blocked = false;
      for (const auto& z : minimal) {
        if (z.f1 > y.f1) break;
        if (dom2(z, y)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) {
        qualified = true;
        break;
      }
    }
    if (qualified) {
      const std::size_t i = infeasible[k];
      for (int c = 0; c < sample.n_con; ++c)
        if (pts[i].c[c] > 0.0) sample.labels[i].rcpf[c] = true;
    }
  }
}

CouplingType classify_coupling(const GridSample& sample, double tol_match) {
  if (sample.n_con < 2) throw std::invalid_argument("classify_coupling: needs n_con >= 2");
  const auto& pts = sample.points;
  std::vector<std::size_t> cpf_idx;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (sample.labels[i].cpf) cpf_idx.push_back(i);
  if (cpf_idx.empty()) throw std::runtime_error("classify_coupling: no CPF points found");

  double lo[2] = {kInf, kInf}, hi[2] = {-kInf, -kInf};
  for (std::size_t i : cpf_idx)
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], pts[i].f[d]);
      hi[d] = std::max(hi[d], pts[i].f[d]);
    }
  double scale[2];
  for (int d = 0; d < 2; ++d) {
    const double range = hi[d] - lo[d];
    scale[d] = range > 1e-12 ? 1.0 / range : 0.0;
  }

  bool all_icpf = true;
  for (std::size_t i : cpf_idx) all_icpf = all_icpf && sample.labels[i].icpf;
  bool any_icpf = false;
  for (std::size_t i : cpf_idx) any_icpf = any_icpf || sample.labels[i].icpf;

  int relevant = 0;
  for (int c = 0; c < sample.n_con; ++c) {
    bool touches = false;
    for (std::size_t i = 0; i < pts.size() && !touches; ++i) {
      if (!sample.labels[i].scpf[c]) continue;
      for (std::size_t j : cpf_idx) {
        double d2 = 0.0;
        for (int d = 0; d < 2; ++d) {
          const double t = (pts[i].f[d] - pts[j].f[d]) * scale[d];
          d2 += t * t;
        }
        if (d2 <= tol_match * tol_match) {
          touches = true;
          break;
        }
      }
    }
    if (touches) ++relevant;
  }

  if (all_icpf) return CouplingType::TypeD;
  if (any_icpf) return CouplingType::TypeC;
  return relevant >= 2 ? CouplingType::TypeA : CouplingType::TypeB;
}

ReferenceSet build_reference_set(const GridSample& sample, std::size_t max_points) {
  std::vector<std::vector<double>> cpf;
  for (std::size_t i = 0; i < sample.points.size(); ++i)
    if (sample.labels[i].cpf) cpf.push_back(sample.points[i].f);
  if (cpf.empty()) throw std::runtime_error("build_reference_set: no CPF points");
  std::sort(cpf.begin(), cpf.end());
  cpf.erase(std::unique(cpf.begin(), cpf.end()), cpf.end());
  if (cpf.size() <= max_points) return {std::move(cpf)};

  // farthest-point subsample, seeded at the lexicographic minimum
  std::vector<std::vector<double>> chosen{cpf.front()};
  std::vector<double> dist(cpf.size(), kInf);
  std::size_t last = 0;
  while (chosen.size() < max_points) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < cpf.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < cpf[i].size(); ++d) {
        const double t = cpf[i][d] - cpf[last][d];
        d2 += t * t;
      }
      dist[i] = std::min(dist[i], d2);
      if (dist[i] > best) {
        best = dist[i];
        best_i = i;
      }
    }
    if (best <= 0.0) break;
    chosen.push_back(cpf[best_i]);
    last = best_i;
  }
  std::sort(chosen.begin(), chosen.end());
  return {std::move(chosen)};
}

void write_labeled_csv(const GridSample& sample, std::ostream& os) {
  os << "f1,f2,cv";
  for (int c = 0; c < sample.n_con; ++c) os << ",c_" << (c + 1);
  os << ",upf,cpf,icpf";
  for (int c = 0; c < sample.n_con; ++c) os << ",scpf_" << (c + 1);
  for (int c = 0; c < sample.n_con; ++c) os << ",rcpf_" << (c + 1);
  os << "\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    const auto& p = sample.points[i];
    const auto& l = sample.labels[i];
    num(p.f[0]);
    os << ',';
    num(p.f[1]);
    os << ',';
    num(p.cv);
    for (int c = 0; c < sample.n_con; ++c) {
      os << ',';
      num(p.c[c]);
    }
    os << ',' << int(l.upf) << ',' << int(l.cpf) << ',' << int(l.icpf);
    for (int c = 0; c < sample.n_con; ++c) os << ',' << int(l.scpf[c]);
    for (int c = 0; c < sample.n_con; ++c) os << ',' << int(l.rcpf[c]);
    os << '\n';
  }
}

} // namespace dcf2d
