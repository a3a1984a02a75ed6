#include "dcf2d/problems.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dcf2d {

namespace {

constexpr double kEqualityDelta = 1e-4; // unused by the CT suite (no equalities)

void ct_objectives(const std::vector<double>& x, std::vector<double>& f) {
  double g = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j) g += x[j] * x[j];
  f.resize(2);
  f[0] = x[0] + g;
  f[1] = (1.0 - x[0]) + g;
}

Problem ct_base(std::string name, int dim) {
  if (dim < 2) throw std::invalid_argument("CT problems need dim >= 2");
  Problem p;
  p.name = std::move(name);
  p.dim = dim;
  p.n_obj = 2;
  p.n_con = 2;
  p.lower.assign(dim, -1.0);
  p.upper.assign(dim, 1.0);
  p.lower[0] = 0.0;
  p.ct_slice = true;
  return p;
}

} // namespace

Individual Problem::evaluate(std::vector<double> x) const {
  assert(static_cast<int>(x.size()) == dim);
  Individual ind;
  ind.x = std::move(x);
  std::vector<double> g_raw;
  eval(ind.x, ind.f, g_raw);
  ind.c = evaluate_violations(g_raw, {}, kEqualityDelta);
  ind.cv = total_violation(ind.c);
  return ind;
}

// Two half-plane cuts whose boundaries cross the unconstrained front; the
// constrained front is assembled from parts of both single-constraint fronts.
Problem ct_a(int dim) {
  Problem p = ct_base("CT-A", dim);
  p.eval = [](const std::vector<double>& x, std::vector<double>& f,
              std::vector<double>& g) {
    ct_objectives(x, f);
    g.resize(2);
    g[0] = 1.4 - (2.0 * f[0] + f[1]);
    g[1] = 1.4 - (f[0] + 2.0 * f[1]);
  };
  return p;
}

// A band lifts the whole front to f1+f2 = 1.2; a blob over 0.5 < f1 < 0.7
// cuts a gap into it. The blob's own front stays on the unconstrained front,
// so only constraint 1 shapes the final one.
Problem ct_b(int dim) {
  Problem p = ct_base("CT-B", dim);
  p.eval = [](const std::vector<double>& x, std::vector<double>& f,
              std::vector<double>& g) {
    ct_objectives(x, f);
    const double s = f[0] + f[1];
    g.resize(2);
    g[0] = (1.2 - s) * (s - 0.8);
    g[1] = std::min({f[0] - 0.5, 0.7 - f[0], 1.4 - s});
  };
  return p;
}

// Same band, but the blob floats above the unconstrained front and is low
// enough that part of the final front presses against its upper boundary.
// That pressed part belongs to neither single-constraint front.
Problem ct_c(int dim) {
  Problem p = ct_base("CT-C", dim);
  p.eval = [](const std::vector<double>& x, std::vector<double>& f,
              std::vector<double>& g) {
    ct_objectives(x, f);
    const double s = f[0] + f[1];
    g.resize(2);
    g[0] = (1.2 - s) * (s - 0.8);
    g[1] = std::min({f[0] - 0.5, 0.7 - f[0], s - 1.05, 1.3 - s});
  };
  return p;
}

// The only fully feasible region is a pocket at f1+f2 in [1.4, 1.45] with
// |f1-f2| <= 0.02. Each constraint also admits a small box on the
// unconstrained front that dominates the pocket (so neither
// single-constraint front contains it), and the boxes exclude each other.
// Outside its feasible set, constraint 1's violation has a valley at
// f1+f2 = 4 where violation-first search settles, far from the pocket;
// constraint 2's violation shrinks toward the unconstrained front, so a
// search using c2 alone drifts below the pocket instead of into it.
Problem ct_d(int dim) {
  Problem p = ct_base("CT-D", dim);
  p.eval = [](const std::vector<double>& x, std::vector<double>& f,
              std::vector<double>& g) {
    ct_objectives(x, f);
    const double s = f[0] + f[1];
    const double d = f[0] - f[1];
    const double pocket = std::min({s - 1.4, 1.45 - s, 0.02 - std::abs(d)});
    const double box1 = std::min({s - 1.0, 1.05 - s, d - 0.3, 0.4 - d});
    const double box2 = std::min({s - 1.0, 1.05 - s, -d - 0.3, 0.4 + d});
    g.resize(2);
    g[0] = pocket >= 0.0 ? -pocket
           : box1 >= 0.0 ? -box1
                         : 0.2 * (s - 4.0) * (s - 4.0) + 0.25;
    g[1] = pocket >= 0.0 ? -pocket
           : box2 >= 0.0 ? -box2
                         : 0.05 + 0.15 * (s - 1.0) + 4.0 * std::max(0.0, d - 0.1);
  };
  return p;
}

Problem problem_by_name(const std::string& name, int dim) {
  if (name == "CT-A") return ct_a(dim > 0 ? dim : 5);
  if (name == "CT-B") return ct_b(dim > 0 ? dim : 5);
  if (name == "CT-C") return ct_c(dim > 0 ? dim : 5);
  if (name == "CT-D") return ct_d(dim > 0 ? dim : 15);
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() { return {"CT-A", "CT-B", "CT-C", "CT-D"}; }

} // namespace dcf2d
