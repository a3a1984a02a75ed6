#ifndef DCF2D_PROBLEMS_HPP
#define DCF2D_PROBLEMS_HPP

#include "dcf2d/core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dcf2d {

// A box-constrained CMOP with inequality constraints (raw value <= 0 means
// satisfied). Evaluation is deterministic and side-effect free.
struct Problem {
  std::string name;
  int dim = 0;    // D
  int n_obj = 2;  // M
  int n_con = 0;
  std::vector<double> lower, upper;
  std::function<void(const std::vector<double>& x, std::vector<double>& f,
                     std::vector<double>& g_raw)>
      eval;
  // True when objectives and constraints depend on x only through
  // (x1, sum of squares of the remaining coordinates); lets the front oracle
  // sample a 2-parameter slice instead of the full decision space.
  bool ct_slice = false;

  Individual evaluate(std::vector<double> x) const;
};

// Built-in synthetic suite. The shared base has
//   f1 = x1 + g,  f2 = (1 - x1) + g,  g = sum_{j>=2} x_j^2,
//   x1 in [0,1], x_j in [-1,1]; the attainable region is f1+f2 >= 1 and the
// unconstrained front is the segment f1+f2 = 1.
Problem ct_a(int dim = 5);
Problem ct_b(int dim = 5);
Problem ct_c(int dim = 5);
Problem ct_d(int dim = 15);

// Lookup by CLI name ("CT-A".."CT-D"); dim <= 0 selects the problem default.
// Throws std::invalid_argument for unknown names.
Problem problem_by_name(const std::string& name, int dim = 0);
std::vector<std::string> problem_names();

} // namespace dcf2d

#endif
