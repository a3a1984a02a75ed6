#ifndef DCF2D_CORE_HPP
#define DCF2D_CORE_HPP

#include <cstddef>
#include <vector>

namespace dcf2d {

// One evaluated solution: decision vector, objectives, per-constraint
// violations (clamped at zero) and their sum.
struct Individual {
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> c;
  double cv = 0.0;

  bool feasible() const { return cv == 0.0; }
};

// Dominance relation selector. CdpSingle applies the constraint dominance
// principle with a single constraint's violation in place of the total.
struct DominanceMode {
  enum class Kind { Objective, CdpAll, CdpSingle };
  Kind kind = Kind::Objective;
  int constraint = -1; // 0-based, valid for CdpSingle

  static DominanceMode objective() { return {Kind::Objective, -1}; }
  static DominanceMode cdp_all() { return {Kind::CdpAll, -1}; }
  static DominanceMode cdp_single(int i) { return {Kind::CdpSingle, i}; }
};

// Clamped violation per constraint: inequalities g <= 0, equalities
// |h| <= delta. Output is the p inequality entries followed by the q
// equality entries.
std::vector<double> evaluate_violations(const std::vector<double>& g,
                                        const std::vector<double>& h,
                                        double delta);

double total_violation(const std::vector<double>& c);

// Pareto dominance on raw objective vectors (minimization).
bool dominates_obj(const std::vector<double>& fa, const std::vector<double>& fb);

bool dominates(const Individual& a, const Individual& b, DominanceMode mode);

// Members dominated by no other member under `mode`; input order preserved.
std::vector<Individual> nondominated_subset(const std::vector<Individual>& pop,
                                            DominanceMode mode);
std::vector<std::size_t> nondominated_indices(const std::vector<Individual>& pop,
                                              DominanceMode mode);

} // namespace dcf2d

#endif
