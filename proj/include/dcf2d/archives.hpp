#ifndef DCF2D_ARCHIVES_HPP
#define DCF2D_ARCHIVES_HPP

#include "dcf2d/core.hpp"
#include "dcf2d/selection.hpp"

#include <optional>
#include <vector>

namespace dcf2d {

enum class Direction { Positive, Negative };

// Constraint-specific auxiliary population (capacity floor(N/4)).
struct AuxState {
  int constraint = -1; // 0-based index into Individual::c
  bool active = false;
  Direction direction = Direction::Positive;
  std::optional<int> protected_until; // generation stamp, set while active
  std::vector<Individual> members;
};

// Infeasible archive: members dominate at least one main-population member
// in objective space and are dominated by none (checked against the MP used
// at last update).
struct InfeasibleArchive {
  std::vector<Individual> members;
};

std::vector<Individual> update_mp(const std::vector<Individual>& mp,
                                  const std::vector<Individual>& offspring, std::size_t n);

std::vector<Individual> update_ap0(const std::vector<Individual>& ap0,
                                   const std::vector<Individual>& offspring, std::size_t n);

struct LiUpdate {
  std::vector<Individual> members;
  bool updated = false; // member identity set changed
};

LiUpdate update_li(const InfeasibleArchive& li, const std::vector<Individual>& offspring,
                   const std::vector<Individual>& mp, std::size_t n);

struct ApUpdate {
  std::vector<Individual> members;
  FitnessVector fitness; // diagnostic only; Alg. 1 never consumes it
};

ApUpdate update_ap(const AuxState& ap, const std::vector<Individual>& offspring,
                   const std::vector<Individual>& mp, std::size_t n);

// True when the archive invariant holds for every member against `mp`.
bool li_invariant_holds(const std::vector<Individual>& li, const std::vector<Individual>& mp);

// Identity comparison used for the LI `updated` flag: multisets of decision
// vectors, bit-exact.
bool same_member_set(const std::vector<Individual>& a, const std::vector<Individual>& b);

} // namespace dcf2d

#endif
