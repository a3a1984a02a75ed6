#ifndef DCF2D_ORACLE_HPP
#define DCF2D_ORACLE_HPP

#include "dcf2d/metrics.hpp"
#include "dcf2d/problems.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dcf2d {

enum class CouplingType { TypeA, TypeB, TypeC, TypeD };
std::string to_string(CouplingType t);

// Per-point membership flags. SCPF/RCPF flags are per constraint.
struct FrontLabels {
  bool upf = false;
  bool cpf = false;
  bool icpf = false;
  std::vector<bool> scpf; // size n_con
  std::vector<bool> rcpf; // size n_con
};

// Discretized ground truth for one problem: an evaluated point cloud plus
// front membership labels computed purely by set definitions.
struct GridSample {
  int resolution = 0;
  int n_con = 0;
  std::vector<Individual> points;
  std::vector<FrontLabels> labels; // filled by label_fronts
  bool labeled = false;
};

// Deterministic point cloud. Problems flagged ct_slice are sampled on an
// (x1, distance) slice: `resolution` points along x1 and a fixed distance
// sweep {0, 0.05, 0.10, ...} nudged by 1e-9 so layers never sit exactly on a
// constraint boundary. Other problems fall back to a full grid (dim <= 3).
// Throws std::invalid_argument for resolution < 2.
GridSample sample_grid(const Problem& problem, int resolution);

// Labels CPF/UPF/SCPF_i, then ICPF (CPF points farther than tol from every
// single-constraint front point, in objectives normalized by the CPF
// bounding box) and RCPF_i (infeasible points violating constraint i that
// dominate an ICPF point with no infeasible point strictly between).
void label_fronts(GridSample& sample, double tol_match = 1e-3);

// Fig.-1 taxonomy from the labeled sample:
//   TypeD: every CPF point is ICPF.
//   TypeC: ICPF nonempty and some constraint's front touches the CPF.
//   TypeA: ICPF empty, two or more constraints' fronts touch the CPF.
//   TypeB: ICPF empty, exactly one does.
// Throws std::runtime_error when the sample has no CPF points.
CouplingType classify_coupling(const GridSample& sample, double tol_match = 1e-3);

// Farthest-point subsample of the CPF, used as the IGD+ reference front.
ReferenceSet build_reference_set(const GridSample& sample, std::size_t max_points = 1000);

// CSV with one row per point: f1..fM, cv, c_1..c_K, label flags.
void write_labeled_csv(const GridSample& sample, std::ostream& os);

} // namespace dcf2d

#endif
