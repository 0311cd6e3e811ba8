#ifndef EPATLAS_EPFINDER_HPP
#define EPATLAS_EPFINDER_HPP

#include <string>
#include <vector>

#include "epatlas/charpoly.hpp"
#include "epatlas/field.hpp"
#include "epatlas/types.hpp"

namespace epatlas {

struct ScanAxis {
  std::string name;  // "k_x", "k_y", "k_z"
  double lo = -3.141592653589793;
  double hi = 3.141592653589793;
  int samples = 101;
};

struct ScanConfig {
  std::vector<ScanAxis> axes;
  double cluster_radius = 1e-6;  // eigenvalue clustering scale at EPs
  double rank_tol = 1e-8;        // SVD rank cut for Jordan structure
  double refine_tol = 1e-12;     // Gauss-Newton convergence target
  double accept_tol = 1e-8;      // residual below which a point is kept
  int max_refine_iters = 200;
  int max_candidates = 64;       // refinement seeds per pass
};

struct EigCluster {
  Complex mean{0.0, 0.0};
  int count = 0;
  double spread = 0.0;  // max |eig - mean| within the cluster
};

// Single-linkage clustering of an eigenvalue list at absolute tolerance.
std::vector<EigCluster> cluster_eigenvalues(const std::vector<Complex>& eigs,
                                            double tol);

struct JordanInfo {
  std::vector<int> blocks;  // block sizes, descending
  int largest = 1;
  int algebraic = 1;
  double spread = 0.0;
};

// Jordan partition of the eigenvalue cluster at `lambda` from the rank
// sequence of (H - lambda)^j. The rank cut for power j adapts to the
// observed cluster spread delta as max(rank_tol * smax, (4 delta)^j).
JordanInfo jordan_structure(const Matrix& H, Complex lambda, int algebraic,
                            double rank_tol, double spread);

struct EpPoint {
  std::vector<double> k;
  Complex eigenvalue{0.0, 0.0};
  // Coalescing distinct bands: the cluster multiplicity divided by the
  // generic band multiplicity (> 1 only for globally degenerate spectra,
  // where each "band" is itself a degenerate pair).
  int order = 1;
  int algebraic = 1;          // cluster multiplicity
  int band_multiplicity = 1;  // generic multiplicity of one band
  std::vector<int> blocks;    // Jordan partition, descending
  double residual = 0.0;      // normalized objective at the refined point
  bool defective = false;
  bool on_curve = false;
  std::string objective;      // "constraints" or "discriminant"
};

struct ScanResult {
  std::vector<EpPoint> points;
  bool discriminant_structurally_zero = false;
  long grid_evaluations = 0;
};

// Two-pass exceptional-point search: grid minima of the order-n constraint
// vector (EPn candidates), then of the pairwise discriminant (lower-order
// degeneracies), each refined by damped Gauss-Newton with central-difference
// Jacobians. When the full discriminant vanishes on most of the grid
// (globally degenerate spectra), the second pass switches to the
// discriminant of the distinct-eigenvalue clusters.
ScanResult scan(const HamiltonianField& f, const ScanConfig& cfg);

}  // namespace epatlas

#endif
