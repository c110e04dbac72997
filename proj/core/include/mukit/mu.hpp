#pragma once

#include <cstdint>
#include <optional>

#include "mukit/block_structure.hpp"
#include "mukit/matrix.hpp"

namespace mukit {

struct MuOptions {
  int restarts = 16;
  int max_iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int grid = 256;  // brute-force oracle only

  void validate() const;
};

struct LowerBound {
  double value = 0.0;
  UnitaryMember witness;
  bool converged = false;
  int iterations = 0;
};

struct UpperBound {
  double value = 0.0;
  ScalingMember witness;
  bool converged = false;
  int iterations = 0;
};

/// Multistart local ascent of rho(M U) over the unitary members of `b`.
///
/// The first start is U = I, so the result never drops below rho(M). Each
/// step moves along the eigenvalue-sensitivity gradient of the dominant
/// eigenvalue and retracts with `project_unitary`, halving the step until
/// the objective improves. Purely scalar structures additionally run cyclic
/// per-phase golden-section sweeps. The maximization is not convex, so the
/// value is a certified lower bound on mu but not necessarily mu itself.
LowerBound mu_lower(const Matrix& m, const BlockStructure& b, const MuOptions& opts = {});

/// Minimizes sigma_max(e^X M e^-X) over block log-scalings X with the last
/// block pinned to zero, using cyclic coordinate golden-section descent
/// followed by a line search along each sweep's displacement.
UpperBound mu_upper(const Matrix& m, const BlockStructure& b, const MuOptions& opts = {});

/// Returns -U / lambda for a dominant eigenvalue lambda of M U. The result
/// lies in the structure, has spectral norm 1 / rho(M U) and makes
/// I + M Delta singular.
Matrix destabilizing_perturbation(const Matrix& m, const UnitaryMember& u);

struct OracleResult {
  double value = 0.0;
  int grid = 0;              // points per angle actually used
  double grid_step = 0.0;    // 2 pi / grid
  double refined_step = 0.0; // spacing after the refinement rounds
  double last_gain = 0.0;    // improvement of the final refinement round
};

/// Exhaustive max of rho(M diag(e^{i phi})) for purely scalar structures with
/// at most four blocks. rho is invariant under a global phase, so the first
/// block's angle is held at 0 and the remaining angles are gridded; the best
/// cell is then refined twice with a 10x finer local grid. Four-block
/// structures use at most 64 points per angle.
OracleResult mu_bruteforce(const Matrix& m, const BlockStructure& b, const MuOptions& opts = {});

/// Euclidean gradient of rho(M U) with respect to U, restricted to the block
/// pattern of `b`. Zero when the dominant eigenvalue vanishes.
Matrix rho_gradient(const Matrix& m, const UnitaryMember& u, const BlockStructure& b);

struct MuReport {
  double lower = 0.0;
  double upper = 0.0;
  UnitaryMember u_witness;
  ScalingMember d_witness;
  std::optional<Matrix> perturbation;
  bool lower_converged = false;
  bool upper_converged = false;
  int lower_iterations = 0;
  int upper_iterations = 0;
  bool mu_near_zero = false;  // upper < 1e-3 sigma_max(M)
};

MuReport compute_mu(const Matrix& m, const BlockStructure& b, const MuOptions& opts = {});

/// Applies the log-scaling: entry (i, j) times e^{x[block(i)] - x[block(j)]}.
Matrix apply_log_scaling(const Matrix& m, const BlockStructure& b, std::span<const double> x);

}  // namespace mukit
