#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <vector>

#include "crn/analysis.hpp"
#include "crn/network.hpp"
#include "crn/trace.hpp"

namespace crn {

/// Uniform cell-centered grid on the unit interval, |Omega| = 1.
struct Grid {
  int n = 0;
  double dx = 0.0;

  static Grid unit_interval(int cells) { return {cells, 1.0 / cells}; }
  double center(int k) const { return (k + 0.5) * dx; }
};

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 40.0;
  int sample_every = 20;
  double linear_solver_tol = 1e-12;
  int grid_cells = 0;  // 0 = network default
};

struct SimulationState {
  double t = 0.0;
  Grid grid;
  Eigen::MatrixXd fields;  // N x n, row i = species i at cell centers
};

/// Second-difference Neumann Laplacian with reflecting ghost cells, written
/// in flux form so the output sums to zero up to rounding.
Eigen::VectorXd neumann_laplacian(const Eigen::VectorXd& field, const Grid& grid);

/// Midpoint quadrature; exact for the discrete mass.
double spatial_average(const Eigen::VectorXd& field, const Grid& grid);

/// Smallest nonzero eigenvalue of the discrete Neumann operator -L on n
/// cells: 4 n^2 sin^2(pi / 2n), the discrete Poincare constant (-> pi^2).
double neumann_spectral_gap(int n);

SimulationState initial_state(const ReactionNetwork& net, const Grid& grid);

double total_mass(const SimulationState& state);

/// Backward-Euler integrator for X_t = D Lap X + A X. The implicit operator
/// is assembled and factorized once; every step is one banded direct solve
/// with a residual check against `linear_solver_tol`.
class BackwardEulerStepper {
 public:
  BackwardEulerStepper(const ReactionMatrix& matrix, const std::vector<double>& diffusions,
                       const Grid& grid, double dt, double tol);

  /// Advance by one dt in place. Throws SolverDivergence when the solve
  /// misses the residual target.
  void step(SimulationState& state) const;

  double dt() const { return dt_; }

 private:
  Eigen::SparseMatrix<double> system_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver_;
  double dt_ = 0.0;
  double tol_ = 0.0;
  int species_ = 0;
  int cells_ = 0;
};

struct SimulationResult {
  EntropyTrace trace;
  SimulationState final_state;
  double max_mass_drift = 0.0;                 // max |m(t) - m(0)| / m(0), every step
  double min_value = 0.0;                      // most negative cell value seen
  Eigen::VectorXd integral_averages;           // per species, backward-Euler-exact rule
  Eigen::VectorXd integral_averages_trapezoid; // per species, composite trapezoid
};

/// Run the full time integration, sampling entropy, dissipation, distances
/// and masses every `sample_every` steps (plus the final step).
SimulationResult simulate(const ReactionNetwork& net, const NetworkAnalysis& analysis,
                          const SolverConfig& config);

/// Convenience overload that analyzes first.
SimulationResult simulate(const ReactionNetwork& net, const SolverConfig& config);

}  // namespace crn
