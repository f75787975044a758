#pragma once

#include <optional>

#include "crn/analysis.hpp"
#include "crn/sim.hpp"
#include "crn/trace.hpp"

namespace crn {

/// Quadratic relative entropy sum_i int (u_i - u_inf)^2 / u_inf dx.
double relative_entropy(const SimulationState& state, const EquilibriumState& eq);

/// Explicit entropy dissipation: twice the weighted Dirichlet form of each
/// species plus the pairwise reaction form with coefficients
/// a_ij u_j_inf + a_ji u_i_inf. Equals -dE/dt along solutions.
double entropy_dissipation(const SimulationState& state, const EquilibriumState& eq,
                           const ReactionNetwork& net);

/// Entropy-like functional of a source or transmission component measured
/// against its artificial unit-mass equilibrium (raw concentrations, not
/// differences). Throws WrongComponentKind on a target component.
double component_entropy(const SimulationState& state, const ComponentDecomposition& dec,
                         int component, const EquilibriumState& artificial);

/// Matching dissipation: diffusion + within-component reaction + out-flow
/// terms, minus the in-flow cross term when earlier components feed this one.
double component_dissipation(const SimulationState& state, const ReactionNetwork& net,
                             const ComponentDecomposition& dec, int component,
                             const EquilibriumState& artificial);

/// Relative entropy of a target component against its injected-mass
/// equilibrium (differences u - v_inf).
double target_entropy(const SimulationState& state, const ComponentDecomposition& dec,
                      int component, const EquilibriumState& equilibrium);

double target_dissipation(const SimulationState& state, const ReactionNetwork& net,
                          const ComponentDecomposition& dec, int component,
                          const EquilibriumState& equilibrium);

/// Constructive lower bound on the entropy-entropy-dissipation constant for
/// weakly reversible, fully diffusive networks:
///   lambda = min(2 C_P min_i d_i, xi_min * min_i u_inf / max_pair u_inf u_inf)
/// with C_P the discrete Poincare constant of the run's grid and xi_min the
/// minimum pair coefficient after completing reaction-less pairs through
/// shortest positive paths (each path coefficient sigma/(r-1) shared equally
/// across the K completed pairs). Throws DegenerateDiffusion if some d_i = 0.
double eed_lambda_lower_bound(const ReactionNetwork& net, const EquilibriumState& eq,
                              int grid_cells);

struct DecayReport {
  double lambda_fit = 0.0;
  std::optional<double> lambda_lower_bound;
  double window_start = 0.0;
  double window_end = 0.0;
  double fit_residual = 0.0;  // max |ln E - fitted line| over the window
};

/// Least-squares slope of ln(values) over [0.2 t_valid, t_valid], where
/// t_valid is the last time the value exceeds floor * value(0).
/// Throws InsufficientDecay when the series never halves.
DecayReport fit_exponential_rate(const std::vector<double>& times,
                                 const std::vector<double>& values, double floor = 1e-12);

/// Rate fit of the trace's entropy column.
DecayReport fit_decay_rate(const EntropyTrace& trace, double floor = 1e-12);

struct EedCheck {
  bool ok = true;
  int first_violation = -1;  // sample index when !ok
  double entropy = 0.0;
  double dissipation = 0.0;
};

/// D >= lambda_lb * E - 1e-9 E(0) at every sample.
EedCheck verify_eed(const EntropyTrace& trace, double lambda_lb);

}  // namespace crn
