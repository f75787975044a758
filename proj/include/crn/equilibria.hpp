#pragma once

#include <Eigen/Dense>
#include <vector>

#include "crn/graph.hpp"
#include "crn/network.hpp"

namespace crn {

enum class EquilibriumKind { TrueEquilibrium, ArtificialUnitMass, TargetWithInjection };

const char* to_string(EquilibriumKind kind);

/// A strictly positive state with A x = 0 on the relevant reaction block and
/// prescribed total mass.
struct EquilibriumState {
  Eigen::VectorXd values;
  double mass = 0.0;
  EquilibriumKind kind = EquilibriumKind::TrueEquilibrium;
};

/// Equilibrium from the diagonal-minor formula u_j = M rho_jj / sum_i rho_ii.
/// Throws NotWeaklyReversible when the matrix is decomposable.
EquilibriumState equilibrium_cramer(const ReactionMatrix& m, double mass);

/// Independent route: least-squares solve of the augmented system
/// {A x = 0, sum x = M}. Throws NotWeaklyReversible / NonPositiveEquilibrium.
EquilibriumState equilibrium_nullspace(const ReactionMatrix& m, double mass);

/// Within-component reaction block of A for the given species subset, with
/// the diagonal recomputed so each column sums to zero (out-flow removed).
ReactionMatrix component_block(const ReactionMatrix& m, const std::vector<int>& component);

/// Unit-mass equilibrium of a component's internal reactions (Eq-style
/// artificial state for source and transmission components).
EquilibriumState artificial_equilibrium(const ReactionMatrix& block);

/// Injected-mass computation for target components and the related
/// diagnostics of the averaged linear dynamics.
struct InjectedMassResult {
  std::vector<double> per_component;       // zero for non-target components
  std::vector<int> non_target_species;     // original indices, ascending
  Eigen::VectorXd integral_of_averages;    // time integral per non-target species
  double condition_estimate = 0.0;         // 1-norm condition of the restricted matrix
};

/// Exact time integrals of the averaged concentrations of all non-target
/// species (the averages obey dU/dt = A U; the non-target restriction is
/// Hurwitz), then the Lemma-3.4 double sum per target component.
/// Throws SingularSubmatrix when the restriction is numerically singular.
InjectedMassResult injected_mass(const ReactionNetwork& net, const ComponentDecomposition& dec,
                                 const Eigen::VectorXd& initial_averages);

/// Positive equilibrium of a target component with total mass equal to the
/// component's initial mass plus the injected mass.
EquilibriumState target_equilibrium(const ReactionNetwork& net, const ComponentDecomposition& dec,
                                    int target_component, const Eigen::VectorXd& initial_averages);

/// Max residual |A x|_inf relative to |A|_inf |x|_inf; diagnostic for tests
/// and reports.
double equilibrium_residual(const ReactionMatrix& m, const EquilibriumState& eq);

}  // namespace crn
