#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "crn/equilibria.hpp"
#include "crn/graph.hpp"
#include "crn/network.hpp"

namespace crn {

/// Everything structural that simulation and verification need, computed
/// once per (network, grid) pair.
struct NetworkAnalysis {
  ReactionMatrix matrix;
  ComponentDecomposition decomposition;
  BalanceReport balance;
  GershgorinDisk disk;
  bool gershgorin_ok = false;
  int rank = 0;

  int grid_cells = 0;
  double initial_mass = 0.0;             // discrete mass on the effective grid
  Eigen::VectorXd initial_averages;      // per species

  /// Per component: the true equilibrium for a weakly reversible network
  /// (single component), the artificial unit-mass state for source and
  /// transmission components, the injected-mass equilibrium for targets.
  std::vector<EquilibriumState> component_equilibria;
  std::optional<EquilibriumState> equilibrium;   // whole-network, weakly reversible only
  std::optional<InjectedMassResult> injection;   // non weakly reversible only

  /// Per-species long-time reference value: u_inf for weakly reversible
  /// networks, zero for source/transmission species, the target-component
  /// equilibrium value otherwise.
  Eigen::VectorXd reference;

  bool weakly_reversible() const { return balance.weakly_reversible; }
};

/// Run the full structural analysis. `grid_cells` of 0 means "use the
/// network's own grid". Throws on disconnected or ill-conditioned networks.
NetworkAnalysis analyze_network(const ReactionNetwork& net, int grid_cells = 0);

}  // namespace crn
