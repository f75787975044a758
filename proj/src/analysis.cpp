#include "crn/analysis.hpp"

#include <cmath>

#include "crn/sim.hpp"

namespace crn {

NetworkAnalysis analyze_network(const ReactionNetwork& net, int grid_cells) {
  NetworkAnalysis a;
  a.grid_cells = grid_cells > 0 ? grid_cells : net.grid_cells;
  a.matrix = build_reaction_matrix(net);
  a.decomposition = strongly_connected_components(net);

  const int n = net.size();
  const Grid grid = Grid::unit_interval(a.grid_cells);
  a.initial_averages = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int k = 0; k < grid.n; ++k) sum += net.profiles[i].eval(grid.center(k));
    a.initial_averages(i) = sum * grid.dx;
  }
  a.initial_mass = a.initial_averages.sum();

  a.balance.weakly_reversible = is_weakly_reversible(a.decomposition, net);
  a.balance.indecomposable_graph = a.decomposition.count() == 1;
  a.balance.indecomposable_algebraic = is_indecomposable_algebraic(a.matrix);
  a.balance.minors_diag.resize(n);
  for (int i = 0; i < n; ++i) a.balance.minors_diag[i] = minor(a.matrix, i, i);

  a.disk = gershgorin_bound(a.matrix);
  a.gershgorin_ok = eigenvalues_in_gershgorin_disk(a.matrix);
  a.rank = matrix_rank(a.matrix);

  a.reference = Eigen::VectorXd::Zero(n);
  if (a.balance.weakly_reversible) {
    a.equilibrium = equilibrium_cramer(a.matrix, a.initial_mass);
    a.component_equilibria.push_back(*a.equilibrium);
    a.reference = a.equilibrium->values;
    a.balance.detailed_balanced = check_detailed_balance(a.matrix, *a.equilibrium);
    a.balance.complex_balanced = check_complex_balance(a.matrix, *a.equilibrium);
  } else {
    a.injection = injected_mass(net, a.decomposition, a.initial_averages);
    for (int c = 0; c < a.decomposition.count(); ++c) {
      const auto& comp = a.decomposition.components[c];
      if (a.decomposition.kinds[c] == ComponentKind::Target) {
        double mass = a.injection->per_component[c];
        for (int v : comp) mass += a.initial_averages(v);
        EquilibriumState eq = equilibrium_cramer(component_block(a.matrix, comp), mass);
        eq.kind = EquilibriumKind::TargetWithInjection;
        for (std::size_t p = 0; p < comp.size(); ++p) a.reference(comp[p]) = eq.values(p);
        a.component_equilibria.push_back(std::move(eq));
      } else {
        a.component_equilibria.push_back(artificial_equilibrium(component_block(a.matrix, comp)));
        // reference stays zero: these species decay
      }
    }
    a.balance.detailed_balanced = false;  // no positive equilibrium exists
    a.balance.complex_balanced = false;
  }
  return a;
}

}  // namespace crn
