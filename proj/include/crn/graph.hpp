#pragma once

#include <utility>
#include <vector>

#include "crn/network.hpp"

namespace crn {

enum class ComponentKind { Source, Transmission, Target };

const char* to_string(ComponentKind kind);

/// Strongly connected components of the reaction graph in topological order
/// of the condensation DAG, together with the component classification and
/// the species reordering that makes the reaction matrix block triangular.
struct ComponentDecomposition {
  std::vector<std::vector<int>> components;           // each sorted ascending
  std::vector<ComponentKind> kinds;
  std::vector<std::pair<int, int>> condensation_edges;  // (from, to), from < to
  std::vector<int> cumulative;                        // L[0..r], L[0] = 0, L[r] = N
  std::vector<int> species_order;                     // new position -> original index
  std::vector<int> component_of;                      // original index -> component

  int count() const { return static_cast<int>(components.size()); }
};

/// Balance-property classification of a network at its equilibrium.
struct BalanceReport {
  bool weakly_reversible = false;
  bool indecomposable_graph = false;
  bool indecomposable_algebraic = false;
  bool detailed_balanced = false;
  bool complex_balanced = false;
  std::vector<double> minors_diag;  // rho_ii, i = 0..N-1
};

struct GershgorinDisk {
  double center = 0.0;  // -max|a_ii|
  double radius = 0.0;  //  max|a_ii|
};

struct EquilibriumState;

/// Tarjan SCCs with the condensation topologically ordered; deterministic
/// (ties broken by smallest original species index). Throws
/// DisconnectedNetwork when the undirected reaction graph is not connected.
ComponentDecomposition strongly_connected_components(const ReactionNetwork& net);

/// True iff every reaction edge stays inside one strongly connected component.
bool is_weakly_reversible(const ComponentDecomposition& dec, const ReactionNetwork& net);

/// Determinant of A with row i and column j deleted (0-based); 1 for N = 1.
double minor(const ReactionMatrix& m, int i, int j);

/// Lemma-style algebraic criterion: all diagonal minors bounded away from
/// zero. Throws IndeterminateMinor inside the guard band around the
/// threshold tau = 1e-9 * max(1, max|a_ii|)^(N-1).
bool is_indecomposable_algebraic(const ReactionMatrix& m);

/// Pairwise balance a_{ji} u_i = a_{ij} u_j at a positive state.
bool check_detailed_balance(const ReactionMatrix& m, const EquilibriumState& eq);

/// Per-species in-flow equals out-flow at a positive state.
bool check_complex_balance(const ReactionMatrix& m, const EquilibriumState& eq);

GershgorinDisk gershgorin_bound(const ReactionMatrix& m);

/// All eigenvalues of A lie in the closed Gershgorin disk, within `slack`.
bool eigenvalues_in_gershgorin_disk(const ReactionMatrix& m, double slack = 1e-8);

/// Numerical rank via singular values above 1e-9 * sigma_max.
int matrix_rank(const ReactionMatrix& m);

}  // namespace crn
