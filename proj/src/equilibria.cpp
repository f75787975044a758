#include "crn/equilibria.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace crn {

const char* to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::TrueEquilibrium: return "true_equilibrium";
    case EquilibriumKind::ArtificialUnitMass: return "artificial_unit_mass";
    case EquilibriumKind::TargetWithInjection: return "target_with_injection";
  }
  return "?";
}

EquilibriumState equilibrium_cramer(const ReactionMatrix& m, double mass) {
  if (mass <= 0.0) throw Error("equilibrium mass must be positive");
  if (!is_indecomposable_algebraic(m))
    throw NotWeaklyReversible("reaction matrix is decomposable; no unique positive equilibrium");

  const int n = m.n();
  Eigen::VectorXd diag_minors(n);
  for (int i = 0; i < n; ++i) diag_minors(i) = minor(m, i, i);
  const double total = diag_minors.sum();

  EquilibriumState eq;
  eq.values = mass * diag_minors / total;
  eq.mass = mass;
  eq.kind = EquilibriumKind::TrueEquilibrium;
  for (int i = 0; i < n; ++i)
    if (!(eq.values(i) > 0.0))
      throw NonPositiveEquilibrium("Cramer equilibrium has a non-positive component");
  return eq;
}

EquilibriumState equilibrium_nullspace(const ReactionMatrix& m, double mass) {
  if (mass <= 0.0) throw Error("equilibrium mass must be positive");
  if (!is_indecomposable_algebraic(m))
    throw NotWeaklyReversible("reaction matrix is decomposable; no unique positive equilibrium");

  const int n = m.n();
  Eigen::MatrixXd aug(n + 1, n);
  aug.topRows(n) = m.a;
  aug.bottomRows(1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = mass;

  EquilibriumState eq;
  eq.values = aug.colPivHouseholderQr().solve(rhs);
  eq.mass = mass;
  eq.kind = EquilibriumKind::TrueEquilibrium;
  for (int i = 0; i < n; ++i)
    if (!(eq.values(i) > 0.0))
      throw NonPositiveEquilibrium("null-space equilibrium has a non-positive component");
  return eq;
}

ReactionMatrix component_block(const ReactionMatrix& m, const std::vector<int>& component) {
  const int k = static_cast<int>(component.size());
  ReactionMatrix block;
  block.a = Eigen::MatrixXd::Zero(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      if (r != c) block.a(r, c) = m.a(component[r], component[c]);
  for (int c = 0; c < k; ++c) {
    double col = 0.0;
    for (int r = 0; r < k; ++r)
      if (r != c) col += block.a(r, c);
    block.a(c, c) = -col;  // re-close: only within-component reactions count
  }
  return block;
}

EquilibriumState artificial_equilibrium(const ReactionMatrix& block) {
  EquilibriumState eq = equilibrium_cramer(block, 1.0);
  eq.kind = EquilibriumKind::ArtificialUnitMass;
  return eq;
}

InjectedMassResult injected_mass(const ReactionNetwork& net, const ComponentDecomposition& dec,
                                 const Eigen::VectorXd& initial_averages) {
  ReactionMatrix full = build_reaction_matrix(net);
  InjectedMassResult result;
  result.per_component.assign(dec.count(), 0.0);

  for (int c = 0; c < dec.count(); ++c)
    if (dec.kinds[c] != ComponentKind::Target)
      for (int v : dec.components[c]) result.non_target_species.push_back(v);
  std::sort(result.non_target_species.begin(), result.non_target_species.end());

  const int k = static_cast<int>(result.non_target_species.size());
  result.integral_of_averages = Eigen::VectorXd::Zero(k);
  if (k > 0) {
    // Restriction keeps the full diagonal: out-flow towards targets is what
    // makes this submatrix Hurwitz.
    Eigen::MatrixXd restricted(k, k);
    Eigen::VectorXd u0(k);
    for (int r = 0; r < k; ++r) {
      u0(r) = initial_averages(result.non_target_species[r]);
      for (int c = 0; c < k; ++c)
        restricted(r, c) = full.a(result.non_target_species[r], result.non_target_species[c]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(restricted);
    if (!lu.isInvertible())
      throw SingularSubmatrix(
          "non-target restriction of the reaction matrix is singular; component classification "
          "is inconsistent");
    Eigen::MatrixXd inverse = lu.inverse();
    result.condition_estimate =
        restricted.cwiseAbs().colwise().sum().maxCoeff() * inverse.cwiseAbs().colwise().sum().maxCoeff();
    result.integral_of_averages = -(inverse * u0);
  }

  for (int c = 0; c < dec.count(); ++c) {
    if (dec.kinds[c] != ComponentKind::Target) continue;
    double injected = 0.0;
    for (int v : dec.components[c])
      for (int r = 0; r < k; ++r)
        injected += full.a(v, result.non_target_species[r]) * result.integral_of_averages(r);
    result.per_component[c] = injected;
  }
  return result;
}

EquilibriumState target_equilibrium(const ReactionNetwork& net, const ComponentDecomposition& dec,
                                    int target_component, const Eigen::VectorXd& initial_averages) {
  if (dec.kinds[target_component] != ComponentKind::Target)
    throw WrongComponentKind("target_equilibrium called on a non-target component");

  InjectedMassResult injection = injected_mass(net, dec, initial_averages);
  double mass = injection.per_component[target_component];
  for (int v : dec.components[target_component]) mass += initial_averages(v);

  ReactionMatrix full = build_reaction_matrix(net);
  ReactionMatrix block = component_block(full, dec.components[target_component]);
  EquilibriumState eq = equilibrium_cramer(block, mass);
  eq.kind = EquilibriumKind::TargetWithInjection;
  return eq;
}

double equilibrium_residual(const ReactionMatrix& m, const EquilibriumState& eq) {
  double denom = m.a.cwiseAbs().rowwise().sum().maxCoeff() * eq.values.cwiseAbs().maxCoeff();
  if (denom == 0.0) return 0.0;
  return (m.a * eq.values).cwiseAbs().maxCoeff() / denom;
}

}  // namespace crn
