#include "crn/graph.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <queue>

#include "crn/equilibria.hpp"

namespace crn {

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Source: return "source";
    case ComponentKind::Transmission: return "transmission";
    case ComponentKind::Target: return "target";
  }
  return "?";
}

namespace {

std::vector<std::vector<int>> adjacency(const ReactionNetwork& net) {
  std::vector<std::vector<int>> adj(net.size());
  for (const auto& [edge, rate] : net.rates) {
    (void)rate;
    adj[edge.first].push_back(edge.second);  // rates map is ordered, so this is deterministic
  }
  return adj;
}

void require_connected(const ReactionNetwork& net, const std::vector<std::vector<int>>& adj) {
  const int n = net.size();
  if (n <= 1) return;
  std::vector<std::vector<int>> undirected(n);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) {
      undirected[v].push_back(w);
      undirected[w].push_back(v);
    }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : undirected[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw DisconnectedNetwork(
        "the undirected reaction graph is disconnected; split the network file and analyze the "
        "pieces separately");
}

// Iterative Tarjan; components come out in reverse topological order.
std::vector<std::vector<int>> tarjan_sccs(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t child;
  };

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<int> comp;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          sccs.push_back(std::move(comp));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
      }
    }
  }
  return sccs;
}

}  // namespace

ComponentDecomposition strongly_connected_components(const ReactionNetwork& net) {
  const int n = net.size();
  auto adj = adjacency(net);
  require_connected(net, adj);

  auto sccs = tarjan_sccs(adj);
  const int r = static_cast<int>(sccs.size());

  std::vector<int> scc_of(n);
  for (int c = 0; c < r; ++c)
    for (int v : sccs[c]) scc_of[v] = c;

  std::vector<std::vector<bool>> edge(r, std::vector<bool>(r, false));
  std::vector<int> in_degree(r, 0);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) {
      int cv = scc_of[v], cw = scc_of[w];
      if (cv != cw && !edge[cv][cw]) {
        edge[cv][cw] = true;
        ++in_degree[cw];
      }
    }

  // Kahn's algorithm; ready components ordered by smallest original species index.
  auto min_species = [&](int c) { return sccs[c].front(); };
  auto cmp = [&](int a, int b) { return min_species(a) > min_species(b); };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int c = 0; c < r; ++c)
    if (in_degree[c] == 0) ready.push(c);

  std::vector<int> topo;
  topo.reserve(r);
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    topo.push_back(c);
    for (int d = 0; d < r; ++d)
      if (edge[c][d] && --in_degree[d] == 0) ready.push(d);
  }
  // The condensation of the SCCs is acyclic, so Kahn always drains.

  ComponentDecomposition dec;
  dec.components.resize(r);
  dec.kinds.resize(r);
  dec.component_of.resize(n);
  std::vector<int> new_pos(r);
  for (int p = 0; p < r; ++p) {
    new_pos[topo[p]] = p;
    dec.components[p] = sccs[topo[p]];
    for (int v : dec.components[p]) dec.component_of[v] = p;
  }
  for (int c = 0; c < r; ++c)
    for (int d = 0; d < r; ++d)
      if (edge[c][d]) dec.condensation_edges.push_back({new_pos[c], new_pos[d]});
  std::sort(dec.condensation_edges.begin(), dec.condensation_edges.end());

  std::vector<bool> has_in(r, false), has_out(r, false);
  for (auto [from, to] : dec.condensation_edges) {
    has_out[from] = true;
    has_in[to] = true;
  }
  for (int c = 0; c < r; ++c) {
    if (!has_out[c])
      dec.kinds[c] = ComponentKind::Target;
    else if (!has_in[c])
      dec.kinds[c] = ComponentKind::Source;
    else
      dec.kinds[c] = ComponentKind::Transmission;
  }

  dec.cumulative.assign(1, 0);
  for (int c = 0; c < r; ++c) {
    dec.cumulative.push_back(dec.cumulative.back() + static_cast<int>(dec.components[c].size()));
    for (int v : dec.components[c]) dec.species_order.push_back(v);
  }
  return dec;
}

bool is_weakly_reversible(const ComponentDecomposition& dec, const ReactionNetwork& net) {
  for (const auto& [edge, rate] : net.rates) {
    (void)rate;
    if (dec.component_of[edge.first] != dec.component_of[edge.second]) return false;
  }
  return true;
}

double minor(const ReactionMatrix& m, int i, int j) {
  const int n = m.n();
  if (n == 1) return 1.0;  // empty determinant
  Eigen::MatrixXd sub(n - 1, n - 1);
  for (int r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (int c = 0, cc = 0; c < n; ++c) {
      if (c == j) continue;
      sub(rr, cc++) = m.a(r, c);
    }
    ++rr;
  }
  return Eigen::PartialPivLU<Eigen::MatrixXd>(sub).determinant();
}

bool is_indecomposable_algebraic(const ReactionMatrix& m) {
  const int n = m.n();
  const double a_hat = m.a.diagonal().cwiseAbs().maxCoeff();
  const double tau = 1e-9 * std::pow(std::max(1.0, a_hat), n - 1);

  std::vector<double> diag_minors(n);
  for (int i = 0; i < n; ++i) {
    diag_minors[i] = minor(m, i, i);
    double mag = std::abs(diag_minors[i]);
    if (mag > 0.1 * tau && mag < 10.0 * tau)
      throw IndeterminateMinor("diagonal minor rho_" + std::to_string(i + 1) +
                               std::to_string(i + 1) + " = " + std::to_string(diag_minors[i]) +
                               " lies in the guard band around tau = " + std::to_string(tau));
  }

  bool all_nonzero = std::all_of(diag_minors.begin(), diag_minors.end(),
                                 [&](double v) { return std::abs(v) > tau; });
  if (all_nonzero) {
    const double expected_sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(N-1)
    for (int i = 0; i < n; ++i)
      if (diag_minors[i] * expected_sign <= 0.0)
        throw Error("diagonal minor sign violates sgn(rho_ii) = (-1)^(N-1); not a reaction matrix?");
  }
  return all_nonzero;
}

bool check_detailed_balance(const ReactionMatrix& m, const EquilibriumState& eq) {
  const int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double a_ij = m.a(i, j);  // rate j -> i
      double a_ji = m.a(j, i);  // rate i -> j
      if (a_ij <= 0.0 && a_ji <= 0.0) continue;
      if (a_ij <= 0.0 || a_ji <= 0.0) return false;  // one-way pair can never balance
      double forward = a_ji * eq.values[i];
      double backward = a_ij * eq.values[j];
      if (std::abs(forward - backward) > 1e-9 * (forward + backward)) return false;
    }
  return true;
}

bool check_complex_balance(const ReactionMatrix& m, const EquilibriumState& eq) {
  const int n = m.n();
  for (int k = 0; k < n; ++k) {
    double inflow = 0.0, out_rate = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      inflow += m.a(k, i) * eq.values[i];
      out_rate += m.a(i, k);
    }
    double outflow = out_rate * eq.values[k];
    double scale = inflow + outflow;
    if (std::abs(inflow - outflow) > 1e-9 * scale) return false;
  }
  return true;
}

GershgorinDisk gershgorin_bound(const ReactionMatrix& m) {
  double a_hat = m.n() == 0 ? 0.0 : m.a.diagonal().cwiseAbs().maxCoeff();
  return {-a_hat, a_hat};
}

bool eigenvalues_in_gershgorin_disk(const ReactionMatrix& m, double slack) {
  GershgorinDisk disk = gershgorin_bound(m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m.a, false);
  for (int i = 0; i < m.n(); ++i) {
    std::complex<double> lambda = solver.eigenvalues()(i);
    if (std::abs(lambda - std::complex<double>(disk.center, 0.0)) > disk.radius + slack)
      return false;
  }
  return true;
}

int matrix_rank(const ReactionMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double threshold = 1e-9 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++rank;
  return rank;
}

}  // namespace crn
