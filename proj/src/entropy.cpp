#include "crn/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace crn {

namespace {

// Weighted Dirichlet form: sum over faces of ((u[k+1]-u[k])/dx)^2 * dx.
double dirichlet_form(const Eigen::MatrixXd& fields, int row, double dx) {
  double sum = 0.0;
  for (int k = 0; k + 1 < fields.cols(); ++k) {
    double g = (fields(row, k + 1) - fields(row, k)) / dx;
    sum += g * g;
  }
  return sum * dx;
}

double pair_quadrature(const Eigen::MatrixXd& fields, int i, int j, double wi, double wj,
                       double dx) {
  double sum = 0.0;
  for (int k = 0; k < fields.cols(); ++k) {
    double d = fields(i, k) / wi - fields(j, k) / wj;
    sum += d * d;
  }
  return sum * dx;
}

}  // namespace

double relative_entropy(const SimulationState& state, const EquilibriumState& eq) {
  double sum = 0.0;
  for (int i = 0; i < state.fields.rows(); ++i) {
    double w = eq.values(i);
    for (int k = 0; k < state.fields.cols(); ++k) {
      double d = state.fields(i, k) - w;
      sum += d * d / w;
    }
  }
  return sum * state.grid.dx;
}

double entropy_dissipation(const SimulationState& state, const EquilibriumState& eq,
                           const ReactionNetwork& net) {
  const int n = state.fields.rows();
  const double dx = state.grid.dx;
  double diffusion = 0.0;
  for (int i = 0; i < n; ++i)
    if (net.diffusions[i] > 0.0)
      diffusion += 2.0 * net.diffusions[i] / eq.values(i) * dirichlet_form(state.fields, i, dx);

  double reaction = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double c = net.rate(i, j) * eq.values(j) + net.rate(j, i) * eq.values(i);
      if (c > 0.0)
        reaction += c * pair_quadrature(state.fields, i, j, eq.values(i), eq.values(j), dx);
    }
  return diffusion + reaction;
}

double component_entropy(const SimulationState& state, const ComponentDecomposition& dec,
                         int component, const EquilibriumState& artificial) {
  if (dec.kinds[component] == ComponentKind::Target)
    throw WrongComponentKind("component_entropy is for source/transmission components");
  const auto& comp = dec.components[component];
  double sum = 0.0;
  for (std::size_t p = 0; p < comp.size(); ++p) {
    double w = artificial.values(static_cast<int>(p));
    for (int k = 0; k < state.fields.cols(); ++k) {
      double u = state.fields(comp[p], k);
      sum += u * u / w;
    }
  }
  return sum * state.grid.dx;
}

double component_dissipation(const SimulationState& state, const ReactionNetwork& net,
                             const ComponentDecomposition& dec, int component,
                             const EquilibriumState& artificial) {
  if (dec.kinds[component] == ComponentKind::Target)
    throw WrongComponentKind("component_dissipation is for source/transmission components");
  const auto& comp = dec.components[component];
  const int m = static_cast<int>(comp.size());
  const double dx = state.grid.dx;

  double total = 0.0;
  for (int p = 0; p < m; ++p)
    if (net.diffusions[comp[p]] > 0.0)
      total += 2.0 * net.diffusions[comp[p]] / artificial.values(p) *
               dirichlet_form(state.fields, comp[p], dx);

  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      double c = net.rate(comp[p], comp[q]) * artificial.values(q) +
                 net.rate(comp[q], comp[p]) * artificial.values(p);
      if (c > 0.0)
        total += c * pair_quadrature(state.fields, comp[p], comp[q], artificial.values(p),
                                     artificial.values(q), dx);
    }

  // out-flow: mass leaving the component keeps dissipating the functional
  for (int p = 0; p < m; ++p) {
    double f = 0.0;
    for (int s = 0; s < net.size(); ++s)
      if (dec.component_of[s] != component) f += net.rate(s, comp[p]);
    if (f > 0.0) {
      double sum = 0.0;
      for (int k = 0; k < state.fields.cols(); ++k) {
        double u = state.fields(comp[p], k);
        sum += u * u;
      }
      total += 2.0 * f / artificial.values(p) * sum * dx;
    }
  }

  // in-flow from earlier components enters with a negative sign
  for (int p = 0; p < m; ++p) {
    double cross = 0.0;
    for (int s = 0; s < net.size(); ++s) {
      if (dec.component_of[s] == component) continue;
      double a = net.rate(comp[p], s);
      if (a == 0.0) continue;
      double sum = 0.0;
      for (int k = 0; k < state.fields.cols(); ++k) sum += state.fields(comp[p], k) * state.fields(s, k);
      cross += a * sum * dx;
    }
    total -= 2.0 * cross / artificial.values(p);
  }
  return total;
}

double target_entropy(const SimulationState& state, const ComponentDecomposition& dec,
                      int component, const EquilibriumState& equilibrium) {
  if (dec.kinds[component] != ComponentKind::Target)
    throw WrongComponentKind("target_entropy is for target components");
  const auto& comp = dec.components[component];
  double sum = 0.0;
  for (std::size_t p = 0; p < comp.size(); ++p) {
    double w = equilibrium.values(static_cast<int>(p));
    for (int k = 0; k < state.fields.cols(); ++k) {
      double v = state.fields(comp[p], k) - w;
      sum += v * v / w;
    }
  }
  return sum * state.grid.dx;
}

double target_dissipation(const SimulationState& state, const ReactionNetwork& net,
                          const ComponentDecomposition& dec, int component,
                          const EquilibriumState& equilibrium) {
  if (dec.kinds[component] != ComponentKind::Target)
    throw WrongComponentKind("target_dissipation is for target components");
  const auto& comp = dec.components[component];
  const int m = static_cast<int>(comp.size());
  const double dx = state.grid.dx;

  double total = 0.0;
  for (int p = 0; p < m; ++p)
    if (net.diffusions[comp[p]] > 0.0)
      total += 2.0 * net.diffusions[comp[p]] / equilibrium.values(p) *
               dirichlet_form(state.fields, comp[p], dx);

  // shift invariance: u/v_inf and (u - v_inf)/v_inf differ by a constant
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      double c = net.rate(comp[p], comp[q]) * equilibrium.values(q) +
                 net.rate(comp[q], comp[p]) * equilibrium.values(p);
      if (c > 0.0)
        total += c * pair_quadrature(state.fields, comp[p], comp[q], equilibrium.values(p),
                                     equilibrium.values(q), dx);
    }

  for (int p = 0; p < m; ++p) {
    double cross = 0.0;
    for (int s = 0; s < net.size(); ++s) {
      if (dec.component_of[s] == component) continue;
      double a = net.rate(comp[p], s);
      if (a == 0.0) continue;
      double sum = 0.0;
      for (int k = 0; k < state.fields.cols(); ++k)
        sum += (state.fields(comp[p], k) - equilibrium.values(p)) * state.fields(s, k);
      cross += a * sum * dx;
    }
    total -= 2.0 * cross / equilibrium.values(p);
  }
  return total;
}

double eed_lambda_lower_bound(const ReactionNetwork& net, const EquilibriumState& eq,
                              int grid_cells) {
  const int n = net.size();
  for (double d : net.diffusions)
    if (d <= 0.0)
      throw DegenerateDiffusion(
          "the constructive bound needs every diffusion coefficient positive");

  const double min_d = *std::min_element(net.diffusions.begin(), net.diffusions.end());
  const double lambda_diff = 2.0 * neumann_spectral_gap(grid_cells) * min_d;
  if (n == 1) return lambda_diff;  // single species: the mean mode carries no entropy

  // pair coefficients c_ij = a_ij u_j + a_ji u_i
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      c(i, j) = net.rate(i, j) * eq.values(j) + net.rate(j, i) * eq.values(i);
      c(j, i) = c(i, j);
    }

  // shortest positive-rate path (BFS) for pairs without a direct reaction
  std::vector<std::vector<int>> adj(n);
  for (const auto& [edge, rate] : net.rates) {
    (void)rate;
    adj[edge.first].push_back(edge.second);
  }
  auto shortest_path = [&](int from, int to) {
    std::vector<int> parent(n, -1);
    std::deque<int> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (v == to) break;
      for (int w : adj[v])
        if (parent[w] == -1) {
          parent[w] = v;
          queue.push_back(w);
        }
    }
    std::vector<int> path;
    for (int v = to; v != from; v = parent[v]) {
      if (parent[v] == -1)
        throw NotWeaklyReversible("no path between species; network is not weakly reversible");
      path.push_back(v);
    }
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
  };

  struct MissingPair {
    double sigma;
    int length;  // r - 1 edges
  };
  std::vector<MissingPair> completed;
  double min_direct = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (c(i, j) > 0.0) {
        min_direct = std::min(min_direct, c(i, j));
      } else {
        auto path = shortest_path(i, j);
        double sigma = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < path.size(); ++k)
          sigma = std::min(sigma, c(path[k - 1], path[k]));
        completed.push_back({sigma, static_cast<int>(path.size()) - 1});
      }
    }

  const double budget = std::max<double>(1, completed.size());
  double xi_min = min_direct;
  for (const auto& p : completed) xi_min = std::min(xi_min, p.sigma / p.length / budget);

  // zero-mass quadratic bound, each constant at its extremal admissible value
  double min_u = eq.values.minCoeff();
  double max_pair_product = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      max_pair_product = std::max(max_pair_product, eq.values(i) * eq.values(j));
  const double lambda_react = xi_min * (min_u / max_pair_product);

  return std::min(lambda_diff, lambda_react);
}

DecayReport fit_exponential_rate(const std::vector<double>& times,
                                 const std::vector<double>& values, double floor) {
  if (times.size() != values.size() || times.size() < 2)
    throw InsufficientDecay("need at least two samples to fit a rate");
  const double v0 = values.front();
  if (!(v0 > 0.0)) throw InsufficientDecay("initial value is not positive");
  if (*std::min_element(values.begin(), values.end()) >= 0.5 * v0)
    throw InsufficientDecay("series never dropped below half its initial value");

  int last_valid = 0;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] > floor * v0) last_valid = static_cast<int>(k);
  const double t_valid = times[last_valid];
  const double t_start = times.front() + 0.2 * (t_valid - times.front());

  double sum_t = 0, sum_y = 0, sum_tt = 0, sum_ty = 0;
  int count = 0;
  double window_start = t_valid, window_end = times.front();
  for (int k = 0; k <= last_valid; ++k) {
    if (times[k] < t_start || !(values[k] > floor * v0)) continue;
    double y = std::log(values[k]);
    sum_t += times[k];
    sum_y += y;
    sum_tt += times[k] * times[k];
    sum_ty += times[k] * y;
    ++count;
    window_start = std::min(window_start, times[k]);
    window_end = std::max(window_end, times[k]);
  }
  if (count < 2) throw InsufficientDecay("fit window contains fewer than two samples");

  const double denom = count * sum_tt - sum_t * sum_t;
  const double slope = (count * sum_ty - sum_t * sum_y) / denom;
  const double intercept = (sum_y - slope * sum_t) / count;

  DecayReport report;
  report.lambda_fit = -slope;
  report.window_start = window_start;
  report.window_end = window_end;
  for (int k = 0; k <= last_valid; ++k) {
    if (times[k] < t_start || !(values[k] > floor * v0)) continue;
    report.fit_residual = std::max(report.fit_residual,
                                   std::abs(std::log(values[k]) - (intercept + slope * times[k])));
  }
  return report;
}

DecayReport fit_decay_rate(const EntropyTrace& trace, double floor) {
  std::vector<double> times, values;
  times.reserve(trace.samples.size());
  values.reserve(trace.samples.size());
  for (const auto& s : trace.samples) {
    times.push_back(s.t);
    values.push_back(s.entropy);
  }
  return fit_exponential_rate(times, values, floor);
}

EedCheck verify_eed(const EntropyTrace& trace, double lambda_lb) {
  EedCheck check;
  if (trace.samples.empty()) return check;
  const double slack = 1e-9 * trace.samples.front().entropy;
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const auto& s = trace.samples[k];
    if (s.dissipation < lambda_lb * s.entropy - slack) {
      check.ok = false;
      check.first_violation = static_cast<int>(k);
      check.entropy = s.entropy;
      check.dissipation = s.dissipation;
      return check;
    }
  }
  return check;
}

}  // namespace crn
