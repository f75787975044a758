#include "crn/report.hpp"

#include <algorithm>
#include <cmath>

#include "crn/entropy.hpp"
#include "crn/version.hpp"

namespace crn {

namespace {

// Tolerances pinned by the verification contract.
constexpr double kMassTol = 1e-10;
constexpr double kNonnegTol = -1e-12;
constexpr double kGershgorinSlack = 1e-8;
constexpr double kEqCrossTol = 1e-9;
constexpr double kEqResidualTol = 1e-10;
constexpr double kEqMassTol = 1e-12;
constexpr double kMonotoneSlack = 1e-9;     // x E(0)
constexpr double kIdentityRel = 0.05;       // while E > 1e-8 E(0)
constexpr double kIdentityFloor = 1e-8;     // x E(0)
constexpr double kLambdaHeadroom = 1.05;
constexpr double kFinalEntropyRel = 1e-8;   // x E(0)
constexpr double kComponentDecayL2 = 1e-6;
constexpr double kTargetStateTol = 1e-5;
constexpr double kInjectionQuadTol = 1e-6;

Json config_json(const SolverConfig& config) {
  Json j;
  j["dt"] = config.dt;
  j["t_end"] = config.t_end;
  j["grid_cells"] = config.grid_cells;
  j["sample_every"] = config.sample_every;
  return j;
}

struct Check {
  std::string name;
  bool applicable = true;
  bool passed = true;
  Json detail;
};

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["applicable"] = c.applicable;
    if (c.applicable) j["passed"] = c.passed;
    if (!c.detail.is_null()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

Json RunManifest::to_json() const {
  Json j;
  j["input"] = input_label;
  j["input_hash"] = input_hash;
  j["tool"] = "crn";
  j["version"] = kVersion;
  if (include_config) j["config"] = config_json(config);
  return j;
}

RunManifest make_manifest(const std::string& label, std::string_view raw_input,
                          const SolverConfig& config, bool include_config) {
  RunManifest m;
  m.input_label = label;
  m.input_hash = fnv1a64_hex(raw_input);
  m.config = config;
  m.include_config = include_config;
  return m;
}

Json analyze_report(const ReactionNetwork& net, const NetworkAnalysis& analysis,
                    const RunManifest& manifest) {
  const auto& dec = analysis.decomposition;
  Json report;
  report["manifest"] = manifest.to_json();
  report["species"] = net.species;
  report["grid_cells"] = analysis.grid_cells;
  report["initial_mass"] = analysis.initial_mass;

  Json comps = Json::array();
  for (int c = 0; c < dec.count(); ++c) {
    Json jc;
    jc["index"] = c + 1;  // topological position
    Json names = Json::array();
    for (int v : dec.components[c]) names.push_back(net.species[v]);
    jc["species"] = names;
    jc["kind"] = to_string(dec.kinds[c]);
    comps.push_back(std::move(jc));
  }
  report["components"] = comps;  // listed in topological order
  Json edges = Json::array();
  for (auto [from, to] : dec.condensation_edges) edges.push_back(Json::array({from + 1, to + 1}));
  report["condensation_edges"] = edges;
  report["cumulative_sizes"] = dec.cumulative;

  Json balance;
  balance["weakly_reversible"] = analysis.balance.weakly_reversible;
  balance["indecomposable_graph"] = analysis.balance.indecomposable_graph;
  balance["indecomposable_algebraic"] = analysis.balance.indecomposable_algebraic;
  balance["detailed_balanced"] = analysis.balance.detailed_balanced;
  balance["complex_balanced"] = analysis.balance.complex_balanced;
  report["balance"] = balance;
  report["minors_diag"] = analysis.balance.minors_diag;

  Json disk;
  disk["center"] = analysis.disk.center;
  disk["radius"] = analysis.disk.radius;
  disk["eigenvalues_inside"] = analysis.gershgorin_ok;
  report["gershgorin"] = disk;
  report["rank"] = analysis.rank;

  Json equilibria = Json::array();
  for (int c = 0; c < dec.count(); ++c) {
    const EquilibriumState& eq = analysis.component_equilibria[c];
    Json je;
    je["component"] = c + 1;
    je["kind"] = to_string(eq.kind);
    je["mass"] = eq.mass;
    Json values;
    const auto& members =
        analysis.weakly_reversible() ? dec.species_order : dec.components[c];
    for (std::size_t p = 0; p < members.size(); ++p)
      values[net.species[members[p]]] = eq.values(static_cast<int>(p));
    je["values"] = values;
    ReactionMatrix block = analysis.weakly_reversible()
                               ? analysis.matrix
                               : component_block(analysis.matrix, dec.components[c]);
    je["residual"] = equilibrium_residual(block, eq);
    equilibria.push_back(std::move(je));
  }
  report["equilibria"] = equilibria;

  if (analysis.injection) {
    Json inj;
    Json per_comp = Json::array();
    for (int c = 0; c < dec.count(); ++c)
      if (dec.kinds[c] == ComponentKind::Target) {
        Json j;
        j["component"] = c + 1;
        j["injected_mass"] = analysis.injection->per_component[c];
        per_comp.push_back(std::move(j));
      }
    inj["per_target_component"] = per_comp;
    inj["condition_estimate"] = analysis.injection->condition_estimate;
    report["injected_mass"] = inj;
  }
  return report;
}

std::string trace_csv(const EntropyTrace& trace, const RunManifest& manifest) {
  std::string out = "# crn simulate manifest " + manifest.to_json().dump() + "\n";
  out += "t,E,D,mass";
  for (const auto& name : trace.species_names) out += ",l2_dist_" + name;
  for (const auto& label : trace.component_labels) out += ",mass_" + label;
  out += "\n";
  for (const auto& s : trace.samples) {
    out += format_double(s.t);
    out += ',' + format_double(s.entropy);
    out += ',' + format_double(s.dissipation);
    out += ',' + format_double(s.mass);
    for (double v : s.l2_distance) out += ',' + format_double(v);
    for (double v : s.component_mass) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

VerifyResult run_verify(const ReactionNetwork& net, const SolverConfig& config,
                        const RunManifest& manifest) {
  NetworkAnalysis analysis = analyze_network(net, config.grid_cells);
  SimulationResult sim = simulate(net, analysis, config);
  const auto& dec = analysis.decomposition;
  const auto& samples = sim.trace.samples;
  const double entropy0 = samples.front().entropy;
  const bool wr = analysis.weakly_reversible();

  std::vector<Check> checks;

  {
    Check c{"mass_conservation"};
    c.passed = sim.max_mass_drift <= kMassTol;
    c.detail["max_relative_drift"] = sim.max_mass_drift;
    c.detail["tolerance"] = kMassTol;
    checks.push_back(std::move(c));
  }
  {
    Check c{"nonnegativity"};
    c.passed = sim.min_value >= kNonnegTol;
    c.detail["min_value"] = sim.min_value;
    checks.push_back(std::move(c));
  }
  {
    Check c{"gershgorin"};
    c.passed = eigenvalues_in_gershgorin_disk(analysis.matrix, kGershgorinSlack);
    c.detail["center"] = analysis.disk.center;
    c.detail["radius"] = analysis.disk.radius;
    checks.push_back(std::move(c));
  }
  {
    int n_targets = 0;
    for (auto kind : dec.kinds)
      if (kind == ComponentKind::Target) ++n_targets;
    Check c{"rank"};
    c.passed = analysis.rank == net.size() - n_targets;
    c.detail["rank"] = analysis.rank;
    c.detail["expected"] = net.size() - n_targets;
    checks.push_back(std::move(c));
  }
  {
    const auto& b = analysis.balance;
    Check c{"classification_consistency"};
    c.passed = b.weakly_reversible == b.indecomposable_graph &&
               b.weakly_reversible == b.indecomposable_algebraic &&
               b.complex_balanced == b.weakly_reversible &&
               (!b.detailed_balanced || b.complex_balanced);
    c.detail["weakly_reversible"] = b.weakly_reversible;
    c.detail["indecomposable_graph"] = b.indecomposable_graph;
    c.detail["indecomposable_algebraic"] = b.indecomposable_algebraic;
    c.detail["detailed_balanced"] = b.detailed_balanced;
    c.detail["complex_balanced"] = b.complex_balanced;
    checks.push_back(std::move(c));
  }

  std::optional<double> lambda_lb;
  std::optional<DecayReport> fit;

  if (wr) {
    {
      Check c{"equilibrium_crosscheck"};
      EquilibriumState cramer = *analysis.equilibrium;
      EquilibriumState nullspace = equilibrium_nullspace(analysis.matrix, analysis.initial_mass);
      double rel = (cramer.values - nullspace.values).cwiseAbs().maxCoeff() /
                   cramer.values.cwiseAbs().maxCoeff();
      double residual = equilibrium_residual(analysis.matrix, cramer);
      double mass_err = std::abs(cramer.values.sum() - analysis.initial_mass) / analysis.initial_mass;
      c.passed = rel <= kEqCrossTol && residual <= kEqResidualTol && mass_err <= kEqMassTol &&
                 cramer.values.minCoeff() > 0.0;
      c.detail["cramer_vs_nullspace"] = rel;
      c.detail["residual"] = residual;
      c.detail["mass_error"] = mass_err;
      checks.push_back(std::move(c));
    }
    {
      Check c{"entropy_monotone"};
      double worst = 0.0;
      for (std::size_t k = 1; k < samples.size(); ++k)
        worst = std::max(worst, samples[k].entropy - samples[k - 1].entropy);
      c.passed = worst <= kMonotoneSlack * entropy0;
      c.detail["max_increase"] = worst;
      c.detail["allowed"] = kMonotoneSlack * entropy0;
      checks.push_back(std::move(c));
    }
    {
      Check c{"dissipation_identity"};
      double worst = 0.0;
      int tested = 0;
      for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
        double left = samples[k].t - samples[k - 1].t;
        double right = samples[k + 1].t - samples[k].t;
        if (std::abs(left - right) > 1e-12 * left) continue;  // skip the off-stride tail
        if (samples[k].entropy <= kIdentityFloor * entropy0) continue;
        double slope = (samples[k + 1].entropy - samples[k - 1].entropy) / (left + right);
        double deviation = std::abs(slope + samples[k].dissipation) /
                           std::max(std::abs(slope), samples[k].dissipation);
        worst = std::max(worst, deviation);
        ++tested;
      }
      c.passed = worst <= kIdentityRel;
      c.detail["max_relative_deviation"] = worst;
      c.detail["samples_tested"] = tested;
      checks.push_back(std::move(c));
    }

    bool all_diffusive =
        std::all_of(net.diffusions.begin(), net.diffusions.end(), [](double d) { return d > 0.0; });

    if (entropy0 > 0.0) fit = fit_decay_rate(sim.trace);

    {
      Check c{"eed_inequality"};
      if (all_diffusive) {
        lambda_lb = eed_lambda_lower_bound(net, *analysis.equilibrium, analysis.grid_cells);
        EedCheck eed = verify_eed(sim.trace, *lambda_lb);
        c.passed = eed.ok;
        c.detail["lambda_lower_bound"] = *lambda_lb;
        if (!eed.ok) {
          c.detail["first_violation_sample"] = eed.first_violation;
          c.detail["entropy"] = eed.entropy;
          c.detail["dissipation"] = eed.dissipation;
        }
      } else {
        c.applicable = false;
        c.detail["reason"] = "degenerate diffusion: constructive bound not available";
      }
      checks.push_back(std::move(c));
    }
    {
      Check c{"lambda_consistency"};
      if (lambda_lb && fit) {
        c.passed = *lambda_lb <= kLambdaHeadroom * fit->lambda_fit;
        c.detail["lambda_lower_bound"] = *lambda_lb;
        c.detail["lambda_fit"] = fit->lambda_fit;
      } else {
        c.applicable = false;
      }
      checks.push_back(std::move(c));
    }
    {
      Check c{"exponential_decay"};
      double final_entropy = samples.back().entropy;
      if (entropy0 > 0.0) {
        c.passed = fit && fit->lambda_fit > 0.0 && final_entropy <= kFinalEntropyRel * entropy0;
        if (fit) c.detail["lambda_fit"] = fit->lambda_fit;
        c.detail["final_entropy_ratio"] = final_entropy / entropy0;
      } else {
        c.detail["note"] = "started at equilibrium";
      }
      checks.push_back(std::move(c));
    }
  } else {
    {
      Check c{"component_decay"};
      bool ok = true;
      Json per_species = Json::array();
      for (int c_idx = 0; c_idx < dec.count(); ++c_idx) {
        if (dec.kinds[c_idx] == ComponentKind::Target) continue;
        for (int v : dec.components[c_idx]) {
          double final_l2 = samples.back().l2_distance[v];
          Json js;
          js["species"] = net.species[v];
          js["final_l2"] = final_l2;
          bool species_ok = final_l2 <= kComponentDecayL2;
          if (samples.front().l2_distance[v] > 0.0) {
            std::vector<double> times, values;
            for (const auto& s : samples) {
              times.push_back(s.t);
              values.push_back(s.l2_distance[v] * s.l2_distance[v]);
            }
            DecayReport species_fit = fit_exponential_rate(times, values);
            js["lambda_fit"] = species_fit.lambda_fit;
            species_ok = species_ok && species_fit.lambda_fit > 0.0;
          }
          js["passed"] = species_ok;
          ok = ok && species_ok;
          per_species.push_back(std::move(js));
        }
      }
      c.passed = ok;
      c.detail["tolerance"] = kComponentDecayL2;
      c.detail["species"] = per_species;
      checks.push_back(std::move(c));
    }
    {
      Check c{"target_convergence"};
      bool ok = true;
      Json per_comp = Json::array();
      for (int c_idx = 0; c_idx < dec.count(); ++c_idx) {
        if (dec.kinds[c_idx] != ComponentKind::Target) continue;
        const auto& comp = dec.components[c_idx];
        const EquilibriumState& eq = analysis.component_equilibria[c_idx];
        double worst = 0.0;
        for (std::size_t p = 0; p < comp.size(); ++p)
          for (int k = 0; k < sim.final_state.fields.cols(); ++k)
            worst = std::max(worst, std::abs(sim.final_state.fields(comp[p], k) -
                                             eq.values(static_cast<int>(p))));
        Json jc;
        jc["component"] = c_idx + 1;
        jc["equilibrium_mass"] = eq.mass;
        jc["final_mass"] = samples.back().component_mass[c_idx];
        jc["max_state_deviation"] = worst;
        bool comp_ok = worst <= kTargetStateTol;
        jc["passed"] = comp_ok;
        ok = ok && comp_ok;
        per_comp.push_back(std::move(jc));
      }
      c.passed = ok;
      c.detail["tolerance"] = kTargetStateTol;
      c.detail["components"] = per_comp;
      checks.push_back(std::move(c));
    }
    {
      Check c{"injected_mass_quadrature"};
      bool ok = true;
      Json per_comp = Json::array();
      for (int c_idx = 0; c_idx < dec.count(); ++c_idx) {
        if (dec.kinds[c_idx] != ComponentKind::Target) continue;
        double quad = 0.0, quad_trapezoid = 0.0;
        for (int v : dec.components[c_idx])
          for (int s : analysis.injection->non_target_species) {
            quad += analysis.matrix.a(v, s) * sim.integral_averages(s);
            quad_trapezoid += analysis.matrix.a(v, s) * sim.integral_averages_trapezoid(s);
          }
        double linear = analysis.injection->per_component[c_idx];
        Json jc;
        jc["component"] = c_idx + 1;
        jc["linear_solve"] = linear;
        jc["quadrature"] = quad;
        jc["quadrature_trapezoid"] = quad_trapezoid;
        bool comp_ok = std::abs(linear - quad) <= kInjectionQuadTol;
        jc["passed"] = comp_ok;
        ok = ok && comp_ok;
        per_comp.push_back(std::move(jc));
      }
      c.passed = ok;
      c.detail["tolerance"] = kInjectionQuadTol;
      c.detail["components"] = per_comp;
      checks.push_back(std::move(c));
    }
  }

  VerifyResult result;
  result.all_passed = std::all_of(checks.begin(), checks.end(),
                                  [](const Check& c) { return !c.applicable || c.passed; });

  Json& report = result.report;
  report["manifest"] = manifest.to_json();
  Json network;
  network["species"] = net.species;
  network["weakly_reversible"] = wr;
  network["components"] = dec.count();
  report["network"] = network;
  report["lambda_lower_bound"] = lambda_lb ? Json(*lambda_lb) : Json(nullptr);
  report["lambda_fit"] = fit ? Json(fit->lambda_fit) : Json(nullptr);
  report["fit_residual"] = fit ? Json(fit->fit_residual) : Json(nullptr);
  report["checks"] = checks_json(checks);
  report["all_passed"] = result.all_passed;
  return result;
}

}  // namespace crn
