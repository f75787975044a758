#pragma once

#include <json.hpp>
#include <string>

#include "crn/analysis.hpp"
#include "crn/network.hpp"
#include "crn/sim.hpp"

namespace crn {

using Json = nlohmann::ordered_json;

/// Provenance block embedded in every JSON/CSV output. Outputs stay
/// byte-identical for identical inputs and configuration.
struct RunManifest {
  std::string input_label;  // basename or "inline"
  std::string input_hash;   // hash of the raw input bytes
  SolverConfig config;
  bool include_config = true;

  Json to_json() const;
};

RunManifest make_manifest(const std::string& label, std::string_view raw_input,
                          const SolverConfig& config, bool include_config = true);

/// Structural report for the `analyze` command: components, balance
/// booleans, minors, Gershgorin disk, rank, equilibria per component.
Json analyze_report(const ReactionNetwork& net, const NetworkAnalysis& analysis,
                    const RunManifest& manifest);

/// CSV serialization of a trace: a one-line manifest comment, a header and
/// one row per sample (t, E, D, mass, per-species l2, per-component mass).
std::string trace_csv(const EntropyTrace& trace, const RunManifest& manifest);

struct VerifyResult {
  Json report;
  bool all_passed = false;
};

/// Run analyze + simulate + every applicable check and assemble the verdict.
VerifyResult run_verify(const ReactionNetwork& net, const SolverConfig& config,
                        const RunManifest& manifest);

}  // namespace crn
