#pragma once

#include <string>
#include <vector>

namespace crn {

struct TraceSample {
  double t = 0.0;
  double entropy = 0.0;      // relative entropy (weakly reversible runs) or
                             // sum of component functionals (general runs)
  double dissipation = 0.0;  // matching entropy dissipation
  double mass = 0.0;
  std::vector<double> l2_distance;     // per species, to its reference value
  std::vector<double> component_mass;  // per component, topological order
};

/// Sampled time series of a simulation run plus enough metadata to make the
/// CSV output self-describing and reproducible.
struct EntropyTrace {
  std::vector<TraceSample> samples;
  std::vector<std::string> species_names;
  std::vector<std::string> component_labels;
  std::string network_hash;
  double dt = 0.0;
  double t_end = 0.0;
  int sample_every = 0;
  int grid_cells = 0;
};

}  // namespace crn
