#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crn/errors.hpp"

namespace crn {

/// Initial datum for one species. All three families have zero derivative at
/// x = 0 and x = 1, so they are compatible with homogeneous Neumann data.
struct InitialProfile {
  enum class Kind { Const, Step, Bump };

  Kind kind = Kind::Const;
  double value = 0.0;      // Const level / Step left level / Bump mean
  double right = 0.0;      // Step: right level
  double x0 = 0.5;         // Step: interface position
  double amplitude = 0.0;  // Bump: cosine amplitude, |amplitude| <= mean
  int mode = 1;            // Bump: cosine mode index

  double eval(double x) const;

  bool operator==(const InitialProfile&) const = default;
};

/// A parsed first-order reaction network: species in declaration order,
/// rate constants a_{target,source} > 0, per-species diffusion coefficients
/// and initial profiles, and the spatial resolution used for simulation.
class ReactionNetwork {
 public:
  static constexpr int kDefaultGridCells = 128;

  std::vector<std::string> species;
  std::map<std::pair<int, int>, double> rates;  // (source, target) -> a_{target,source}
  std::vector<double> diffusions;               // d_i >= 0
  std::vector<InitialProfile> profiles;
  int grid_cells = kDefaultGridCells;

  int size() const { return static_cast<int>(species.size()); }

  /// Declaration index of a species name, or -1.
  int species_index(std::string_view name) const;

  /// a_{target,source}; zero when the reaction is absent.
  double rate(int target, int source) const;

  bool operator==(const ReactionNetwork&) const = default;
};

/// The N x N reaction matrix of Eq-form a_{ij} >= 0 off the diagonal with
/// every column summing to zero (diagonal recomputed, never stored input).
struct ReactionMatrix {
  Eigen::MatrixXd a;

  int n() const { return static_cast<int>(a.rows()); }
};

/// Parse the line-oriented network DSL. Throws ParseError with a line number
/// on malformed input, unknown or duplicate names, non-positive rates, and
/// all-zero initial mass.
ReactionNetwork parse_network(std::string_view text);

/// Canonical DSL serialization; parse_network(to_dsl(net)) == net.
std::string to_dsl(const ReactionNetwork& net);

/// Assemble the reaction matrix with the diagonal set to the negated sum of
/// each column's off-diagonal entries.
ReactionMatrix build_reaction_matrix(const ReactionNetwork& net);

/// FNV-1a 64-bit over the canonical serialization; stable across runs.
std::string network_hash(const ReactionNetwork& net);

/// FNV-1a 64-bit of arbitrary bytes, as a "fnv1a64:%016x" string.
std::string fnv1a64_hex(std::string_view bytes);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace crn
