#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "rumid/core.hpp"
#include "rumid/scalar.hpp"
#include "rumid/stochastic.hpp"

namespace rumid {

struct WitnessEntry {
  Preference preference;
  ContourPair pair;

  bool operator==(const WitnessEntry&) const = default;
};

/// Sequential edge decomposition: entry i's pair meets {≻_i, ..., ≻_k} only in ≻_i.
using DecompositionWitness = std::vector<WitnessEntry>;

enum class PeelScan { canonical, reversed };

struct DecomposabilityResult {
  bool decomposable = false;
  DecompositionWitness witness;
  /// The nonempty submodel with no uniquely covered pair, when not decomposable.
  std::vector<Preference> stuck;
};

/// Greedy peel: remove the first preference (in scan order) owning a pair whose
/// L(x, A) meets the remaining set only in that preference.
DecomposabilityResult is_edge_decomposable(const Model& model, PeelScan scan = PeelScan::canonical);

/// Checks suffix uniqueness at every position. Throws std::invalid_argument unless the
/// witness lists every model preference exactly once.
bool validate_witness(const Model& model, const DecompositionWitness& witness);

enum class RecoveryStatus { exact, approximate, failed };

std::string_view to_string(RecoveryStatus status);

struct RecoveryReport {
  Model model;
  /// Peeled masses aligned with model; may leave [0, 1] when the data is foreign to the model.
  std::vector<Rational> masses;
  /// Nonzero entries of q_data - q_reconstructed, in coordinate order.
  std::vector<std::pair<ContourPair, Rational>> residual;
  /// max |p_data(x,A) - p_reconstructed(x,A)|.
  Rational max_rule_deviation;
  Rational tolerance;
  RecoveryStatus status = RecoveryStatus::failed;

  /// The recovered ν; throws std::invalid_argument if the masses are not a distribution.
  PreferenceDistribution distribution() const;
};

/// Recovers ν on an edge decomposable model by peeling along its witness.
/// Throws std::invalid_argument if the model is not edge decomposable or the rule is invalid.
RecoveryReport recover_distribution(const Model& model, const RandomChoiceRule& rule, const Rational& tolerance = 0);
RecoveryReport recover_distribution(const Model& model, const MobiusInverse& q, const Rational& tolerance = 0);

/// Adds, for each uncovered pair (x, A) in coordinate order, the preference ranking
/// X \ A ascending, then x, then A \ {x} ascending. Throws if the seed is not decomposable.
Model extend_edge_decomposable(const Model& seed);

}  // namespace rumid
