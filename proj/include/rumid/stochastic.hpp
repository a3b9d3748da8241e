#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rumid/core.hpp"
#include "rumid/scalar.hpp"

namespace rumid {

/// Raw tallies behind an empirical rule: counts(x, A) draws chose x out of `trials` per menu.
struct SampleCounts {
  std::uint64_t trials = 0;
  PairTable<std::uint64_t> counts;

  bool operator==(const SampleCounts&) const = default;
};

/// p(x, A) for every nonempty A and x in A. Validity is checked by validate_rcr, not on construction.
struct RandomChoiceRule {
  PairTable<Rational> p;
  std::optional<SampleCounts> counts;

  RandomChoiceRule() = default;
  explicit RandomChoiceRule(int n) : p(n) {}
  explicit RandomChoiceRule(PairTable<Rational> values) : p(std::move(values)) {}

  int n() const { return p.n(); }
  const Rational& operator()(Alt x, Menu menu) const { return p(x, menu); }
  Rational& operator()(Alt x, Menu menu) { return p(x, menu); }

  bool operator==(const RandomChoiceRule&) const = default;
};

/// q(x, A), the Möbius inverse of a rule over the subset lattice. Entries may be negative.
struct MobiusInverse {
  PairTable<Rational> q;

  MobiusInverse() = default;
  explicit MobiusInverse(int n) : q(n) {}
  explicit MobiusInverse(PairTable<Rational> values) : q(std::move(values)) {}

  int n() const { return q.n(); }
  const Rational& operator()(Alt x, Menu menu) const { return q(x, menu); }
  Rational& operator()(Alt x, Menu menu) { return q(x, menu); }

  bool operator==(const MobiusInverse&) const = default;
};

/// Probability mass over the preferences of a model; masses()[i] belongs to model()[i].
class PreferenceDistribution {
 public:
  /// Throws std::invalid_argument on negative mass, wrong length, or a total other than 1.
  PreferenceDistribution(Model model, std::vector<Rational> masses);

  static PreferenceDistribution point_mass(Model model, const Preference& pref);
  static PreferenceDistribution uniform(Model model);

  const Model& model() const { return model_; }
  const std::vector<Rational>& masses() const { return masses_; }
  const Rational& mass(std::size_t i) const { return masses_[i]; }
  /// Zero for preferences outside the model.
  Rational mass_of(const Preference& pref) const;
  std::vector<std::size_t> support() const;

  bool operator==(const PreferenceDistribution&) const = default;

 private:
  Model model_;
  std::vector<Rational> masses_;
};

/// p(x, A) = sum of masses[i] over preferences ranking x best in A. Masses are not validated.
RandomChoiceRule choice_probabilities(const Model& model, std::span<const Rational> masses);

RandomChoiceRule rcr_from_distribution(const PreferenceDistribution& nu);

struct RuleViolations {
  std::vector<ContourPair> negative;
  std::vector<Menu> bad_sums;

  bool ok() const { return negative.empty() && bad_sums.empty(); }
};

RuleViolations validate_rcr(const RandomChoiceRule& p);

struct MobiusOptions {
  /// Also evaluate the alternating-sum form and throw std::logic_error on any disagreement.
  bool cross_check = false;
};

/// Recursive form q(x,A) = p(x,A) - sum_{B ⊋ A} q(x,B), computed in decreasing |A|.
MobiusInverse mobius_inverse(const RandomChoiceRule& p, MobiusOptions options = {});

/// q(x,A) = sum_{B ⊇ A} (-1)^{|B \ A|} p(x,B).
MobiusInverse mobius_inverse_closed_form(const RandomChoiceRule& p);

/// p(x,A) = q(x,A) + sum_{B ⊋ A} q(x,B).
RandomChoiceRule mobius_forward(const MobiusInverse& q);

struct NegativeEntries {
  std::vector<ContourPair> entries;

  bool ok() const { return entries.empty(); }
};

/// Necessary (not sufficient) condition for stochastic rationality: q >= 0 everywhere.
NegativeEntries check_stochastic_rationality_necessary(const MobiusInverse& q);

/// ν(L(x, A)) by direct summation over the support.
Rational contour_mass(const PreferenceDistribution& nu, const ContourPair& pair);

/// q of p_ν equals ν(L(x,A)) for every pair.
bool verify_contour_masses(const PreferenceDistribution& nu);

struct FlowReport {
  /// Menus A (∅ ≠ A ≠ X) whose outflow sum_{x∈A} q(x,A) differs from the inflow.
  std::vector<Menu> unbalanced;
  bool source_total_is_one = true;

  bool ok() const { return unbalanced.empty() && source_total_is_one; }
};

FlowReport flow_conservation_check(const MobiusInverse& q);

/// For each menu in ascending bitmask order, draws `trials` preferences i.i.d. from ν and
/// records best-in-menu frequencies as count/trials. Deterministic for a given seed.
RandomChoiceRule sample_empirical_rule(const PreferenceDistribution& nu, std::uint64_t trials, std::uint64_t seed);

}  // namespace rumid
