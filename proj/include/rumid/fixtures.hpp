#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rumid/core.hpp"
#include "rumid/stochastic.hpp"

namespace rumid::fixtures {

/// A model together with its preferences in the order they are usually listed (≻1, ≻2, ...).
struct ListedModel {
  Model model;
  std::vector<Preference> listed;
};

/// Four preferences on {a,b,c,d} and two distributions with the same choice rule.
struct Fishburn {
  Model model;
  PreferenceDistribution nu1;
  PreferenceDistribution nu2;
};

Fishburn fishburn();

/// Eight preferences on {a,...,h}: identified but not edge decomposable.
/// ≻3 is f≻g≻h≻e≻d≻c≻a≻b, the form consistent with the closed-form recovery.
ListedModel identified_not_decomposable();

/// Three preferences on {a,b,c,d}: edge decomposable, yet ≻3 never owns a pair alone.
ListedModel no_own_pair();

/// Three preferences on {a,...,f}: edge decomposable but single-crossing for no order.
ListedModel no_scrum_order();

/// Names accepted by the CLI: fishburn, fishburn-nu1, fishburn-nu2, identified-not-decomposable, no-own-pair, no-scrum-order.
std::vector<std::string> names();

}  // namespace rumid::fixtures

namespace rumid {

/// Evaluates the closed-form recovery for the eight-preference model from q: first the three
/// paired masses, then the five peeled ones. Throws std::invalid_argument if the masses
/// are not a distribution (data not generated by the model).
PreferenceDistribution closed_form_recovery(const MobiusInverse& q);

}  // namespace rumid
