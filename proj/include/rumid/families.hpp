#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rumid/core.hpp"
#include "rumid/stochastic.hpp"

namespace rumid {

/// Preferences listed so that, for every x ⊳ y, agreement x ≻ y is monotone along the list.
using ScrumEnumeration = std::vector<Preference>;

struct SingleCrossingResult {
  bool single_crossing = false;
  std::optional<ScrumEnumeration> enumeration;
  /// Ordered pairs (x, y), x ⊳ y, on which the check failed.
  std::vector<std::pair<Alt, Alt>> conflict;
};

/// Decides whether some enumeration of the model is single-crossing w.r.t. `order`
/// (the agreement sets must form a chain) and returns one.
SingleCrossingResult check_single_crossing(const Model& model, const Preference& order);

/// Verifies the given enumeration directly. Throws std::invalid_argument unless it lists
/// each model preference exactly once.
SingleCrossingResult check_single_crossing(const Model& model, const Preference& order,
                                           std::span<const Preference> enumeration);

struct OrderSearchResult {
  bool exists = false;
  std::optional<Preference> order;
  std::optional<ScrumEnumeration> enumeration;
  std::size_t orders_tried = 0;
};

/// Exhaustive search over all n! exogenous orders; n is capped (default 8).
OrderSearchResult scrum_order_exists(const Model& model);

struct ScrumModel {
  Model model;
  ScrumEnumeration enumeration;
};

/// Starts at the reverse of `order` and promotes order[0], order[1], ... to their places by
/// adjacent swaps, emitting C(n,2)+1 preferences that end at `order`.
ScrumModel max_scrum_model(const Universe& universe, const Preference& order);

/// The n cyclic rotations of `order`.
Model latin_square(const Universe& universe, const Preference& order);

/// True iff pref's ranking is a cyclic rotation of order's ranking.
bool respects(const Preference& pref, const Preference& order);

/// Raised when choice data cannot come from any Latin-square model.
class NotCarumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Menus ∅ ≠ A ≠ X with more than one positive q(x, A).
std::vector<Menu> multiple_positive_menus(const MobiusInverse& q);

struct CarumRecovery {
  Preference order;
  Model model;
  PreferenceDistribution distribution;
};

/// Recovers the Latin square (up to rotation of ⊳) and ν from CARUM data.
/// Throws NotCarumError when the data is inconsistent with every Latin square.
CarumRecovery carum_recover(const Universe& universe, const RandomChoiceRule& rule);

}  // namespace rumid
