#include "rumid/families.hpp"

#include <algorithm>
#include <numeric>

#include "rumid/decompose.hpp"

namespace rumid {

namespace {

void require_same_size(const Model& model, const Preference& order) {
  if (order.size() != model.n()) throw std::invalid_argument("order and model are over different universes");
}

// For every x ⊳ y, the membership vector of {≻ ∈ list : x ≻ y}.
struct AgreementSet {
  Alt x;
  Alt y;
  std::vector<bool> members;
  std::size_t count;
};

std::vector<AgreementSet> agreement_sets(std::span<const Preference> prefs, const Preference& order) {
  std::vector<AgreementSet> sets;
  const int n = order.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      AgreementSet s{order.at(i), order.at(j), std::vector<bool>(prefs.size()), 0};
      for (std::size_t k = 0; k < prefs.size(); ++k) {
        s.members[k] = prefs[k].prefers(s.x, s.y);
        s.count += s.members[k] ? 1 : 0;
      }
      sets.push_back(std::move(s));
    }
  }
  return sets;
}

bool is_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] && !b[k]) return false;
  }
  return true;
}

}  // namespace

SingleCrossingResult check_single_crossing(const Model& model, const Preference& order,
                                           std::span<const Preference> enumeration) {
  require_same_size(model, order);
  std::vector<bool> seen(model.size(), false);
  if (enumeration.size() != model.size()) throw std::invalid_argument("enumeration must list the model exactly once");
  for (const auto& p : enumeration) {
    const auto at = model.find(p);
    if (!at || seen[*at]) throw std::invalid_argument("enumeration must list the model exactly once");
    seen[*at] = true;
  }

  SingleCrossingResult result;
  const int n = order.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Alt x = order.at(i);
      const Alt y = order.at(j);
      bool agreed = false;
      for (const auto& p : enumeration) {
        if (p.prefers(x, y)) {
          agreed = true;
        } else if (agreed) {
          result.conflict.emplace_back(x, y);
          break;
        }
      }
    }
  }
  result.single_crossing = result.conflict.empty();
  if (result.single_crossing) result.enumeration = ScrumEnumeration(enumeration.begin(), enumeration.end());
  return result;
}

SingleCrossingResult check_single_crossing(const Model& model, const Preference& order) {
  require_same_size(model, order);
  auto sets = agreement_sets(model.preferences(), order);
  std::stable_sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) { return a.count < b.count; });

  SingleCrossingResult result;
  for (std::size_t s = 0; s + 1 < sets.size(); ++s) {
    if (!is_subset(sets[s].members, sets[s + 1].members)) {
      result.conflict = {{sets[s].x, sets[s].y}, {sets[s + 1].x, sets[s + 1].y}};
      return result;
    }
  }

  // Agreement sets are nested suffixes: a preference's depth is how many of them contain it.
  std::vector<std::size_t> depth(model.size(), 0);
  for (const auto& s : sets) {
    for (std::size_t k = 0; k < model.size(); ++k) depth[k] += s.members[k] ? 1 : 0;
  }
  std::vector<std::size_t> idx(model.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
  ScrumEnumeration enumeration;
  for (std::size_t i : idx) enumeration.push_back(model[i]);

  auto verified = check_single_crossing(model, order, enumeration);
  if (!verified.single_crossing) throw std::logic_error("nested agreement sets produced a crossing enumeration");
  return verified;
}

OrderSearchResult scrum_order_exists(const Model& model) {
  const int n = model.n();
  if (n > caps().order_search_max_n) {
    throw CapError("scrum order search is exhaustive over n! orders; n = " + std::to_string(n) + " exceeds " +
                   std::to_string(caps().order_search_max_n));
  }
  std::vector<Alt> ranking(static_cast<std::size_t>(n));
  std::iota(ranking.begin(), ranking.end(), 0);
  OrderSearchResult result;
  do {
    ++result.orders_tried;
    const Preference order(ranking);
    auto check = check_single_crossing(model, order);
    if (check.single_crossing) {
      result.exists = true;
      result.order = order;
      result.enumeration = std::move(check.enumeration);
      return result;
    }
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return result;
}

ScrumModel max_scrum_model(const Universe& universe, const Preference& order) {
  const int n = universe.size();
  if (n < 2) throw std::invalid_argument("single-crossing construction needs n >= 2");
  if (order.size() != n) throw std::invalid_argument("order and universe sizes differ");

  std::vector<Alt> ranking = reverse(order).ranking();
  ScrumEnumeration enumeration{Preference(ranking)};
  for (int target = 0; target + 1 < n; ++target) {
    auto pos = std::find(ranking.begin(), ranking.end(), order.at(target)) - ranking.begin();
    while (pos > target) {
      std::swap(ranking[static_cast<std::size_t>(pos - 1)], ranking[static_cast<std::size_t>(pos)]);
      --pos;
      enumeration.emplace_back(ranking);
    }
  }
  return {Model(universe, enumeration), std::move(enumeration)};
}

Model latin_square(const Universe& universe, const Preference& order) {
  if (order.size() != universe.size()) throw std::invalid_argument("order and universe sizes differ");
  std::vector<Preference> rotations;
  std::vector<Alt> ranking = order.ranking();
  for (int m = 0; m < order.size(); ++m) {
    rotations.emplace_back(ranking);
    std::rotate(ranking.begin(), ranking.begin() + 1, ranking.end());
  }
  return Model(universe, std::move(rotations));
}

bool respects(const Preference& pref, const Preference& order) {
  if (pref.size() != order.size()) throw std::invalid_argument("respects: preferences over different universes");
  const int n = order.size();
  const int shift = pref.position(order.at(0));
  for (int i = 0; i < n; ++i) {
    if (pref.at((shift + i) % n) != order.at(i)) return false;
  }
  return true;
}

std::vector<Menu> multiple_positive_menus(const MobiusInverse& q) {
  std::vector<Menu> out;
  const Menu all = Menu::full(q.n());
  for (Menu menu : nonempty_menus(q.n())) {
    if (menu == all) continue;
    int positive = 0;
    for (Alt x : menu.members()) positive += q(x, menu) > 0 ? 1 : 0;
    if (positive > 1) out.push_back(menu);
  }
  return out;
}

CarumRecovery carum_recover(const Universe& universe, const RandomChoiceRule& rule) {
  const int n = universe.size();
  if (rule.n() != n) throw std::invalid_argument("rule and universe sizes differ");
  if (!validate_rcr(rule).ok()) throw std::invalid_argument("choice data is not a random choice rule");

  const auto q = mobius_inverse(rule);
  if (const auto bad = multiple_positive_menus(q); !bad.empty()) {
    throw NotCarumError("not CARUM: menu " + to_string(bad.front(), universe) + " has more than one positive q entry");
  }

  const Menu all = Menu::full(n);
  std::vector<Alt> ranking;
  for (Alt x = 0; x < n; ++x) {
    if (q(x, all) > 0) {
      ranking.push_back(x);
      break;
    }
  }
  if (ranking.empty()) throw NotCarumError("not CARUM: no positive q(x, X)");
  for (Menu menu = all.without(ranking.front()); !menu.empty();) {
    const auto members = menu.members();
    const auto next = std::find_if(members.begin(), members.end(), [&](Alt z) { return q(z, menu) > 0; });
    if (next == members.end()) throw NotCarumError("not CARUM: positive path stops at " + to_string(menu, universe));
    ranking.push_back(*next);
    menu = menu.without(*next);
  }

  Preference order(std::move(ranking));
  Model model = latin_square(universe, order);
  const auto report = recover_distribution(model, rule);
  if (report.status != RecoveryStatus::exact) throw NotCarumError("not CARUM: Latin-square recovery leaves a residual");
  return {std::move(order), model, report.distribution()};
}

}  // namespace rumid
