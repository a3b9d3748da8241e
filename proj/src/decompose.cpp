#include "rumid/decompose.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace rumid {

namespace {

std::uint64_t key(const ContourPair& pair) {
  return (static_cast<std::uint64_t>(pair.menu.bits()) << 5) | static_cast<std::uint64_t>(pair.x);
}

}  // namespace

DecomposabilityResult is_edge_decomposable(const Model& model, PeelScan scan) {
  const std::size_t k = model.size();
  std::vector<std::vector<ContourPair>> paths;
  paths.reserve(k);
  std::unordered_map<std::uint64_t, int> cover;
  for (const auto& pref : model) {
    paths.push_back(upper_contour_pairs(pref));
    for (const auto& pair : paths.back()) ++cover[key(pair)];
  }

  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = scan == PeelScan::canonical ? i : k - 1 - i;

  std::vector<bool> alive(k, true);
  DecomposabilityResult result;
  for (std::size_t removed = 0; removed < k; ++removed) {
    bool found = false;
    for (std::size_t i : order) {
      if (!alive[i]) continue;
      for (const auto& pair : paths[i]) {
        if (cover[key(pair)] != 1) continue;
        result.witness.push_back({model[i], pair});
        alive[i] = false;
        for (const auto& p : paths[i]) --cover[key(p)];
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) {
      for (std::size_t i = 0; i < k; ++i) {
        if (alive[i]) result.stuck.push_back(model[i]);
      }
      return result;
    }
  }
  result.decomposable = true;
  return result;
}

bool validate_witness(const Model& model, const DecompositionWitness& witness) {
  std::vector<bool> seen(model.size(), false);
  if (witness.size() != model.size()) throw std::invalid_argument("witness does not cover the model exactly once");
  for (const auto& entry : witness) {
    const auto at = model.find(entry.preference);
    if (!at || seen[*at]) throw std::invalid_argument("witness does not cover the model exactly once");
    seen[*at] = true;
  }
  for (std::size_t i = 0; i < witness.size(); ++i) {
    const auto& pair = witness[i].pair;
    if (pair.x < 0 || pair.x >= model.n() || !pair.menu.fits(model.n()) || !pair.menu.contains(pair.x)) return false;
    if (!in_L(witness[i].preference, pair)) return false;
    for (std::size_t j = i + 1; j < witness.size(); ++j) {
      if (in_L(witness[j].preference, pair)) return false;
    }
  }
  return true;
}

std::string_view to_string(RecoveryStatus status) {
  switch (status) {
    case RecoveryStatus::exact:
      return "exact";
    case RecoveryStatus::approximate:
      return "approximate";
    case RecoveryStatus::failed:
      return "failed";
  }
  return "failed";
}

PreferenceDistribution RecoveryReport::distribution() const { return PreferenceDistribution(model, masses); }

RecoveryReport recover_distribution(const Model& model, const RandomChoiceRule& rule, const Rational& tolerance) {
  if (rule.n() != model.n()) throw std::invalid_argument("rule and model are over different universes");
  if (const auto violations = validate_rcr(rule); !violations.ok()) {
    throw std::invalid_argument("choice data is not a random choice rule");
  }
  if (tolerance < 0) throw std::invalid_argument("tolerance must be nonnegative");

  const auto decomposition = is_edge_decomposable(model);
  if (!decomposition.decomposable) throw std::invalid_argument("model is not edge decomposable");

  const auto q = mobius_inverse(rule);
  std::vector<Rational> masses(model.size(), Rational(0));
  std::vector<bool> assigned(model.size(), false);
  for (const auto& entry : decomposition.witness) {
    Rational value = q.q[entry.pair];
    for (std::size_t j = 0; j < model.size(); ++j) {
      if (assigned[j] && in_L(model[j], entry.pair)) value -= masses[j];
    }
    const auto at = *model.find(entry.preference);
    masses[at] = value;
    assigned[at] = true;
  }

  RecoveryReport report{model, masses, {}, Rational(0), tolerance, RecoveryStatus::failed};
  const auto reconstructed = choice_probabilities(model, masses);
  const auto q_reconstructed = mobius_inverse(reconstructed);
  const PairIndex index(model.n());
  for (const auto& pair : index.pairs()) {
    const Rational diff = q.q[pair] - q_reconstructed.q[pair];
    if (diff != 0) report.residual.emplace_back(pair, diff);
    const Rational deviation = boost::multiprecision::abs(rule.p[pair] - reconstructed.p[pair]);
    if (deviation > report.max_rule_deviation) report.max_rule_deviation = deviation;
  }

  const bool masses_in_range =
      std::all_of(masses.begin(), masses.end(), [](const Rational& m) { return m >= 0 && m <= 1; });
  if (masses_in_range && report.residual.empty()) {
    report.status = RecoveryStatus::exact;
  } else if (masses_in_range && report.max_rule_deviation <= tolerance) {
    report.status = RecoveryStatus::approximate;
  }
  return report;
}

RecoveryReport recover_distribution(const Model& model, const MobiusInverse& q, const Rational& tolerance) {
  return recover_distribution(model, mobius_forward(q), tolerance);
}

Model extend_edge_decomposable(const Model& seed) {
  if (!is_edge_decomposable(seed).decomposable) throw std::invalid_argument("seed model is not edge decomposable");
  const int n = seed.n();
  const PairIndex index(n);
  std::vector<bool> covered(index.size(), false);
  auto cover = [&](const Preference& pref) {
    for (const auto& pair : upper_contour_pairs(pref)) covered[index(pair)] = true;
  };
  std::vector<Preference> prefs(seed.begin(), seed.end());
  for (const auto& pref : prefs) cover(pref);

  const Menu all = Menu::full(n);
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (covered[i]) continue;
    const auto& pair = index.pair(i);
    std::vector<Alt> ranking;
    for (Alt y : Menu(all.bits() & ~pair.menu.bits()).members()) ranking.push_back(y);
    ranking.push_back(pair.x);
    for (Alt y : pair.menu.without(pair.x).members()) ranking.push_back(y);
    prefs.emplace_back(std::move(ranking));
    cover(prefs.back());
  }
  return Model(seed.universe(), std::move(prefs));
}

}  // namespace rumid
