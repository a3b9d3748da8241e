#include "rumid/stochastic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rumid {

namespace {

std::vector<Menu> menus_by_size_descending(int n) {
  auto menus = nonempty_menus(n);
  std::stable_sort(menus.begin(), menus.end(), [](Menu a, Menu b) { return a.size() > b.size(); });
  return menus;
}

// Calls f(B) for every proper superset B of `menu` inside the full set of n alternatives.
template <typename F>
void for_each_proper_superset(Menu menu, int n, F&& f) {
  const Menu::Bits rest = Menu::full(n).bits() & ~menu.bits();
  for (Menu::Bits s = rest; s != 0; s = (s - 1) & rest) f(Menu(menu.bits() | s));
}

}  // namespace

PreferenceDistribution::PreferenceDistribution(Model model, std::vector<Rational> masses)
    : model_(std::move(model)), masses_(std::move(masses)) {
  if (masses_.size() != model_.size()) {
    throw std::invalid_argument("distribution has " + std::to_string(masses_.size()) + " masses for a model of size " +
                                std::to_string(model_.size()));
  }
  Rational total = 0;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] < 0) {
      throw std::invalid_argument("negative mass " + format_rational(masses_[i]) + " on " +
                                  to_string(model_[i], model_.universe()));
    }
    total += masses_[i];
  }
  if (total != 1) throw std::invalid_argument("masses sum to " + format_rational(total) + ", not 1");
}

PreferenceDistribution PreferenceDistribution::point_mass(Model model, const Preference& pref) {
  const auto at = model.find(pref);
  if (!at) throw std::invalid_argument("point mass outside the model");
  std::vector<Rational> masses(model.size(), Rational(0));
  masses[*at] = 1;
  return {std::move(model), std::move(masses)};
}

PreferenceDistribution PreferenceDistribution::uniform(Model model) {
  const auto k = model.size();
  std::vector<Rational> masses(k, Rational(1, static_cast<long>(k)));
  return {std::move(model), std::move(masses)};
}

Rational PreferenceDistribution::mass_of(const Preference& pref) const {
  const auto at = model_.find(pref);
  return at ? masses_[*at] : Rational(0);
}

std::vector<std::size_t> PreferenceDistribution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] != 0) out.push_back(i);
  }
  return out;
}

RandomChoiceRule choice_probabilities(const Model& model, std::span<const Rational> masses) {
  const int n = model.n();
  require_lattice_size(n, "choice probabilities");
  RandomChoiceRule rule(n);
  for (Menu menu : nonempty_menus(n)) {
    for (std::size_t i = 0; i < model.size(); ++i) {
      if (masses[i] == 0) continue;
      rule(model[i].best_in(menu), menu) += masses[i];
    }
  }
  return rule;
}

RandomChoiceRule rcr_from_distribution(const PreferenceDistribution& nu) {
  return choice_probabilities(nu.model(), nu.masses());
}

RuleViolations validate_rcr(const RandomChoiceRule& p) {
  RuleViolations report;
  for (Menu menu : nonempty_menus(p.n())) {
    Rational total = 0;
    for (Alt x : menu.members()) {
      if (p(x, menu) < 0) report.negative.push_back({x, menu});
      total += p(x, menu);
    }
    if (total != 1) report.bad_sums.push_back(menu);
  }
  return report;
}

MobiusInverse mobius_inverse(const RandomChoiceRule& p, MobiusOptions options) {
  const int n = p.n();
  require_lattice_size(n, "mobius inverse");
  MobiusInverse q(n);
  for (Menu menu : menus_by_size_descending(n)) {
    for (Alt x : menu.members()) {
      Rational above = 0;
      for_each_proper_superset(menu, n, [&](Menu b) { above += q(x, b); });
      q(x, menu) = p(x, menu) - above;
    }
  }
  if (options.cross_check && !(q == mobius_inverse_closed_form(p))) {
    throw std::logic_error("recursive and alternating-sum Möbius inverses disagree");
  }
  return q;
}

MobiusInverse mobius_inverse_closed_form(const RandomChoiceRule& p) {
  const int n = p.n();
  require_lattice_size(n, "mobius inverse");
  MobiusInverse q(n);
  for (Menu menu : nonempty_menus(n)) {
    for (Alt x : menu.members()) {
      Rational sum = p(x, menu);
      for_each_proper_superset(menu, n, [&](Menu b) {
        if ((b.size() - menu.size()) % 2 == 0) {
          sum += p(x, b);
        } else {
          sum -= p(x, b);
        }
      });
      q(x, menu) = sum;
    }
  }
  return q;
}

RandomChoiceRule mobius_forward(const MobiusInverse& q) {
  const int n = q.n();
  require_lattice_size(n, "mobius forward");
  RandomChoiceRule p(n);
  for (Menu menu : nonempty_menus(n)) {
    for (Alt x : menu.members()) {
      Rational sum = q(x, menu);
      for_each_proper_superset(menu, n, [&](Menu b) { sum += q(x, b); });
      p(x, menu) = sum;
    }
  }
  return p;
}

NegativeEntries check_stochastic_rationality_necessary(const MobiusInverse& q) {
  NegativeEntries out;
  const PairIndex index(q.n());
  for (const auto& pair : index.pairs()) {
    if (q.q[pair] < 0) out.entries.push_back(pair);
  }
  return out;
}

Rational contour_mass(const PreferenceDistribution& nu, const ContourPair& pair) {
  Rational total = 0;
  for (std::size_t i : nu.support()) {
    if (in_L(nu.model()[i], pair)) total += nu.mass(i);
  }
  return total;
}

bool verify_contour_masses(const PreferenceDistribution& nu) {
  const auto q = mobius_inverse(rcr_from_distribution(nu));
  const PairIndex index(q.n());
  for (const auto& pair : index.pairs()) {
    if (q.q[pair] != contour_mass(nu, pair)) return false;
  }
  return true;
}

FlowReport flow_conservation_check(const MobiusInverse& q) {
  const int n = q.n();
  const Menu all = Menu::full(n);
  FlowReport report;
  for (Menu menu : nonempty_menus(n)) {
    if (menu == all) continue;
    Rational out = 0;
    for (Alt x : menu.members()) out += q(x, menu);
    Rational in = 0;
    for (Alt y = 0; y < n; ++y) {
      if (!menu.contains(y)) in += q(y, menu.with(y));
    }
    if (out != in) report.unbalanced.push_back(menu);
  }
  Rational source = 0;
  for (Alt x = 0; x < n; ++x) source += q(x, all);
  report.source_total_is_one = source == 1;
  return report;
}

RandomChoiceRule sample_empirical_rule(const PreferenceDistribution& nu, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("sampling needs at least one trial per menu");
  const int n = nu.model().n();
  require_lattice_size(n, "sample empirical rule");

  // Cumulative masses as doubles; the last bucket absorbs rounding so every draw lands somewhere.
  std::vector<double> cumulative;
  std::vector<std::size_t> support = nu.support();
  double running = 0.0;
  for (std::size_t i : support) {
    running += to_double(nu.mass(i));
    cumulative.push_back(running);
  }
  cumulative.back() = 1.0;

  std::mt19937_64 engine(seed);
  SampleCounts tally{trials, PairTable<std::uint64_t>(n, 0)};
  for (Menu menu : nonempty_menus(n)) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      const auto bucket = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      const auto& pref = nu.model()[support[std::min(bucket, support.size() - 1)]];
      ++tally.counts(pref.best_in(menu), menu);
    }
  }

  RandomChoiceRule rule(n);
  const Integer denominator(trials);
  for (Menu menu : nonempty_menus(n)) {
    for (Alt x : menu.members()) rule(x, menu) = Rational(Integer(tally.counts(x, menu)), denominator);
  }
  rule.counts = std::move(tally);
  return rule;
}

}  // namespace rumid
