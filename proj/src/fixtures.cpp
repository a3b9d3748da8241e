#include "rumid/fixtures.hpp"

#include <initializer_list>

namespace rumid::fixtures {

namespace {

Preference parse(const Universe& u, std::string_view letters) {
  std::vector<std::string> labels;
  for (char c : letters) labels.emplace_back(1, c);
  return preference_from_labels(u, labels);
}

ListedModel listed(int n, std::initializer_list<std::string_view> rankings) {
  const Universe u = Universe::lettered(n);
  std::vector<Preference> prefs;
  for (auto r : rankings) prefs.push_back(parse(u, r));
  return {Model(u, prefs), prefs};
}

}  // namespace

Fishburn fishburn() {
  const Universe u = Universe::lettered(4);
  const Model model(u, {parse(u, "abcd"), parse(u, "badc"), parse(u, "abdc"), parse(u, "bacd")});
  auto half_on = [&](std::string_view first, std::string_view second) {
    std::vector<Rational> masses(model.size(), Rational(0));
    masses[*model.find(parse(u, first))] = Rational(1, 2);
    masses[*model.find(parse(u, second))] = Rational(1, 2);
    return PreferenceDistribution(model, std::move(masses));
  };
  return {model, half_on("abcd", "badc"), half_on("abdc", "bacd")};
}

ListedModel identified_not_decomposable() {
  return listed(8, {"fgdhceab", "hgefbdac", "fghedcab", "hgfdceba", "gfdhebac", "ghfdebca", "gfhebdca", "ghefdcba"});
}

ListedModel no_own_pair() { return listed(4, {"abcd", "badc", "abdc"}); }

ListedModel no_scrum_order() { return listed(6, {"abcdfe", "abdcef", "bacdef"}); }

std::vector<std::string> names() {
  return {"fishburn", "fishburn-nu1", "fishburn-nu2", "identified-not-decomposable", "no-own-pair", "no-scrum-order"};
}

}  // namespace rumid::fixtures

namespace rumid {

PreferenceDistribution closed_form_recovery(const MobiusInverse& q) {
  if (q.n() != 8) throw std::invalid_argument("the eight-preference model lives on eight alternatives");
  const auto fixture = fixtures::identified_not_decomposable();
  const Universe& u = fixture.model.universe();
  auto at = [&](char x, std::string_view menu) {
    Menu m;
    for (char c : menu) m = m.with(u.index_of(std::string(1, c)));
    return q(u.index_of(std::string(1, x)), m);
  };

  const Rational h_all = at('h', "abcdefgh");
  const Rational e_af = at('e', "abcdef");
  const Rational b_ab = at('b', "ab");

  std::vector<Rational> nu(9);  // 1-based, matching ≻1..≻8
  nu[2] = (h_all + e_af - b_ab) / 2;
  nu[4] = (h_all - e_af + b_ab) / 2;
  nu[8] = (-h_all + e_af + b_ab) / 2;
  nu[1] = at('c', "abce") - nu[4];
  nu[6] = at('f', "abcdef") - nu[4];
  nu[3] = at('a', "ab") - nu[1];
  nu[5] = at('e', "abce") - nu[6];
  nu[7] = at('c', "ac") - nu[6];

  std::vector<Rational> masses(fixture.model.size());
  for (std::size_t i = 0; i < fixture.listed.size(); ++i) masses[*fixture.model.find(fixture.listed[i])] = nu[i + 1];
  try {
    return PreferenceDistribution(fixture.model, std::move(masses));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("data not generated by the eight-preference model: ") + e.what());
  }
}

}  // namespace rumid
