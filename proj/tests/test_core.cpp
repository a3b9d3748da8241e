#include <gtest/gtest.h>

#include <set>

#include "rumid/core.hpp"
#include "support/oracles.hpp"

using namespace rumid;

namespace {

Preference pref(const Universe& u, std::string_view letters) {
  std::vector<std::string> labels;
  for (char c : letters) labels.emplace_back(1, c);
  return preference_from_labels(u, labels);
}

Menu menu(const Universe& u, std::string_view letters) {
  Menu m;
  for (char c : letters) m = m.with(u.index_of(std::string(1, c)));
  return m;
}

}  // namespace

TEST(Universe, RejectsBadLabels) {
  EXPECT_THROW(Universe({}), std::invalid_argument);
  EXPECT_THROW(Universe({"a", "a"}), std::invalid_argument);
  EXPECT_THROW(Universe({"a", ""}), std::invalid_argument);
  EXPECT_THROW(Universe::lettered(3).index_of("z"), std::invalid_argument);
  EXPECT_EQ(Universe::numbered(3).labels(), (std::vector<std::string>{"1", "2", "3"}));
}

TEST(Preference, RejectsNonPermutations) {
  EXPECT_THROW(Preference({0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Preference({0, 3, 1}), std::invalid_argument);
  const Universe u = Universe::lettered(3);
  const std::vector<std::string> repeated{"a", "a", "b"};
  try {
    preference_from_labels(u, repeated);
    FAIL() << "repeated label accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("a"), std::string::npos);
  }
}

TEST(Model, SortedAndDeduplicated) {
  const Universe u = Universe::lettered(3);
  EXPECT_THROW(Model(u, {}), std::invalid_argument);
  EXPECT_THROW(Model(u, {pref(u, "abc"), pref(u, "abc")}), std::invalid_argument);
  const Model m(u, {pref(u, "cba"), pref(u, "abc")});
  EXPECT_EQ(m[0], pref(u, "abc"));
  EXPECT_EQ(*m.find(pref(u, "cba")), 1U);
}

TEST(InL, ContourSetExamples) {
  const Universe u = Universe::lettered(4);
  // a is best in {a,c} but b sits above a: a in L(a, {a,c,d}) requires b above a.
  EXPECT_TRUE(in_L(pref(u, "bacd"), {0, menu(u, "acd")}));
  EXPECT_FALSE(in_L(pref(u, "abcd"), {0, menu(u, "acd")}));
  EXPECT_TRUE(in_L(pref(u, "badc"), {3, menu(u, "cd")}));
  EXPECT_TRUE(in_L(pref(u, "abcd"), {0, Menu::full(4)}));
  EXPECT_THROW(in_L(pref(u, "abcd"), {0, menu(u, "bc")}), std::invalid_argument);
}

TEST(InL, AgreesWithOracleExhaustively) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : all_preferences(n)) {
      for (Menu a : nonempty_menus(n)) {
        for (Alt x : a.members()) EXPECT_EQ(in_L(p, {x, a}), oracle::in_L(p, x, a));
      }
    }
  }
}

TEST(InL, EachPreferenceOnExactlyNPairs) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : all_preferences(n)) {
      const auto path = upper_contour_pairs(p);
      EXPECT_EQ(path.size(), static_cast<std::size_t>(n));
      int count = 0;
      for (Menu a : nonempty_menus(n)) {
        for (Alt x : a.members()) count += oracle::in_L(p, x, a) ? 1 : 0;
      }
      EXPECT_EQ(count, n);
      for (const auto& pair : path) EXPECT_TRUE(oracle::in_L(p, pair.x, pair.menu));
    }
  }
}

TEST(InL, PartitionOfAllPreferences) {
  // For a fixed A, the sets L(x, A) over x in A are disjoint and cover exactly the
  // preferences whose top |X \ A| elements are X \ A.
  const int n = 4;
  const auto all = all_preferences(n);
  for (Menu a : nonempty_menus(n)) {
    std::size_t covered = 0;
    for (const auto& p : all) {
      int hits = 0;
      for (Alt x : a.members()) hits += in_L(p, {x, a}) ? 1 : 0;
      EXPECT_LE(hits, 1);
      covered += static_cast<std::size_t>(hits);
    }
    const int outside = n - a.size();
    EXPECT_EQ(Integer(covered), factorial(static_cast<unsigned>(outside)) * factorial(static_cast<unsigned>(a.size())));
  }
}

TEST(PairIndex, CoordinateOrder) {
  for (int n = 1; n <= 6; ++n) {
    const PairIndex index(n);
    EXPECT_EQ(index.size(), static_cast<std::size_t>(n) << (n - 1));
    for (std::size_t i = 0; i < index.size(); ++i) {
      EXPECT_EQ(index(index.pair(i)), i);
      if (i > 0) EXPECT_LT(index.pair(i - 1), index.pair(i));
    }
    EXPECT_EQ(index.pair(0).menu, Menu::full(n));
  }
}

TEST(Preferences, LexicographicAndComplete) {
  const auto all = all_preferences(4);
  EXPECT_EQ(all.size(), 24U);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::set<Preference>(all.begin(), all.end()).size(), 24U);
}

TEST(MutualAgreement, DetectsReversedPairs) {
  const Universe u = Universe::lettered(3);
  EXPECT_FALSE(check_minimal_mutual_agreement(Model(u, {pref(u, "abc"), pref(u, "cba")})));
  EXPECT_TRUE(check_minimal_mutual_agreement(Model(u, {pref(u, "abc"), pref(u, "bca")})));
  EXPECT_THROW(check_minimal_mutual_agreement(Model(Universe::lettered(1), {Preference({0})})), std::invalid_argument);
}

TEST(Rendering, Strings) {
  const Universe u = Universe::lettered(3);
  EXPECT_EQ(to_string(pref(u, "bca"), u), "b>c>a");
  EXPECT_EQ(to_string(menu(u, "ac"), u), "{a,c}");
  EXPECT_EQ(to_string(ContourPair{2, menu(u, "ac")}, u), "(c,{a,c})");
}

TEST(Caps, LatticeCapRefusesLargeN) {
  EXPECT_THROW(require_lattice_size(caps().lattice_max_n + 1, "test"), CapError);
  EXPECT_NO_THROW(require_lattice_size(caps().lattice_max_n, "test"));
}
