#include <gtest/gtest.h>

#include "rumid/fixtures.hpp"
#include "rumid/stochastic.hpp"
#include "support/oracles.hpp"

using namespace rumid;

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(format_rational(parse_rational("3/6")), "1/2");
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  EXPECT_THROW(parse_rational("1e-3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Distribution, Validation) {
  const auto m = fixtures::no_own_pair().model;
  EXPECT_THROW(PreferenceDistribution(m, {Rational(1), Rational(0)}), std::invalid_argument);
  EXPECT_THROW(PreferenceDistribution(m, {Rational(1), Rational(1), Rational(-1)}), std::invalid_argument);
  EXPECT_THROW(PreferenceDistribution(m, {Rational(1, 2), Rational(1, 4), Rational(1, 8)}), std::invalid_argument);
  const auto u = PreferenceDistribution::uniform(m);
  EXPECT_EQ(u.mass(0), Rational(1, 3));
}

TEST(ChoiceRule, MatchesDirectDefinition) {
  oracle::Generator gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = gen.model(4, 10);
    const auto masses = gen.sparse_masses(m.size());
    const auto p = rcr_from_distribution(PreferenceDistribution(m, masses));
    EXPECT_EQ(p, oracle::direct_rule(m, masses));
    EXPECT_TRUE(validate_rcr(p).ok());
  }
}

TEST(ChoiceRule, ValidationFindsViolations) {
  RandomChoiceRule p(2);
  p(0, Menu(1)) = 1;
  p(1, Menu(2)) = 1;
  p(0, Menu(3)) = Rational(3, 2);
  p(1, Menu(3)) = Rational(-1, 2);
  auto v = validate_rcr(p);
  EXPECT_EQ(v.negative.size(), 1U);
  EXPECT_TRUE(v.bad_sums.empty());
  p(1, Menu(3)) = 0;
  v = validate_rcr(p);
  EXPECT_EQ(v.bad_sums, std::vector<Menu>{Menu(3)});
}

TEST(Mobius, UniformDistributionClosedForm) {
  for (int n = 1; n <= 5; ++n) {
    const Model all(Universe::lettered(n), all_preferences(n));
    const auto q = mobius_inverse(rcr_from_distribution(PreferenceDistribution::uniform(all)), {.cross_check = true});
    for (Menu a : nonempty_menus(n)) {
      for (Alt x : a.members()) EXPECT_EQ(q(x, a), oracle::uniform_q(n, a.size())) << n;
    }
  }
}

TEST(Mobius, FishburnRulesCoincide) {
  const auto f = fixtures::fishburn();
  const auto p1 = rcr_from_distribution(f.nu1);
  const auto p2 = rcr_from_distribution(f.nu2);
  std::size_t pairs = 0;
  for (Menu a : nonempty_menus(4)) {
    for (Alt x : a.members()) {
      EXPECT_EQ(p1(x, a), p2(x, a));
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 32U);
}

TEST(Mobius, NegativeEntriesOnNonRumRule) {
  // c is always chosen from X but never from {a,c}: q(c,{a,c}) = 0 - 1.
  RandomChoiceRule p(3);
  for (Menu a : nonempty_menus(3)) {
    const auto members = a.members();
    p(members.front(), a) = 1;
  }
  p(0, Menu(7)) = 0;
  p(2, Menu(7)) = 1;
  ASSERT_TRUE(validate_rcr(p).ok());
  const auto q = mobius_inverse(p);
  const auto neg = check_stochastic_rationality_necessary(q);
  ASSERT_FALSE(neg.ok());
  EXPECT_EQ(q(2, Menu(5)), Rational(-1));
}

TEST(ContourMass, QEqualsContourMass) {
  oracle::Generator gen(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = gen.uniform_int(2, 5);
    const auto m = gen.model(n, 12);
    const PreferenceDistribution nu(m, gen.sparse_masses(m.size()));
    const auto q = mobius_inverse(rcr_from_distribution(nu));
    for (Menu a : nonempty_menus(n)) {
      for (Alt x : a.members()) {
        Rational direct = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (oracle::in_L(m[i], x, a)) direct += nu.mass(i);
        }
        EXPECT_EQ(q(x, a), direct);
      }
    }
    EXPECT_TRUE(verify_contour_masses(nu));
  }
}

TEST(Flow, ConservedForRumData) {
  const auto f = fixtures::fishburn();
  EXPECT_TRUE(flow_conservation_check(mobius_inverse(rcr_from_distribution(f.nu1))).ok());
}

TEST(Sampler, DeterministicAndExactFractions) {
  const auto f = fixtures::fishburn();
  const auto a = sample_empirical_rule(f.nu1, 1000, 42);
  const auto b = sample_empirical_rule(f.nu1, 1000, 42);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(validate_rcr(a).ok());
  ASSERT_TRUE(a.counts.has_value());
  EXPECT_EQ(a.counts->trials, 1000U);
  for (Menu m : nonempty_menus(4)) {
    for (Alt x : m.members()) EXPECT_EQ(a(x, m), Rational(Integer(a.counts->counts(x, m)), 1000));
  }
  // Point masses are reproduced exactly regardless of sampling noise.
  const auto point = PreferenceDistribution::point_mass(f.model, f.model[0]);
  EXPECT_EQ(sample_empirical_rule(point, 50, 1).p, rcr_from_distribution(point).p);
}
