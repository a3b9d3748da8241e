#include <gtest/gtest.h>

#include <set>

#include "rumid/decompose.hpp"
#include "rumid/flowgraph.hpp"
#include "rumid/identify.hpp"
#include "support/oracles.hpp"

using namespace rumid;

TEST(Diagram, NodeAndEdgeCounts) {
  for (int n = 1; n <= 8; ++n) {
    const FlowDiagram plain(n, false);
    const FlowDiagram appended(n, true);
    EXPECT_EQ(plain.node_count(), std::size_t{1} << n);
    EXPECT_EQ(plain.edge_count(), static_cast<std::size_t>(n) << (n - 1));
    EXPECT_EQ(appended.edge_count(), plain.edge_count() + 1);
    EXPECT_TRUE(appended.edges().back().is_appended());
    EXPECT_EQ(cyclomatic_number(appended), oracle::closed_bound(n));
    EXPECT_THROW(cyclomatic_number(plain), std::invalid_argument);
  }
}

TEST(Diagram, EdgesPointDownward) {
  const FlowDiagram d(4, true);
  for (const auto& e : d.edges()) {
    if (e.is_appended()) continue;
    EXPECT_TRUE(e.to.is_subset_of(e.from));
    EXPECT_EQ(e.to.size() + 1, e.from.size());
    EXPECT_TRUE(d.has_edge(e));
    EXPECT_FALSE(d.has_edge({e.to, e.from}));
  }
}

TEST(Circuit, RoundTripsEveryPreference) {
  for (int n = 1; n <= 5; ++n) {
    const FlowDiagram d(n, true);
    for (const auto& p : all_preferences(n)) {
      const auto c = preference_to_circuit(p, d);
      EXPECT_EQ(c.edges.size(), static_cast<std::size_t>(n) + 1);
      EXPECT_EQ(circuit_to_preference(c, n), p);
      const auto v = indicator(c, d);
      EXPECT_EQ(v.sum(), Integer(n + 1));
    }
  }
}

TEST(Circuit, RejectsMalformed) {
  const FlowDiagram d(3, true);
  auto c = preference_to_circuit(Preference({0, 1, 2}), d);
  auto open = c;
  open.edges.pop_back();
  EXPECT_THROW(circuit_to_preference(open, 3), std::invalid_argument);
  auto broken = c;
  std::swap(broken.edges[0], broken.edges[1]);
  EXPECT_THROW(circuit_to_preference(broken, 3), std::invalid_argument);
}

TEST(Algorithm1, SpanningTreeForSmallN) {
  for (int n = 1; n <= 7; ++n) {
    const FlowDiagram d(n, true);
    const auto tree = algorithm1_spanning_tree(d);
    EXPECT_EQ(tree.links.size(), (std::size_t{1} << n) - 1);
    EXPECT_TRUE(verify_spanning_tree(tree, d).ok()) << n;
    EXPECT_TRUE(tree.links.front().is_appended());
  }
}

TEST(Algorithm1, VerificationCatchesDefects) {
  const FlowDiagram d(3, true);
  const auto tree = algorithm1_spanning_tree(d);

  auto short_tree = tree;
  short_tree.links.pop_back();
  EXPECT_FALSE(verify_spanning_tree(short_tree, d).ok());

  auto flipped = tree;
  std::swap(flipped.links[1].from, flipped.links[1].to);
  EXPECT_FALSE(verify_spanning_tree(flipped, d).ok());
  EXPECT_THROW(algorithm2_preference_basis(flipped, d), std::invalid_argument);

  // Replace a link by a non-tree edge into an already reached node: cycle plus a missing node.
  auto cyclic = tree;
  for (const auto& e : d.edges()) {
    if (e.is_appended() || std::find(tree.links.begin(), tree.links.end(), e) != tree.links.end()) continue;
    cyclic.links.back() = e;
    break;
  }
  EXPECT_FALSE(verify_spanning_tree(cyclic, d).ok());
}

TEST(Algorithm2, BasisSizeMatchesBound) {
  for (int n = 1; n <= 6; ++n) {
    const FlowDiagram d(n, true);
    const auto basis = algorithm2_preference_basis(algorithm1_spanning_tree(d), d);
    EXPECT_EQ(Integer(basis.size()), oracle::closed_bound(n)) << n;
    std::set<Preference> distinct;
    for (const auto& b : basis) distinct.insert(b.preference);
    EXPECT_EQ(distinct.size(), basis.size());
  }
}

TEST(Algorithm2, WitnessEdgesAreNewAndOnPath) {
  for (int n = 2; n <= 5; ++n) {
    const FlowDiagram d(n, true);
    const auto tree = algorithm1_spanning_tree(d);
    const auto basis = algorithm2_preference_basis(tree, d);
    std::set<ContourPair> used;
    for (const auto& b : basis) {
      EXPECT_TRUE(oracle::in_L(b.preference, b.witness.x, b.witness.menu));
      EXPECT_FALSE(used.contains(b.witness));
      EXPECT_EQ(std::find(tree.links.begin(), tree.links.end(), contour_edge(b.witness)), tree.links.end());
      for (const auto& pair : upper_contour_pairs(b.preference)) used.insert(pair);
    }
  }
}

TEST(Algorithm2, ReverseEmissionIsDecomposition) {
  for (int n = 2; n <= 5; ++n) {
    const FlowDiagram d(n, true);
    const auto basis = algorithm2_preference_basis(algorithm1_spanning_tree(d), d);
    std::vector<Preference> prefs;
    DecompositionWitness w;
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
      prefs.push_back(it->preference);
      w.push_back({it->preference, it->witness});
    }
    EXPECT_TRUE(validate_witness(Model(Universe::numbered(n), prefs), w));
  }
}
