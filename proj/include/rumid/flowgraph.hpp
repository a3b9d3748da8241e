#pragma once

#include <optional>
#include <vector>

#include "rumid/core.hpp"
#include "rumid/scalar.hpp"

namespace rumid {

/// A directed edge of the flow diagram: A -> A \ {x}, or the appended edge ∅ -> X.
struct DiagramEdge {
  Menu from;
  Menu to;

  bool is_appended() const { return from.empty(); }
  /// The (x, A) this edge carries; nullopt for the appended edge or a non-edge.
  std::optional<ContourPair> pair() const;

  bool operator==(const DiagramEdge&) const = default;
};

DiagramEdge contour_edge(const ContourPair& pair);

/// The probability flow diagram on 2^X. Edges are listed in coordinate order,
/// with the appended edge last when present.
class FlowDiagram {
 public:
  FlowDiagram(int n, bool appended);

  int n() const { return n_; }
  bool appended() const { return appended_; }
  std::size_t node_count() const { return std::size_t{1} << n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<DiagramEdge>& edges() const { return edges_; }
  const PairIndex& index() const { return index_; }

  /// True iff `edge` exists in the stated direction.
  bool has_edge(const DiagramEdge& edge) const;
  DiagramEdge appended_edge() const { return {Menu(), Menu::full(n_)}; }

 private:
  int n_;
  bool appended_;
  PairIndex index_;
  std::vector<DiagramEdge> edges_;
};

FlowDiagram build_diagram(const Universe& universe, bool appended);

/// E - N + 1 of an appended diagram, counted from its edge and node lists.
Integer cyclomatic_number(const FlowDiagram& diagram);

/// A directed cycle as a head-to-tail edge list.
struct Circuit {
  std::vector<DiagramEdge> edges;

  bool operator==(const Circuit&) const = default;
};

/// X -> ... -> ∅ along the preference's path, closed by the appended edge.
Circuit preference_to_circuit(const Preference& pref, const FlowDiagram& diagram);

/// Inverse of preference_to_circuit. Throws std::invalid_argument unless the circuit is
/// closed, chained and uses the appended edge exactly once.
Preference circuit_to_preference(const Circuit& circuit, int n);

/// 0/1 coordinates over diagram edges (coordinate order, appended edge last).
Vector<Integer> indicator(const Circuit& circuit, const FlowDiagram& diagram);

/// Rooted at ∅. Each link is a directed diagram edge parent -> child; the
/// first link of Algorithm 1 output is ∅ -> X.
struct SpanningTree {
  int n = 0;
  std::vector<DiagramEdge> links;

  bool operator==(const SpanningTree&) const = default;
};

struct TreeViolations {
  std::vector<Menu> missing_nodes;
  std::vector<DiagramEdge> misdirected;
  /// Nodes other than the root ∅ whose number of incoming links is not exactly one.
  std::vector<Menu> bad_in_degree;
  bool wrong_link_count = false;
  bool has_cycle = false;
  bool disconnected = false;

  bool ok() const {
    return missing_nodes.empty() && misdirected.empty() && bad_in_degree.empty() && !wrong_link_count && !has_cycle && !disconnected;
  }
};

/// Algorithm 1: levels n down to 1, menus by ascending bitmask, out-edges by ascending
/// removed element; an edge joins the tree iff its head is not yet connected.
SpanningTree algorithm1_spanning_tree(const FlowDiagram& diagram);

TreeViolations verify_spanning_tree(const SpanningTree& tree, const FlowDiagram& diagram);

struct BasisElement {
  Preference preference;
  /// The non-tree edge that closes this preference's circuit for the first time.
  ContourPair witness;
};

/// Algorithm 2: one minimal circuit (preference) per non-tree edge, levels 1 up to n.
/// Throws std::invalid_argument when the tree does not verify against the diagram.
std::vector<BasisElement> algorithm2_preference_basis(const SpanningTree& tree, const FlowDiagram& diagram);

}  // namespace rumid
