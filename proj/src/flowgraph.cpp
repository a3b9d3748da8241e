#include "rumid/flowgraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace rumid {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Menu> menus_of_size(int n, int size) {
  std::vector<Menu> out;
  for (Menu m : nonempty_menus(n)) {
    if (m.size() == size) out.push_back(m);
  }
  return out;
}

}  // namespace

std::optional<ContourPair> DiagramEdge::pair() const {
  if (!to.is_subset_of(from)) return std::nullopt;
  const Menu::Bits removed = from.bits() & ~to.bits();
  if (std::popcount(removed) != 1) return std::nullopt;
  return ContourPair{std::countr_zero(removed), from};
}

DiagramEdge contour_edge(const ContourPair& pair) { return {pair.menu, pair.menu.without(pair.x)}; }

FlowDiagram::FlowDiagram(int n, bool appended) : n_(n), appended_(appended), index_(n) {
  require_lattice_size(n, "flow diagram");
  edges_.reserve(index_.size() + (appended ? 1 : 0));
  for (const auto& pair : index_.pairs()) edges_.push_back(contour_edge(pair));
  if (appended) edges_.push_back(appended_edge());
}

bool FlowDiagram::has_edge(const DiagramEdge& edge) const {
  if (!edge.from.fits(n_) || !edge.to.fits(n_)) return false;
  if (edge.from.empty() && edge.to == Menu::full(n_)) return appended_;
  return edge.pair().has_value();
}

FlowDiagram build_diagram(const Universe& universe, bool appended) { return FlowDiagram(universe.size(), appended); }

Integer cyclomatic_number(const FlowDiagram& diagram) {
  if (!diagram.appended()) {
    throw std::invalid_argument("cyclomatic number is defined here for the appended (strongly connected) diagram");
  }
  return Integer(diagram.edge_count()) - Integer(diagram.node_count()) + 1;
}

Circuit preference_to_circuit(const Preference& pref, const FlowDiagram& diagram) {
  if (!diagram.appended()) throw std::invalid_argument("circuits live in the appended diagram");
  if (pref.size() != diagram.n()) throw std::invalid_argument("preference and diagram sizes differ");
  Circuit c;
  for (const auto& pair : upper_contour_pairs(pref)) c.edges.push_back(contour_edge(pair));
  c.edges.push_back(diagram.appended_edge());
  return c;
}

Preference circuit_to_preference(const Circuit& circuit, int n) {
  const auto& edges = circuit.edges;
  if (edges.empty()) throw std::invalid_argument("empty circuit");
  std::size_t appended_at = edges.size();
  std::size_t appended_count = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].from.fits(n) || !edges[i].to.fits(n)) throw std::invalid_argument("circuit edge outside the universe");
    if (edges[i].is_appended()) {
      if (edges[i].to != Menu::full(n)) throw std::invalid_argument("edge from ∅ must lead to X");
      ++appended_count;
      appended_at = i;
    } else if (!edges[i].pair()) {
      throw std::invalid_argument("circuit contains a non-edge");
    }
    if (edges[i].to != edges[(i + 1) % edges.size()].from) throw std::invalid_argument("circuit edges do not chain");
  }
  if (appended_count != 1) {
    throw std::invalid_argument("circuit uses the ∅ -> X edge " + std::to_string(appended_count) +
                                " times; only minimal circuits correspond to preferences");
  }
  std::vector<Alt> ranking;
  for (std::size_t k = 1; k < edges.size(); ++k) ranking.push_back(edges[(appended_at + k) % edges.size()].pair()->x);
  if (static_cast<int>(ranking.size()) != n) throw std::invalid_argument("circuit does not traverse X -> ∅");
  return Preference(std::move(ranking));
}

Vector<Integer> indicator(const Circuit& circuit, const FlowDiagram& diagram) {
  const auto coords = static_cast<Index>(diagram.edge_count());
  Vector<Integer> v = Vector<Integer>::Zero(coords);
  for (const auto& e : circuit.edges) {
    if (e.is_appended()) {
      v(coords - 1) += 1;
    } else {
      v(static_cast<Index>(diagram.index()(*e.pair()))) += 1;
    }
  }
  return v;
}

SpanningTree algorithm1_spanning_tree(const FlowDiagram& diagram) {
  if (!diagram.appended()) throw std::invalid_argument("Algorithm 1 runs on the appended diagram");
  const int n = diagram.n();
  SpanningTree tree{n, {}};
  std::vector<bool> connected(diagram.node_count(), false);
  const Menu all = Menu::full(n);
  tree.links.push_back(diagram.appended_edge());
  connected[0] = true;
  connected[all.bits()] = true;
  for (int level = n; level >= 1; --level) {
    for (Menu a : menus_of_size(n, level)) {
      for (Alt x : a.members()) {
        const Menu b = a.without(x);
        if (connected[b.bits()]) continue;
        tree.links.push_back({a, b});
        connected[b.bits()] = true;
      }
    }
  }
  return tree;
}

TreeViolations verify_spanning_tree(const SpanningTree& tree, const FlowDiagram& diagram) {
  TreeViolations report;
  const std::size_t nodes = diagram.node_count();
  std::vector<bool> touched(nodes, false);
  std::vector<int> in_degree(nodes, 0);
  DisjointSets sets(nodes);
  std::size_t components = nodes;
  report.wrong_link_count = tree.n != diagram.n() || tree.links.size() != nodes - 1;

  for (const auto& link : tree.links) {
    if (!diagram.has_edge(link)) {
      report.misdirected.push_back(link);
      // Links that name nodes outside the lattice cannot join components.
      if (!link.from.fits(diagram.n()) || !link.to.fits(diagram.n())) continue;
    }
    touched[link.from.bits()] = true;
    touched[link.to.bits()] = true;
    ++in_degree[link.to.bits()];
    if (sets.unite(link.from.bits(), link.to.bits())) {
      --components;
    } else {
      report.has_cycle = true;
    }
  }
  for (std::size_t v = 0; v < nodes; ++v) {
    if (!touched[v] && nodes > 1) report.missing_nodes.emplace_back(static_cast<Menu::Bits>(v));
    if (in_degree[v] != (v == 0 ? 0 : 1) && touched[v]) report.bad_in_degree.emplace_back(static_cast<Menu::Bits>(v));
  }
  report.disconnected = components != 1;
  return report;
}

std::vector<BasisElement> algorithm2_preference_basis(const SpanningTree& tree, const FlowDiagram& diagram) {
  if (const auto check = verify_spanning_tree(tree, diagram); !check.ok()) {
    throw std::invalid_argument("Algorithm 2 needs a direction-respecting spanning tree of the appended diagram");
  }
  const int n = diagram.n();
  const auto& index = diagram.index();
  const Menu all = Menu::full(n);

  std::vector<Menu> parent(diagram.node_count());
  std::vector<bool> available(index.size(), false);
  for (const auto& link : tree.links) {
    if (link.is_appended()) continue;
    parent[link.to.bits()] = link.from;
    available[index(*link.pair())] = true;
  }

  std::vector<BasisElement> basis;
  for (int level = 1; level <= n; ++level) {
    for (Menu a : menus_of_size(n, level)) {
      for (Alt x : a.members()) {
        const ContourPair edge{x, a};
        if (available[index(edge)]) continue;
        available[index(edge)] = true;

        // Upward segment X -> A through tree parents, recorded bottom-up then reversed.
        std::vector<Alt> ranking;
        for (Menu node = a; node != all; node = parent[node.bits()]) {
          const Menu up = parent[node.bits()];
          ranking.push_back(std::countr_zero(up.bits() & ~node.bits()));
        }
        std::reverse(ranking.begin(), ranking.end());
        ranking.push_back(x);

        // Downward completion: smallest removable element whose edge is already available.
        for (Menu node = a.without(x); !node.empty();) {
          bool moved = false;
          for (Alt z : node.members()) {
            if (available[index({z, node})]) {
              ranking.push_back(z);
              node = node.without(z);
              moved = true;
              break;
            }
          }
          if (!moved) throw std::logic_error("Algorithm 2: no available edge leaves " + std::to_string(node.bits()));
        }
        basis.push_back({Preference(std::move(ranking)), edge});
      }
    }
  }
  return basis;
}

}  // namespace rumid
