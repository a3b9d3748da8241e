#include "rumid/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace rumid {

namespace {

int env_int(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > kMaxAlternatives) {
    throw std::invalid_argument(std::string(name) + " must be an integer in [1, " +
                                std::to_string(kMaxAlternatives) + "], got \"" + raw + "\"");
  }
  return static_cast<int>(value);
}

}  // namespace

Caps Caps::from_environment() {
  Caps c;
  c.lattice_max_n = env_int("RUMID_MAX_N", c.lattice_max_n);
  c.vector_max_n = env_int("RUMID_VECTOR_MAX_N", c.vector_max_n);
  return c;
}

const Caps& caps() {
  static const Caps instance = Caps::from_environment();
  return instance;
}

void require_lattice_size(int n, std::string_view operation) {
  if (n > caps().lattice_max_n) {
    throw CapError(std::string(operation) + ": n = " + std::to_string(n) + " exceeds the lattice cap " +
                   std::to_string(caps().lattice_max_n) + " (set RUMID_MAX_N to raise it)");
  }
}

void require_vector_size(int n, std::string_view operation) {
  if (n > caps().vector_max_n) {
    throw CapError(std::string(operation) + ": n = " + std::to_string(n) + " exceeds the choice-vector cap " +
                   std::to_string(caps().vector_max_n) + " (set RUMID_VECTOR_MAX_N to raise it)");
  }
}

Universe::Universe(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("universe must have at least one alternative");
  if (static_cast<int>(labels_.size()) > kMaxAlternatives) {
    throw CapError("universe has " + std::to_string(labels_.size()) + " alternatives; at most " +
                   std::to_string(kMaxAlternatives) + " are supported");
  }
  std::set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw std::invalid_argument("alternative labels must be nonempty");
    if (!seen.insert(label).second) throw std::invalid_argument("duplicate alternative label \"" + label + "\"");
  }
}

Universe Universe::numbered(int n) {
  if (n < 1) throw std::invalid_argument("universe size must be at least 1");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return Universe(std::move(labels));
}

Universe Universe::lettered(int n) {
  if (n < 1 || n > 26) throw std::invalid_argument("lettered universe needs 1 <= n <= 26");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return Universe(std::move(labels));
}

std::optional<Alt> Universe::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Alt>(it - labels_.begin());
}

Alt Universe::index_of(std::string_view label) const {
  if (auto x = find(label)) return *x;
  throw std::invalid_argument("unknown alternative \"" + std::string(label) + "\"");
}

std::vector<Alt> Menu::members() const {
  std::vector<Alt> out;
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::strong_ordering ContourPair::operator<=>(const ContourPair& other) const {
  if (auto c = other.menu.size() <=> menu.size(); c != 0) return c;
  if (auto c = menu.bits() <=> other.menu.bits(); c != 0) return c;
  return x <=> other.x;
}

Preference::Preference(std::vector<Alt> ranking) : ranking_(std::move(ranking)) {
  const auto n = ranking_.size();
  if (n == 0) throw std::invalid_argument("preference must rank at least one alternative");
  position_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const Alt x = ranking_[i];
    if (x < 0 || static_cast<std::size_t>(x) >= n) {
      throw std::invalid_argument("ranking entry " + std::to_string(x) + " outside 0.." + std::to_string(n - 1));
    }
    if (position_[static_cast<std::size_t>(x)] != -1) {
      throw std::invalid_argument("ranking repeats alternative " + std::to_string(x));
    }
    position_[static_cast<std::size_t>(x)] = static_cast<int>(i);
  }
}

Alt Preference::best_in(Menu menu) const {
  for (Alt x : ranking_) {
    if (menu.contains(x)) return x;
  }
  throw std::invalid_argument("best_in: empty menu");
}

Model::Model(Universe universe, std::vector<Preference> preferences)
    : universe_(std::move(universe)), preferences_(std::move(preferences)) {
  if (preferences_.empty()) throw std::invalid_argument("model must contain at least one preference");
  for (const auto& p : preferences_) {
    if (p.size() != universe_.size()) {
      throw std::invalid_argument("preference ranks " + std::to_string(p.size()) + " alternatives, universe has " +
                                  std::to_string(universe_.size()));
    }
  }
  std::sort(preferences_.begin(), preferences_.end());
  if (auto dup = std::adjacent_find(preferences_.begin(), preferences_.end()); dup != preferences_.end()) {
    throw std::invalid_argument("duplicate preference " + to_string(*dup, universe_));
  }
}

std::optional<std::size_t> Model::find(const Preference& pref) const {
  const auto it = std::lower_bound(preferences_.begin(), preferences_.end(), pref);
  if (it == preferences_.end() || !(*it == pref)) return std::nullopt;
  return static_cast<std::size_t>(it - preferences_.begin());
}

PairIndex::PairIndex(int n) : n_(n) {
  if (n < 1 || n > kMaxAlternatives) throw std::invalid_argument("PairIndex: bad n");
  require_lattice_size(n, "pair index");
  const std::size_t nodes = std::size_t{1} << n;
  std::vector<Menu> menus;
  menus.reserve(nodes - 1);
  for (std::size_t b = 1; b < nodes; ++b) menus.emplace_back(static_cast<Menu::Bits>(b));
  std::stable_sort(menus.begin(), menus.end(), [](Menu a, Menu b) { return a.size() > b.size(); });

  offset_.assign(nodes, 0);
  pairs_.reserve(static_cast<std::size_t>(n) << (n - 1));
  for (Menu m : menus) {
    offset_[m.bits()] = pairs_.size();
    for (Alt x : m.members()) pairs_.push_back({x, m});
  }
}

std::size_t PairIndex::operator()(const ContourPair& pair) const {
  const Menu::Bits below = pair.menu.bits() & ((Menu::Bits{1} << pair.x) - 1);
  return offset_[pair.menu.bits()] + static_cast<std::size_t>(std::popcount(below));
}

std::vector<Menu> nonempty_menus(int n) {
  std::vector<Menu> out;
  const Menu::Bits top = Menu::full(n).bits();
  out.reserve(top);
  for (Menu::Bits b = 1; b != 0 && b <= top; ++b) out.emplace_back(b);
  return out;
}

std::vector<Preference> all_preferences(int n) {
  if (n < 1 || n > 10) throw CapError("all_preferences: n must be in [1, 10]");
  std::vector<Alt> ranking(static_cast<std::size_t>(n));
  std::iota(ranking.begin(), ranking.end(), 0);
  std::vector<Preference> out;
  do {
    out.emplace_back(ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return out;
}

Preference preference_from_labels(const Universe& universe, std::span<const std::string> labels) {
  if (static_cast<int>(labels.size()) != universe.size()) {
    throw std::invalid_argument("ranking has " + std::to_string(labels.size()) + " labels, expected " +
                                std::to_string(universe.size()));
  }
  std::vector<Alt> ranking;
  std::vector<bool> used(static_cast<std::size_t>(universe.size()), false);
  for (const auto& label : labels) {
    const Alt x = universe.index_of(label);
    if (used[static_cast<std::size_t>(x)]) throw std::invalid_argument("ranking repeats label \"" + label + "\"");
    used[static_cast<std::size_t>(x)] = true;
    ranking.push_back(x);
  }
  return Preference(std::move(ranking));
}

bool in_L(const Preference& pref, const ContourPair& pair) {
  const int n = pref.size();
  if (pair.x < 0 || pair.x >= n || !pair.menu.fits(n)) {
    throw std::invalid_argument("in_L: contour pair is not over the preference's universe");
  }
  if (!pair.menu.contains(pair.x)) throw std::invalid_argument("in_L: x must belong to the menu");
  const int pos = pref.position(pair.x);
  if (pos != n - pair.menu.size()) return false;
  for (int k = pos; k < n; ++k) {
    if (!pair.menu.contains(pref.at(k))) return false;
  }
  return true;
}

std::vector<ContourPair> upper_contour_pairs(const Preference& pref) {
  std::vector<ContourPair> out;
  out.reserve(static_cast<std::size_t>(pref.size()));
  Menu remaining = Menu::full(pref.size());
  for (Alt x : pref.ranking()) {
    out.push_back({x, remaining});
    remaining = remaining.without(x);
  }
  return out;
}

Preference reverse(const Preference& pref) {
  std::vector<Alt> r(pref.ranking().rbegin(), pref.ranking().rend());
  return Preference(std::move(r));
}

bool check_minimal_mutual_agreement(const Model& model) {
  if (model.n() < 2) throw std::invalid_argument("minimal mutual agreement needs at least two alternatives");
  return std::none_of(model.begin(), model.end(), [&](const Preference& p) { return model.contains(reverse(p)); });
}

std::string to_string(const Preference& pref, const Universe& universe, std::string_view separator) {
  std::string out;
  for (int i = 0; i < pref.size(); ++i) {
    if (i > 0) out += separator;
    out += universe.label(pref.at(i));
  }
  return out;
}

std::string to_string(Menu menu, const Universe& universe) {
  std::string out = "{";
  bool first = true;
  for (Alt x : menu.members()) {
    if (!first) out += ",";
    out += universe.label(x);
    first = false;
  }
  return out + "}";
}

std::string to_string(const ContourPair& pair, const Universe& universe) {
  return "(" + universe.label(pair.x) + "," + to_string(pair.menu, universe) + ")";
}

}  // namespace rumid
