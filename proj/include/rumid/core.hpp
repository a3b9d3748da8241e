#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rumid {

/// Alternative identity: an index 0..n-1 into a Universe.
using Alt = int;

/// Thrown when an operation would enumerate a structure beyond the configured size cap.
class CapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Size caps for lattice-wide work. Defaults can be overridden with the
/// RUMID_MAX_N (lattice) and RUMID_VECTOR_MAX_N (choice-vector rank) environment variables.
struct Caps {
  int lattice_max_n = 20;
  int vector_max_n = 12;
  int order_search_max_n = 8;

  static Caps from_environment();
};

const Caps& caps();
void require_lattice_size(int n, std::string_view operation);
void require_vector_size(int n, std::string_view operation);

// Menus are bitmasks, so no universe may exceed this regardless of caps.
inline constexpr int kMaxAlternatives = 30;

class Universe {
 public:
  explicit Universe(std::vector<std::string> labels);

  /// Labels "1", "2", ..., "n".
  static Universe numbered(int n);
  /// Labels "a", "b", ... (n <= 26).
  static Universe lettered(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(Alt x) const { return labels_.at(static_cast<std::size_t>(x)); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<Alt> find(std::string_view label) const;
  /// Throws std::invalid_argument naming the label when absent.
  Alt index_of(std::string_view label) const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// A subset of alternatives as a bitmask; bit x set iff x is a member.
class Menu {
 public:
  using Bits = std::uint32_t;

  constexpr Menu() = default;
  constexpr explicit Menu(Bits bits) : bits_(bits) {}

  static constexpr Menu full(int n) { return Menu(n >= 32 ? ~Bits{0} : ((Bits{1} << n) - 1)); }
  static constexpr Menu singleton(Alt x) { return Menu(Bits{1} << x); }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Alt x) const { return (bits_ >> x) & 1U; }
  constexpr Menu without(Alt x) const { return Menu(bits_ & ~(Bits{1} << x)); }
  constexpr Menu with(Alt x) const { return Menu(bits_ | (Bits{1} << x)); }
  constexpr bool is_subset_of(Menu other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool fits(int n) const { return (bits_ & ~full(n).bits_) == 0; }

  std::vector<Alt> members() const;

  constexpr auto operator<=>(const Menu&) const = default;

 private:
  Bits bits_ = 0;
};

/// The pair (x, A) with x in A. It names both the upper contour set L(x, A)
/// and the diagram edge A -> A \ {x}.
///
/// Ordering is the canonical coordinate order: |A| descending, then A by
/// ascending bitmask, then x ascending.
struct ContourPair {
  Alt x = 0;
  Menu menu;

  bool operator==(const ContourPair&) const = default;
  std::strong_ordering operator<=>(const ContourPair& other) const;
};

/// A strict linear order, stored best first.
class Preference {
 public:
  explicit Preference(std::vector<Alt> ranking);

  int size() const { return static_cast<int>(ranking_.size()); }
  const std::vector<Alt>& ranking() const { return ranking_; }
  Alt at(int rank) const { return ranking_[static_cast<std::size_t>(rank)]; }
  int position(Alt x) const { return position_[static_cast<std::size_t>(x)]; }
  bool prefers(Alt x, Alt y) const { return position(x) < position(y); }
  Alt best_in(Menu menu) const;

  bool operator==(const Preference& other) const { return ranking_ == other.ranking_; }
  auto operator<=>(const Preference& other) const { return ranking_ <=> other.ranking_; }

 private:
  std::vector<Alt> ranking_;
  std::vector<int> position_;
};

/// A nonempty set of distinct preferences over one universe, kept sorted.
class Model {
 public:
  Model(Universe universe, std::vector<Preference> preferences);

  const Universe& universe() const { return universe_; }
  int n() const { return universe_.size(); }
  std::size_t size() const { return preferences_.size(); }
  const std::vector<Preference>& preferences() const { return preferences_; }
  const Preference& operator[](std::size_t i) const { return preferences_[i]; }
  auto begin() const { return preferences_.begin(); }
  auto end() const { return preferences_.end(); }

  std::optional<std::size_t> find(const Preference& pref) const;
  bool contains(const Preference& pref) const { return find(pref).has_value(); }

  bool operator==(const Model&) const = default;

 private:
  Universe universe_;
  std::vector<Preference> preferences_;
};

/// Dense table over pairs (x, A) addressed by bitmask; entries with x not in A are unused.
template <typename T>
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(int n, const T& fill = T{})
      : n_(n), values_(static_cast<std::size_t>(n) << n, fill) {}

  int n() const { return n_; }
  T& operator()(Alt x, Menu menu) { return values_[slot(x, menu)]; }
  const T& operator()(Alt x, Menu menu) const { return values_[slot(x, menu)]; }
  T& operator[](const ContourPair& p) { return (*this)(p.x, p.menu); }
  const T& operator[](const ContourPair& p) const { return (*this)(p.x, p.menu); }

  bool operator==(const PairTable&) const = default;

 private:
  std::size_t slot(Alt x, Menu menu) const {
    return static_cast<std::size_t>(menu.bits()) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x);
  }

  int n_ = 0;
  std::vector<T> values_;
};

/// Coordinate system over all pairs (x, A), x in A, in canonical ContourPair order.
class PairIndex {
 public:
  explicit PairIndex(int n);

  int n() const { return n_; }
  std::size_t size() const { return pairs_.size(); }
  std::size_t operator()(const ContourPair& pair) const;
  const ContourPair& pair(std::size_t i) const { return pairs_[i]; }
  const std::vector<ContourPair>& pairs() const { return pairs_; }

 private:
  int n_;
  std::vector<std::size_t> offset_;
  std::vector<ContourPair> pairs_;
};

/// Nonempty menus in ascending bitmask order.
std::vector<Menu> nonempty_menus(int n);

/// All n! preferences in lexicographic ranking order.
std::vector<Preference> all_preferences(int n);

Preference preference_from_labels(const Universe& universe, std::span<const std::string> labels);

/// True iff pref belongs to L(x, A): x is best in A and everything outside A is above x.
bool in_L(const Preference& pref, const ContourPair& pair);

/// The n pairs on the preference's path from X to the empty set.
std::vector<ContourPair> upper_contour_pairs(const Preference& pref);

Preference reverse(const Preference& pref);

/// True iff no preference in the model has its reverse in the model. Requires n >= 2.
bool check_minimal_mutual_agreement(const Model& model);

std::string to_string(const Preference& pref, const Universe& universe, std::string_view separator = ">");
std::string to_string(Menu menu, const Universe& universe);
std::string to_string(const ContourPair& pair, const Universe& universe);

}  // namespace rumid
