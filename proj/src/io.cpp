#include "rumid/io.hpp"

#include <fstream>
#include <sstream>

namespace rumid::io {

namespace {

[[noreturn]] void fail(std::string_view field, std::string_view message) {
  throw DocumentError(std::string(field) + ": " + std::string(message));
}

const json& member(const json& obj, const char* name, std::string_view where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) fail(std::string(where) + "." + name, "missing");
  return *it;
}

void check_version(const json& doc) {
  const auto& v = member(doc, "version", "document");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) {
    fail("version", "unsupported format version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

Universe load_universe(const json& doc) {
  const auto& alts = member(doc, "alternatives", "document");
  if (!alts.is_array()) fail("alternatives", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (!alts[i].is_string()) fail("alternatives[" + std::to_string(i) + "]", "expected a string label");
    labels.push_back(alts[i].get<std::string>());
  }
  try {
    return Universe(std::move(labels));
  } catch (const std::exception& e) {
    fail("alternatives", e.what());
  }
}

std::vector<std::string> string_list(const json& arr, const std::string& field) {
  if (!arr.is_array()) fail(field, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) fail(field + "[" + std::to_string(i) + "]", "expected a string label");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

json labels_of(const Universe& u) { return json(u.labels()); }

Preference parse_ranking_key(const std::string& key, const Universe& u, const std::string& field) {
  std::vector<std::string> labels;
  std::size_t start = 0;
  while (true) {
    const auto sep = key.find('>', start);
    labels.push_back(key.substr(start, sep == std::string::npos ? std::string::npos : sep - start));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  try {
    return preference_from_labels(u, labels);
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

}  // namespace

Rational parse_probability(const json& value, std::string_view field) {
  if (value.is_number_integer() || value.is_number_unsigned()) {
    return Rational(Integer(value.dump()));
  }
  if (value.is_number_float()) {
    fail(field, "floating-point number rejected; write exact values as strings such as \"1/3\" or \"0.25\"");
  }
  if (!value.is_string()) fail(field, "expected a rational string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

Model load_model(const json& doc) {
  check_version(doc);
  Universe u = load_universe(doc);
  const auto& prefs = member(doc, "preferences", "document");
  if (!prefs.is_array()) fail("preferences", "expected an array of rankings");
  if (prefs.empty()) fail("preferences", "a model needs at least one preference");
  std::vector<Preference> out;
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    const std::string field = "preferences[" + std::to_string(i) + "]";
    const auto labels = string_list(prefs[i], field);
    try {
      out.push_back(preference_from_labels(u, labels));
    } catch (const std::exception& e) {
      fail(field, e.what());
    }
    for (std::size_t j = 0; j + 1 < out.size(); ++j) {
      if (out[j] == out.back()) fail(field, "duplicate of preferences[" + std::to_string(j) + "]");
    }
  }
  return Model(std::move(u), std::move(out));
}

json save_model(const Model& model) {
  json prefs = json::array();
  for (const auto& p : model) {
    json ranking = json::array();
    for (Alt x : p.ranking()) ranking.push_back(model.universe().label(x));
    prefs.push_back(std::move(ranking));
  }
  return {{"version", kFormatVersion}, {"alternatives", labels_of(model.universe())}, {"preferences", std::move(prefs)}};
}

ChoiceData load_choice_data(const json& doc) {
  check_version(doc);
  Universe u = load_universe(doc);
  const int n = u.size();
  require_lattice_size(n, "choice data");
  const auto& entries = member(doc, "entries", "document");
  if (!entries.is_array()) fail("entries", "expected an array");

  RandomChoiceRule rule(n);
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::optional<std::uint64_t> trials;
  PairTable<std::uint64_t> counts(n, 0);
  bool any_counts = false;

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const auto& entry = entries[i];
    const auto labels = string_list(member(entry, "menu", where), where + ".menu");
    Menu menu;
    for (const auto& label : labels) {
      const auto x = u.find(label);
      if (!x) fail(where + ".menu", "unknown alternative \"" + label + "\"");
      if (menu.contains(*x)) fail(where + ".menu", "repeats \"" + label + "\"");
      menu = menu.with(*x);
    }
    if (menu.empty()) fail(where + ".menu", "menus must be nonempty");
    if (seen[menu.bits()]) fail(where + ".menu", "menu " + to_string(menu, u) + " appears more than once");
    seen[menu.bits()] = true;

    const auto& probs = member(entry, "probabilities", where);
    if (!probs.is_object()) fail(where + ".probabilities", "expected an object keyed by label");
    for (const auto& [label, value] : probs.items()) {
      const auto x = u.find(label);
      if (!x || !menu.contains(*x)) fail(where + ".probabilities." + label, "not a member of the menu");
    }
    for (Alt x : menu.members()) {
      const std::string field = where + ".probabilities." + u.label(x);
      const auto it = probs.find(u.label(x));
      if (it == probs.end()) fail(field, "missing");
      rule(x, menu) = parse_probability(*it, field);
    }

    if (const auto c = entry.find("counts"); c != entry.end()) {
      any_counts = true;
      const auto& t = member(entry, "trials", where);
      if (!t.is_number_unsigned() || t.get<std::uint64_t>() == 0) fail(where + ".trials", "expected a positive integer");
      if (trials && *trials != t.get<std::uint64_t>()) fail(where + ".trials", "differs from earlier entries");
      trials = t.get<std::uint64_t>();
      if (!c->is_object()) fail(where + ".counts", "expected an object keyed by label");
      for (Alt x : menu.members()) {
        const auto it = c->find(u.label(x));
        if (it == c->end() || !it->is_number_unsigned()) fail(where + ".counts." + u.label(x), "expected a count");
        counts(x, menu) = it->get<std::uint64_t>();
      }
    }
  }

  for (Menu menu : nonempty_menus(n)) {
    if (!seen[menu.bits()]) fail("entries", "menu " + to_string(menu, u) + " is missing; the full menu lattice is required");
  }
  if (any_counts) {
    if (!trials) fail("entries", "counts need a trials field");
    rule.counts = SampleCounts{*trials, std::move(counts)};
  }

  if (const auto v = validate_rcr(rule); !v.ok()) {
    if (!v.negative.empty()) fail("entries", "negative probability at " + to_string(v.negative.front(), u));
    fail("entries", "probabilities in menu " + to_string(v.bad_sums.front(), u) + " do not sum to 1");
  }
  return {std::move(u), std::move(rule)};
}

json save_choice_data(const Universe& universe, const RandomChoiceRule& rule) {
  if (rule.n() != universe.size()) throw std::invalid_argument("rule and universe sizes differ");
  json entries = json::array();
  for (Menu menu : nonempty_menus(universe.size())) {
    json menu_labels = json::array();
    json probs = json::object();
    for (Alt x : menu.members()) {
      menu_labels.push_back(universe.label(x));
      probs[universe.label(x)] = format_rational(rule(x, menu));
    }
    json entry{{"menu", std::move(menu_labels)}, {"probabilities", std::move(probs)}};
    if (rule.counts) {
      json counts = json::object();
      for (Alt x : menu.members()) counts[universe.label(x)] = rule.counts->counts(x, menu);
      entry["counts"] = std::move(counts);
      entry["trials"] = rule.counts->trials;
    }
    entries.push_back(std::move(entry));
  }
  return {{"version", kFormatVersion}, {"alternatives", labels_of(universe)}, {"entries", std::move(entries)}};
}

PreferenceDistribution load_distribution(const json& doc, const Model& model) {
  check_version(doc);
  const auto& masses_doc = member(doc, "masses", "document");
  if (!masses_doc.is_object()) fail("masses", "expected an object keyed by ranking");
  std::vector<Rational> masses(model.size(), Rational(0));
  for (const auto& [key, value] : masses_doc.items()) {
    const std::string field = "masses." + key;
    const auto pref = parse_ranking_key(key, model.universe(), field);
    const auto at = model.find(pref);
    if (!at) fail(field, "preference is not in the model");
    masses[*at] = parse_probability(value, field);
  }
  try {
    return PreferenceDistribution(model, std::move(masses));
  } catch (const std::exception& e) {
    fail("masses", e.what());
  }
}

json save_distribution(const PreferenceDistribution& nu) {
  const auto& u = nu.model().universe();
  for (const auto& label : u.labels()) {
    if (label.find('>') != std::string::npos) {
      throw std::invalid_argument("label \"" + label + "\" contains '>' and cannot be used in ranking keys");
    }
  }
  json masses = json::object();
  for (std::size_t i = 0; i < nu.model().size(); ++i) masses[to_string(nu.model()[i], u)] = format_rational(nu.mass(i));
  return {{"version", kFormatVersion}, {"masses", std::move(masses)}};
}

json parse_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string(source) + ": " + e.what());
  }
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

void write_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw DocumentError(path.string() + ": cannot write file");
  out << dump(doc);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace rumid::io
