#include "rumid/cli.hpp"

#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "rumid/decompose.hpp"
#include "rumid/families.hpp"
#include "rumid/fixtures.hpp"
#include "rumid/flowgraph.hpp"
#include "rumid/identify.hpp"
#include "rumid/io.hpp"

namespace rumid::cli {

namespace {

using io::json;

// A command fills both renderings; --json picks one.
struct Report {
  json data = json::object();
  std::ostringstream text;
};

std::vector<std::string> split_labels(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

Preference parse_order(const Universe& u, const std::string& list) {
  try {
    return preference_from_labels(u, split_labels(list));
  } catch (const std::invalid_argument& e) {
    throw io::DocumentError(std::string("--order: ") + e.what());
  }
}

std::string pref_str(const Preference& p, const Universe& u) { return to_string(p, u); }

json masses_json(const Model& model, std::span<const Rational> masses) {
  json m = json::object();
  for (std::size_t i = 0; i < model.size(); ++i) m[pref_str(model[i], model.universe())] = format_rational(masses[i]);
  return m;
}

void masses_text(std::ostream& os, const Model& model, std::span<const Rational> masses) {
  for (std::size_t i = 0; i < model.size(); ++i) {
    os << "  " << pref_str(model[i], model.universe()) << "  " << format_rational(masses[i]) << "\n";
  }
}

Model load_model_file(const std::string& path) { return io::load_model(io::read_file(path)); }
io::ChoiceData load_data_file(const std::string& path) { return io::load_choice_data(io::read_file(path)); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// ---- commands -------------------------------------------------------------

int cmd_bound(Report& r, int n) {
  if (n < 1 || n > kMaxAlternatives) throw io::DocumentError("-n: expected 1 <= n <= " + std::to_string(kMaxAlternatives));
  const Integer bound = max_identified_size(n);
  const Integer total = factorial(static_cast<unsigned>(n));
  const std::string ratio = bound.str() + "/" + total.str();
  const Rational reduced(bound, total);
  r.data = {{"n", n},
            {"max_identified_size", bound.str()},
            {"total_preferences", total.str()},
            {"ratio", ratio},
            {"ratio_reduced", format_rational(reduced)}};
  r.text << "n: " << n << "\n"
         << "max identified model size: " << bound << "\n"
         << "all preferences (n!): " << total << "\n"
         << "ratio: " << ratio << " = " << format_rational(reduced) << " (~" << to_double(reduced) << ")\n";
  return kAffirmative;
}

int cmd_check_identified(Report& r, const std::string& path, bool certificate) {
  const Model model = load_model_file(path);
  require_vector_size(model.n(), "check-identified");
  const auto result = is_identified(model);
  const auto& u = model.universe();
  r.data = {{"identified", result.identified},
            {"rank", result.rank},
            {"model_size", result.model_size},
            {"max_identified_size", max_identified_size(model.n()).str()}};
  r.text << "identified: " << yes_no(result.identified) << "\n"
         << "rank: " << result.rank << " of " << result.model_size << " preferences\n"
         << "bound for n = " << model.n() << ": " << max_identified_size(model.n()) << "\n";
  if (certificate && result.certificate) {
    const auto& c = *result.certificate;
    json coeffs = json::object();
    for (std::size_t i = 0; i < model.size(); ++i) {
      if (c.coefficients[i] != 0) coeffs[pref_str(model[i], u)] = format_rational(c.coefficients[i]);
    }
    r.data["certificate"] = {{"coefficients", coeffs},
                             {"nu", masses_json(c.nu.model(), c.nu.masses())},
                             {"nu_prime", masses_json(c.nu_prime.model(), c.nu_prime.masses())},
                             {"rules_equal", rcr_from_distribution(c.nu) == rcr_from_distribution(c.nu_prime)}};
    r.text << "certificate: two distributions with disjoint supports and the same choice rule\n"
           << "nu:\n";
    masses_text(r.text, c.nu.model(), c.nu.masses());
    r.text << "nu':\n";
    masses_text(r.text, c.nu_prime.model(), c.nu_prime.masses());
    r.text << "rules equal: " << yes_no(r.data["certificate"]["rules_equal"].get<bool>()) << "\n";
  }
  return result.identified ? kAffirmative : kNegative;
}

json witness_json(const DecompositionWitness& w, const Universe& u) {
  json out = json::array();
  for (const auto& e : w) out.push_back({{"preference", pref_str(e.preference, u)}, {"pair", to_string(e.pair, u)}});
  return out;
}

int cmd_check_edge_decomposable(Report& r, const std::string& path, bool witness) {
  const Model model = load_model_file(path);
  require_lattice_size(model.n(), "check-edge-decomposable");
  const auto& u = model.universe();
  const auto result = is_edge_decomposable(model);
  r.data = {{"edge_decomposable", result.decomposable}, {"model_size", model.size()}};
  r.text << "edge decomposable: " << yes_no(result.decomposable) << "\n";
  if (result.decomposable && witness) {
    r.data["witness"] = witness_json(result.witness, u);
    r.text << "witness (each pair meets the remaining preferences only in its own):\n";
    for (const auto& e : result.witness) r.text << "  " << pref_str(e.preference, u) << "  via " << to_string(e.pair, u) << "\n";
  }
  if (!result.decomposable) {
    json stuck = json::array();
    r.text << "no uniquely covered pair among:\n";
    for (const auto& p : result.stuck) {
      stuck.push_back(pref_str(p, u));
      r.text << "  " << pref_str(p, u) << "\n";
    }
    r.data["stuck"] = stuck;
  }
  return result.decomposable ? kAffirmative : kNegative;
}

int cmd_max_basis(Report& r, int n, const std::string& out) {
  if (n < 1 || n > kMaxAlternatives) throw io::DocumentError("-n: expected 1 <= n <= " + std::to_string(kMaxAlternatives));
  require_lattice_size(n, "max-basis");
  const Universe u = Universe::numbered(n);
  const FlowDiagram diagram(n, true);
  const auto tree = algorithm1_spanning_tree(diagram);
  const auto basis = algorithm2_preference_basis(tree, diagram);
  std::vector<Preference> prefs;
  json emitted = json::array();
  for (const auto& b : basis) {
    prefs.push_back(b.preference);
    emitted.push_back({{"preference", pref_str(b.preference, u)}, {"witness", to_string(b.witness, u)}});
  }
  const Model model(u, prefs);
  io::write_file(out, io::save_model(model));
  r.data = {{"n", n},
            {"model_size", model.size()},
            {"max_identified_size", max_identified_size(n).str()},
            {"basis", emitted},
            {"out", out}};
  r.text << "basis preferences: " << model.size() << " (bound " << max_identified_size(n) << ")\n"
         << "written to " << out << "\n";
  return kAffirmative;
}

int cmd_extend(Report& r, const std::string& in, const std::string& out) {
  const Model seed = load_model_file(in);
  require_lattice_size(seed.n(), "extend");
  if (!is_edge_decomposable(seed).decomposable) {
    r.data = {{"edge_decomposable", false}};
    r.text << "seed model is not edge decomposable; nothing to extend\n";
    return kNegative;
  }
  const Model extended = extend_edge_decomposable(seed);
  io::write_file(out, io::save_model(extended));
  r.data = {{"seed_size", seed.size()},
            {"extended_size", extended.size()},
            {"max_identified_size", max_identified_size(seed.n()).str()},
            {"out", out}};
  r.text << "extended " << seed.size() << " -> " << extended.size() << " preferences (bound "
         << max_identified_size(seed.n()) << ")\nwritten to " << out << "\n";
  return kAffirmative;
}

int cmd_mobius(Report& r, const std::string& path, bool check_flow) {
  const auto data = load_data_file(path);
  const auto& u = data.universe;
  const auto q = mobius_inverse(data.rule);
  const PairIndex index(u.size());
  json table = json::array();
  r.text << "Mobius inverse q(x, A):\n";
  for (const auto& pair : index.pairs()) {
    table.push_back({{"pair", to_string(pair, u)}, {"q", format_rational(q.q[pair])}});
    r.text << "  q" << to_string(pair, u) << " = " << format_rational(q.q[pair]) << "\n";
  }
  const auto negative = check_stochastic_rationality_necessary(q);
  json neg = json::array();
  for (const auto& p : negative.entries) neg.push_back(to_string(p, u));
  r.data = {{"q", table}, {"nonnegative", negative.ok()}, {"negative_entries", neg}};
  r.text << "all q >= 0 (necessary for a random utility representation): " << yes_no(negative.ok()) << "\n";
  int code = kAffirmative;
  if (check_flow) {
    const auto flow = flow_conservation_check(q);
    json unbalanced = json::array();
    for (Menu m : flow.unbalanced) unbalanced.push_back(to_string(m, u));
    r.data["flow"] = {{"conserved", flow.ok()}, {"source_total_is_one", flow.source_total_is_one}, {"unbalanced", unbalanced}};
    r.text << "flow conserved at every menu: " << yes_no(flow.ok()) << "\n";
    for (Menu m : flow.unbalanced) r.text << "  unbalanced at " << to_string(m, u) << "\n";
    if (!flow.ok()) code = kNegative;
  }
  return code;
}

int cmd_recover(Report& r, const std::string& model_path, const std::string& data_path, const std::string& tolerance) {
  const Model model = load_model_file(model_path);
  const auto data = load_data_file(data_path);
  if (!(data.universe == model.universe())) throw io::DocumentError("--data: alternatives differ from the model's");
  Rational tol(0);
  if (!tolerance.empty()) {
    try {
      tol = parse_rational(tolerance);
    } catch (const std::exception& e) {
      throw io::DocumentError(std::string("--tolerance: ") + e.what());
    }
    if (tol < 0) throw io::DocumentError("--tolerance: must be nonnegative");
  }
  if (!is_edge_decomposable(model).decomposable) {
    r.data = {{"edge_decomposable", false}};
    r.text << "model is not edge decomposable; recovery by peeling is unavailable\n";
    return kNegative;
  }
  const auto report = recover_distribution(model, data.rule, tol);
  const auto& u = model.universe();
  json residual = json::array();
  for (const auto& [pair, value] : report.residual) residual.push_back({{"pair", to_string(pair, u)}, {"value", format_rational(value)}});
  r.data = {{"status", std::string(to_string(report.status))},
            {"masses", masses_json(model, report.masses)},
            {"residual", residual},
            {"max_rule_deviation", format_rational(report.max_rule_deviation)},
            {"tolerance", format_rational(report.tolerance)}};
  r.text << "status: " << to_string(report.status) << "\n"
         << "masses:\n";
  masses_text(r.text, model, report.masses);
  r.text << "max |p - p_recovered|: " << format_rational(report.max_rule_deviation) << " (tolerance "
         << format_rational(report.tolerance) << ")\n";
  if (!report.residual.empty()) {
    r.text << "q residual entries: " << report.residual.size() << "\n";
    for (const auto& [pair, value] : report.residual) r.text << "  " << to_string(pair, u) << "  " << format_rational(value) << "\n";
  }
  return report.status == RecoveryStatus::failed ? kNegative : kAffirmative;
}

int cmd_generate(Report& r, const std::string& model_path, const std::string& dist_path, const std::string& out,
                 std::optional<std::uint64_t> samples, std::uint64_t seed) {
  const Model model = load_model_file(model_path);
  require_lattice_size(model.n(), "generate");
  const auto nu = io::load_distribution(io::read_file(dist_path), model);
  if (samples && *samples == 0) throw io::DocumentError("--samples: must be positive");
  const RandomChoiceRule rule = samples ? sample_empirical_rule(nu, *samples, seed) : rcr_from_distribution(nu);
  io::write_file(out, io::save_choice_data(model.universe(), rule));
  r.data = {{"exact", !samples.has_value()}, {"out", out}};
  if (samples) {
    r.data["samples"] = *samples;
    r.data["seed"] = seed;
  }
  r.text << (samples ? "sampled " + std::to_string(*samples) + " draws per menu (seed " + std::to_string(seed) + ")"
                     : std::string("exact choice probabilities"))
         << "\nwritten to " << out << "\n";
  return kAffirmative;
}

int cmd_scrum_max(Report& r, std::optional<int> n, const std::string& order_list, const std::string& out) {
  std::optional<Universe> u;
  if (n) {
    if (*n < 2 || *n > kMaxAlternatives) throw io::DocumentError("-n: expected 2 <= n <= " + std::to_string(kMaxAlternatives));
    u = Universe::numbered(*n);
  } else if (!order_list.empty()) {
    try {
      u = Universe(split_labels(order_list));
    } catch (const std::invalid_argument& e) {
      throw io::DocumentError(std::string("--order: ") + e.what());
    }
  } else {
    throw io::DocumentError("scrum-max: give -n or --order");
  }
  std::vector<Alt> identity(static_cast<std::size_t>(u->size()));
  for (Alt x = 0; x < u->size(); ++x) identity[static_cast<std::size_t>(x)] = x;
  const Preference order = order_list.empty() ? Preference(identity) : parse_order(*u, order_list);
  const auto scrum = max_scrum_model(*u, order);
  io::write_file(out, io::save_model(scrum.model));
  json enumeration = json::array();
  for (const auto& p : scrum.enumeration) enumeration.push_back(pref_str(p, *u));
  r.data = {{"order", pref_str(order, *u)}, {"model_size", scrum.model.size()}, {"enumeration", enumeration}, {"out", out}};
  r.text << "order: " << pref_str(order, *u) << "\n"
         << "single-crossing preferences: " << scrum.model.size() << "\n"
         << "enumeration:\n";
  for (const auto& p : scrum.enumeration) r.text << "  " << pref_str(p, *u) << "\n";
  r.text << "written to " << out << "\n";
  return kAffirmative;
}

int cmd_check_single_crossing(Report& r, const std::string& path, const std::string& order_list, bool search) {
  const Model model = load_model_file(path);
  const auto& u = model.universe();
  auto render = [&](bool ok, const std::optional<Preference>& order, const std::optional<ScrumEnumeration>& enumeration) {
    r.data["single_crossing"] = ok;
    r.text << "single-crossing: " << yes_no(ok) << "\n";
    if (order) {
      r.data["order"] = pref_str(*order, u);
      r.text << "order: " << pref_str(*order, u) << "\n";
    }
    if (enumeration) {
      json e = json::array();
      r.text << "enumeration:\n";
      for (const auto& p : *enumeration) {
        e.push_back(pref_str(p, u));
        r.text << "  " << pref_str(p, u) << "\n";
      }
      r.data["enumeration"] = e;
    }
  };
  if (search) {
    const auto result = scrum_order_exists(model);
    r.data["orders_tried"] = result.orders_tried;
    render(result.exists, result.order, result.enumeration);
    if (!result.exists) r.text << "no order works (" << result.orders_tried << " tried)\n";
    return result.exists ? kAffirmative : kNegative;
  }
  std::vector<Alt> identity(static_cast<std::size_t>(u.size()));
  for (Alt x = 0; x < u.size(); ++x) identity[static_cast<std::size_t>(x)] = x;
  const Preference order = order_list.empty() ? Preference(identity) : parse_order(u, order_list);
  const auto result = check_single_crossing(model, order);
  render(result.single_crossing, order, result.enumeration);
  if (!result.conflict.empty()) {
    json c = json::array();
    for (const auto& [x, y] : result.conflict) c.push_back({u.label(x), u.label(y)});
    r.data["conflict"] = c;
  }
  return result.single_crossing ? kAffirmative : kNegative;
}

int cmd_latin_square(Report& r, const std::string& order_list, const std::string& out) {
  Universe u = [&] {
    try {
      return Universe(split_labels(order_list));
    } catch (const std::invalid_argument& e) {
      throw io::DocumentError(std::string("--order: ") + e.what());
    }
  }();
  const Preference order = parse_order(u, order_list);
  const Model model = latin_square(u, order);
  io::write_file(out, io::save_model(model));
  json rows = json::array();
  for (const auto& p : model) rows.push_back(pref_str(p, u));
  r.data = {{"order", pref_str(order, u)}, {"preferences", rows}, {"out", out}};
  r.text << "Latin square for " << pref_str(order, u) << ":\n";
  for (const auto& p : model) r.text << "  " << pref_str(p, u) << "\n";
  r.text << "written to " << out << "\n";
  return kAffirmative;
}

int cmd_carum_recover(Report& r, const std::string& path) {
  const auto data = load_data_file(path);
  const auto& u = data.universe;
  try {
    const auto rec = carum_recover(u, data.rule);
    r.data = {{"carum", true},
              {"order", pref_str(rec.order, u)},
              {"masses", masses_json(rec.model, rec.distribution.masses())}};
    r.text << "CARUM: yes\norder (up to rotation): " << pref_str(rec.order, u) << "\nmasses:\n";
    masses_text(r.text, rec.model, rec.distribution.masses());
    return kAffirmative;
  } catch (const NotCarumError& e) {
    r.data = {{"carum", false}, {"reason", e.what()}};
    r.text << "CARUM: no\n" << e.what() << "\n";
    return kNegative;
  }
}

int cmd_fixtures(Report& r, const std::string& name, const std::string& out) {
  json doc;
  if (name == "fishburn") {
    doc = io::save_model(fixtures::fishburn().model);
  } else if (name == "fishburn-nu1") {
    doc = io::save_distribution(fixtures::fishburn().nu1);
  } else if (name == "fishburn-nu2") {
    doc = io::save_distribution(fixtures::fishburn().nu2);
  } else if (name == "identified-not-decomposable") {
    doc = io::save_model(fixtures::identified_not_decomposable().model);
  } else if (name == "no-own-pair") {
    doc = io::save_model(fixtures::no_own_pair().model);
  } else if (name == "no-scrum-order") {
    doc = io::save_model(fixtures::no_scrum_order().model);
  } else {
    std::string known;
    for (const auto& n : fixtures::names()) known += (known.empty() ? "" : ", ") + n;
    throw io::DocumentError("--name: unknown fixture \"" + name + "\" (known: " + known + ")");
  }
  io::write_file(out, doc);
  r.data = {{"name", name}, {"out", out}};
  r.text << "fixture " << name << " written to " << out << "\n";
  return kAffirmative;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identification of random utility models from stochastic choice data", "rumid"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON report");

  int n = 0;
  std::optional<int> opt_n;
  std::string model_path, data_path, dist_path, out_path, order, tolerance, name;
  bool flag = false;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::function<int(Report&)> action;

  auto* bound = app.add_subcommand("bound", "Largest identified model size versus n!");
  bound->add_option("-n", n, "Number of alternatives")->required();
  bound->callback([&] { action = [&](Report& r) { return cmd_bound(r, n); }; });

  auto* ident = app.add_subcommand("check-identified", "Decide identification by exact rank");
  ident->add_option("--model", model_path)->required();
  ident->add_flag("--certificate", flag, "Show two distributions with equal choice rules");
  ident->callback([&] { action = [&](Report& r) { return cmd_check_identified(r, model_path, flag); }; });

  auto* edge = app.add_subcommand("check-edge-decomposable", "Decide edge decomposability");
  edge->add_option("--model", model_path)->required();
  edge->add_flag("--witness", flag, "Show the decomposition order");
  edge->callback([&] { action = [&](Report& r) { return cmd_check_edge_decomposable(r, model_path, flag); }; });

  auto* basis = app.add_subcommand("max-basis", "Build a maximal identified model from a spanning tree");
  basis->add_option("-n", n)->required();
  basis->add_option("--out", out_path)->required();
  basis->callback([&] { action = [&](Report& r) { return cmd_max_basis(r, n, out_path); }; });

  auto* extend = app.add_subcommand("extend", "Extend an edge decomposable model to maximal size");
  extend->add_option("--model", model_path)->required();
  extend->add_option("--out", out_path)->required();
  extend->callback([&] { action = [&](Report& r) { return cmd_extend(r, model_path, out_path); }; });

  auto* mobius = app.add_subcommand("mobius", "Mobius inverse of choice data");
  mobius->add_option("--data", data_path)->required();
  mobius->add_flag("--check-flow", flag, "Check flow conservation at every menu");
  mobius->callback([&] { action = [&](Report& r) { return cmd_mobius(r, data_path, flag); }; });

  auto* recover = app.add_subcommand("recover", "Recover the preference distribution of an edge decomposable model");
  recover->add_option("--model", model_path)->required();
  recover->add_option("--data", data_path)->required();
  recover->add_option("--tolerance", tolerance, "Largest accepted choice-probability deviation (rational)");
  recover->callback([&] { action = [&](Report& r) { return cmd_recover(r, model_path, data_path, tolerance); }; });

  auto* generate = app.add_subcommand("generate", "Choice data from a distribution, exact or sampled");
  generate->add_option("--model", model_path)->required();
  generate->add_option("--dist", dist_path)->required();
  generate->add_option("--out", out_path)->required();
  generate->add_option("--samples", samples, "Draws per menu");
  generate->add_option("--seed", seed, "Sampler seed");
  generate->callback([&] {
    action = [&](Report& r) { return cmd_generate(r, model_path, dist_path, out_path, samples, seed); };
  });

  auto* scrum = app.add_subcommand("scrum-max", "Maximal single-crossing model");
  scrum->add_option("-n", opt_n);
  scrum->add_option("--order", order, "Comma-separated labels, first is top");
  scrum->add_option("--out", out_path)->required();
  scrum->callback([&] { action = [&](Report& r) { return cmd_scrum_max(r, opt_n, order, out_path); }; });

  auto* sc = app.add_subcommand("check-single-crossing", "Single-crossing check for a given or searched order");
  sc->add_option("--model", model_path)->required();
  auto* sc_order = sc->add_option("--order", order, "Comma-separated labels");
  sc->add_flag("--search-order", flag, "Try every order")->excludes(sc_order);
  sc->callback([&] { action = [&](Report& r) { return cmd_check_single_crossing(r, model_path, order, flag); }; });

  auto* latin = app.add_subcommand("latin-square", "The rotations of an order");
  latin->add_option("--order", order)->required();
  latin->add_option("--out", out_path)->required();
  latin->callback([&] { action = [&](Report& r) { return cmd_latin_square(r, order, out_path); }; });

  auto* carum = app.add_subcommand("carum-recover", "Recover a Latin-square model and its distribution from data");
  carum->add_option("--data", data_path)->required();
  carum->callback([&] { action = [&](Report& r) { return cmd_carum_recover(r, data_path); }; });

  auto* fixture = app.add_subcommand("fixtures", "Write a named example document");
  fixture->add_option("--name", name)->required();
  fixture->add_option("--out", out_path)->required();
  fixture->callback([&] { action = [&](Report& r) { return cmd_fixtures(r, name, out_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kAffirmative;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Report report;
  try {
    const int code = action(report);
    if (as_json) {
      out << io::dump(report.data);
    } else {
      out << report.text.str();
    }
    return code;
  } catch (const io::DocumentError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const CapError& e) {
    err << "error: size cap exceeded: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace rumid::cli
