#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rumid/core.hpp"
#include "rumid/stochastic.hpp"

namespace rumid::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Malformed or semantically invalid document. The message names the offending field.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"version": 1, "alternatives": [...], "preferences": [[best, ..., worst], ...]}
Model load_model(const json& doc);
json save_model(const Model& model);

struct ChoiceData {
  Universe universe;
  RandomChoiceRule rule;
};

/// {"version": 1, "alternatives": [...], "entries": [{"menu": [...], "probabilities": {label: "p/q"},
///  optional "counts": {label: k}, "trials": t}, ...]}. Every nonempty menu must appear exactly once.
ChoiceData load_choice_data(const json& doc);
json save_choice_data(const Universe& universe, const RandomChoiceRule& rule);

/// {"version": 1, "masses": {"a>b>c": "1/2", ...}} over the preferences of `model`;
/// preferences left out carry zero mass.
PreferenceDistribution load_distribution(const json& doc, const Model& model);
json save_distribution(const PreferenceDistribution& nu);

/// Probability value: a rational or exact-decimal string, or a JSON integer. Floats are rejected.
Rational parse_probability(const json& value, std::string_view field);

json parse_text(std::string_view text, std::string_view source);
json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& doc);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& doc);

}  // namespace rumid::io
