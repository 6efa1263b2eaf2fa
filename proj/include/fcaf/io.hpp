#pragma once

// JSON document layer: profile and classification documents with exact
// "num/den" entries, plus machine-readable report writers for axiom checks,
// weight recovery, and fits.  Parsing is exact-rational only; serialization
// works in both scalar lanes via NumericPolicy<S>::str, so rational documents
// round-trip byte-identically (keys are emitted in sorted order).
//
// Ingestion policy for profile documents: entries may be "num/den" strings,
// decimal strings, or JSON numbers (decimals are converted to the nearest
// rational with denominator at most 10^9).  A row whose sum misses the scale
// by at most 1e-9 is repaired by rescaling the row to sum exactly to the
// scale (the repair is recorded); larger violations are left for validation
// to reject.  Negative entries are never repaired.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcaf/aggregate.hpp"
#include "fcaf/axioms.hpp"
#include "fcaf/characterize.hpp"
#include "fcaf/policy.hpp"
#include "fcaf/types.hpp"
#include "fcaf/version.hpp"

namespace fcaf::io {

using Json = nlohmann::json;

// Optional display names carried by a profile document.
struct ProfileLabels {
  std::vector<std::string> voters;
  std::vector<std::string> objects;
  std::vector<std::string> categories;
  bool empty() const { return voters.empty() && objects.empty() && categories.empty(); }
};

// A parsed profile document: the exact profile, any labels, and notes about
// ingestion repairs that were applied.
struct ProfileDocument {
  Profile<Rational> profile;
  ProfileLabels labels;
  std::vector<std::string> repairs;
};

// A parsed document together with its exact validation outcome.
struct LoadedProfile {
  ProfileDocument doc;
  ValidationResult<Rational> validation;
};

// ---- building blocks ------------------------------------------------------

Json setting_to_json(const Setting& s);
Setting setting_from_json(const Json& j);

template <typename S>
Json matrix_to_json(const Classification<S>& c) {
  Json rows = Json::array();
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index t = 0; t < c.cols(); ++t) row.push_back(NumericPolicy<S>::str(c(j, t)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename S>
Json profile_to_json(const Profile<S>& p, const ProfileLabels* labels = nullptr) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["setting"] = setting_to_json(p.setting);
  Json voters = Json::array();
  for (const auto& c : p.voters) voters.push_back(matrix_to_json<S>(c));
  doc["voters"] = std::move(voters);
  if (labels && !labels->empty()) {
    Json l;
    if (!labels->voters.empty()) l["voters"] = labels->voters;
    if (!labels->objects.empty()) l["objects"] = labels->objects;
    if (!labels->categories.empty()) l["categories"] = labels->categories;
    doc["labels"] = std::move(l);
  }
  return doc;
}

template <typename S>
Json classification_to_json(const Setting& setting, const Classification<S>& c) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["setting"] = setting_to_json(setting);
  doc["classification"] = matrix_to_json<S>(c);
  return doc;
}

// ---- profile documents -----------------------------------------------------

// Parse a profile document (throws Error(ParseError) with a located message
// on malformed input; repairs near-miss row sums as described above).
ProfileDocument parse_profile_document(const Json& j);
ProfileDocument parse_profile_text(const std::string& text);

// Parse and validate in one step.
LoadedProfile load_profile_text(const std::string& text);
LoadedProfile load_profile_file(const std::string& path);

// Canonical serialization: 2-space indent, sorted keys, trailing newline.
std::string serialize_document(const Json& doc);
std::string serialize_profile(const Profile<Rational>& p, const ProfileLabels* labels = nullptr);

// Parse a classification document (as written by classification_to_json).
std::pair<Setting, Classification<Rational>> parse_classification_document(const Json& j);

// ---- report documents ------------------------------------------------------

Json tool_to_json();

template <typename S>
Json witness_to_json(const Witness<S>& w) {
  Json doc;
  doc["profile"] = profile_to_json<S>(w.profile);
  if (w.second_profile) doc["second_profile"] = profile_to_json<S>(*w.second_profile);
  if (!w.permutation.empty()) doc["permutation"] = w.permutation;
  if (w.object >= 0) doc["object"] = w.object;
  if (w.object2 >= 0) doc["object2"] = w.object2;
  if (w.category >= 0) doc["category"] = w.category;
  doc["expected"] = NumericPolicy<S>::str(w.expected);
  doc["actual"] = NumericPolicy<S>::str(w.actual);
  if (!w.detail.empty()) doc["detail"] = w.detail;
  return doc;
}

template <typename S>
Json axiom_report_to_json(const AxiomReport<S>& r, const Setting& setting,
                          const RuleDescriptor& rule) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = tool_to_json();
  doc["setting"] = setting_to_json(setting);
  doc["rule"] = rule.text;
  doc["axiom"] = axiom_name(r.axiom);
  doc["verdict"] = verdict_name(r.verdict);
  doc["vacuous"] = r.vacuous;
  doc["trials"] = r.trials;
  doc["seed"] = r.seed;
  if (r.witness) doc["witness"] = witness_to_json<S>(*r.witness);
  if (!r.unrefuted_voters.empty()) doc["unrefuted_voters"] = r.unrefuted_voters;
  if (!r.notes.empty()) doc["notes"] = r.notes;
  return doc;
}

template <typename S>
Json weights_to_json(const Weights<S>& w) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < w.size(); ++i) arr.push_back(NumericPolicy<S>::str(w(i)));
  return arr;
}

template <typename S>
Json recovery_report_to_json(const WeightMatrix<S>& wm, const WeightEqualityResult<S>& eq,
                             const Setting& setting, const RuleDescriptor& rule) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = tool_to_json();
  doc["setting"] = setting_to_json(setting);
  doc["rule"] = rule.text;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < wm.w.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index t = 0; t < wm.w.cols(); ++t) row.push_back(NumericPolicy<S>::str(wm.w(i, t)));
    rows.push_back(std::move(row));
  }
  doc["weight_matrix"] = std::move(rows);
  doc["equal"] = eq.equal;
  if (eq.equal) {
    doc["weights"] = weights_to_json<S>(eq.weights);
  } else {
    Json conflict;
    conflict["voter"] = eq.voter;
    conflict["category_a"] = eq.category_a;
    conflict["category_b"] = eq.category_b;
    conflict["value_a"] = NumericPolicy<S>::str(eq.value_a);
    conflict["value_b"] = NumericPolicy<S>::str(eq.value_b);
    doc["conflict"] = std::move(conflict);
  }
  if (!wm.notes.empty()) doc["notes"] = wm.notes;
  return doc;
}

template <typename S>
Json fit_report_to_json(const FitReport<S>& r, const Setting& setting, const RuleDescriptor& rule,
                        int trials, std::uint64_t seed) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = tool_to_json();
  doc["setting"] = setting_to_json(setting);
  doc["rule"] = rule.text;
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["is_wam"] = r.is_wam;
  doc["weights"] = weights_to_json<S>(r.weights);
  doc["max_residual"] = NumericPolicy<S>::str(r.max_residual);
  doc["degenerate_weights"] = r.degenerate_weights;
  doc["used_least_squares"] = r.used_least_squares;
  if (r.unconstrained_weights) doc["unconstrained_weights"] = weights_to_json<S>(*r.unconstrained_weights);
  if (r.witness) doc["witness_profile"] = profile_to_json<S>(*r.witness);
  if (!r.notes.empty()) doc["notes"] = r.notes;
  return doc;
}

// ---- files -----------------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fcaf::io
