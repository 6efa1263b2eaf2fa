#include "fcaf/io.hpp"

#include <fstream>
#include <sstream>

#include "fcaf/model.hpp"

namespace fcaf::io {

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

// Entry values may be "num/den" strings, decimal strings, or JSON numbers.
Rational parse_entry(const Json& value, const std::string& where) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number_unsigned()) return Rational(static_cast<long long>(value.get<unsigned long long>()));
    if (value.is_number_float())
      return approximate_rational(rational_from_double(value.get<double>()), BigInt(1000000000));
  } catch (const std::invalid_argument& e) {
    parse_fail(where + ": " + e.what());
  }
  parse_fail(where + ": expected a rational entry (string or number)");
}

int parse_count(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    parse_fail(std::string("setting: missing or non-integer field '") + key + "'");
  const long long v = j[key].get<long long>();
  if (v < 0 || v > 1'000'000) parse_fail(std::string("setting: field '") + key + "' out of range");
  return static_cast<int>(v);
}

// Largest admissible row-sum slack before a document is rejected.
const Rational& ingest_tolerance() {
  static const Rational eps(1, 1000000000);
  return eps;
}

}  // namespace

Json setting_to_json(const Setting& s) {
  Json j;
  j["n"] = s.voter_count;
  j["m"] = s.object_count;
  j["p"] = s.category_count;
  j["variant"] = variant_name(s.variant);
  j["scale"] = s.scale.str();
  return j;
}

Setting setting_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("setting: expected an object");
  Setting s;
  s.voter_count = parse_count(j, "n");
  s.object_count = parse_count(j, "m");
  s.category_count = parse_count(j, "p");
  if (!j.contains("variant") || !j["variant"].is_string())
    parse_fail("setting: missing or non-string field 'variant'");
  const std::string v = j["variant"].get<std::string>();
  if (v == "standard") s.variant = Variant::Standard;
  else if (v == "star") s.variant = Variant::Star;
  else parse_fail("setting: unknown variant '" + v + "'");
  if (j.contains("scale")) s.scale = parse_entry(j["scale"], "setting: scale");
  else s.scale = Rational(1);
  try {
    s.validate();
  } catch (const Error& e) {
    parse_fail(std::string("setting: ") + e.what());
  }
  return s;
}

ProfileDocument parse_profile_document(const Json& j) {
  if (!j.is_object()) parse_fail("document: expected a JSON object");
  if (j.contains("schema_version")) {
    if (!j["schema_version"].is_string() || j["schema_version"].get<std::string>() != kSchemaVersion)
      parse_fail("document: unsupported schema_version");
  }
  if (!j.contains("setting")) parse_fail("document: missing 'setting'");
  ProfileDocument doc;
  doc.profile.setting = setting_from_json(j["setting"]);
  const Setting& s = doc.profile.setting;

  if (!j.contains("voters") || !j["voters"].is_array())
    parse_fail("document: missing or non-array field 'voters'");
  const Json& voters = j["voters"];
  if (static_cast<int>(voters.size()) != s.voter_count)
    parse_fail("document: expected " + std::to_string(s.voter_count) + " voters, got " +
               std::to_string(voters.size()));

  for (int i = 0; i < s.voter_count; ++i) {
    const Json& rows = voters[static_cast<std::size_t>(i)];
    if (!rows.is_array() || static_cast<int>(rows.size()) != s.object_count)
      parse_fail("voter " + std::to_string(i) + ": expected " + std::to_string(s.object_count) +
                 " rows");
    Classification<Rational> c(s.object_count, s.category_count);
    for (int r = 0; r < s.object_count; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != s.category_count)
        parse_fail("voter " + std::to_string(i) + ", row " + std::to_string(r) + ": expected " +
                   std::to_string(s.category_count) + " entries");
      for (int t = 0; t < s.category_count; ++t)
        c(r, t) = parse_entry(row[static_cast<std::size_t>(t)],
                              "voter " + std::to_string(i) + ", row " + std::to_string(r) +
                                  ", column " + std::to_string(t));
    }
    // Repair near-miss row sums by rescaling the row to the exact scale.
    for (int r = 0; r < s.object_count; ++r) {
      Rational sum(0);
      for (int t = 0; t < s.category_count; ++t) sum += c(r, t);
      if (sum == s.scale) continue;
      if (fcaf::abs(sum - s.scale) <= ingest_tolerance() && !sum.is_zero()) {
        const Rational factor = s.scale / sum;
        for (int t = 0; t < s.category_count; ++t) c(r, t) = c(r, t) * factor;
        doc.repairs.push_back("voter " + std::to_string(i) + ", row " + std::to_string(r) +
                              ": row sum " + sum.str() + " rescaled to " + s.scale.str());
      }
    }
    doc.profile.voters.push_back(std::move(c));
  }

  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_object()) parse_fail("labels: expected an object");
    const auto read_names = [&](const char* key, std::vector<std::string>& out) {
      if (!l.contains(key)) return;
      if (!l[key].is_array()) parse_fail(std::string("labels: '") + key + "' must be an array");
      for (const auto& name : l[key]) {
        if (!name.is_string()) parse_fail(std::string("labels: '") + key + "' entries must be strings");
        out.push_back(name.get<std::string>());
      }
    };
    read_names("voters", doc.labels.voters);
    read_names("objects", doc.labels.objects);
    read_names("categories", doc.labels.categories);
  }
  return doc;
}

ProfileDocument parse_profile_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_profile_document(j);
}

LoadedProfile load_profile_text(const std::string& text) {
  LoadedProfile out;
  out.doc = parse_profile_text(text);
  out.validation = validate_profile(out.doc.profile);
  return out;
}

LoadedProfile load_profile_file(const std::string& path) {
  return load_profile_text(read_text_file(path));
}

std::string serialize_document(const Json& doc) { return doc.dump(2) + "\n"; }

std::string serialize_profile(const Profile<Rational>& p, const ProfileLabels* labels) {
  return serialize_document(profile_to_json<Rational>(p, labels));
}

std::pair<Setting, Classification<Rational>> parse_classification_document(const Json& j) {
  if (!j.is_object() || !j.contains("setting") || !j.contains("classification"))
    parse_fail("document: expected 'setting' and 'classification'");
  Setting s = setting_from_json(j["setting"]);
  const Json& rows = j["classification"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != s.object_count)
    parse_fail("classification: expected " + std::to_string(s.object_count) + " rows");
  Classification<Rational> c(s.object_count, s.category_count);
  for (int r = 0; r < s.object_count; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != s.category_count)
      parse_fail("classification row " + std::to_string(r) + ": expected " +
                 std::to_string(s.category_count) + " entries");
    for (int t = 0; t < s.category_count; ++t)
      c(r, t) = parse_entry(row[static_cast<std::size_t>(t)],
                            "classification row " + std::to_string(r) + ", column " + std::to_string(t));
  }
  return {std::move(s), std::move(c)};
}

Json tool_to_json() {
  Json j;
  j["name"] = kToolName;
  j["version"] = kToolVersion;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open file: " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write file: " + path);
  out << content;
}

}  // namespace fcaf::io
