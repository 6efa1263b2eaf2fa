#include "fcaf/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fcaf/aggregate.hpp"
#include "fcaf/axioms.hpp"
#include "fcaf/characterize.hpp"
#include "fcaf/crisp.hpp"
#include "fcaf/fixtures.hpp"
#include "fcaf/io.hpp"
#include "fcaf/model.hpp"
#include "fcaf/sample.hpp"
#include "fcaf/version.hpp"

namespace fcaf::cli {

namespace {

using io::Json;

// Raised for well-formed documents that fail the domain constraints.
struct ValidationFailure {
  std::string message;
};

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
      return kParseError;
    case ErrorCode::NotSurjective:
      return kValidationError;
    case ErrorCode::NonAdditive:
      return kViolated;
    case ErrorCode::PreconditionFailed:
    case ErrorCode::PairGenerationFailed:
    case ErrorCode::RepairFailed:
    case ErrorCode::TooLarge:
    case ErrorCode::BudgetExceeded:
      return kInconclusive;
    default:
      return kUsageError;
  }
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, what + ": expected an integer, got '" + text + "'");
  }
}

Rational parse_rational_or_fail(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

// ---- rule strings ----------------------------------------------------------

struct RuleSpec {
  bool double_lane = false;
  std::string text;
  std::function<AggregatorHandle<Rational>(const Setting&)> rational;
  std::function<AggregatorHandle<double>(const Setting&)> dbl;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

RuleSpec parse_rule(const std::string& rule) {
  if (rule.empty()) throw Error(ErrorCode::ParseError, "missing --rule");
  RuleSpec spec;
  spec.text = rule;

  if (rule == "mean") {
    spec.rational = [](const Setting& s) { return make_arithmetic_mean<Rational>(s); };
    return spec;
  }
  if (rule.rfind("wam:", 0) == 0) {
    std::vector<Rational> ws;
    const auto parts = split(rule.substr(4), ',');
    for (std::size_t i = 0; i < parts.size(); ++i)
      ws.push_back(parse_rational_or_fail(parts[i], "rule wam, weight " + std::to_string(i)));
    try {
      (void)make_weights<Rational>(ws);  // nonnegativity and unit sum
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("rule wam: ") + e.what());
    }
    spec.rational = [ws](const Setting& s) { return make_wam<Rational>(s, make_weights<Rational>(ws)); };
    return spec;
  }
  if (rule.rfind("oddh:", 0) == 0) {
    const int q = parse_int(rule.substr(5), "rule oddh");
    try {
      (void)HSpec<double>::power_mean(q);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("rule oddh: ") + e.what());
    }
    spec.double_lane = true;
    spec.dbl = [q](const Setting& s) { return make_odd_h<double>(s, HSpec<double>::power_mean(q)); };
    return spec;
  }
  if (rule.rfind("entrywise-oddh:", 0) == 0) {
    const int q = parse_int(rule.substr(15), "rule entrywise-oddh");
    if (q < 1 || q % 2 == 0)
      throw Error(ErrorCode::ParseError, "rule entrywise-oddh: exponent must be odd and positive");
    spec.double_lane = true;
    spec.dbl = [q](const Setting& s) { return fixtures::entrywise_odd_power(s, q); };
    return spec;
  }
  if (rule.rfind("fixture:", 0) == 0) {
    const std::string name = rule.substr(8);
    const auto known = fixtures::names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw Error(ErrorCode::ParseError, "unknown fixture: " + name);
    spec.rational = [name](const Setting& s) { return fixtures::make_fixture<Rational>(name, s); };
    return spec;
  }
  throw Error(ErrorCode::ParseError, "unknown rule: " + rule);
}

// ---- flag parsing helpers ----------------------------------------------------

Setting setting_from_options(const Options& o) {
  if (o.voters < 1 || o.objects < 1 || o.categories < 1)
    throw Error(ErrorCode::ParseError,
                "this command requires --voters, --objects, and --categories");
  Setting s;
  s.voter_count = o.voters;
  s.object_count = o.objects;
  s.category_count = o.categories;
  if (o.variant == "standard") s.variant = Variant::Standard;
  else if (o.variant == "star") s.variant = Variant::Star;
  else throw Error(ErrorCode::ParseError, "unknown variant: " + o.variant);
  s.scale = parse_rational_or_fail(o.scale, "scale");
  s.validate();
  return s;
}

Strategy parse_strategy(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  std::optional<int> arg;
  if (colon != std::string::npos) arg = parse_int(text.substr(colon + 1), "strategy " + head);
  if (head == "birkhoff") {
    BirkhoffMix b;
    if (arg) b.k_terms = *arg;
    return b;
  }
  if (head == "dirichlet") {
    DirichletRepair d;
    if (arg) d.max_attempts = *arg;
    return d;
  }
  if (head == "vertex" && !arg) return VertexOnly{};
  throw Error(ErrorCode::ParseError, "unknown strategy: " + text);
}

std::vector<Axiom> parse_axioms(const std::vector<std::string>& raw, const Setting& setting) {
  std::vector<std::string> names;
  for (const auto& entry : raw)
    for (const auto& piece : split(entry, ','))
      if (!piece.empty()) names.push_back(piece);

  static const Axiom all_standard[] = {
      Axiom::OutputValidity, Axiom::Independence,   Axiom::Symmetry,
      Axiom::Unanimity,      Axiom::ZeroUnanimity,  Axiom::FuzzyConsensus,
      Axiom::NonDictatorship, Axiom::Anonymity,
  };
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    std::vector<Axiom> out(std::begin(all_standard), std::end(all_standard));
    if (setting.variant == Variant::Star && setting.square()) out.push_back(Axiom::KAllocation);
    return out;
  }
  std::vector<Axiom> out;
  for (const auto& n : names) {
    bool found = false;
    for (int a = 0; a <= static_cast<int>(Axiom::KAllocation); ++a) {
      if (n == axiom_name(static_cast<Axiom>(a))) {
        out.push_back(static_cast<Axiom>(a));
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::ParseError, "unknown axiom: " + n);
  }
  return out;
}

// ---- documents ---------------------------------------------------------------

std::vector<io::LoadedProfile> load_documents(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::ParseError, "this command requires --input");
  const std::string text = io::read_text_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  std::vector<io::LoadedProfile> out;
  const auto load_one = [&](const Json& element) {
    io::LoadedProfile lp;
    lp.doc = io::parse_profile_document(element);
    lp.validation = validate_profile(lp.doc.profile);
    out.push_back(std::move(lp));
  };
  if (j.is_array()) {
    if (j.empty()) throw Error(ErrorCode::ParseError, "document array is empty");
    for (const auto& element : j) load_one(element);
  } else {
    load_one(j);
  }
  return out;
}

std::string describe_validation(const ValidationResult<Rational>& v) {
  if (v.ok()) return "ok";
  std::string msg;
  if (v.voter >= 0) msg += "voter " + std::to_string(v.voter) + ": ";
  return msg + v.describe();
}

// Require every document to be valid; the first failure aborts the command.
std::vector<io::LoadedProfile> load_valid_documents(const std::string& path) {
  auto docs = load_documents(path);
  for (std::size_t i = 0; i < docs.size(); ++i)
    if (!docs[i].validation.ok())
      throw ValidationFailure{"profile " + std::to_string(i) + ": " +
                              describe_validation(docs[i].validation)};
  return docs;
}

// ---- rendering ---------------------------------------------------------------

std::string object_label(const io::ProfileLabels& labels, int j) {
  if (j >= 0 && j < static_cast<int>(labels.objects.size())) return labels.objects[static_cast<std::size_t>(j)];
  return "x_" + std::to_string(j);
}

template <class S>
void render_classification_text(std::ostream& os, const Classification<S>& c,
                                const io::ProfileLabels& labels) {
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    os << object_label(labels, static_cast<int>(j)) << ":";
    for (Eigen::Index t = 0; t < c.cols(); ++t) os << " " << NumericPolicy<S>::str(c(j, t));
    os << "\n";
  }
}

template <class S>
void render_report_text(std::ostream& os, const AxiomReport<S>& r) {
  using P = NumericPolicy<S>;
  os << axiom_name(r.axiom) << ": " << verdict_name(r.verdict) << " (" << r.trials
     << " trials, seed " << r.seed << ")";
  if (r.vacuous) os << " [vacuous]";
  os << "\n";
  if (r.witness) {
    const auto& w = *r.witness;
    os << "  witness:";
    if (w.object >= 0) os << " object " << w.object;
    if (w.object2 >= 0) os << " and " << w.object2;
    if (w.category >= 0) os << ", category " << w.category;
    os << ": expected " << P::str(w.expected) << ", actual " << P::str(w.actual);
    if (!w.permutation.empty()) {
      os << "; permutation [";
      for (std::size_t i = 0; i < w.permutation.size(); ++i)
        os << (i ? ", " : "") << w.permutation[i];
      os << "]";
    }
    os << "\n";
    if (!w.detail.empty()) os << "  detail: " << w.detail << "\n";
  }
  if (!r.unrefuted_voters.empty()) {
    os << "  unrefuted voters:";
    for (int v : r.unrefuted_voters) os << " " << v;
    os << "\n";
  }
  for (const auto& note : r.notes) os << "  note: " << note << "\n";
}

// ---- commands ----------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& body) {
  const auto docs = load_documents(o.input);
  bool all_ok = true;
  if (o.format == "json") {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = io::tool_to_json();
    Json arr = Json::array();
    for (const auto& lp : docs) {
      Json one;
      one["valid"] = lp.validation.ok();
      if (!lp.validation.ok()) one["error"] = describe_validation(lp.validation);
      if (!lp.doc.repairs.empty()) one["repairs"] = lp.doc.repairs;
      arr.push_back(std::move(one));
      all_ok = all_ok && lp.validation.ok();
    }
    doc["profiles"] = std::move(arr);
    body << io::serialize_document(doc);
  } else {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& lp = docs[i];
      body << "profile " << i << ": " << (lp.validation.ok() ? "ok" : "invalid");
      if (!lp.validation.ok()) body << " — " << describe_validation(lp.validation);
      body << "\n";
      for (const auto& r : lp.doc.repairs) body << "  repaired: " << r << "\n";
      all_ok = all_ok && lp.validation.ok();
    }
  }
  return all_ok ? kOk : kValidationError;
}

template <class S>
int do_aggregate(const AggregatorHandle<S>& agg, const Profile<S>& profile,
                 const io::ProfileLabels& labels, const Options& o, std::ostream& body) {
  const Classification<S> result = agg.eval(profile);
  if (o.format == "json")
    body << io::serialize_document(io::classification_to_json<S>(agg.setting, result));
  else
    render_classification_text<S>(body, result, labels);
  return kOk;
}

int cmd_aggregate(const Options& o, std::ostream& body) {
  const RuleSpec rule = parse_rule(o.rule);
  auto docs = load_valid_documents(o.input);
  if (docs.size() != 1)
    throw Error(ErrorCode::ParseError, "aggregate expects a single profile document");
  const auto& doc = docs[0].doc;
  if (rule.double_lane) {
    return do_aggregate<double>(rule.dbl(doc.profile.setting),
                                cast_profile<double, Rational>(doc.profile), doc.labels, o, body);
  }
  return do_aggregate<Rational>(rule.rational(doc.profile.setting), doc.profile, doc.labels, o,
                                body);
}

template <class S>
AxiomReport<S> run_axiom(Axiom a, const AggregatorHandle<S>& agg, const Source<S>& source,
                         int k) {
  switch (a) {
    case Axiom::OutputValidity: return check_output_validity(agg, source);
    case Axiom::Independence: return check_independence(agg, source);
    case Axiom::Symmetry: return check_symmetry(agg, source);
    case Axiom::Unanimity: return check_unanimity(agg, source);
    case Axiom::ZeroUnanimity: return check_zero_unanimity(agg, source);
    case Axiom::FuzzyConsensus: return check_fuzzy_consensus(agg, source);
    case Axiom::NonDictatorship: return check_non_dictatorship(agg, source);
    case Axiom::Anonymity: return check_anonymity(agg, source);
    case Axiom::KAllocation: return check_k_allocation(agg, source, k);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown axiom");
}

template <class S>
int do_check(const AggregatorHandle<S>& agg,
             const std::optional<std::vector<Profile<Rational>>>& explicit_profiles,
             const std::vector<Axiom>& axioms, int k, const Options& o, std::ostream& body) {
  Source<S> source = Sampled{o.trials, o.seed};
  if (explicit_profiles) {
    std::vector<Profile<S>> ps;
    ps.reserve(explicit_profiles->size());
    for (const auto& p : *explicit_profiles) ps.push_back(cast_profile<S, Rational>(p));
    source = std::move(ps);
  }
  std::vector<AxiomReport<S>> reports;
  reports.reserve(axioms.size());
  for (Axiom a : axioms) reports.push_back(run_axiom<S>(a, agg, source, k));

  if (o.format == "json") {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    Json arr = Json::array();
    for (const auto& r : reports)
      arr.push_back(io::axiom_report_to_json<S>(r, agg.setting, agg.descriptor));
    doc["reports"] = std::move(arr);
    body << io::serialize_document(doc);
  } else {
    for (const auto& r : reports) render_report_text<S>(body, r);
  }

  const bool violated = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.verdict == Verdict::Violated;
  });
  const bool inconclusive = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.verdict == Verdict::Inconclusive;
  });
  return violated ? kViolated : inconclusive ? kInconclusive : kOk;
}

int cmd_check(const Options& o, std::ostream& body) {
  const RuleSpec rule = parse_rule(o.rule);
  std::optional<std::vector<Profile<Rational>>> explicit_profiles;
  Setting setting;
  if (!o.input.empty()) {
    auto docs = load_valid_documents(o.input);
    std::vector<Profile<Rational>> ps;
    ps.reserve(docs.size());
    for (auto& lp : docs) ps.push_back(std::move(lp.doc.profile));
    setting = ps[0].setting;
    explicit_profiles = std::move(ps);
  } else {
    setting = setting_from_options(o);
  }
  const std::vector<Axiom> axioms = parse_axioms(o.axioms, setting);
  const int k = o.k >= 0 ? o.k : setting.object_count;
  if (rule.double_lane)
    return do_check<double>(rule.dbl(setting), explicit_profiles, axioms, k, o, body);
  return do_check<Rational>(rule.rational(setting), explicit_profiles, axioms, k, o, body);
}

template <class S>
int do_characterize(const AggregatorHandle<S>& agg, bool fit_only, const Options& o,
                    std::ostream& body) {
  using P = NumericPolicy<S>;
  std::optional<WeightMatrix<S>> wm;
  std::optional<WeightEqualityResult<S>> eq;
  if (!fit_only) {
    wm = recover_weight_matrix(agg);
    eq = check_weight_equality(*wm);
  }
  const FitReport<S> fit = fit_wam(agg, Sampled{o.trials, o.seed});

  if (o.format == "json") {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    if (wm) doc["recovery"] = io::recovery_report_to_json<S>(*wm, *eq, agg.setting, agg.descriptor);
    doc["fit"] = io::fit_report_to_json<S>(fit, agg.setting, agg.descriptor, o.trials, o.seed);
    body << io::serialize_document(doc);
  } else {
    if (wm) {
      body << "weight matrix (rows = voters, columns = categories):\n";
      for (Eigen::Index i = 0; i < wm->w.rows(); ++i) {
        body << "  voter " << i << ":";
        for (Eigen::Index t = 0; t < wm->w.cols(); ++t) body << " " << P::str(wm->w(i, t));
        body << "\n";
      }
      for (const auto& note : wm->notes) body << "  note: " << note << "\n";
      if (eq->equal) {
        body << "columns equal: yes\nweights:";
        for (Eigen::Index i = 0; i < eq->weights.size(); ++i) body << " " << P::str(eq->weights(i));
        body << "\n";
      } else {
        body << "columns equal: no — voter " << eq->voter << ", category " << eq->category_a
             << " gives " << P::str(eq->value_a) << " but category " << eq->category_b << " gives "
             << P::str(eq->value_b) << "\n";
      }
    }
    body << "fit (" << o.trials << " trials, seed " << o.seed
         << "): is_wam=" << (fit.is_wam ? "yes" : "no") << " residual=" << P::str(fit.max_residual)
         << " least-squares=" << (fit.used_least_squares ? "yes" : "no")
         << " degenerate=" << (fit.degenerate_weights ? "yes" : "no") << "\nweights:";
    for (Eigen::Index i = 0; i < fit.weights.size(); ++i) body << " " << P::str(fit.weights(i));
    body << "\n";
    if (fit.unconstrained_weights) {
      body << "unconstrained weights:";
      for (Eigen::Index i = 0; i < fit.unconstrained_weights->size(); ++i)
        body << " " << P::str((*fit.unconstrained_weights)(i));
      body << "\n";
    }
    for (const auto& note : fit.notes) body << "  note: " << note << "\n";
  }
  const bool ok = fit.is_wam && (!eq || eq->equal);
  return ok ? kOk : kViolated;
}

int cmd_characterize(const Options& o, bool fit_only, std::ostream& body) {
  const RuleSpec rule = parse_rule(o.rule);
  const Setting setting = setting_from_options(o);
  if (rule.double_lane) return do_characterize<double>(rule.dbl(setting), fit_only, o, body);
  return do_characterize<Rational>(rule.rational(setting), fit_only, o, body);
}

int cmd_sample(const Options& o, std::ostream& body) {
  SamplerConfig config;
  config.setting = setting_from_options(o);
  config.seed = o.seed;
  config.strategy = parse_strategy(o.strategy);
  const Profile<Rational> profile = sample_profile(config);
  if (o.format == "json") {
    body << io::serialize_profile(profile);
  } else {
    for (int i = 0; i < profile.voter_count(); ++i) {
      body << "voter " << i << ":\n";
      for (Eigen::Index j = 0; j < profile.voters[static_cast<std::size_t>(i)].rows(); ++j) {
        body << "  ";
        for (Eigen::Index t = 0; t < profile.voters[static_cast<std::size_t>(i)].cols(); ++t)
          body << (t ? " " : "") << profile.voters[static_cast<std::size_t>(i)](j, t).str();
        body << "\n";
      }
    }
  }
  return kOk;
}

int cmd_crisp_verify(const Options& o, std::ostream& body) {
  if (o.voters < 1 || o.objects < 1 || o.categories < 1)
    throw Error(ErrorCode::ParseError,
                "crisp-verify requires --voters, --objects, and --categories");
  CrispSearchStats stats;
  const auto survivors =
      enumerate_valid_cafs(o.voters, o.objects, o.categories, kDefaultCrispBudget, &stats);
  std::vector<std::optional<int>> dictators;
  dictators.reserve(survivors.size());
  for (const auto& caf : survivors) dictators.push_back(is_dictatorial(caf));
  const std::size_t dictatorial =
      static_cast<std::size_t>(std::count_if(dictators.begin(), dictators.end(),
                                             [](const auto& d) { return d.has_value(); }));
  const bool holds =
      dictatorial == survivors.size() && survivors.size() == static_cast<std::size_t>(o.voters);

  if (o.format == "json") {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = io::tool_to_json();
    doc["n"] = o.voters;
    doc["m"] = o.objects;
    doc["p"] = o.categories;
    doc["nodes_expanded"] = stats.nodes_expanded;
    doc["survivors"] = static_cast<std::uint64_t>(survivors.size());
    doc["impossibility_holds"] = holds;
    Json arr = Json::array();
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      Json one;
      if (dictators[i]) one["dictator"] = *dictators[i];
      else one["dictator"] = nullptr;
      Json tables = Json::array();
      for (const auto& tab : survivors[i].tables) tables.push_back(tab.entries);
      one["tables"] = std::move(tables);
      arr.push_back(std::move(one));
    }
    doc["rules"] = std::move(arr);
    body << io::serialize_document(doc);
  } else {
    body << "n=" << o.voters << " m=" << o.objects << " p=" << o.categories << ": "
         << survivors.size() << " survivors (" << stats.nodes_expanded << " nodes expanded)\n";
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      body << "survivor " << i << ": ";
      if (dictators[i]) body << "dictator voter " << *dictators[i];
      else body << "not dictatorial";
      body << "; tables:";
      for (const auto& tab : survivors[i].tables) {
        body << " [";
        for (std::size_t e = 0; e < tab.entries.size(); ++e)
          body << (e ? " " : "") << tab.entries[e];
        body << "]";
      }
      body << "\n";
    }
    body << "impossibility holds: " << (holds ? "yes" : "no") << " (" << dictatorial << " of "
         << survivors.size() << " survivors dictatorial, " << o.voters << " expected)\n";
  }
  return holds ? kOk : kViolated;
}

int dispatch(const Options& o, std::ostream& body) {
  if (o.command == "validate") return cmd_validate(o, body);
  if (o.command == "aggregate") return cmd_aggregate(o, body);
  if (o.command == "check") return cmd_check(o, body);
  if (o.command == "recover") return cmd_characterize(o, false, body);
  if (o.command == "fit") return cmd_characterize(o, true, body);
  if (o.command == "sample") return cmd_sample(o, body);
  if (o.command == "crisp-verify") return cmd_crisp_verify(o, body);
  throw Error(ErrorCode::ParseError, "unknown command: " + o.command);
}

}  // namespace

int run(const Options& options, std::ostream& out, std::ostream& err) {
  std::ostringstream body;
  int code = kOk;
  try {
    code = dispatch(options, body);
  } catch (const ValidationFailure& f) {
    err << "validation error: " << f.message << "\n";
    return kValidationError;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (!options.output.empty())
    io::write_text_file(options.output, body.str());
  else
    out << body.str();
  return code;
}

}  // namespace fcaf::cli
