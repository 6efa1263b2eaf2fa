#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fcaf/cli.hpp"
#include "fcaf/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fuzzy classification aggregation toolbox"};
  app.set_version_flag("--version", std::string(fcaf::kToolName) + " " + fcaf::kToolVersion);
  app.require_subcommand(1);

  fcaf::cli::Options o;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", o.output, "write the report to this file instead of stdout");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_setting = [&](CLI::App* cmd) {
    cmd->add_option("--voters", o.voters, "number of voters (n)");
    cmd->add_option("--objects", o.objects, "number of objects (m)");
    cmd->add_option("--categories", o.categories, "number of categories (p)");
    cmd->add_option("--variant", o.variant, "standard or star")
        ->check(CLI::IsMember({"standard", "star"}));
    cmd->add_option("--scale", o.scale, "row-sum scale (star variant)");
  };
  const auto add_trials = [&](CLI::App* cmd) {
    cmd->add_option("--trials", o.trials, "sampled trials per check");
    cmd->add_option("--seed", o.seed, "sampler seed");
  };

  CLI::App* validate = app.add_subcommand("validate", "validate profile documents");
  validate->add_option("--input", o.input, "profile document (or array of documents)")->required();
  add_common(validate);

  CLI::App* aggregate = app.add_subcommand("aggregate", "aggregate a profile with a rule");
  aggregate->add_option("--input", o.input, "profile document")->required();
  aggregate->add_option("--rule", o.rule, "wam:w1,... | mean | oddh:q | entrywise-oddh:q | fixture:name")
      ->required();
  add_common(aggregate);

  CLI::App* check = app.add_subcommand("check", "run axiom checks against a rule");
  check->add_option("--rule", o.rule, "rule under test")->required();
  check->add_option("--input", o.input, "explicit profile documents (otherwise sampled)");
  check->add_option("--axioms", o.axioms, "axiom names (or 'all')");
  check->add_option("--k", o.k, "k-allocation parameter (defaults to the object count)");
  add_trials(check);
  add_setting(check);
  add_common(check);

  CLI::App* recover = app.add_subcommand("recover", "recover weights from a black-box rule");
  recover->add_option("--rule", o.rule, "rule under test")->required();
  add_trials(recover);
  add_setting(recover);
  add_common(recover);

  CLI::App* fit = app.add_subcommand("fit", "least-squares weight fit for a black-box rule");
  fit->add_option("--rule", o.rule, "rule under test")->required();
  add_trials(fit);
  add_setting(fit);
  add_common(fit);

  CLI::App* sample = app.add_subcommand("sample", "sample a valid profile");
  sample->add_option("--seed", o.seed, "sampler seed");
  sample->add_option("--strategy", o.strategy, "birkhoff[:terms] | dirichlet[:attempts] | vertex");
  add_setting(sample);
  add_common(sample);

  CLI::App* crisp = app.add_subcommand("crisp-verify", "enumerate crisp rules and test dictatorship");
  crisp->add_option("--voters", o.voters, "number of voters (n)")->required();
  crisp->add_option("--objects", o.objects, "number of objects (m)")->required();
  crisp->add_option("--categories", o.categories, "number of categories (p)")->required();
  add_common(crisp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fcaf::cli::kParseError;
  }

  o.command = app.get_subcommands().at(0)->get_name();
  return fcaf::cli::run(o, std::cout, std::cerr);
}
