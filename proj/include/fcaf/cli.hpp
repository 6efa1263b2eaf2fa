#pragma once

// Command orchestration for the fcaf tool.  Each command reads documents,
// drives the library, renders a text or JSON report, and returns a process
// exit code:
//
//   0  success / all axioms satisfied / rule confirmed as a WAM /
//      crisp survivors are exactly the dictators
//   1  an axiom violated / rule shown not to be a WAM / crisp survivors
//      beyond the dictators (informational outside the theorem hypotheses)
//   2  malformed input: unreadable file, bad JSON, bad rule string
//   3  well-formed input failing the domain constraints
//   4  rule/setting mismatch (wrong variant, shape, weight count, ...)
//   5  inconclusive: checks ended without a verdict, probe preconditions
//      unmet, or a search/sampling budget ran out
//
// A violated verdict takes precedence over an inconclusive one.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fcaf::cli {

enum ExitCode : int {
  kOk = 0,
  kViolated = 1,
  kParseError = 2,
  kValidationError = 3,
  kUsageError = 4,
  kInconclusive = 5,
};

struct Options {
  std::string command;  ///< aggregate | validate | check | recover | fit | sample | crisp-verify
  std::string input;    ///< profile document path (or an array of documents)
  std::string output;   ///< report destination; empty writes to stdout
  std::string rule;     ///< wam:w1,... | mean | oddh:q | entrywise-oddh:q | fixture:name
  std::vector<std::string> axioms;  ///< axiom names, or "all"
  int trials = 1000;
  std::uint64_t seed = 0;
  std::string format = "text";  ///< text | json

  // Setting flags, used by commands that do not read a profile document.
  int voters = 0;
  int objects = 0;
  int categories = 0;
  std::string variant = "standard";  ///< standard | star
  std::string scale = "1";
  std::string strategy = "birkhoff";  ///< birkhoff[:terms] | dirichlet[:attempts] | vertex
  int k = -1;  ///< k-allocation parameter; defaults to the object count
};

// Runs one command: the report goes to options.output when set, to `out`
// otherwise; diagnostics go to `err`.  Returns the exit code.
int run(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace fcaf::cli
