#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdse/graph.hpp"

namespace mdse::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitOracleDisagreement = 3,
  kExitNumeric = 4,
};

/// One inference-vs-oracle comparison.
struct OracleComparison {
  std::string check;  // "mixture", "full-probability" or "posterior"
  NodeId target;
  std::optional<GroupId> group;
  double inference = 0.0;
  double oracle = 0.0;
  double delta = 0.0;  // worst absolute difference over everything compared
};

struct OracleCheckReport {
  std::vector<OracleComparison> rows;
  double max_delta = 0.0;
  bool passed = true;
};

/// Mixture expansion for every Prime event; with `all`, also total
/// probability of every Star event and the posterior of every
/// (group, child event) pair with non-zero evidence.
OracleCheckReport run_oracle_check(const MdseGraph& graph, bool all);

/// Fixed-point with nine decimals, independent of the global locale.
std::string format_probability(double value);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mdse::cli
