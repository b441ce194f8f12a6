#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "contour/tree.hpp"

namespace contour::cli {

/// Exit statuses of the `contour` tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,
  kBudget = 4,
  kMismatch = 5,
};

struct RunConfig {
  std::string subcommand;  // count | enumerate | verify | analyze | peierls | bounds | binarize | contract
  std::optional<std::string> grammar_path;
  std::optional<std::string> family;  // dary:d | regular:k
  std::size_t n_max = 10;
  bool rooted = false;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> budget;
  unsigned precision_bits = 128;
  std::string format = "json";  // json | csv
  unsigned jobs = 1;
  std::optional<std::string> lambda;
  std::optional<std::string> beta;
  std::optional<std::string> expected_path;  // verify: stored counts to compare against
  std::size_t direct_cap = 6;
  std::size_t probe_bound = 32;
};

/// Parses {"root": "<class>", "classes": {"<class>": ["<class>", ...], ...}}.
/// Unknown keys, missing classes and empty child lists raise InputError with
/// the offending key in the message.
TreeGrammar parse_grammar_text(const std::string& text);
TreeGrammar parse_grammar_file(const std::string& path);

/// Vertex budget: explicit flag, then CONTOUR_BUDGET, then the default.
std::size_t resolve_budget(const std::optional<std::size_t>& flag);

/// Runs one subcommand. Reports go to `out`; failures are written to `err`
/// as {"error": {...}} and mapped to the exit codes above.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point (flag parsing plus dispatch).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace contour::cli
