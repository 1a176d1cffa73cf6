#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullboot/error.hpp"
#include "nullboot/serialize.hpp"

namespace nullboot {

enum class Mode { Solve, Verify, Compare };

std::string to_string(Mode m);
/// "solve" | "verify" | "compare"; ValidationError otherwise.
Mode mode_from_string(const std::string& s);

/// A user-supplied problem: H = p²/2 + x²/2 + g·perturbation.
struct CustomProblem {
  std::string label = "custom";
  OpPoly perturbation;
  bool hermitian = true;  // false declares a PT-symmetric problem
  bool parity_even = false;
};

struct RunConfig {
  std::string problem;  // sextic | shifted | cubic | custom
  std::optional<CustomProblem> custom;
  int max_order = 2;
  std::vector<unsigned> K_schedule;  // empty: the problem's own schedule
  std::string output_path;           // empty: standard output
  std::optional<Mode> mode;          // the command line wins when both are given
};

/// Parses and validates a JSON configuration. ParseError for malformed JSON,
/// ValidationError (message prefixed with the field path) otherwise.
RunConfig parse_config(const std::string& text);

ProblemSpec problem_from_config(const RunConfig& config);

struct RunOutcome {
  Json report;
  int exit_code = 0;  // 0 success, 1 mismatch or failure, 2 configuration error
  std::optional<BootstrapSolution> solution;
  std::optional<ComparisonReport> comparison;
};

RunOutcome run(const RunConfig& config, Mode mode);

/// Report for a configuration that could not be parsed (exit code 2).
RunOutcome config_error(const Error& err);

/// The report as canonical JSON text (sorted keys, two-space indent).
std::string render_json(const RunOutcome& outcome);
/// Energies, ladder operators and (for compare) the match table in LaTeX.
std::string render_latex(const RunOutcome& outcome);

}  // namespace nullboot
