#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conical_ab/oracle.hpp"
#include "conical_ab/specfun.hpp"
#include "conical_ab/spectrum.hpp"

namespace conical_ab::cli {

enum class Command { Classify, Ring, Bound, Oracle, Sweep };
enum class ModeSelection { Closed, Root, Both };
enum class OutputFormat { Json, Csv };
enum class SweepParameter { Alpha, Phi, Mass, A, Radius };

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 2,
  kExitNoBoundState = 3,
  kExitNumericalFailure = 4,
};

struct MRange {
  int lo = 0;
  int hi = 0;
};

/// "A..B" with A <= B; also accepts a single integer.
std::optional<MRange> parse_m_range(std::string_view text);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Alpha;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;  // number of points, endpoints included
  Command of = Command::Bound;
};

struct RunConfig {
  Command command = Command::Classify;
  double alpha = 1.0;
  double phi = 0.0;
  double mass = 1.0;
  double a = 1.0;
  double radius = 1.0;
  MRange m_range;
  int branch = 0;
  ModeSelection mode = ModeSelection::Both;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> output_path;
  specfun::PhaseSign gamma_sign = specfun::kDefaultPhaseSign;
  spectrum::MatchingForm matching = spectrum::MatchingForm::SmallArgument;
  // oracle
  std::size_t n = 20000;
  oracle::CoreModel core = oracle::CoreModel::RegularCore;
  std::optional<oracle::Spacing> spacing;
  // sweep
  SweepSpec sweep;
};

/// Throws ConfigurationError on the first violated constraint.
void validate(const RunConfig& config);

using Json = nlohmann::ordered_json;

struct Report {
  Json run_config;
  std::vector<Json> rows;
  std::vector<std::string> diagnostics;
  int exit_code = kExitOk;
};

/// Runs a validated configuration. Channels without a bound state become
/// diagnostics; the exit code is kExitNoBoundState only when no row at all
/// was produced by a bound/oracle run. NumericalFailure propagates.
Report run(const RunConfig& config);

Json run_config_json(const RunConfig& config);

/// Canonical JSON: insertion-ordered keys, two-space indent, reals at 17
/// significant digits. Parsing the output and rendering it again is
/// byte-identical.
std::string render_json(const Report& report);
std::string render_json_value(const Json& value);
/// Header is the union of row keys in first-seen order; numbers use the same
/// formatting as render_json.
std::string render_csv(const Report& report);
std::string format_number(double value);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

std::string_view to_string(Command c);

}  // namespace conical_ab::cli
